#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Invalid inputs: graphs, coins, states, configs. CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File reading/writing failures. CLI maps this to exit code 3.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical analysis that cannot be completed, e.g. a period lcm
/// exceeding the 64-bit integer range.
class analysis_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qwalk
