#pragma once

// Discrete-time quantum walks on bounded graphs: evolution, entanglement
// dynamics, spectral periodicity analysis, two-photon states and the mapping
// onto linear-optical networks.

#include "qwalk/coin.hpp"
#include "qwalk/entanglement.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/io.hpp"
#include "qwalk/multiwalker.hpp"
#include "qwalk/numeric.hpp"
#include "qwalk/optical.hpp"
#include "qwalk/run.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/version.hpp"
