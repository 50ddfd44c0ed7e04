#pragma once

// Umbrella header: coverage analysis for a Poisson field of drone base
// stations — air-to-ground channel model, closest-drone geometry, the
// analytic coverage engine, its Monte Carlo oracle, and parameter sweeps.

#include "dronecov/analysis.hpp"
#include "dronecov/channel.hpp"
#include "dronecov/config.hpp"
#include "dronecov/core.hpp"
#include "dronecov/environment.hpp"
#include "dronecov/geometry.hpp"
#include "dronecov/interpolate.hpp"
#include "dronecov/montecarlo.hpp"
#include "dronecov/optimize.hpp"
#include "dronecov/parallel.hpp"
#include "dronecov/quadrature.hpp"
#include "dronecov/random.hpp"
