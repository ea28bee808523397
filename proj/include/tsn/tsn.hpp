#pragma once

// Umbrella header for the truncated skew-normal toolkit.

#include "tsn/bench.hpp"
#include "tsn/bootstrap.hpp"
#include "tsn/distribution.hpp"
#include "tsn/errors.hpp"
#include "tsn/estimators.hpp"
#include "tsn/model.hpp"
#include "tsn/moments.hpp"
#include "tsn/nelder_mead.hpp"
#include "tsn/normal.hpp"
#include "tsn/parallel.hpp"
#include "tsn/quadrature.hpp"
#include "tsn/rng.hpp"
#include "tsn/sampling.hpp"
#include "tsn/scenario.hpp"
