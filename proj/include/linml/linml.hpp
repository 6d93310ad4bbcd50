#pragma once

// Umbrella header: statistical computing for the generalized Mittag-Leffler
// gML(alpha, delta, mu) and generalized Linnik gL(alpha, delta, mu) families —
// exact samplers, closed-form log-moments, density evaluation, method-of-
// log-moments estimation, delta-method and bootstrap inference, a simulation-
// study harness, and financial return-series utilities.

#include "linml/asymptotics.hpp"
#include "linml/bootstrap.hpp"
#include "linml/constants.hpp"
#include "linml/data.hpp"
#include "linml/estimators.hpp"
#include "linml/moments.hpp"
#include "linml/montecarlo.hpp"
#include "linml/params.hpp"
#include "linml/rng.hpp"
#include "linml/sampling.hpp"
#include "linml/special.hpp"
