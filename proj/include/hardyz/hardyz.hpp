#pragma once

#include "precision.hpp"
#include "big_real.hpp"
#include "big_complex.hpp"
#include "bernoulli.hpp"
#include "gamma_complex.hpp"
#include "theta.hpp"
#include "combinatorics.hpp"
#include "eta.hpp"
#include "z.hpp"
#include "baseline.hpp"
#include "harness.hpp"
