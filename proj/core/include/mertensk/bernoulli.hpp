#pragma once

#include "mertensk/hpreal.hpp"

namespace mertensk {

/// B_{2r}/(2r)! as an HPReal, from an exact-rational Bernoulli table
/// (recurrence over GMP rationals, B_1 = -1/2 convention). Cached per process.
/// Supports 2r up to 256.
HPReal bernoulli_over_factorial(int two_r, long prec_bits);

}  // namespace mertensk
