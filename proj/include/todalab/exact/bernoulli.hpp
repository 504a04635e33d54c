#pragma once

#include <vector>

#include "todalab/exact/rational.hpp"

namespace todalab::exact {

/// B_0..B_m in the x/(1 - e^{-x}) convention, so B_1 = +1/2.
std::vector<Rational> bernoulli_sequence(int m);

/// B_k for even k >= 2 (the odd ones past B_1 vanish and are rejected).
Rational bernoulli(int k);

/// Coefficient B_{2i} / (2i (2i - 1)) of z^{-(2i-1)} in the Stirling tail of
/// ln Gamma(z), for i = 1..K.
std::vector<Rational> stirling_coefficients(int K);

}  // namespace todalab::exact
