#pragma once

#include <optional>
#include <vector>

#include "todalab/exact/rational.hpp"

namespace todalab::exact {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix rational_zero(std::size_t rows, std::size_t cols);
RationalMatrix rational_product(const RationalMatrix& a, const RationalMatrix& b);

/// Exact Gauss-Jordan inverse; nullopt when singular.
std::optional<RationalMatrix> rational_inverse(const RationalMatrix& a);
Rational rational_determinant(RationalMatrix a);

}  // namespace todalab::exact
