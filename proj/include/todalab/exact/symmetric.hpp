#pragma once

#include <stdexcept>
#include <vector>

namespace todalab::exact {

/// Coefficients sigma_1..sigma_{n+1} with
/// x^{n+1} + sigma_1 x^n + ... + sigma_{n+1} = prod_i (x - lambda_i).
/// Works for any commutative ring element type.
template <class T>
std::vector<T> elementary_symmetric_sigma(const std::vector<T>& lambda) {
  if (lambda.empty()) throw std::invalid_argument("elementary_symmetric_sigma: empty input");
  // c[k] is the coefficient of x^{deg - k}
  std::vector<T> c{T(1)};
  for (const T& l : lambda) {
    std::vector<T> next(c.size() + 1, T(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= l * c[k];
    }
    c = std::move(next);
  }
  return {c.begin() + 1, c.end()};
}

}  // namespace todalab::exact
