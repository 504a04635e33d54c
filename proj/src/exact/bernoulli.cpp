#include "todalab/exact/bernoulli.hpp"

#include <mutex>
#include <stdexcept>

namespace todalab::exact {

std::vector<Rational> bernoulli_sequence(int m) {
  if (m < 0) throw std::invalid_argument("bernoulli_sequence: negative index");
  static std::mutex mutex;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard lock(mutex);
  // sum_{j=0}^{k} binom(k+1, j) B_j = k + 1 in this convention
  for (int k = static_cast<int>(cache.size()); k <= m; ++k) {
    Rational s(0);
    for (int j = 0; j < k; ++j) s += Rational(binomial(k + 1, j)) * cache[j];
    cache.emplace_back((Rational(k + 1) - s) / Rational(binomial(k + 1, k)));
  }
  return {cache.begin(), cache.begin() + m + 1};
}

Rational bernoulli(int k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("bernoulli: k must be even and >= 2, got " + std::to_string(k));
  return bernoulli_sequence(k)[k];
}

std::vector<Rational> stirling_coefficients(int K) {
  if (K < 1) throw std::invalid_argument("stirling_coefficients: K must be >= 1");
  const auto b = bernoulli_sequence(2 * K);
  std::vector<Rational> out;
  for (int i = 1; i <= K; ++i) out.emplace_back(b[2 * i] / Rational(2 * i * (2 * i - 1)));
  return out;
}

}  // namespace todalab::exact
