#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "todalab/critical/critical.hpp"
#include "todalab/exact/hbar_series.hpp"
#include "todalab/exact/rational_function.hpp"

namespace todalab::semiclassical {

using critical::cplx;
using critical::CriticalPointRecord;
using critical::MatrixXc;
using exact::HbarSeries;
using exact::LaurentPolynomial;
using exact::Rational;
using exact::RationalFunction;

/// Fixed point of the torus action labelled by a permutation.
struct FixedPointData {
  std::vector<int> permutation;
  /// lambda_{p(i)} - lambda_{p(j)} for n >= i > j >= 0
  std::vector<LaurentPolynomial> weights;
  /// N_l = sum over weights of chi^{-l}, for odd l up to the requested bound
  std::map<int, RationalFunction> power_sums;
};

FixedPointData fixed_point_data(const std::vector<int>& permutation, int max_l);

/// B_{2i} / (2i (2i-1)), the coefficient of z^{-(2i-1)} in the Stirling tail, i = 1..K.
std::vector<Rational> gamma_stirling_tail(int K);

/// (z - 1/2) ln z - z + ln(2 pi)/2 + the first K tail terms.
double stirling_partial_sum(double z, int K);

/// b(hbar) = sum_{k=1..K} N_{2k-1} B_{2k} / (2k (2k-1)) hbar^{2k-1}, exact through hbar^{2K-1}.
HbarSeries<RationalFunction> classical_limit_b(const FixedPointData& fp, int K);

/// The Stirling tail summed weight by weight at z = chi / hbar.
HbarSeries<RationalFunction> stirling_weight_sum(const FixedPointData& fp, int K);

/// Total lambda-degree of a rational function whose parts are homogeneous.
std::optional<int> homogeneous_degree(const RationalFunction& f);

struct ClassicalLimitReport {
  std::vector<int> permutation;
  int K = 0;
  bool matches = false;     // weight sum == b exactly
  bool orthogonal = false;  // b(hbar) + b(-hbar) == 0
  bool homogeneous = false; // hbar^{2k-1} coefficient has lambda-degree -(2k-1)
  std::optional<int> first_mismatch;  // hbar exponent of the first differing coefficient
  bool pass() const { return matches && orthogonal && homogeneous; }
};

ClassicalLimitReport verify_classical_limit(const std::vector<int>& permutation, int K);
/// Every permutation of {0..n}, in lexicographic order.
std::vector<ClassicalLimitReport> verify_all_classical_limits(int n, int K, Execution exec = Execution::Parallel);

enum class HessianFrame { Log, Chart };

/// amplitude / sqrt(det Hessian), the branch continued from q = 0. The log
/// frame integrates against prod dw/w, the chart frame against prod dw.
cplx stationary_leading(const CriticalPointRecord& r, cplx amplitude, HessianFrame frame = HessianFrame::Log);

using Amplitude = std::function<cplx(const CriticalPointRecord&)>;

struct NamedAmplitude {
  std::string name;
  int degree;  // quasi-homogeneous degree (lambda has degree 1)
  Amplitude value;
};

NamedAmplitude amplitude_one();
/// p_i of the Lagrangian point.
NamedAmplitude amplitude_momentum(int i);

struct PsiOscMatrix {
  MatrixXc entries;  // (amplitude, record)
  std::vector<std::string> amplitudes;
  std::vector<std::string> charts;
};

PsiOscMatrix psi_osc(const critical::CriticalCensus& census, const std::vector<NamedAmplitude>& amplitudes,
                     HessianFrame frame = HessianFrame::Log);

struct GramReport {
  std::vector<MatrixXc> grams;  // Psi Psi^t at each grid point
  double variation = 0;         // max entrywise deviation from the first
};

/// Psi Psi^t over a q grid. Psi^t G Psi = 1 for a constant pairing G is
/// equivalent to Psi Psi^t = G^{-1}, so constancy here needs no knowledge of G.
GramReport gram_variation(int n, const std::vector<double>& lambda, const std::vector<std::vector<cplx>>& q_grid,
                          const std::vector<NamedAmplitude>& amplitudes, HessianFrame frame = HessianFrame::Log);

struct LaplaceCheck {
  double integral = 0;
  cplx leading = 0;     // e^{u/hbar} (2 pi |hbar|)^{d/2} / sqrt(det log-Hessian)
  double rel_mismatch = 0;
  std::string chart;
};

/// Compares the positive-torus integral with the leading stationary-phase
/// term at its real positive critical point. The hbar power in front is
/// (2 pi |hbar|)^{prefactor_exponent}, d/2 when left unset.
LaplaceCheck laplace_consistency(int n, const std::vector<double>& lambda, const std::vector<double>& q, double hbar,
                                 std::optional<double> prefactor_exponent = std::nullopt);

}  // namespace todalab::semiclassical
