#pragma once

#include <string>
#include <vector>

#include "todalab/exact/poly_matrix.hpp"
#include "todalab/mirror/chart.hpp"

namespace todalab::critical {

/// Lower bidiagonal U_k: diagonal u_{k,0..n-k} then 0, ones below.
exact::PolyMatrix u_matrix(const mirror::MirrorGraph& g, int k);
/// Upper bidiagonal V_k: diagonal -1, v_{k,0..n-k} above.
exact::PolyMatrix v_matrix(const mirror::MirrorGraph& g, int k);
/// Tridiagonal A_k in edge variables; A_{n+1} is the 1x1 zero matrix.
exact::PolyMatrix a_matrix(const mirror::MirrorGraph& g, int k);

struct UvFailure {
  int k;
  std::string chart;  // empty for the unsubstituted factorization
  std::string detail;
};

struct UvReport {
  bool factorization_ok = true;  // A_k = U_k V_k in the free edge ring
  bool identity_ok = true;       // block identity for V_k U_k after chart substitution
  std::size_t checks = 0;
  std::vector<UvFailure> failures;
  bool ok() const { return factorization_ok && identity_ok; }
};

/// Exact check of A_k = U_k V_k and of
///   V_k U_k - lambda_{k-1} I = [[A_{k+1} - lambda_k I, 0], [(0..0,-1), -lambda_{k-1}]]
///                             - diag(df/dT_{k,0}, ..., df/dT_{k,n-k}, 0)
/// for every k and every chart, with the trace-zero constraint imposed. n <= 4.
UvReport uv_identity_report(int n);
bool uv_identity_check(int n);

}  // namespace todalab::critical
