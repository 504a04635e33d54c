#pragma once

#include <complex>
#include <vector>

#include "todalab/exact/poly_matrix.hpp"
#include "todalab/toda/differential_operator.hpp"

namespace todalab::toda {

/// (n+1)x(n+1) matrix with p_i on the diagonal, q_i above and -1 below it.
exact::PolyMatrix build_toda_matrix(int n);

/// Commutative polynomials D_1(p,q)..D_{n+1}(p,q): coefficients of
/// x^{n+1-i} in det(A + xI).
std::vector<LaurentPolynomial> toda_polynomials(int n);

/// D_i with p_i replaced by hbar d/dt_i, coefficients on the left.
std::vector<DifferentialOperator> toda_operators(int n);

/// (hbar^2/2) sum d_i^2 - sum q_i
DifferentialOperator build_hamiltonian(int n);

/// Numeric D_i(p, q) for complex momenta p_0..p_n and q_1..q_n.
std::vector<std::complex<double>> evaluate_toda_polynomials(int n, const std::vector<std::complex<double>>& p,
                                                            const std::vector<std::complex<double>>& q);

}  // namespace todalab::toda
