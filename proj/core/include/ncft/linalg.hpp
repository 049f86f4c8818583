#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "ncft/exponent.hpp"

namespace ncft {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Singular values in non-increasing order. Throws NonFiniteEntries.
RealVector singular_values(const Matrix& a);

/// ℓ^p norm of a non-negative vector (max for p = ∞), scaled to avoid overflow.
double lp_of_nonnegative(const RealVector& v, Exponent p);

/// Schatten norm: (Σ σ_i^p)^{1/p}, or σ_max for p = ∞. Rectangular input allowed.
double schatten_norm(const Matrix& a, Exponent p);

Matrix kron(const Matrix& a, const Matrix& b);

/// Tr over the inner m-dimensional factor of an (n·m)×(n·m) matrix: an n×n matrix.
Matrix partial_trace_inner(const Matrix& x, Eigen::Index n, Eigen::Index m);

/// Tr over the outer n-dimensional factor: an m×m matrix (sum of diagonal blocks).
Matrix partial_trace_outer(const Matrix& x, Eigen::Index n, Eigen::Index m);

/// Swaps tensor factors: X ∈ M_n ⊗ M_m  ↦  X' ∈ M_m ⊗ M_n.
Matrix swap_tensor_factors(const Matrix& x, Eigen::Index n, Eigen::Index m);

/// f applied to the spectrum of a Hermitian matrix.
Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f);

/// Norming functional of `a` in S^p: tr(a·d) = ‖a‖_p and ‖d‖_{p'} = 1.
/// Returns zero for the zero matrix.
Matrix dual_element(const Matrix& a, Exponent p);

struct KroneckerTerm {
  double weight;  // singular value of the rearranged matrix
  Matrix outer;   // n×n, unit Frobenius norm
  Matrix inner;   // m×m, unit Frobenius norm
};

/// Exact decomposition X = Σ weight_k · outer_k ⊗ inner_k from the SVD of the
/// Van Loan–Pitsianis rearrangement; only exactly-zero weights are dropped.
std::vector<KroneckerTerm> kronecker_svd(const Matrix& x, Eigen::Index n, Eigen::Index m);

/// Max absolute entry (useful for relative residuals).
double max_abs(const Matrix& a);

/// Operator (spectral) norm.
inline double op_norm(const Matrix& a) { return schatten_norm(a, Exponent::infinity()); }

}  // namespace ncft
