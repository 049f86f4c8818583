#include "ncft/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ncft/error.hpp"

namespace ncft {

namespace {

void require_finite(const Matrix& a) {
  require(a.allFinite(), ErrorCode::NonFiniteEntries, "matrix has NaN or infinite entries");
}

}  // namespace

RealVector singular_values(const Matrix& a) {
  require_finite(a);
  if (a.size() == 0) return RealVector();
  if (a.rows() == 1 || a.cols() == 1) {
    RealVector s(1);
    s(0) = a.norm();
    return s;
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

double lp_of_nonnegative(const RealVector& v, Exponent p) {
  if (v.size() == 0) return 0.0;
  const double top = v.maxCoeff();
  if (top == 0.0) return 0.0;
  if (p.is_infinite()) return top;
  if (p.value() == 1.0) return v.sum();
  if (p.value() == 2.0) return top * (v / top).norm();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(v(i) / top, p.value());
  return top * std::pow(acc, 1.0 / p.value());
}

double schatten_norm(const Matrix& a, Exponent p) { return lp_of_nonnegative(singular_values(a), p); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace_inner(const Matrix& x, Eigen::Index n, Eigen::Index m) {
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = x.block(i * m, j * m, m, m).trace();
  return out;
}

Matrix partial_trace_outer(const Matrix& x, Eigen::Index n, Eigen::Index m) {
  Matrix out = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < n; ++i) out += x.block(i * m, i * m, m, m);
  return out;
}

Matrix swap_tensor_factors(const Matrix& x, Eigen::Index n, Eigen::Index m) {
  Matrix out(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) out(a * n + i, b * n + j) = x(i * m + a, j * m + b);
  return out;
}

Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  RealVector vals = eig.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = f(vals(i));
  return eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().adjoint();
}

Matrix dual_element(const Matrix& a, Exponent p) {
  require_finite(a);
  Matrix out = Matrix::Zero(a.cols(), a.rows());
  if (a.size() == 0 || max_abs(a) == 0.0) return out;
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  const Eigen::Index k = s.size();
  if (p.is_infinite()) return v.col(0) * u.col(0).adjoint();
  if (p.is_one()) {
    // Partial isometry V U*; on a kernel any contraction is allowed, so the
    // full product keeps ‖·‖_∞ = 1.
    return v.leftCols(k) * u.leftCols(k).adjoint();
  }
  const double norm = lp_of_nonnegative(s, p);
  RealVector g(k);
  for (Eigen::Index i = 0; i < k; ++i) g(i) = std::pow(s(i) / norm, p.value() - 1.0);
  return v.leftCols(k) * g.asDiagonal() * u.leftCols(k).adjoint();
}

std::vector<KroneckerTerm> kronecker_svd(const Matrix& x, Eigen::Index n, Eigen::Index m) {
  // R[(i,j), (a,b)] = X[i m + a, j m + b]; X = Σ σ_k reshape(u_k) ⊗ reshape(v̄_k).
  Matrix r(n * n, m * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) r(i * n + j, a * m + b) = x(i * m + a, j * m + b);
  require_finite(r);
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  std::vector<KroneckerTerm> terms;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) == 0.0) break;
    KroneckerTerm t{s(k), Matrix(n, n), Matrix(m, m)};
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) t.outer(i, j) = svd.matrixU()(i * n + j, k);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b) t.inner(a, b) = std::conj(svd.matrixV()(a * m + b, k));
    terms.push_back(std::move(t));
  }
  return terms;
}

double max_abs(const Matrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace ncft
