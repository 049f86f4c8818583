#include "ncft/random.hpp"

#include <cmath>

namespace ncft {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> streams) {
  std::uint64_t h = splitmix64(seed);
  for (const auto s : streams) h = splitmix64(h ^ splitmix64(s + 0x632be59bd9b4e019ULL));
  return h;
}

std::complex<double> complex_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_gaussian(rng);
  return m;
}

Eigen::MatrixXcd gaussian_hermitian(Eigen::Index n, Rng& rng) {
  const Eigen::MatrixXcd g = gaussian_matrix(n, n, rng);
  return (g + g.adjoint()) * std::sqrt(0.5);
}

Eigen::MatrixXcd random_unitary(Eigen::Index n, Rng& rng) {
  const Eigen::MatrixXcd g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

}  // namespace ncft
