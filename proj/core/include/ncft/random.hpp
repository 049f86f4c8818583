#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

#include <Eigen/Dense>

namespace ncft {

using Rng = std::mt19937_64;

/// Mixes a base seed with stream indices (restart, trial, level, ...) so that
/// every independent unit of work owns a reproducible RNG stream.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> streams);

inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> streams) {
  return Rng(derive_seed(seed, streams));
}

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
std::complex<double> complex_gaussian(Rng& rng);

Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Random Hermitian matrix (GUE-like, unit off-diagonal variance).
Eigen::MatrixXcd gaussian_hermitian(Eigen::Index n, Rng& rng);

/// Haar-ish random unitary from the QR factor of a Gaussian matrix.
Eigen::MatrixXcd random_unitary(Eigen::Index n, Rng& rng);

}  // namespace ncft
