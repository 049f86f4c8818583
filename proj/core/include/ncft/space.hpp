#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ncft/exponent.hpp"
#include "ncft/linalg.hpp"
#include "ncft/random.hpp"

namespace ncft {

/// The value space E. DiagLp(n, p) is realized as the diagonal subspace of
/// Schatten(n, p), so every norm on it is computed by the Schatten engine.
class OperatorSpaceDesc {
 public:
  enum class Kind { Scalar, Schatten, DiagLp };

  static OperatorSpaceDesc scalar() { return OperatorSpaceDesc(Kind::Scalar, 1, Exponent::infinity()); }
  static OperatorSpaceDesc schatten(int m, Exponent q);
  static OperatorSpaceDesc diag_lp(int n, Exponent p);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  Exponent exponent() const { return exponent_; }

  /// Side of the square matrix carrying a value (1 for scalars).
  int matrix_dim() const { return dim_; }
  /// Dimension of E as a vector space.
  int linear_dimension() const;

  OperatorSpaceDesc dual() const;

  /// "scalar", "schatten:m:q", "diaglp:n:p".
  std::string to_string() const;

  friend bool operator==(const OperatorSpaceDesc& a, const OperatorSpaceDesc& b) {
    return a.kind_ == b.kind_ && a.dim_ == b.dim_ && (a.kind_ == Kind::Scalar || a.exponent_ == b.exponent_);
  }

 private:
  OperatorSpaceDesc(Kind kind, int dim, Exponent e) : kind_(kind), dim_(dim), exponent_(e) {}

  Kind kind_;
  int dim_;
  Exponent exponent_;
};

OperatorSpaceDesc parse_space(std::string_view text);

/// An element of E. Storage: 1×1 (Scalar), m×m (Schatten), n×1 diagonal (DiagLp).
class EValue {
 public:
  EValue(OperatorSpaceDesc space, Matrix data);

  static EValue scalar(cplx z);
  static EValue zero(const OperatorSpaceDesc& space);

  const OperatorSpaceDesc& space() const { return space_; }
  const Matrix& data() const { return data_; }

  /// The value as a square matrix (diagonal matrix for DiagLp).
  Matrix embedded() const;
  /// Inverse of embedded(); throws ShapeMismatch if `m` leaves the subspace.
  static EValue from_embedded(const OperatorSpaceDesc& space, const Matrix& m);

  EValue& operator+=(const EValue& other);
  EValue& operator*=(cplx s);
  friend EValue operator+(EValue a, const EValue& b) { return a += b; }
  friend EValue operator*(cplx s, EValue a) { return a *= s; }

 private:
  OperatorSpaceDesc space_;
  Matrix data_;
};

/// An element of M_n ⊗ E, stored flattened as an (n·m)×(n·m) matrix whose
/// (i, j) block occupies rows i·m..(i+1)·m and columns j·m..(j+1)·m.
class BlockMatrix {
 public:
  BlockMatrix(int outer, OperatorSpaceDesc space, Matrix flat);

  static BlockMatrix zero(int outer, const OperatorSpaceDesc& space);
  /// Row-major list of n² blocks.
  static BlockMatrix from_blocks(int outer, const std::vector<EValue>& blocks);
  /// a ⊗ y.
  static BlockMatrix elementary(const Matrix& a, const EValue& y);

  int outer() const { return outer_; }
  int inner() const { return space_.matrix_dim(); }
  const OperatorSpaceDesc& space() const { return space_; }
  const Matrix& flat() const { return flat_; }

  EValue block(int i, int j) const;

 private:
  int outer_;
  OperatorSpaceDesc space_;
  Matrix flat_;
};

/// Entries i.i.d. standard complex Gaussian, in the shape of E.
EValue random_evalue(const OperatorSpaceDesc& space, Rng& rng);
BlockMatrix random_block_matrix(int outer, const OperatorSpaceDesc& space, Rng& rng);

}  // namespace ncft
