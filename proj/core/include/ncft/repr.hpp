#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncft/group.hpp"
#include "ncft/linalg.hpp"

namespace ncft {

/// Irreducible unitary representation: one d×d matrix per group element.
struct Irrep {
  int degree = 0;
  std::vector<Matrix> matrices;
  std::vector<cplx> character;

  /// Fills degree and character from the matrices.
  static Irrep from_matrices(std::vector<Matrix> matrices);
};

/// The dual object of a finite group, in canonical order: ascending degree,
/// then characters compared lexicographically (descending, at 1e-9 resolution)
/// over the element order. The trivial representation is always first.
struct IrrepTable {
  FiniteGroup group;
  std::vector<Irrep> irreps;

  int degree_square_sum() const;
  std::size_t size() const { return irreps.size(); }
  const Irrep& operator[](std::size_t i) const { return irreps[i]; }
};

/// Sorts irreps into canonical order.
void canonicalize(std::vector<Irrep>& irreps);

/// Closed-form irreps for cyclic, dihedral, quaternion8, symmetric(n<=4) and
/// products of these. Throws UnsupportedFamily otherwise.
IrrepTable irreps_catalog(const FiniteGroup& g);

inline constexpr double kDefaultClusterTol = 1e-8;

/// Decomposes the left regular representation with a seeded random commutant
/// element. Throws DecompositionStalled after 8 failed attempts and
/// ToleranceInvalid for tol outside (0, 1e-2].
IrrepTable irreps_numeric(const FiniteGroup& g, std::uint64_t seed, double tol = kDefaultClusterTol);

/// Catalog when available, numeric otherwise.
IrrepTable irreps_for(const FiniteGroup& g, std::uint64_t seed = 0);

struct IrrepValidation {
  struct Residual {
    double worst = 0.0;
    double tolerance = 0.0;
    int irrep = -1;    // where the worst value occurred (-1 if n/a)
    int element = -1;
    bool pass() const { return worst <= tolerance; }
  };

  Residual unitarity;                // max ‖π(g)π(g)* − I‖_op, tol 1e-9
  Residual homomorphism;             // max ‖π(gh) − π(g)π(h)‖_op, tol 1e-9
  Residual irreducibility;           // max |(1/|G|)Σ|χ|² − 1|, tol 1e-6
  Residual character_orthogonality;  // tol 1e-6
  Residual schur_orthogonality;      // tol 1e-8
  int degree_square_sum = 0;
  int order = 0;
  bool degrees_consistent = true;

  bool complete() const { return degree_square_sum == order; }
  bool pass() const {
    return degrees_consistent && complete() && unitarity.pass() && homomorphism.pass() &&
           irreducibility.pass() && character_orthogonality.pass() && schur_orthogonality.pass();
  }
};

IrrepValidation validate_irreps(const IrrepTable& table);

}  // namespace ncft
