#pragma once

#include <vector>

#include "ncft/group.hpp"
#include "ncft/repr.hpp"
#include "ncft/space.hpp"
#include "ncft/specnorm.hpp"

namespace ncft {

/// An E-valued function on G, one value per element index.
struct GroupFunction {
  FiniteGroup group;
  OperatorSpaceDesc space;
  std::vector<EValue> values;

  GroupFunction(FiniteGroup g, OperatorSpaceDesc e, std::vector<EValue> v);

  static GroupFunction zero(const FiniteGroup& g, const OperatorSpaceDesc& e);
  static GroupFunction constant(const FiniteGroup& g, const EValue& value);
  /// |G|·δ_e ⊗ value.
  static GroupFunction scaled_delta(const FiniteGroup& g, const EValue& value);
  static GroupFunction random(const FiniteGroup& g, const OperatorSpaceDesc& e, Rng& rng);
};

/// One M_{d_π} ⊗ E block per irrep, in the table's order.
struct SpectralArray {
  OperatorSpaceDesc space;
  std::vector<BlockMatrix> blocks;

  std::vector<int> degrees() const;
  static SpectralArray zero(const IrrepTable& t, const OperatorSpaceDesc& e);
  static SpectralArray random(const IrrepTable& t, const OperatorSpaceDesc& e, Rng& rng);
};

/// f̂(π) = (1/|G|) Σ_g π(g)* ⊗ f(g).
SpectralArray forward(const GroupFunction& f, const IrrepTable& t);

/// f(g) = Σ_π d_π Σ_{i,j} A^π_{ij} π_{ji}(g).
GroupFunction inverse(const SpectralArray& a, const IrrepTable& t);

/// Σ_π d_π tr(A^π B^π) over the flattened blocks.
cplx pairing(const SpectralArray& a, const SpectralArray& b);

/// τf(g) = f(g⁻¹).
GroupFunction involution(const GroupFunction& f);

double lpG_norm(const GroupFunction& f, Exponent p);
NormSandwich lpGhat_norm(const SpectralArray& a, Exponent p, const SandwichOptions& options = {});

/// Largest entrywise difference, for round-trip checks.
double max_abs_difference(const GroupFunction& a, const GroupFunction& b);
double max_abs_difference(const SpectralArray& a, const SpectralArray& b);
double max_abs_entry(const GroupFunction& f);
double max_abs_entry(const SpectralArray& a);

}  // namespace ncft
