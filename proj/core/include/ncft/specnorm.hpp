#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ncft/exponent.hpp"
#include "ncft/linalg.hpp"
#include "ncft/space.hpp"

namespace ncft {

/// Certified bracket around a norm value.
struct NormSandwich {
  enum class Method { Exact, Fubini, FactorizationDual };

  double lower = 0.0;
  double estimate = 0.0;
  double upper = 0.0;
  Method method = Method::Exact;
  int restarts_used = 0;
  /// Set when no optimizer restart converged within its iteration budget.
  bool budget_exhausted = false;

  static NormSandwich exact(double value, Method method = Method::Exact);
  bool is_exact() const { return method != Method::FactorizationDual; }
  double gap() const { return upper - lower; }
};

std::string to_string(NormSandwich::Method m);
NormSandwich::Method parse_sandwich_method(const std::string& text);

struct SandwichOptions {
  int restarts = 32;
  int iterations = 400;
  int random_certificates = 64;
  std::uint64_t seed = 0;
  /// When only the upper bound is consumed, sup-type norms skip the optimizer
  /// (their upper bound is closed-form); the lower side is then weaker.
  bool upper_only = false;

  // Test hooks.
  bool force_factorization = false;  // route matched exponents through the optimizer
  bool structured_starts = true;     // identity and partial-trace starts
  bool projective_bound = true;

  /// Small budget for bulk sweeps and inner loops of the estimators.
  static SandwichOptions quick(std::uint64_t seed = 0);
};

double e_norm(const EValue& x);

/// ‖x‖_{S_n^p(E)}.
NormSandwich sn_p_norm(const BlockMatrix& x, Exponent p, const SandwichOptions& options = {});

/// ‖x‖_{M_n(E)}, the p = ∞ member.
NormSandwich mnE_norm(const BlockMatrix& x, const SandwichOptions& options = {});

/// Raw engine on a flattened (n·m)×(n·m) matrix in S_n^p(S_m^q).
NormSandwich schatten_valued_norm(const Matrix& x, int n, int m, Exponent p, Exponent q,
                                  const SandwichOptions& options = {});

/// Certified upper bound on ‖x‖_{S_n^p(S_m^q)} for p ≥ q without optimization:
/// min of the ordered, Hölder-dimension and projective bounds.
double sup_type_upper_bound(const Matrix& x, int n, int m, Exponent p, Exponent q, bool projective = true);

/// ((1/|G|) Σ_g ‖f(g)‖_E^p)^{1/p}; max over g for p = ∞.
double lp_norm_haar(std::span<const EValue> values, Exponent p);

/// (Σ_π d_π s_π^p)^{1/p} applied to lowers, estimates and uppers separately.
NormSandwich weighted_lp_combine(std::span<const NormSandwich> parts, std::span<const int> weights, Exponent p);

/// (Σ_π d_π ‖A^π‖_{S_{d_π}^p(E)}^p)^{1/p} with the d_π read from the blocks' outer dims.
NormSandwich lp_dual_norm(std::span<const BlockMatrix> blocks, Exponent p, const SandwichOptions& options = {});

/// l^p(n) as the diagonal of S_n^p: a scalar-valued n×n diagonal BlockMatrix.
BlockMatrix embed_diag_lp(const std::vector<cplx>& v);

}  // namespace ncft
