#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncft/fourier.hpp"
#include "ncft/repr.hpp"
#include "ncft/specnorm.hpp"

namespace ncft {

inline constexpr double kVerdictSlack = 1e-9;

/// Three-valued reading of lhs ≤ rhs from two sandwiches.
struct Verdict {
  enum class Status { Verified, Consistent, Violated };

  Status status = Status::Verified;
  NormSandwich lhs;
  NormSandwich rhs;
  /// rhs.lower − lhs.upper: the certified slack (negative unless verified).
  double margin = 0.0;
};

std::string to_string(Verdict::Status s);
Verdict::Status parse_verdict_status(const std::string& text);

Verdict make_verdict(const NormSandwich& lhs, const NormSandwich& rhs);

/// Outcome of one randomized check.
struct CheckResult {
  std::string name;
  std::vector<Verdict> verdicts;
  int verified = 0;
  int consistent = 0;
  int violated = 0;
  double worst_margin = 0.0;
  int worst_trial = -1;
  nlohmann::json witness;  // test input with the worst margin

  void add(Verdict v, const std::function<nlohmann::json()>& describe_input);
  bool any_violated() const { return violated > 0; }
};

struct CheckOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  SandwichOptions sandwich = SandwichOptions::quick();
};

// Single-instance verdicts (used by the randomized checks and by tests).
Verdict hausdorff_young_verdict(const GroupFunction& f, const IrrepTable& t, Exponent p, const SandwichOptions& o = {});
Verdict inverse_hy_verdict(const SpectralArray& a, const IrrepTable& t, Exponent p, const SandwichOptions& o = {});
Verdict linf_l1_verdict(const GroupFunction& f, const IrrepTable& t, const SandwichOptions& o = {});
/// `a` is n1×n1; `b` is (B_ij) flattened with the n1-index outer, i.e. an
/// element of S_{n1}^p(S_{n2}^1).
Verdict holder_lemma_verdict(const Matrix& a, const Matrix& b, int n1, int n2, Exponent p, const SandwichOptions& o = {});
/// x ∈ S_{k1}^{p1}(S_{k2}^{p2}); lhs is the swapped tensor in S_{k2}^{p2}(S_{k1}^{p1}).
Verdict minkowski_verdict(const Matrix& x, int k1, int k2, Exponent p1, Exponent p2, const SandwichOptions& o = {});

/// Two-sided check of ‖f‖_{L²} = ‖f̂‖_{ℒ²}; verified when equal to `rel_tol`.
CheckResult check_plancherel(const IrrepTable& t, const OperatorSpaceDesc& e, const CheckOptions& o,
                             double rel_tol = 1e-9);
CheckResult check_hausdorff_young(const IrrepTable& t, Exponent p, const OperatorSpaceDesc& e, const CheckOptions& o);
CheckResult check_inverse_hy(const IrrepTable& t, Exponent p, const OperatorSpaceDesc& e, const CheckOptions& o);
CheckResult check_linf_l1(const IrrepTable& t, const OperatorSpaceDesc& e, const CheckOptions& o);
CheckResult check_holder_lemma(int n1, int n2, Exponent p, const CheckOptions& o);
CheckResult check_minkowski(Exponent p1, Exponent p2, int k1, int k2, const CheckOptions& o);

/// Lower bound on a truncated type or cotype constant.
struct ConstantEstimate {
  enum class Kind { Type, Cotype };

  Kind kind = Kind::Type;
  std::string group;  // canonical spec
  Exponent p;
  OperatorSpaceDesc space = OperatorSpaceDesc::scalar();
  int level = 1;
  int budget = 0;
  std::uint64_t seed = 0;
  double value = 0.0;               // max over levels 1..level
  std::vector<double> level_values;  // best ratio found at each level
  int trials = 0;                    // ratio evaluations over all levels
  nlohmann::json witness;
};

std::string to_string(ConstantEstimate::Kind k);
ConstantEstimate::Kind parse_constant_kind(const std::string& text);

inline constexpr int kMaxAmplificationLevel = 3;

/// Certified lower bound on C_p^1(E,G): max of
/// lower(‖f̂‖_{ℒ^{p'}(S_N^{p'}(E))}) / upper(‖f‖_{L^p(S_N^p(E))}) over test
/// functions valued in M_N ⊗ E, N = 1..level, `budget` evaluations per level.
ConstantEstimate estimate_type_constant(const IrrepTable& t, Exponent p, const OperatorSpaceDesc& e, int level,
                                        int budget, std::uint64_t seed);
/// Mirror for the inverse transform ℒ^p(Ĝ) → L^{p'}(G) (cotype p').
ConstantEstimate estimate_cotype_constant(const IrrepTable& t, Exponent p, const OperatorSpaceDesc& e, int level,
                                          int budget, std::uint64_t seed);

/// Smallest theorem-backed upper bound on the constant, with its source.
struct TheoremBound {
  double value;
  std::string source;
};
std::optional<TheoremBound> theorem_upper_bound(ConstantEstimate::Kind kind, Exponent p, const OperatorSpaceDesc& e);

struct BoundFinding {
  std::size_t index;  // into the input records
  double value;
  std::optional<TheoremBound> upper;
  bool below_one = false;
  bool above_upper = false;
  bool flagged() const { return below_one || above_upper; }
};

struct DualityPair {
  std::size_t type_index;
  std::size_t cotype_index;
  double common_upper;  // +inf when no theorem bound applies
  bool consistent;
};

struct BoundReport {
  std::vector<BoundFinding> findings;
  std::vector<DualityPair> duality;
  bool any_flagged() const;
};

BoundReport check_theorem_bounds(const std::vector<ConstantEstimate>& estimates);

}  // namespace ncft
