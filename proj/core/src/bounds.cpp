#include <algorithm>
#include <cmath>
#include <limits>

#include "ncft/verify.hpp"

namespace ncft {

namespace {

constexpr double kBoundSlack = 1e-6;
constexpr double kFloorSlack = 1e-9;

// Bounds stated directly at exponent p (no monotonicity).
std::vector<TheoremBound> direct_bounds(ConstantEstimate::Kind kind, Exponent p, const OperatorSpaceDesc& e) {
  std::vector<TheoremBound> out;
  if (p.is_one())
    out.push_back({1.0, kind == ConstantEstimate::Kind::Type ? "type 1 endpoint: C = 1 for every E"
                                                              : "cotype inf endpoint: C = 1 for every E"});
  if (e.kind() == OperatorSpaceDesc::Kind::Scalar) out.push_back({1.0, "scalar Hausdorff-Young"});
  if (e.kind() != OperatorSpaceDesc::Kind::Scalar) {
    const Exponent s = e.exponent();
    if (p <= s && s <= p.conjugate()) out.push_back({1.0, "Schatten exponent s in [p, p']"});
  }
  if (p.value() == 2.0)
    out.push_back({std::sqrt(static_cast<double>(e.linear_dimension())), "sqrt(dim E) at p = 2"});
  if (kind == ConstantEstimate::Kind::Type && e.kind() == OperatorSpaceDesc::Kind::DiagLp && e.exponent() < p)
    out.push_back({std::pow(static_cast<double>(e.dim()), e.exponent().reciprocal() - p.reciprocal()),
                   "l^s(n) bound n^(1/s - 1/p)"});
  return out;
}

}  // namespace

std::optional<TheoremBound> theorem_upper_bound(ConstantEstimate::Kind kind, Exponent p, const OperatorSpaceDesc& e) {
  std::optional<TheoremBound> best;
  const auto offer = [&](TheoremBound b) {
    if (!best || b.value < best->value) best = std::move(b);
  };
  for (auto& b : direct_bounds(kind, p, e)) offer(std::move(b));
  // Monotonicity: C_{p1} <= C_{p2}^{p2'/p1'} for p1 <= p2.
  const Exponent two(2.0);
  if (p < two) {
    const double power = p.conjugate().is_infinite() ? 0.0 : two.conjugate().value() / p.conjugate().value();
    for (auto& b : direct_bounds(kind, two, e))
      offer({std::pow(b.value, power), b.source + ", propagated from p = 2 by monotonicity"});
  }
  return best;
}

bool BoundReport::any_flagged() const {
  return std::any_of(findings.begin(), findings.end(), [](const BoundFinding& f) { return f.flagged(); }) ||
         std::any_of(duality.begin(), duality.end(), [](const DualityPair& d) { return !d.consistent; });
}

BoundReport check_theorem_bounds(const std::vector<ConstantEstimate>& estimates) {
  BoundReport report;
  const auto exceeds = [](double value, double upper) { return value > upper + kBoundSlack * std::max(1.0, upper); };
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const ConstantEstimate& e = estimates[i];
    BoundFinding f{i, e.value, theorem_upper_bound(e.kind, e.p, e.space)};
    f.below_one = e.value < 1.0 - kFloorSlack;
    f.above_upper = f.upper && exceeds(e.value, f.upper->value);
    report.findings.push_back(std::move(f));
  }
  // Type of (p, E) and cotype of (p, E*) share one theoretical value.
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const ConstantEstimate& a = estimates[i];
    if (a.kind != ConstantEstimate::Kind::Type) continue;
    for (std::size_t j = 0; j < estimates.size(); ++j) {
      const ConstantEstimate& b = estimates[j];
      if (b.kind != ConstantEstimate::Kind::Cotype || b.group != a.group || !(b.p == a.p) || !(b.space == a.space.dual()))
        continue;
      double common = std::numeric_limits<double>::infinity();
      if (const auto u = theorem_upper_bound(a.kind, a.p, a.space)) common = std::min(common, u->value);
      if (const auto u = theorem_upper_bound(b.kind, b.p, b.space)) common = std::min(common, u->value);
      report.duality.push_back({i, j, common, !exceeds(a.value, common) && !exceeds(b.value, common)});
    }
  }
  return report;
}

}  // namespace ncft
