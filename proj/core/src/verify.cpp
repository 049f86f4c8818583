#include "ncft/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncft/error.hpp"
#include "ncft/io.hpp"
#include "ncft/random.hpp"

namespace ncft {

namespace {

enum StreamTag : std::uint64_t {
  kPlancherelStream = 0x11,
  kHyStream = 0x12,
  kInvHyStream = 0x13,
  kLinfStream = 0x14,
  kHolderStream = 0x15,
  kMinkowskiStream = 0x16,
  kTypeStream = 0x21,
  kCotypeStream = 0x22,
  kSandwichStream = 0x30,
};

void require_hy_range(Exponent p) {
  require(p.value() >= 1.0 && p.value() <= 2.0, ErrorCode::PreconditionFailed,
          "p must lie in [1,2], got " + p.to_string());
}

SandwichOptions trial_options(const CheckOptions& o, std::uint64_t tag, int trial) {
  SandwichOptions s = o.sandwich;
  s.seed = derive_seed(o.seed, {kSandwichStream, tag, static_cast<std::uint64_t>(trial)});
  return s;
}

NormSandwich scaled(NormSandwich s, double c) {
  s.lower *= c;
  s.estimate *= c;
  s.upper *= c;
  return s;
}

// Exponent of the value space's Schatten structure; scalars use a 1×1 inner
// factor where the exponent is irrelevant.
Exponent inner_exponent(const OperatorSpaceDesc& e) {
  return e.kind() == OperatorSpaceDesc::Kind::Scalar ? Exponent::infinity() : e.exponent();
}

}  // namespace

std::string to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Verified: return "verified";
    case Verdict::Status::Consistent: return "consistent";
    case Verdict::Status::Violated: return "violated";
  }
  return "verified";
}

Verdict::Status parse_verdict_status(const std::string& text) {
  if (text == "verified") return Verdict::Status::Verified;
  if (text == "consistent") return Verdict::Status::Consistent;
  if (text == "violated") return Verdict::Status::Violated;
  fail(ErrorCode::ParseError, "unknown verdict status '" + text + "'");
}

Verdict make_verdict(const NormSandwich& lhs, const NormSandwich& rhs) {
  Verdict v;
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = rhs.lower - lhs.upper;
  if (lhs.upper <= rhs.lower * (1.0 + kVerdictSlack)) {
    v.status = Verdict::Status::Verified;
  } else if (lhs.lower > rhs.upper * (1.0 + kVerdictSlack)) {
    v.status = Verdict::Status::Violated;
  } else {
    v.status = Verdict::Status::Consistent;
  }
  return v;
}

void CheckResult::add(Verdict v, const std::function<nlohmann::json()>& describe_input) {
  switch (v.status) {
    case Verdict::Status::Verified: ++verified; break;
    case Verdict::Status::Consistent: ++consistent; break;
    case Verdict::Status::Violated: ++violated; break;
  }
  if (worst_trial < 0 || v.margin < worst_margin) {
    worst_margin = v.margin;
    worst_trial = static_cast<int>(verdicts.size());
    witness = describe_input();
  }
  verdicts.push_back(std::move(v));
}

Verdict hausdorff_young_verdict(const GroupFunction& f, const IrrepTable& t, Exponent p, const SandwichOptions& o) {
  require_hy_range(p);
  const NormSandwich lhs = lpGhat_norm(forward(f, t), p.conjugate(), o);
  return make_verdict(lhs, NormSandwich::exact(lpG_norm(f, p)));
}

Verdict inverse_hy_verdict(const SpectralArray& a, const IrrepTable& t, Exponent p, const SandwichOptions& o) {
  require_hy_range(p);
  const NormSandwich lhs = NormSandwich::exact(lpG_norm(inverse(a, t), p.conjugate()));
  return make_verdict(lhs, lpGhat_norm(a, p, o));
}

Verdict linf_l1_verdict(const GroupFunction& f, const IrrepTable& t, const SandwichOptions& o) {
  const OperatorSpaceDesc& e = f.space;
  require(e.kind() == OperatorSpaceDesc::Kind::Scalar || e.exponent().is_infinite(), ErrorCode::PreconditionFailed,
          "the L^inf-L^1 check needs E with an exact p = inf tier (scalar or exponent inf)");
  const NormSandwich lhs = lpGhat_norm(forward(f, t), Exponent::infinity(), o);
  return make_verdict(lhs, NormSandwich::exact(lpG_norm(f, Exponent(1.0))));
}

Verdict holder_lemma_verdict(const Matrix& a, const Matrix& b, int n1, int n2, Exponent p, const SandwichOptions& o) {
  require(a.rows() == n1 && a.cols() == n1 && b.rows() == static_cast<Eigen::Index>(n1) * n2 && b.cols() == b.rows(),
          ErrorCode::ShapeMismatch, "Hölder lemma shapes: A is n1 x n1, (B_ij) is (n1*n2) x (n1*n2)");
  // C_ij = tr(A B_ij) with (B_ij)_{kl} = b[k n2 + i, l n2 + j].
  Matrix c = Matrix::Zero(n2, n2);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < n1; ++k)
        for (int l = 0; l < n1; ++l) c(i, j) += a(l, k) * b(k * n2 + i, l * n2 + j);
  const NormSandwich lhs = NormSandwich::exact(schatten_norm(c, Exponent(1.0)));
  const NormSandwich inner = schatten_valued_norm(b, n1, n2, p, Exponent(1.0), o);
  return make_verdict(lhs, scaled(inner, schatten_norm(a, p.conjugate())));
}

Verdict minkowski_verdict(const Matrix& x, int k1, int k2, Exponent p1, Exponent p2, const SandwichOptions& o) {
  require(p1 <= p2, ErrorCode::PreconditionFailed, "quantized Minkowski needs p1 <= p2");
  const NormSandwich rhs = schatten_valued_norm(x, k1, k2, p1, p2, o);
  const NormSandwich lhs = schatten_valued_norm(swap_tensor_factors(x, k1, k2), k2, k1, p2, p1, o);
  return make_verdict(lhs, rhs);
}

CheckResult check_plancherel(const IrrepTable& t, const OperatorSpaceDesc& e, const CheckOptions& o, double rel_tol) {
  CheckResult r;
  r.name = "plancherel";
  const Exponent two(2.0);
  for (int k = 0; k < o.trials; ++k) {
    Rng rng = make_rng(o.seed, {kPlancherelStream, static_cast<std::uint64_t>(k)});
    const GroupFunction f = GroupFunction::random(t.group, e, rng);
    const NormSandwich lhs = lpGhat_norm(forward(f, t), two, trial_options(o, kPlancherelStream, k));
    const NormSandwich rhs = NormSandwich::exact(lpG_norm(f, two));
    Verdict v = make_verdict(lhs, rhs);
    // Equality: both directions must hold.
    const double scale = std::max(rhs.upper, std::numeric_limits<double>::min());
    const bool low = lhs.upper < rhs.lower * (1.0 - rel_tol);
    const bool high = lhs.lower > rhs.upper * (1.0 + rel_tol);
    v.margin = -std::abs(lhs.estimate - rhs.estimate) / scale;
    if (low || high) {
      v.status = Verdict::Status::Violated;
    } else if (lhs.is_exact()) {
      v.status = Verdict::Status::Verified;
    } else {
      v.status = Verdict::Status::Consistent;
    }
    r.add(std::move(v), [&] { return io::to_json(f); });
  }
  return r;
}

CheckResult check_hausdorff_young(const IrrepTable& t, Exponent p, const OperatorSpaceDesc& e, const CheckOptions& o) {
  require_hy_range(p);
  CheckResult r;
  r.name = "hy";
  for (int k = 0; k < o.trials; ++k) {
    Rng rng = make_rng(o.seed, {kHyStream, static_cast<std::uint64_t>(k)});
    const GroupFunction f = GroupFunction::random(t.group, e, rng);
    r.add(hausdorff_young_verdict(f, t, p, trial_options(o, kHyStream, k)), [&] { return io::to_json(f); });
  }
  return r;
}

CheckResult check_inverse_hy(const IrrepTable& t, Exponent p, const OperatorSpaceDesc& e, const CheckOptions& o) {
  require_hy_range(p);
  CheckResult r;
  r.name = "invhy";
  for (int k = 0; k < o.trials; ++k) {
    Rng rng = make_rng(o.seed, {kInvHyStream, static_cast<std::uint64_t>(k)});
    const SpectralArray a = SpectralArray::random(t, e, rng);
    r.add(inverse_hy_verdict(a, t, p, trial_options(o, kInvHyStream, k)), [&] { return io::to_json(a); });
  }
  return r;
}

CheckResult check_linf_l1(const IrrepTable& t, const OperatorSpaceDesc& e, const CheckOptions& o) {
  CheckResult r;
  r.name = "linf-l1";
  for (int k = 0; k < o.trials; ++k) {
    Rng rng = make_rng(o.seed, {kLinfStream, static_cast<std::uint64_t>(k)});
    const GroupFunction f = GroupFunction::random(t.group, e, rng);
    r.add(linf_l1_verdict(f, t, trial_options(o, kLinfStream, k)), [&] { return io::to_json(f); });
  }
  return r;
}

CheckResult check_holder_lemma(int n1, int n2, Exponent p, const CheckOptions& o) {
  require(n1 >= 1 && n2 >= 1 && n1 * n2 <= 64, ErrorCode::PreconditionFailed, "Hölder lemma sizes out of range");
  CheckResult r;
  r.name = "holder";
  for (int k = 0; k < o.trials; ++k) {
    Rng rng = make_rng(o.seed, {kHolderStream, static_cast<std::uint64_t>(k)});
    const Matrix a = gaussian_matrix(n1, n1, rng);
    const Matrix b = gaussian_matrix(n1 * n2, n1 * n2, rng);
    r.add(holder_lemma_verdict(a, b, n1, n2, p, trial_options(o, kHolderStream, k)),
          [&] { return nlohmann::json{{"A", io::to_json(a)}, {"B", io::to_json(b)}}; });
  }
  return r;
}

CheckResult check_minkowski(Exponent p1, Exponent p2, int k1, int k2, const CheckOptions& o) {
  require(k1 >= 1 && k2 >= 1 && k1 <= 3 && k2 <= 3, ErrorCode::PreconditionFailed, "Minkowski sizes must lie in 1..3");
  CheckResult r;
  r.name = "minkowski";
  for (int k = 0; k < o.trials; ++k) {
    Rng rng = make_rng(o.seed, {kMinkowskiStream, static_cast<std::uint64_t>(k)});
    const Matrix x = gaussian_matrix(k1 * k2, k1 * k2, rng);
    r.add(minkowski_verdict(x, k1, k2, p1, p2, trial_options(o, kMinkowskiStream, k)),
          [&] { return nlohmann::json{{"x", io::to_json(x)}}; });
  }
  return r;
}

// ------------------------------------------------------------ constants

std::string to_string(ConstantEstimate::Kind k) { return k == ConstantEstimate::Kind::Type ? "type" : "cotype"; }

ConstantEstimate::Kind parse_constant_kind(const std::string& text) {
  if (text == "type") return ConstantEstimate::Kind::Type;
  if (text == "cotype") return ConstantEstimate::Kind::Cotype;
  fail(ErrorCode::ParseError, "unknown constant kind '" + text + "'");
}

namespace {

constexpr int kRandomBlock = 32;
constexpr int kClimbBlock = 200;

// Test inputs at amplification level L: one (L·m)×(L·m) matrix per group
// element (type), or one (d_π·L·m)-square matrix per irrep (cotype).
class AmplifiedProblem {
 public:
  AmplifiedProblem(const IrrepTable& t, ConstantEstimate::Kind kind, Exponent p, const OperatorSpaceDesc& e, int level)
      : t_(t), kind_(kind), p_(p), e_(e), level_(level), m_(e.matrix_dim()), q_(inner_exponent(e)) {}

  std::size_t slots() const {
    return kind_ == ConstantEstimate::Kind::Type ? static_cast<std::size_t>(t_.group.order()) : t_.size();
  }
  int side(std::size_t slot) const {
    const int outer = kind_ == ConstantEstimate::Kind::Type ? level_ : t_[slot].degree * level_;
    return outer * m_;
  }
  bool allowed(Eigen::Index r, Eigen::Index c) const {
    return e_.kind() != OperatorSpaceDesc::Kind::DiagLp || r % m_ == c % m_;
  }

  std::vector<Matrix> random_input(Rng& rng) const {
    std::vector<Matrix> x(slots());
    for (std::size_t s = 0; s < x.size(); ++s) {
      x[s] = Matrix::Zero(side(s), side(s));
      for (Eigen::Index r = 0; r < x[s].rows(); ++r)
        for (Eigen::Index c = 0; c < x[s].cols(); ++c)
          if (allowed(r, c)) x[s](r, c) = complex_gaussian(rng);
    }
    return x;
  }

  // e_11 ⊗ 1_E in M_L ⊗ E.
  Matrix unit_value() const {
    Matrix u = Matrix::Zero(level_ * m_, level_ * m_);
    u.topLeftCorner(m_, m_) = Matrix::Identity(m_, m_);
    return u;
  }

  // Constant function (type) / trivial-irrep-only spectrum (cotype).
  std::vector<Matrix> flat_input() const {
    std::vector<Matrix> x = zero_input();
    if (kind_ == ConstantEstimate::Kind::Type) {
      for (auto& v : x) v = unit_value();
    } else {
      x[0] = unit_value();
    }
    return x;
  }

  // |G|·δ_e (type) / identity blocks at every irrep (cotype).
  std::vector<Matrix> peaked_input() const {
    std::vector<Matrix> x = zero_input();
    if (kind_ == ConstantEstimate::Kind::Type) {
      x[0] = static_cast<double>(t_.group.order()) * unit_value();
    } else {
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = kron(Matrix::Identity(t_[k].degree, t_[k].degree), unit_value());
    }
    return x;
  }

  double ratio(const std::vector<Matrix>& x, std::uint64_t seed) const {
    SandwichOptions upper_opts = SandwichOptions::quick(derive_seed(seed, {1}));
    upper_opts.upper_only = true;
    const SandwichOptions lower_opts = SandwichOptions::quick(derive_seed(seed, {2}));
    const Exponent pd = p_.conjugate();
    const int order = t_.group.order();
    const int lm = level_ * m_;

    std::vector<Matrix> spatial, spectral;
    if (kind_ == ConstantEstimate::Kind::Type) {
      spatial = x;
      for (const auto& pi : t_.irreps) {
        Matrix acc = Matrix::Zero(pi.degree * lm, pi.degree * lm);
        for (int g = 0; g < order; ++g) acc += kron(pi.matrices[static_cast<std::size_t>(g)].adjoint(), x[static_cast<std::size_t>(g)]);
        spectral.push_back(acc / static_cast<double>(order));
      }
    } else {
      spectral = x;
      for (int g = 0; g < order; ++g) {
        Matrix acc = Matrix::Zero(lm, lm);
        for (std::size_t k = 0; k < t_.size(); ++k) {
          const Matrix& rho = t_[k].matrices[static_cast<std::size_t>(g)];
          const int d = t_[k].degree;
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) acc += static_cast<double>(d) * rho(j, i) * x[k].block(i * lm, j * lm, lm, lm);
        }
        spatial.push_back(std::move(acc));
      }
    }

    // Domain side uses upper bounds, codomain side lower bounds.
    const bool type = kind_ == ConstantEstimate::Kind::Type;
    const Exponent spatial_exp = type ? p_ : pd;
    const Exponent spectral_exp = type ? pd : p_;
    RealVector spatial_norms(order);
    for (int g = 0; g < order; ++g) {
      const NormSandwich s = schatten_valued_norm(spatial[static_cast<std::size_t>(g)], level_, m_, spatial_exp, q_,
                                                  type ? upper_opts : lower_opts);
      spatial_norms(g) = type ? s.upper : s.lower;
    }
    RealVector spectral_norms(static_cast<Eigen::Index>(t_.size()));
    for (std::size_t k = 0; k < t_.size(); ++k) {
      const NormSandwich s = schatten_valued_norm(spectral[k], t_[k].degree * level_, m_, spectral_exp, q_,
                                                  type ? lower_opts : upper_opts);
      const double w = spectral_exp.is_infinite() ? 1.0 : std::pow(static_cast<double>(t_[k].degree), spectral_exp.reciprocal());
      spectral_norms(static_cast<Eigen::Index>(k)) = w * (type ? s.lower : s.upper);
    }
    const double spatial_norm =
        spatial_exp.is_infinite()
            ? spatial_norms.maxCoeff()
            : lp_of_nonnegative(spatial_norms, spatial_exp) * std::pow(static_cast<double>(order), -spatial_exp.reciprocal());
    const double spectral_norm = lp_of_nonnegative(spectral_norms, spectral_exp);
    const double numerator = type ? spectral_norm : spatial_norm;
    const double denominator = type ? spatial_norm : spectral_norm;
    return denominator > 0.0 ? numerator / denominator : 0.0;
  }

  nlohmann::json describe(const std::vector<Matrix>& x) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : x) arr.push_back(io::to_json(v));
    return {{"level", level_}, {kind_ == ConstantEstimate::Kind::Type ? "values" : "blocks", arr}};
  }

 private:
  std::vector<Matrix> zero_input() const {
    std::vector<Matrix> x(slots());
    for (std::size_t s = 0; s < x.size(); ++s) x[s] = Matrix::Zero(side(s), side(s));
    return x;
  }

  const IrrepTable& t_;
  ConstantEstimate::Kind kind_;
  Exponent p_;
  OperatorSpaceDesc e_;
  int level_;
  int m_;
  Exponent q_;
};

struct LevelResult {
  double best = 0.0;
  std::vector<Matrix> witness;
  int evaluations = 0;
};

// Fixed evaluation stream truncated at `budget`: structured inputs, then
// alternating blocks of random draws and hill-climbing on the incumbent.
LevelResult search_level(const AmplifiedProblem& problem, int budget, std::uint64_t seed) {
  LevelResult out;
  Rng rng = make_rng(seed, {0});
  const auto consider = [&](std::vector<Matrix> x) {
    const double r = problem.ratio(x, derive_seed(seed, {1, static_cast<std::uint64_t>(out.evaluations)}));
    ++out.evaluations;
    if (out.witness.empty() || r > out.best) {
      out.best = r;
      out.witness = std::move(x);
      return true;
    }
    return false;
  };

  if (out.evaluations < budget) consider(problem.flat_input());
  if (out.evaluations < budget) consider(problem.peaked_input());
  while (out.evaluations < budget) {
    for (int k = 0; k < kRandomBlock && out.evaluations < budget; ++k) consider(problem.random_input(rng));
    double step = 0.3;
    for (int k = 0; k < kClimbBlock && out.evaluations < budget; ++k) {
      std::vector<Matrix> x = out.witness;
      std::uniform_int_distribution<std::size_t> pick_slot(0, x.size() - 1);
      const std::size_t s = pick_slot(rng);
      std::uniform_int_distribution<Eigen::Index> pick(0, x[s].rows() - 1);
      Eigen::Index r = pick(rng), c = pick(rng);
      while (!problem.allowed(r, c)) c = pick(rng);
      const double scale = std::max(max_abs(x[s]), 1e-12);
      x[s](r, c) += step * scale * complex_gaussian(rng);
      step = consider(std::move(x)) ? std::min(step * 1.5, 2.0) : std::max(step * 0.8, 1e-4);
    }
  }
  return out;
}

ConstantEstimate estimate_constant(ConstantEstimate::Kind kind, const IrrepTable& t, Exponent p,
                                   const OperatorSpaceDesc& e, int level, int budget, std::uint64_t seed) {
  require_hy_range(p);
  require(level >= 1 && level <= kMaxAmplificationLevel, ErrorCode::PreconditionFailed,
          "amplification level must lie in 1.." + std::to_string(kMaxAmplificationLevel));
  require(budget >= 1, ErrorCode::PreconditionFailed, "budget must be positive");

  ConstantEstimate est;
  est.kind = kind;
  est.group = t.group.spec().to_string();
  est.p = p;
  est.space = e;
  est.level = level;
  est.budget = budget;
  est.seed = seed;
  const std::uint64_t tag = kind == ConstantEstimate::Kind::Type ? kTypeStream : kCotypeStream;
  for (int n = 1; n <= level; ++n) {
    const AmplifiedProblem problem(t, kind, p, e, n);
    LevelResult r = search_level(problem, budget, derive_seed(seed, {tag, static_cast<std::uint64_t>(n)}));
    est.level_values.push_back(r.best);
    est.trials += r.evaluations;
    if (n == 1 || r.best > est.value) {
      est.value = r.best;
      est.witness = problem.describe(r.witness);
    }
  }
  return est;
}

}  // namespace

ConstantEstimate estimate_type_constant(const IrrepTable& t, Exponent p, const OperatorSpaceDesc& e, int level,
                                        int budget, std::uint64_t seed) {
  return estimate_constant(ConstantEstimate::Kind::Type, t, p, e, level, budget, seed);
}

ConstantEstimate estimate_cotype_constant(const IrrepTable& t, Exponent p, const OperatorSpaceDesc& e, int level,
                                          int budget, std::uint64_t seed) {
  return estimate_constant(ConstantEstimate::Kind::Cotype, t, p, e, level, budget, seed);
}

}  // namespace ncft
