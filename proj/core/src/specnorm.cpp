#include "ncft/specnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncft/error.hpp"
#include "ncft/parallel.hpp"
#include "ncft/random.hpp"

namespace ncft {

namespace {

constexpr double kConvergedStep = 1e-9;
constexpr int kPartialTracePowerCap = 4;

enum class Sense { Minimize, Maximize };

// Hermitian n×n matrix <-> n² real coordinates (diagonal, then Re/Im of the
// strict upper triangle).
Matrix hermitian_from(const std::vector<double>& v, std::size_t offset, int n) {
  Matrix h(n, n);
  std::size_t k = offset;
  for (int i = 0; i < n; ++i) h(i, i) = v[k++];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = cplx(v[k], v[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  return h;
}

void hermitian_into(const Matrix& h, std::vector<double>& v, std::size_t offset) {
  const auto n = static_cast<int>(h.rows());
  std::size_t k = offset;
  for (int i = 0; i < n; ++i) v[k++] = h(i, i).real();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v[k++] = h(i, j).real();
      v[k++] = h(i, j).imag();
    }
}

// exp(h) normalized to unit S^{2r} norm, and its inverse.
struct GaugedFactor {
  Matrix factor;
  Matrix inverse;
};

GaugedFactor gauged_exp(const Matrix& h, Exponent two_r) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const RealVector& lambda = eig.eigenvalues();
  const double top = lambda.maxCoeff();
  RealVector up = (lambda.array() - top).exp().matrix();
  const double scale = lp_of_nonnegative(up, two_r);
  up /= scale;
  RealVector down(up.size());
  for (Eigen::Index i = 0; i < up.size(); ++i) down(i) = 1.0 / up(i);
  const Matrix& u = eig.eigenvectors();
  return {u * up.asDiagonal() * u.adjoint(), u * down.asDiagonal() * u.adjoint()};
}

Matrix outer_action(const Matrix& a, int m) { return kron(a, Matrix::Identity(m, m)); }

struct Problem {
  const Matrix& x;
  int n;
  int m;
  Exponent q;      // inner exponent of the objective
  Exponent two_r;  // gauge exponent
  Sense sense;

  // Objective in "lower is better" form.
  double evaluate(const std::vector<double>& params, Matrix* y_out = nullptr, GaugedFactor* a_out = nullptr,
                  GaugedFactor* b_out = nullptr) const {
    const GaugedFactor a = gauged_exp(hermitian_from(params, 0, n), two_r);
    const GaugedFactor b = gauged_exp(hermitian_from(params, static_cast<std::size_t>(n) * n, n), two_r);
    if (!a.inverse.allFinite() || !b.inverse.allFinite()) return std::numeric_limits<double>::infinity();
    const Matrix y = sense == Sense::Minimize ? Matrix(outer_action(a.inverse, m) * x * outer_action(b.inverse, m))
                                              : Matrix(outer_action(a.factor, m) * x * outer_action(b.factor, m));
    if (!y.allFinite()) return std::numeric_limits<double>::infinity();
    const double value = schatten_norm(y, q);
    if (y_out) *y_out = y;
    if (a_out) *a_out = a;
    if (b_out) *b_out = b;
    return sense == Sense::Minimize ? value : -value;
  }
};

struct RestartResult {
  std::vector<double> params;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Cyclic coordinate pattern search with per-coordinate adaptive steps.
RestartResult pattern_search(const Problem& problem, std::vector<double> start, int iterations) {
  const std::size_t dims = start.size();
  std::vector<double> steps(dims, 0.5);
  RestartResult r;
  r.params = std::move(start);
  r.value = problem.evaluate(r.params);
  for (int it = 0; it < iterations; ++it) {
    const std::size_t k = static_cast<std::size_t>(it) % dims;
    bool improved = false;
    for (const double sign : {1.0, -1.0}) {
      std::vector<double> trial = r.params;
      trial[k] += sign * steps[k];
      const double v = problem.evaluate(trial);
      if (v < r.value) {
        r.value = v;
        r.params = std::move(trial);
        improved = true;
        break;
      }
    }
    steps[k] = improved ? std::min(steps[k] * 2.0, 8.0) : steps[k] * 0.5;
    if (*std::max_element(steps.begin(), steps.end()) < kConvergedStep) {
      r.converged = true;
      break;
    }
  }
  return r;
}

// log of (P + ridge)^power, used as the partial-trace start.
Matrix partial_trace_start(const Matrix& gram, double power) {
  const int n = static_cast<int>(gram.rows());
  const Matrix herm = 0.5 * (gram + gram.adjoint());
  const double ridge = std::max(herm.trace().real() / n, 1e-300) * 1e-6;
  return hermitian_function(herm, [&](double l) { return power * std::log(std::max(l, 0.0) + ridge); });
}

struct OptimizerRun {
  std::vector<RestartResult> restarts;
  int best = 0;
  bool any_converged = false;
};

OptimizerRun run_optimizer(const Problem& problem, double partial_trace_power, const SandwichOptions& options) {
  const int n = problem.n;
  const std::size_t half = static_cast<std::size_t>(n) * n;
  const int restarts = std::max(1, options.restarts);
  OptimizerRun run;
  run.restarts.resize(static_cast<std::size_t>(restarts));
  const double power = std::min(partial_trace_power, static_cast<double>(kPartialTracePowerCap));

  parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t k) {
    std::vector<double> start(2 * half, 0.0);
    const bool structured = options.structured_starts && k < 2;
    if (structured && k == 1) {
      const Matrix xx = problem.x * problem.x.adjoint();
      const Matrix xtx = problem.x.adjoint() * problem.x;
      hermitian_into(partial_trace_start(partial_trace_inner(xx, n, problem.m), power), start, 0);
      hermitian_into(partial_trace_start(partial_trace_inner(xtx, n, problem.m), power), start, half);
    } else if (!structured) {
      Rng rng = make_rng(options.seed, {0x0F7A, k});
      hermitian_into(0.7 * gaussian_hermitian(n, rng), start, 0);
      hermitian_into(0.7 * gaussian_hermitian(n, rng), start, half);
    }
    run.restarts[k] = pattern_search(problem, std::move(start), options.iterations);
  });

  for (int k = 0; k < restarts; ++k) {
    if (run.restarts[k].value < run.restarts[run.best].value) run.best = k;
    run.any_converged = run.any_converged || run.restarts[k].converged;
  }
  return run;
}

double projective_bound(const Matrix& x, int n, int m, Exponent p, Exponent q) {
  double acc = 0.0;
  for (const auto& t : kronecker_svd(x, n, m)) acc += t.weight * schatten_norm(t.outer, p) * schatten_norm(t.inner, q);
  return acc;
}

double abs_pairing(const Matrix& x, const Matrix& z) { return std::abs((x.transpose().array() * z.array()).sum()); }

void finalize(NormSandwich& s) {
  if (s.lower > s.upper) s.lower = s.upper;  // rounding-level crossings only
  s.estimate = std::clamp(s.estimate, s.lower, s.upper);
}

// p ≤ q: ‖x‖ = inf ‖a‖_{2r} ‖(a⁻¹⊗1)x(b⁻¹⊗1)‖_q ‖b‖_{2r}.
NormSandwich inf_type(const Matrix& x, int n, int m, Exponent p, Exponent q, const SandwichOptions& options) {
  const double inv_r = p.reciprocal() - q.reciprocal();
  const Exponent two_r = Exponent::from_reciprocal(inv_r / 2.0);
  const Exponent pd = p.conjugate(), qd = q.conjugate();

  const Problem problem{x, n, m, q, two_r, Sense::Minimize};
  const OptimizerRun run = run_optimizer(problem, p.value() * inv_r / 4.0, options);

  NormSandwich s;
  s.method = NormSandwich::Method::FactorizationDual;
  s.restarts_used = static_cast<int>(run.restarts.size());
  s.budget_exhausted = !run.any_converged;

  const double optimized = run.restarts[run.best].value;
  const double norm_p = schatten_norm(x, p);
  s.upper = std::min(optimized, norm_p);
  if (options.projective_bound) s.upper = std::min(s.upper, projective_bound(x, n, m, p, q));
  s.estimate = optimized;

  s.lower = std::max(schatten_norm(x, q), std::pow(static_cast<double>(m), -inv_r) * norm_p);

  const auto try_certificate = [&](const Matrix& z) {
    const double u = sup_type_upper_bound(z, n, m, pd, qd, options.projective_bound);
    if (u > 0.0 && std::isfinite(u)) s.lower = std::max(s.lower, abs_pairing(x, z) / u);
  };
  try_certificate(x.adjoint());
  try_certificate(dual_element(x, q));
  for (const auto& r : run.restarts) {
    Matrix y;
    GaugedFactor a, b;
    if (!std::isfinite(problem.evaluate(r.params, &y, &a, &b))) continue;
    try_certificate(outer_action(b.inverse, m) * dual_element(y, q) * outer_action(a.inverse, m));
  }
  for (const auto& t : kronecker_svd(x, n, m)) {
    // Elementary certificates: exact dual norm ‖Â‖_{p'}‖Ŷ‖_{q'} by the cross-norm property.
    const Matrix za = dual_element(t.outer, p), zy = dual_element(t.inner, q);
    const double u = schatten_norm(za, pd) * schatten_norm(zy, qd);
    if (u > 0.0) s.lower = std::max(s.lower, abs_pairing(x, kron(za, zy)) / u);
  }
  for (int k = 0; k < options.random_certificates; ++k) {
    Rng rng = make_rng(options.seed, {0xCE47, static_cast<std::uint64_t>(k)});
    try_certificate(gaussian_matrix(n * m, n * m, rng));
  }
  finalize(s);
  return s;
}

// p > q: ‖x‖ = sup ‖(a⊗1)x(b⊗1)‖_q over the unit balls of S^{2r}.
NormSandwich sup_type(const Matrix& x, int n, int m, Exponent p, Exponent q, const SandwichOptions& options) {
  const double inv_r = q.reciprocal() - p.reciprocal();
  const Exponent two_r = Exponent::from_reciprocal(inv_r / 2.0);
  const Exponent pd = p.conjugate(), qd = q.conjugate();

  const Problem problem{x, n, m, q, two_r, Sense::Maximize};
  const double power = p.is_infinite() ? static_cast<double>(kPartialTracePowerCap) : p.value() * inv_r / 4.0;

  NormSandwich s;
  s.method = NormSandwich::Method::FactorizationDual;
  s.lower = schatten_norm(x, p);
  if (!options.upper_only) {
    const OptimizerRun run = run_optimizer(problem, power, options);
    s.restarts_used = static_cast<int>(run.restarts.size());
    s.budget_exhausted = !run.any_converged;
    s.lower = std::max(s.lower, -run.restarts[run.best].value);
  }
  for (const auto& t : kronecker_svd(x, n, m)) {
    const Matrix za = dual_element(t.outer, p), zy = dual_element(t.inner, q);
    const double u = schatten_norm(za, pd) * schatten_norm(zy, qd);
    if (u > 0.0) s.lower = std::max(s.lower, abs_pairing(x, kron(za, zy)) / u);
  }
  s.estimate = s.lower;
  s.upper = sup_type_upper_bound(x, n, m, p, q, options.projective_bound);
  finalize(s);
  return s;
}

}  // namespace

NormSandwich NormSandwich::exact(double value, Method method) {
  NormSandwich s;
  s.lower = s.estimate = s.upper = value;
  s.method = method;
  return s;
}

std::string to_string(NormSandwich::Method m) {
  switch (m) {
    case NormSandwich::Method::Exact: return "exact";
    case NormSandwich::Method::Fubini: return "fubini";
    case NormSandwich::Method::FactorizationDual: return "factorization+dual";
  }
  return "exact";
}

NormSandwich::Method parse_sandwich_method(const std::string& text) {
  if (text == "exact") return NormSandwich::Method::Exact;
  if (text == "fubini") return NormSandwich::Method::Fubini;
  if (text == "factorization+dual") return NormSandwich::Method::FactorizationDual;
  fail(ErrorCode::ParseError, "unknown sandwich method '" + text + "'");
}

SandwichOptions SandwichOptions::quick(std::uint64_t seed) {
  SandwichOptions o;
  o.restarts = 4;
  o.iterations = 60;
  o.random_certificates = 8;
  o.seed = seed;
  return o;
}

double e_norm(const EValue& x) {
  const OperatorSpaceDesc& e = x.space();
  switch (e.kind()) {
    case OperatorSpaceDesc::Kind::Scalar: return std::abs(x.data()(0, 0));
    case OperatorSpaceDesc::Kind::Schatten: return schatten_norm(x.data(), e.exponent());
    case OperatorSpaceDesc::Kind::DiagLp: return lp_of_nonnegative(x.data().col(0).cwiseAbs(), e.exponent());
  }
  return 0.0;
}

double sup_type_upper_bound(const Matrix& x, int n, int m, Exponent p, Exponent q, bool projective) {
  require(q <= p, ErrorCode::PreconditionFailed, "sup-type bound needs p >= q");
  const double inv_r = q.reciprocal() - p.reciprocal();
  double u = std::min(schatten_norm(x, q), std::pow(static_cast<double>(m), inv_r) * schatten_norm(x, p));
  if (projective && n > 1 && m > 1) u = std::min(u, projective_bound(x, n, m, p, q));
  return u;
}

NormSandwich schatten_valued_norm(const Matrix& x, int n, int m, Exponent p, Exponent q,
                                  const SandwichOptions& options) {
  require(n >= 1 && m >= 1 && x.rows() == static_cast<Eigen::Index>(n) * m && x.cols() == x.rows(),
          ErrorCode::ShapeMismatch, "flattened matrix must be (n*m)x(n*m)");
  if (m == 1) return NormSandwich::exact(schatten_norm(x, p));
  if (n == 1) return NormSandwich::exact(schatten_norm(x, q));
  if (p == q && !options.force_factorization) return NormSandwich::exact(schatten_norm(x, p), NormSandwich::Method::Fubini);
  return p <= q ? inf_type(x, n, m, p, q, options) : sup_type(x, n, m, p, q, options);
}

NormSandwich sn_p_norm(const BlockMatrix& x, Exponent p, const SandwichOptions& options) {
  const OperatorSpaceDesc& e = x.space();
  switch (e.kind()) {
    case OperatorSpaceDesc::Kind::Scalar: return NormSandwich::exact(schatten_norm(x.flat(), p));
    case OperatorSpaceDesc::Kind::Schatten:
    case OperatorSpaceDesc::Kind::DiagLp:
      return schatten_valued_norm(x.flat(), x.outer(), x.inner(), p, e.exponent(), options);
  }
  fail(ErrorCode::UnsupportedSpace, "unsupported value space " + e.to_string());
}

NormSandwich mnE_norm(const BlockMatrix& x, const SandwichOptions& options) {
  return sn_p_norm(x, Exponent::infinity(), options);
}

double lp_norm_haar(std::span<const EValue> values, Exponent p) {
  require(!values.empty(), ErrorCode::ShapeMismatch, "function on an empty group");
  RealVector norms(static_cast<Eigen::Index>(values.size()));
  for (std::size_t g = 0; g < values.size(); ++g) norms(static_cast<Eigen::Index>(g)) = e_norm(values[g]);
  if (p.is_infinite()) return norms.maxCoeff();
  return lp_of_nonnegative(norms, p) * std::pow(static_cast<double>(values.size()), -p.reciprocal());
}

NormSandwich weighted_lp_combine(std::span<const NormSandwich> parts, std::span<const int> weights, Exponent p) {
  require(parts.size() == weights.size(), ErrorCode::ShapeMismatch, "one weight per part");
  const auto n = static_cast<Eigen::Index>(parts.size());
  RealVector lo(n), est(n), up(n);
  NormSandwich out;
  out.method = NormSandwich::Method::Exact;
  for (Eigen::Index k = 0; k < n; ++k) {
    const NormSandwich& s = parts[static_cast<std::size_t>(k)];
    const double w = p.is_infinite() ? 1.0 : std::pow(static_cast<double>(weights[static_cast<std::size_t>(k)]), p.reciprocal());
    lo(k) = w * s.lower;
    est(k) = w * s.estimate;
    up(k) = w * s.upper;
    if (static_cast<int>(s.method) > static_cast<int>(out.method)) out.method = s.method;
    out.restarts_used = std::max(out.restarts_used, s.restarts_used);
    out.budget_exhausted = out.budget_exhausted || s.budget_exhausted;
  }
  out.lower = lp_of_nonnegative(lo, p);
  out.estimate = lp_of_nonnegative(est, p);
  out.upper = lp_of_nonnegative(up, p);
  if (out.is_exact()) out.lower = out.estimate = out.upper;
  return out;
}

NormSandwich lp_dual_norm(std::span<const BlockMatrix> blocks, Exponent p, const SandwichOptions& options) {
  std::vector<NormSandwich> parts;
  std::vector<int> weights;
  parts.reserve(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    SandwichOptions o = options;
    o.seed = derive_seed(options.seed, {0xB10C, k});
    parts.push_back(sn_p_norm(blocks[k], p, o));
    weights.push_back(blocks[k].outer());
  }
  return weighted_lp_combine(parts, weights, p);
}

BlockMatrix embed_diag_lp(const std::vector<cplx>& v) {
  require(!v.empty(), ErrorCode::ShapeMismatch, "empty vector");
  Matrix d = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = v[i];
  return BlockMatrix(static_cast<int>(v.size()), OperatorSpaceDesc::scalar(), d);
}

}  // namespace ncft
