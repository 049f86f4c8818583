#include "ncft/fourier.hpp"

#include <algorithm>

#include "ncft/error.hpp"

namespace ncft {

namespace {

void require_same_group(const FiniteGroup& a, const FiniteGroup& b) {
  require(a.order() == b.order() && a.spec() == b.spec(), ErrorCode::GroupMismatch,
          "function on " + a.spec().to_string() + " used with table for " + b.spec().to_string());
}

void require_matches_table(const SpectralArray& a, const IrrepTable& t) {
  require(a.blocks.size() == t.size(), ErrorCode::ShapeMismatch, "spectral array needs one block per irrep");
  for (std::size_t k = 0; k < t.size(); ++k)
    require(a.blocks[k].outer() == t[k].degree, ErrorCode::ShapeMismatch, "block outer dimension differs from degree");
}

}  // namespace

GroupFunction::GroupFunction(FiniteGroup g, OperatorSpaceDesc e, std::vector<EValue> v)
    : group(std::move(g)), space(e), values(std::move(v)) {
  require(static_cast<int>(values.size()) == group.order(), ErrorCode::ShapeMismatch,
          "function needs one value per group element");
  for (const auto& x : values)
    require(x.space() == space, ErrorCode::ShapeMismatch, "function value lies in a different space");
}

GroupFunction GroupFunction::zero(const FiniteGroup& g, const OperatorSpaceDesc& e) {
  return GroupFunction(g, e, std::vector<EValue>(static_cast<std::size_t>(g.order()), EValue::zero(e)));
}

GroupFunction GroupFunction::constant(const FiniteGroup& g, const EValue& value) {
  return GroupFunction(g, value.space(), std::vector<EValue>(static_cast<std::size_t>(g.order()), value));
}

GroupFunction GroupFunction::scaled_delta(const FiniteGroup& g, const EValue& value) {
  GroupFunction f = zero(g, value.space());
  f.values[0] = static_cast<double>(g.order()) * value;
  return f;
}

GroupFunction GroupFunction::random(const FiniteGroup& g, const OperatorSpaceDesc& e, Rng& rng) {
  std::vector<EValue> v;
  v.reserve(static_cast<std::size_t>(g.order()));
  for (int x = 0; x < g.order(); ++x) v.push_back(random_evalue(e, rng));
  return GroupFunction(g, e, std::move(v));
}

std::vector<int> SpectralArray::degrees() const {
  std::vector<int> d;
  d.reserve(blocks.size());
  for (const auto& b : blocks) d.push_back(b.outer());
  return d;
}

SpectralArray SpectralArray::zero(const IrrepTable& t, const OperatorSpaceDesc& e) {
  SpectralArray a{e, {}};
  for (const auto& r : t.irreps) a.blocks.push_back(BlockMatrix::zero(r.degree, e));
  return a;
}

SpectralArray SpectralArray::random(const IrrepTable& t, const OperatorSpaceDesc& e, Rng& rng) {
  SpectralArray a{e, {}};
  for (const auto& r : t.irreps) a.blocks.push_back(random_block_matrix(r.degree, e, rng));
  return a;
}

SpectralArray forward(const GroupFunction& f, const IrrepTable& t) {
  require_same_group(f.group, t.group);
  const int order = f.group.order();
  const int m = f.space.matrix_dim();
  SpectralArray out{f.space, {}};
  out.blocks.reserve(t.size());
  std::vector<Matrix> embedded;
  embedded.reserve(f.values.size());
  for (const auto& v : f.values) embedded.push_back(v.embedded());
  for (const auto& pi : t.irreps) {
    const int d = pi.degree;
    Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(d) * m, static_cast<Eigen::Index>(d) * m);
    for (int g = 0; g < order; ++g) {
      const Matrix& rho = pi.matrices[static_cast<std::size_t>(g)];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) acc.block(i * m, j * m, m, m) += std::conj(rho(j, i)) * embedded[static_cast<std::size_t>(g)];
    }
    acc /= static_cast<double>(order);
    out.blocks.emplace_back(d, f.space, std::move(acc));
  }
  return out;
}

GroupFunction inverse(const SpectralArray& a, const IrrepTable& t) {
  require_matches_table(a, t);
  const int order = t.group.order();
  const int m = a.space.matrix_dim();
  std::vector<EValue> values;
  values.reserve(static_cast<std::size_t>(order));
  for (int g = 0; g < order; ++g) {
    Matrix acc = Matrix::Zero(m, m);
    for (std::size_t k = 0; k < t.size(); ++k) {
      const Matrix& rho = t[k].matrices[static_cast<std::size_t>(g)];
      const Matrix& flat = a.blocks[k].flat();
      const int d = t[k].degree;
      Matrix part = Matrix::Zero(m, m);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) part += rho(j, i) * flat.block(i * m, j * m, m, m);
      acc += static_cast<double>(d) * part;
    }
    values.push_back(EValue::from_embedded(a.space, a.space.kind() == OperatorSpaceDesc::Kind::DiagLp
                                                        ? Matrix(acc.diagonal().asDiagonal())
                                                        : acc));
  }
  return GroupFunction(t.group, a.space, std::move(values));
}

cplx pairing(const SpectralArray& a, const SpectralArray& b) {
  require(a.blocks.size() == b.blocks.size(), ErrorCode::ShapeMismatch, "pairing needs arrays over the same dual");
  require(a.space.matrix_dim() == b.space.matrix_dim(), ErrorCode::ShapeMismatch, "pairing needs E and its dual");
  cplx acc = 0.0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    require(a.blocks[k].outer() == b.blocks[k].outer(), ErrorCode::ShapeMismatch, "block degrees differ");
    const Matrix& x = a.blocks[k].flat();
    const Matrix& y = b.blocks[k].flat();
    acc += static_cast<double>(a.blocks[k].outer()) * (x.transpose().array() * y.array()).sum();
  }
  return acc;
}

GroupFunction involution(const GroupFunction& f) {
  std::vector<EValue> values;
  values.reserve(f.values.size());
  for (int g = 0; g < f.group.order(); ++g) values.push_back(f.values[static_cast<std::size_t>(f.group.inverse(g))]);
  return GroupFunction(f.group, f.space, std::move(values));
}

double lpG_norm(const GroupFunction& f, Exponent p) { return lp_norm_haar(f.values, p); }

NormSandwich lpGhat_norm(const SpectralArray& a, Exponent p, const SandwichOptions& options) {
  return lp_dual_norm(a.blocks, p, options);
}

double max_abs_difference(const GroupFunction& a, const GroupFunction& b) {
  require(a.values.size() == b.values.size(), ErrorCode::ShapeMismatch, "functions on different groups");
  double worst = 0.0;
  for (std::size_t g = 0; g < a.values.size(); ++g)
    worst = std::max(worst, max_abs(a.values[g].data() - b.values[g].data()));
  return worst;
}

double max_abs_difference(const SpectralArray& a, const SpectralArray& b) {
  require(a.blocks.size() == b.blocks.size(), ErrorCode::ShapeMismatch, "arrays over different duals");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k)
    worst = std::max(worst, max_abs(a.blocks[k].flat() - b.blocks[k].flat()));
  return worst;
}

double max_abs_entry(const GroupFunction& f) {
  double worst = 0.0;
  for (const auto& v : f.values) worst = std::max(worst, max_abs(v.data()));
  return worst;
}

double max_abs_entry(const SpectralArray& a) {
  double worst = 0.0;
  for (const auto& b : a.blocks) worst = std::max(worst, max_abs(b.flat()));
  return worst;
}

}  // namespace ncft
