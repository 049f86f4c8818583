#include "ncft/repr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "ncft/error.hpp"
#include "ncft/random.hpp"

namespace ncft {

namespace {

constexpr double kCharResolution = 1e-9;

Matrix scalar_matrix(cplx z) {
  Matrix m(1, 1);
  m(0, 0) = z;
  return m;
}

cplx root_of_unity(long k, long n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(((k % n) + n) % n) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

// -1 if a sorts before b, +1 after, 0 tie.
int compare_characters(const Irrep& a, const Irrep& b) {
  if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
  for (std::size_t g = 0; g < a.character.size(); ++g) {
    const cplx x = a.character[g], y = b.character[g];
    if (std::abs(x.real() - y.real()) > kCharResolution) return x.real() > y.real() ? -1 : 1;
    if (std::abs(x.imag() - y.imag()) > kCharResolution) return x.imag() > y.imag() ? -1 : 1;
  }
  return 0;
}

bool same_character(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
  for (std::size_t g = 0; g < a.size(); ++g)
    if (std::abs(a[g] - b[g]) > tol) return false;
  return true;
}

// ---------------------------------------------------------------- catalog

std::vector<Irrep> cyclic_irreps(int n) {
  std::vector<Irrep> out;
  for (int k = 0; k < n; ++k) {
    std::vector<Matrix> mats;
    for (int j = 0; j < n; ++j) mats.push_back(scalar_matrix(root_of_unity(static_cast<long>(j) * k, n)));
    out.push_back(Irrep::from_matrices(std::move(mats)));
  }
  return out;
}

std::vector<Irrep> dihedral_irreps(int n) {
  std::vector<Irrep> out;
  const int order = 2 * n;
  const std::vector<int> rot_signs = n % 2 == 0 ? std::vector<int>{1, -1} : std::vector<int>{1};
  for (const int a : rot_signs) {
    for (const int b : {1, -1}) {
      std::vector<Matrix> mats;
      for (int x = 0; x < order; ++x) {
        const int k = x % n, e = x / n;
        const double v = (k % 2 == 1 && a < 0 ? -1.0 : 1.0) * (e == 1 ? b : 1);
        mats.push_back(scalar_matrix(v));
      }
      out.push_back(Irrep::from_matrices(std::move(mats)));
    }
  }
  for (int h = 1; 2 * h < n; ++h) {
    std::vector<Matrix> mats;
    for (int x = 0; x < order; ++x) {
      const int k = x % n, e = x / n;
      const cplx w = root_of_unity(static_cast<long>(h) * k, n);
      Matrix m = Matrix::Zero(2, 2);
      if (e == 0) {
        m(0, 0) = w;
        m(1, 1) = std::conj(w);
      } else {
        m(0, 1) = w;
        m(1, 0) = std::conj(w);
      }
      mats.push_back(m);
    }
    out.push_back(Irrep::from_matrices(std::move(mats)));
  }
  return out;
}

std::vector<Irrep> quaternion_irreps() {
  std::vector<Irrep> out;
  for (const int a : {1, -1}) {
    for (const int b : {1, -1}) {
      const int unit_char[4] = {1, a, b, a * b};
      std::vector<Matrix> mats;
      for (int x = 0; x < 8; ++x) mats.push_back(scalar_matrix(static_cast<double>(unit_char[x / 2])));
      out.push_back(Irrep::from_matrices(std::move(mats)));
    }
  }
  const cplx i(0.0, 1.0);
  Matrix units[4];
  units[0] = Matrix::Identity(2, 2);
  units[1] = Matrix::Zero(2, 2);
  units[1](0, 0) = i;
  units[1](1, 1) = -i;
  units[2] = Matrix::Zero(2, 2);
  units[2](0, 1) = 1.0;
  units[2](1, 0) = -1.0;
  units[3] = units[1] * units[2];
  std::vector<Matrix> mats;
  for (int x = 0; x < 8; ++x) mats.push_back((x % 2 == 0 ? 1.0 : -1.0) * units[x / 2]);
  out.push_back(Irrep::from_matrices(std::move(mats)));
  return out;
}

// Orthonormal basis of the sum-zero subspace of C^n (Helmert), n×(n−1).
Matrix helmert_basis(int n) {
  Matrix b = Matrix::Zero(n, n - 1);
  for (int k = 1; k < n; ++k) {
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) b(i, k - 1) = 1.0 / norm;
    b(k, k - 1) = -static_cast<double>(k) / norm;
  }
  return b;
}

Matrix permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Matrix p = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) p(perm[i], i) = 1.0;
  return p;
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
  return inversions % 2 == 0 ? 1 : -1;
}

// Standard representation restricted to the sum-zero subspace.
Matrix standard_rep(const std::vector<int>& perm) {
  const Matrix b = helmert_basis(static_cast<int>(perm.size()));
  return b.adjoint() * permutation_matrix(perm) * b;
}

std::vector<Irrep> symmetric_irreps(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  const auto build = [&](auto&& f) {
    std::vector<Matrix> mats;
    for (const auto& q : perms) mats.push_back(f(q));
    return Irrep::from_matrices(std::move(mats));
  };

  std::vector<Irrep> out;
  out.push_back(build([](const std::vector<int>&) { return scalar_matrix(1.0); }));
  if (n >= 2) out.push_back(build([](const std::vector<int>& q) { return scalar_matrix(permutation_sign(q)); }));
  if (n >= 3) out.push_back(build([](const std::vector<int>& q) { return standard_rep(q); }));
  if (n == 4) {
    out.push_back(build([](const std::vector<int>& q) { return Matrix(permutation_sign(q) * standard_rep(q)); }));
    // S4 -> S3 through the action on the three pairings {01|23}, {02|13}, {03|12}.
    const auto pairing_of = [](int a, int b) {
      const int lo = std::min(a, b), hi = std::max(a, b);
      if (lo == 0) return hi - 1;     // {0,1}->0, {0,2}->1, {0,3}->2
      return 3 - (lo + hi - 3) - 1;   // complements: {2,3}->0, {1,3}->1, {1,2}->2
    };
    const int pairs[3][2] = {{0, 1}, {0, 2}, {0, 3}};
    out.push_back(build([&](const std::vector<int>& q) {
      std::vector<int> induced(3);
      for (int k = 0; k < 3; ++k) induced[k] = pairing_of(q[pairs[k][0]], q[pairs[k][1]]);
      return standard_rep(induced);
    }));
  }
  return out;
}

std::vector<Irrep> catalog_for(const GroupSpec& spec) {
  using F = GroupSpec::Family;
  switch (spec.family) {
    case F::Cyclic: return cyclic_irreps(spec.n);
    case F::Dihedral: return dihedral_irreps(spec.n);
    case F::Quaternion8: return quaternion_irreps();
    case F::Symmetric:
      if (spec.n <= 4) return symmetric_irreps(spec.n);
      fail(ErrorCode::UnsupportedFamily, "catalog covers symmetric(n) only for n <= 4");
    case F::Product: {
      const auto left = catalog_for(spec.factors.at(0));
      const auto right = catalog_for(spec.factors.at(1));
      const std::size_t nb = right.front().matrices.size();
      const std::size_t na = left.front().matrices.size();
      std::vector<Irrep> out;
      for (const auto& a : left) {
        for (const auto& b : right) {
          std::vector<Matrix> mats;
          mats.reserve(na * nb);
          for (std::size_t x = 0; x < na * nb; ++x) mats.push_back(kron(a.matrices[x / nb], b.matrices[x % nb]));
          out.push_back(Irrep::from_matrices(std::move(mats)));
        }
      }
      return out;
    }
    case F::Table: fail(ErrorCode::UnsupportedFamily, "no closed-form irreps for table-defined groups");
  }
  fail(ErrorCode::UnsupportedFamily, "unknown family");
}

// ---------------------------------------------------------------- numeric

struct Decomposer {
  const FiniteGroup& group;
  double tol;
  Rng rng;
  std::vector<Irrep> found;
  int found_square_sum = 0;

  static constexpr int kMaxDepth = 8;

  double irreducibility(const std::vector<Matrix>& rep) const {
    double acc = 0.0;
    for (const auto& m : rep) acc += std::norm(m.trace());
    return acc / group.order();
  }

  void add_if_new(std::vector<Matrix> rep) {
    Irrep candidate = Irrep::from_matrices(std::move(rep));
    for (const auto& f : found)
      if (f.degree == candidate.degree && same_character(f.character, candidate.character, 1e-6)) return;
    found_square_sum += candidate.degree * candidate.degree;
    found.push_back(std::move(candidate));
  }

  // Splits `rep` (dimension k, unitary) into irreducible pieces.
  void split(const std::vector<Matrix>& rep, int depth) {
    if (found_square_sum >= group.order()) return;
    const Eigen::Index k = rep.front().rows();
    if (k == 1 || std::abs(irreducibility(rep) - 1.0) <= 1e-6) {
      add_if_new(rep);
      return;
    }
    if (depth >= kMaxDepth) return;

    const Matrix h = gaussian_hermitian(k, rng);
    Matrix t = Matrix::Zero(k, k);
    for (const auto& m : rep) t += m * h * m.adjoint();
    t /= static_cast<double>(group.order());
    t = 0.5 * (t + t.adjoint());
    split_by_eigenspaces(rep, t, depth);
  }

  void split_by_eigenspaces(const std::vector<Matrix>& rep, const Matrix& t, int depth) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(t);
    const RealVector& vals = eig.eigenvalues();
    const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    Eigen::Index start = 0;
    const Eigen::Index k = vals.size();
    while (start < k && found_square_sum < group.order()) {
      Eigen::Index end = start + 1;
      while (end < k && vals(end) - vals(end - 1) <= tol * scale) ++end;
      const Matrix basis = eig.eigenvectors().middleCols(start, end - start);
      std::vector<Matrix> sub;
      sub.reserve(rep.size());
      for (const auto& m : rep) sub.push_back(basis.adjoint() * m * basis);
      split(sub, depth + 1);
      start = end;
    }
  }

  // Top level: the regular representation, with the commutant average computed
  // directly from the permutation structure, T[a][b] = avg_g H[g⁻¹a][g⁻¹b].
  void run() {
    const int n = group.order();
    const Matrix h = gaussian_hermitian(n, rng);
    Matrix t = Matrix::Zero(n, n);
    for (int g = 0; g < n; ++g) {
      const int gi = group.inverse(g);
      for (int a = 0; a < n; ++a) {
        const int ga = group.mul(gi, a);
        for (int b = 0; b < n; ++b) t(a, b) += h(ga, group.mul(gi, b));
      }
    }
    t /= static_cast<double>(n);
    t = 0.5 * (t + t.adjoint());

    std::vector<Matrix> regular;
    regular.reserve(n);
    for (int g = 0; g < n; ++g) {
      Matrix p = Matrix::Zero(n, n);
      for (int x = 0; x < n; ++x) p(group.mul(g, x), x) = 1.0;
      regular.push_back(std::move(p));
    }
    split_by_eigenspaces(regular, t, 0);
  }
};

}  // namespace

Irrep Irrep::from_matrices(std::vector<Matrix> matrices) {
  require(!matrices.empty(), ErrorCode::ShapeMismatch, "representation without matrices");
  Irrep r;
  r.degree = static_cast<int>(matrices.front().rows());
  r.character.reserve(matrices.size());
  for (const auto& m : matrices) {
    require(m.rows() == r.degree && m.cols() == r.degree, ErrorCode::ShapeMismatch,
            "representation matrices of inconsistent size");
    r.character.push_back(m.trace());
  }
  r.matrices = std::move(matrices);
  return r;
}

int IrrepTable::degree_square_sum() const {
  int s = 0;
  for (const auto& r : irreps) s += r.degree * r.degree;
  return s;
}

void canonicalize(std::vector<Irrep>& irreps) {
  std::stable_sort(irreps.begin(), irreps.end(),
                   [](const Irrep& a, const Irrep& b) { return compare_characters(a, b) < 0; });
}

IrrepTable irreps_catalog(const FiniteGroup& g) {
  std::vector<Irrep> irreps = catalog_for(g.spec());
  require(!irreps.empty() && static_cast<int>(irreps.front().matrices.size()) == g.order(),
          ErrorCode::UnsupportedFamily, "catalog does not match group order");
  canonicalize(irreps);
  return IrrepTable{g, std::move(irreps)};
}

IrrepTable irreps_numeric(const FiniteGroup& g, std::uint64_t seed, double tol) {
  require(std::isfinite(tol) && tol > 0.0 && tol <= 1e-2, ErrorCode::ToleranceInvalid,
          "clustering tolerance must lie in (0, 1e-2]");
  require(g.order() <= 120, ErrorCode::PreconditionFailed, "numeric decomposition requires |G| <= 120");
  constexpr int kAttempts = 8;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Decomposer d{g, tol, make_rng(seed, {0x1447, static_cast<std::uint64_t>(attempt)}), {}, 0};
    d.run();
    if (d.found_square_sum == g.order()) {
      canonicalize(d.found);
      return IrrepTable{g, std::move(d.found)};
    }
  }
  fail(ErrorCode::DecompositionStalled,
       "regular representation of " + g.spec().to_string() + " could not be resolved at tol " + std::to_string(tol));
}

IrrepTable irreps_for(const FiniteGroup& g, std::uint64_t seed) {
  try {
    return irreps_catalog(g);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedFamily) throw;
  }
  return irreps_numeric(g, seed);
}

IrrepValidation validate_irreps(const IrrepTable& table) {
  const FiniteGroup& g = table.group;
  const int n = g.order();
  IrrepValidation v;
  v.order = n;
  v.unitarity.tolerance = 1e-9;
  v.homomorphism.tolerance = 1e-9;
  v.irreducibility.tolerance = 1e-6;
  v.character_orthogonality.tolerance = 1e-6;
  v.schur_orthogonality.tolerance = 1e-8;

  const auto note = [](IrrepValidation::Residual& r, double value, int irrep, int element) {
    if (value >= r.worst) {
      r.worst = value;
      r.irrep = irrep;
      r.element = element;
    }
  };

  int total_coeffs = 0;
  for (int k = 0; k < static_cast<int>(table.irreps.size()); ++k) {
    const Irrep& r = table.irreps[k];
    const bool sized = static_cast<int>(r.matrices.size()) == n &&
                       std::all_of(r.matrices.begin(), r.matrices.end(), [&](const Matrix& m) {
                         return m.rows() == r.degree && m.cols() == r.degree;
                       });
    if (!sized) {
      v.degrees_consistent = false;
      continue;
    }
    v.degree_square_sum += r.degree * r.degree;
    total_coeffs += r.degree * r.degree;
    const Matrix eye = Matrix::Identity(r.degree, r.degree);
    for (int x = 0; x < n; ++x) note(v.unitarity, op_norm(r.matrices[x] * r.matrices[x].adjoint() - eye), k, x);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        note(v.homomorphism, op_norm(r.matrices[g.mul(x, y)] - r.matrices[x] * r.matrices[y]), k, x);
    double acc = 0.0;
    for (int x = 0; x < n; ++x) acc += std::norm(r.matrices[x].trace());
    note(v.irreducibility, std::abs(acc / n - 1.0), k, -1);
  }
  if (!v.degrees_consistent) return v;

  // Gram matrices of characters and of all matrix coefficients.
  const int count = static_cast<int>(table.irreps.size());
  Matrix chars(count, n);
  Matrix coeffs(total_coeffs, n);
  std::vector<double> expected(total_coeffs);
  std::vector<int> owner(total_coeffs);
  int row = 0;
  for (int k = 0; k < count; ++k) {
    const Irrep& r = table.irreps[k];
    for (int x = 0; x < n; ++x) chars(k, x) = r.matrices[x].trace();
    for (int i = 0; i < r.degree; ++i)
      for (int j = 0; j < r.degree; ++j, ++row) {
        for (int x = 0; x < n; ++x) coeffs(row, x) = r.matrices[x](i, j);
        expected[row] = 1.0 / r.degree;
        owner[row] = k;
      }
  }
  const Matrix char_gram = chars * chars.adjoint() / static_cast<double>(n);
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) note(v.character_orthogonality, std::abs(char_gram(a, b) - (a == b ? 1.0 : 0.0)), a, -1);
  const Matrix coeff_gram = coeffs * coeffs.adjoint() / static_cast<double>(n);
  for (int a = 0; a < total_coeffs; ++a)
    for (int b = 0; b < total_coeffs; ++b)
      note(v.schur_orthogonality, std::abs(coeff_gram(a, b) - (a == b ? expected[a] : 0.0)), owner[a], -1);
  return v;
}

}  // namespace ncft
