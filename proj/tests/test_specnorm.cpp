#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "ncft/error.hpp"
#include "ncft/specnorm.hpp"
#include "oracles.hpp"

using namespace ncft;

namespace {

const Exponent kInf = Exponent::infinity();
const Exponent kGrid[] = {Exponent(1.0), Exponent(4.0 / 3.0), Exponent(2.0), Exponent(4.0), kInf};

void check_sound(const NormSandwich& s) {
  const double slack = 1e-12 * std::max(1.0, s.upper);
  CHECK(s.lower >= 0.0);
  CHECK(s.lower <= s.upper + slack);
  CHECK(s.lower <= s.estimate + slack);
  CHECK(s.estimate <= s.upper + slack);
}

bool brackets(const NormSandwich& s, double value, double rel = 1e-9) {
  const double slack = rel * std::max(1.0, value);
  return s.lower <= value + slack && value <= s.upper + slack;
}

// ℓ^p_n(ℓ^q_m) norm of an n×m array: the norm of the doubly diagonal element.
double mixed_lp(const Eigen::MatrixXd& c, Exponent p, Exponent q) {
  RealVector rows(c.rows());
  for (Eigen::Index i = 0; i < c.rows(); ++i) rows(i) = lp_of_nonnegative(c.row(i).cwiseAbs().transpose(), q);
  return lp_of_nonnegative(rows, p);
}

Matrix doubly_diagonal(const Eigen::MatrixXd& c) {
  const Eigen::Index n = c.rows(), m = c.cols();
  Matrix x = Matrix::Zero(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) x(i * m + j, i * m + j) = c(i, j);
  return x;
}

}  // namespace

TEST_CASE("e_norm on each kind of value space") {
  CHECK(e_norm(EValue::scalar(cplx(3, 4))) == doctest::Approx(5.0));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0, d(1, 1) = -2.0;
  CHECK(e_norm(EValue(OperatorSpaceDesc::schatten(2, Exponent(1.0)), d)) == doctest::Approx(3.0));
  Matrix v(3, 1);
  v << 1.0, -5.0, 2.0;
  CHECK(e_norm(EValue(OperatorSpaceDesc::diag_lp(3, kInf), v)) == doctest::Approx(5.0));
  CHECK_THROWS_AS(EValue(OperatorSpaceDesc::schatten(2, Exponent(1.0)), Matrix::Zero(3, 3)), Error);
}

TEST_CASE("value space descriptors") {
  const auto e = parse_space("schatten:3:4/3");
  CHECK(e.dim() == 3);
  CHECK(e.dual().exponent().value() == doctest::Approx(4.0));
  CHECK(e.dual().dual() == e);
  CHECK(parse_space("diaglp:2:1").dual() == OperatorSpaceDesc::diag_lp(2, kInf));
  CHECK(parse_space("scalar").dual() == OperatorSpaceDesc::scalar());
  CHECK(parse_space("schatten:2:inf").to_string() == "schatten:2:inf");
  CHECK(parse_space("diaglp:4:2").linear_dimension() == 4);
  CHECK(parse_space("schatten:2:1").linear_dimension() == 4);
  CHECK_THROWS_AS(parse_space("hilbert:2"), Error);
  CHECK_THROWS_AS(parse_space("schatten:0:2"), Error);
}

TEST_CASE("identity in S_2^p(S_2^p) is exactly 4^(1/p)") {
  for (Exponent p : kGrid) {
    const BlockMatrix x(2, OperatorSpaceDesc::schatten(2, p), Matrix::Identity(4, 4));
    const NormSandwich s = sn_p_norm(x, p);
    CHECK(s.is_exact());
    CHECK(s.lower == s.upper);
    CHECK(s.estimate == doctest::Approx(std::pow(4.0, p.reciprocal())));
  }
}

TEST_CASE("exact tiers") {
  Rng rng = make_rng(11, {});
  const Matrix x = gaussian_matrix(6, 6, rng);
  SUBCASE("scalar values") {
    const NormSandwich s = schatten_valued_norm(x, 6, 1, Exponent(1.5), Exponent(3.0));
    CHECK(s.method == NormSandwich::Method::Exact);
    CHECK(s.estimate == doctest::Approx(oracle::schatten(x, 1.5)));
  }
  SUBCASE("one outer dimension") {
    const NormSandwich s = schatten_valued_norm(x, 1, 6, Exponent(1.5), Exponent(3.0));
    CHECK(s.estimate == doctest::Approx(oracle::schatten(x, 3.0)));
  }
  SUBCASE("matched exponents use Fubini") {
    const NormSandwich s = schatten_valued_norm(x, 2, 3, Exponent(3.0), Exponent(3.0));
    CHECK(s.method == NormSandwich::Method::Fubini);
    CHECK(s.estimate == doctest::Approx(oracle::schatten(x, 3.0)));
  }
  SUBCASE("operator norm at p = q = inf") {
    const NormSandwich s = schatten_valued_norm(x, 3, 2, kInf, kInf);
    CHECK(s.is_exact());
    CHECK(s.estimate == doctest::Approx(oracle::schatten(x, INFINITY)));
  }
}

TEST_CASE("Fubini: swapping tensor factors preserves matched-exponent norms") {
  Rng rng = make_rng(12, {});
  for (double p : {1.0, 2.5}) {
    const Matrix x = gaussian_matrix(6, 6, rng);
    const double a = schatten_valued_norm(x, 2, 3, Exponent(p), Exponent(p)).estimate;
    const double b = schatten_valued_norm(swap_tensor_factors(x, 2, 3), 3, 2, Exponent(p), Exponent(p)).estimate;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("elementary tensors collapse the sandwich") {
  Rng rng = make_rng(13, {});
  for (auto [p, q] : {std::pair{1.0, 2.0}, std::pair{2.0, 1.0}, std::pair{4.0 / 3.0, 4.0}, std::pair{double(INFINITY), 1.0},
                      std::pair{1.0, double(INFINITY)}}) {
    CAPTURE(p);
    CAPTURE(q);
    const Exponent ep(p), eq(q);
    const Matrix a = gaussian_matrix(2, 2, rng), y = gaussian_matrix(3, 3, rng);
    const double truth = oracle::schatten(a, p) * oracle::schatten(y, q);
    const NormSandwich s = schatten_valued_norm(kron(a, y), 2, 3, ep, eq);
    check_sound(s);
    CHECK(brackets(s, truth));
    CHECK(s.gap() <= 1e-2 * truth);
  }
}

TEST_CASE("forced optimizer on matched exponents approaches the Fubini value") {
  Rng rng = make_rng(14, {});
  for (double p : {1.5, 3.0}) {
    const Matrix x = gaussian_matrix(4, 4, rng);
    const double exact = oracle::schatten(x, p);
    for (bool structured : {true, false}) {
      SandwichOptions o;
      o.restarts = 32;
      o.force_factorization = true;
      o.structured_starts = structured;
      const NormSandwich s = schatten_valued_norm(x, 2, 2, Exponent(p), Exponent(p), o);
      CHECK(s.method == NormSandwich::Method::FactorizationDual);
      check_sound(s);
      CHECK(brackets(s, exact));
      CHECK(std::abs(s.upper - exact) <= 1e-4);
    }
  }
}

TEST_CASE("doubly diagonal elements have the mixed l^p(l^q) norm") {
  Rng rng = make_rng(15, {});
  for (Exponent p : kGrid) {
    for (Exponent q : kGrid) {
      Eigen::MatrixXd c(2, 3);
      for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = std::abs(complex_gaussian(rng));
      const double truth = mixed_lp(c, p, q);
      const NormSandwich s = schatten_valued_norm(doubly_diagonal(c), 2, 3, p, q, SandwichOptions::quick(1));
      CAPTURE(p.value());
      CAPTURE(q.value());
      check_sound(s);
      CHECK(brackets(s, truth));
    }
  }
}

TEST_CASE("sandwich soundness over the small grid") {
  int instances = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 3; ++m) {
      for (Exponent p : kGrid) {
        for (Exponent q : kGrid) {
          Rng rng = make_rng(16, {std::uint64_t(n), std::uint64_t(m), std::uint64_t(instances)});
          const Matrix x = gaussian_matrix(n * m, n * m, rng);
          const NormSandwich s = schatten_valued_norm(x, n, m, p, q, SandwichOptions::quick(instances));
          check_sound(s);
          if (s.method == NormSandwich::Method::FactorizationDual) {
            // Ordered-norm envelope: the flat norm at the smaller exponent dominates.
            const double cap = oracle::schatten(x, std::min(p.value(), q.value()));
            CHECK(s.upper <= cap * (1 + 1e-9));
            CHECK(s.lower >= oracle::schatten(x, std::max(p.value(), q.value())) * (1 - 1e-9));
          }
          ++instances;
        }
      }
    }
  }
  CHECK(instances == 225);
}

TEST_CASE("ordered norms: lower(p2) <= upper(p1) for p1 <= p2") {
  Rng rng = make_rng(17, {});
  const auto e = OperatorSpaceDesc::schatten(2, Exponent(1.0));
  for (int trial = 0; trial < 5; ++trial) {
    const BlockMatrix x = random_block_matrix(2, e, rng);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i; j < 5; ++j) {
        const NormSandwich lo = sn_p_norm(x, kGrid[i], SandwichOptions::quick(trial));
        const NormSandwich hi = sn_p_norm(x, kGrid[j], SandwichOptions::quick(trial));
        CHECK(hi.lower <= lo.upper * (1 + 1e-9));
      }
  }
}

TEST_CASE("duality consistency: |tr(xz)| <= upper(x) upper(z)") {
  Rng rng = make_rng(18, {});
  for (Exponent p : kGrid) {
    for (Exponent q : {Exponent(1.0), Exponent(2.0), kInf}) {
      const auto e = OperatorSpaceDesc::schatten(2, q);
      const BlockMatrix x = random_block_matrix(2, e, rng);
      const BlockMatrix z = random_block_matrix(2, e.dual(), rng);
      const double lhs = std::abs((x.flat() * z.flat()).trace());
      const double rhs = sn_p_norm(x, p, SandwichOptions::quick(1)).upper *
                         sn_p_norm(z, p.conjugate(), SandwichOptions::quick(2)).upper;
      CHECK(lhs <= rhs * (1 + 1e-9));
    }
  }
}

TEST_CASE("M_n(E) norm") {
  Rng rng = make_rng(19, {});
  SUBCASE("Schatten(m, inf) is the operator norm") {
    const BlockMatrix x = random_block_matrix(3, OperatorSpaceDesc::schatten(2, kInf), rng);
    const NormSandwich s = mnE_norm(x);
    CHECK(s.is_exact());
    CHECK(s.estimate == doctest::Approx(oracle::schatten(x.flat(), INFINITY)));
  }
  SUBCASE("I_n tensor y has the norm of y") {
    for (Exponent q : kGrid) {
      const auto e = OperatorSpaceDesc::schatten(2, q);
      const EValue y = random_evalue(e, rng);
      const NormSandwich s = mnE_norm(BlockMatrix::elementary(Matrix::Identity(3, 3), y));
      CHECK(brackets(s, e_norm(y)));
      CHECK(s.gap() <= 1e-6 * e_norm(y));
    }
  }
  SUBCASE("Schatten(2, 1) gives a sound sandwich") {
    for (int trial = 0; trial < 10; ++trial) {
      const BlockMatrix x = random_block_matrix(2, OperatorSpaceDesc::schatten(2, Exponent(1.0)), rng);
      const NormSandwich s = mnE_norm(x, SandwichOptions::quick(trial));
      check_sound(s);
      CHECK(s.method == NormSandwich::Method::FactorizationDual);
    }
  }
}

TEST_CASE("L^p(G; E) norm with normalized Haar measure") {
  const auto e = OperatorSpaceDesc::schatten(2, Exponent(2.0));
  const EValue unit(e, Matrix::Identity(2, 2) / std::sqrt(2.0));
  const std::vector<EValue> constant(6, unit);
  for (Exponent p : kGrid) CHECK(lp_norm_haar(constant, p) == doctest::Approx(1.0));

  std::vector<EValue> delta(6, EValue::scalar(0.0));
  delta[0] = EValue::scalar(6.0);
  for (Exponent p : kGrid) CHECK(lp_norm_haar(delta, p) == doctest::Approx(std::pow(6.0, p.conjugate().reciprocal())));
}

TEST_CASE("L^p on the dual object") {
  const auto scalar = OperatorSpaceDesc::scalar();
  const std::vector<int> degrees = {1, 1, 2};
  std::vector<BlockMatrix> id;
  for (int d : degrees) id.emplace_back(d, scalar, Matrix::Identity(d, d));
  for (Exponent p : kGrid) CHECK(lp_dual_norm(id, p).estimate == doctest::Approx(std::pow(6.0, p.reciprocal())));

  std::vector<BlockMatrix> one_by_one = {BlockMatrix::zero(1, scalar), BlockMatrix(1, scalar, Matrix::Constant(1, 1, cplx(0, -3)))};
  for (Exponent p : kGrid) CHECK(lp_dual_norm(one_by_one, p).estimate == doctest::Approx(3.0));

  const NormSandwich a = NormSandwich::exact(1.0), b = NormSandwich::exact(2.0);
  const std::vector<NormSandwich> parts = {a, b};
  const std::vector<int> w = {1, 2};
  CHECK(weighted_lp_combine(parts, w, Exponent(2.0)).estimate == doctest::Approx(3.0));
  CHECK(weighted_lp_combine(parts, w, kInf).estimate == doctest::Approx(2.0));
}

TEST_CASE("l^p(n) as the diagonal of S_n^p") {
  for (Exponent p : kGrid) {
    CHECK(sn_p_norm(embed_diag_lp({1.0, 0.0, 0.0}), p).estimate == doctest::Approx(1.0));
    CHECK(sn_p_norm(embed_diag_lp({1.0, 1.0, 1.0, 1.0}), p).estimate == doctest::Approx(std::pow(4.0, p.reciprocal())));
  }
  Rng rng = make_rng(20, {});
  std::vector<cplx> v(5);
  double sq = 0.0;
  for (auto& z : v) z = complex_gaussian(rng), sq += std::norm(z);
  CHECK(sn_p_norm(embed_diag_lp(v), Exponent(2.0)).estimate == doctest::Approx(std::sqrt(sq)));
}

TEST_CASE("results are deterministic and independent of the thread count") {
  Rng rng = make_rng(21, {});
  const Matrix x = gaussian_matrix(6, 6, rng);
  SandwichOptions o = SandwichOptions::quick(9);
  o.restarts = 8;
  ::setenv("NCFT_THREADS", "1", 1);
  const NormSandwich serial = schatten_valued_norm(x, 2, 3, Exponent(1.0), Exponent(2.0), o);
  ::setenv("NCFT_THREADS", "4", 1);
  const NormSandwich parallel = schatten_valued_norm(x, 2, 3, Exponent(1.0), Exponent(2.0), o);
  ::unsetenv("NCFT_THREADS");
  const NormSandwich again = schatten_valued_norm(x, 2, 3, Exponent(1.0), Exponent(2.0), o);
  CHECK(serial.lower == parallel.lower);
  CHECK(serial.upper == parallel.upper);
  CHECK(serial.estimate == parallel.estimate);
  CHECK(serial.upper == again.upper);
  CHECK(serial.lower == again.lower);
}
