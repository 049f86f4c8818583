#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ncft/error.hpp"
#include "ncft/repr.hpp"

using namespace ncft;

namespace {

std::vector<int> degrees(const IrrepTable& t) {
  std::vector<int> d;
  for (const auto& pi : t.irreps) d.push_back(pi.degree);
  return d;
}

double character_distance(const Irrep& a, const Irrep& b) {
  double worst = 0.0;
  for (std::size_t g = 0; g < a.character.size(); ++g)
    worst = std::max(worst, std::abs(a.character[g] - b.character[g]));
  return worst;
}

void check_same_characters(const IrrepTable& a, const IrrepTable& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CAPTURE(k);
    CHECK(a[k].degree == b[k].degree);
    CHECK(character_distance(a[k], b[k]) < tol);
  }
}

const char* kCatalog[] = {"Z1", "Z2", "Z5", "Z12", "D3", "D4", "D5", "D6", "Q8",
                          "S1", "S2", "S3", "S4", "Z2xZ3", "product(D4,Z2)", "product(Q8,Z3)"};

}  // namespace

TEST_CASE("Z4 characters are i^(jk)") {
  const IrrepTable t = irreps_catalog(build_group("Z4"));
  REQUIRE(t.size() == 4);
  std::vector<bool> hit(4, false);
  for (const auto& pi : t.irreps) {
    CHECK(pi.degree == 1);
    for (int j = 0; j < 4; ++j) {
      bool match = true;
      for (int k = 0; k < 4; ++k) match = match && std::abs(pi.character[k] - std::pow(cplx(0, 1), j * k)) < 1e-12;
      if (match) hit[j] = true;
    }
  }
  CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
}

TEST_CASE("catalog degrees") {
  CHECK(degrees(irreps_catalog(build_group("S3"))) == std::vector<int>{1, 1, 2});
  CHECK(degrees(irreps_catalog(build_group("Q8"))) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(degrees(irreps_catalog(build_group("D4"))) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(degrees(irreps_catalog(build_group("D5"))) == std::vector<int>{1, 1, 2, 2});
  CHECK(degrees(irreps_catalog(build_group("S4"))) == std::vector<int>{1, 1, 2, 3, 3});
}

TEST_CASE("catalog tables validate and start with the trivial representation") {
  for (const char* spec : kCatalog) {
    CAPTURE(spec);
    const IrrepTable t = irreps_catalog(build_group(spec));
    const IrrepValidation v = validate_irreps(t);
    CHECK(v.pass());
    CHECK(t.degree_square_sum() == t.group.order());
    CHECK(v.unitarity.worst < 1e-10);
    CHECK(v.homomorphism.worst < 1e-10);
    for (const auto& c : t[0].character) CHECK(std::abs(c - 1.0) < 1e-12);
  }
}

TEST_CASE("numeric decomposition of Z2 gives characters (1,1) and (1,-1)") {
  const IrrepTable t = irreps_numeric(build_group("Z2"), 0);
  REQUIRE(t.size() == 2);
  CHECK(std::abs(t[0].character[1] - 1.0) < 1e-9);
  CHECK(std::abs(t[1].character[1] + 1.0) < 1e-9);
}

TEST_CASE("numeric S3 with seed 42 matches the catalog characters") {
  const FiniteGroup g = build_group("S3");
  const IrrepTable numeric = irreps_numeric(g, 42);
  CHECK(degrees(numeric) == std::vector<int>{1, 1, 2});
  check_same_characters(numeric, irreps_catalog(g), 1e-6);
  const IrrepValidation v = validate_irreps(numeric);
  CHECK(v.unitarity.worst < 1e-10);
  CHECK(v.homomorphism.worst < 1e-10);
  CHECK(v.pass());
}

TEST_CASE("numeric decomposition agrees with the catalog on every catalog group") {
  for (const char* spec : kCatalog) {
    CAPTURE(spec);
    const FiniteGroup g = build_group(spec);
    const IrrepTable numeric = irreps_numeric(g, 7);
    CHECK(validate_irreps(numeric).pass());
    check_same_characters(numeric, irreps_catalog(g), 1e-6);
  }
}

TEST_CASE("different seeds give the same characters") {
  const FiniteGroup g = build_group("D6");
  check_same_characters(irreps_numeric(g, 1), irreps_numeric(g, 2), 1e-6);
}

TEST_CASE("same seed gives bit-identical matrices") {
  const FiniteGroup g = build_group("Q8");
  const IrrepTable a = irreps_numeric(g, 5);
  const IrrepTable b = irreps_numeric(g, 5);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    for (int x = 0; x < g.order(); ++x) CHECK(a[k].matrices[x] == b[k].matrices[x]);
}

TEST_CASE("validation catches a missing irrep") {
  IrrepTable t = irreps_catalog(build_group("S3"));
  t.irreps.pop_back();
  const IrrepValidation v = validate_irreps(t);
  CHECK_FALSE(v.complete());
  CHECK_FALSE(v.pass());
  CHECK(v.degree_square_sum == 2);
}

TEST_CASE("validation locates a non-unitary matrix") {
  IrrepTable t = irreps_catalog(build_group("S3"));
  const int g = 3;
  t.irreps[2].matrices[g] *= 1.01;
  const IrrepValidation v = validate_irreps(t);
  CHECK_FALSE(v.unitarity.pass());
  CHECK(v.unitarity.irrep == 2);
  CHECK(v.unitarity.element == g);
  CHECK_FALSE(v.pass());
}

TEST_CASE("column orthogonality of characters") {
  for (const char* spec : {"S4", "D5", "Q8", "product(D3,Z2)"}) {
    CAPTURE(spec);
    const IrrepTable t = irreps_catalog(build_group(spec));
    const FiniteGroup& g = t.group;
    for (int x = 0; x < g.order(); ++x) {
      for (int y = 0; y < g.order(); ++y) {
        cplx acc = 0.0;
        for (const auto& pi : t.irreps) acc += pi.character[x] * std::conj(pi.character[y]);
        const double expected =
            g.class_of(x) == g.class_of(y) ? double(g.order()) / double(g.classes()[g.class_of(x)].size()) : 0.0;
        CHECK(std::abs(acc - expected) < 1e-9);
      }
    }
  }
}

TEST_CASE("tolerance outside (0, 1e-2] is rejected") {
  const FiniteGroup g = build_group("Z3");
  for (double tol : {0.0, -1e-8, 0.1}) {
    try {
      (void)irreps_numeric(g, 0, tol);
      FAIL("expected ToleranceInvalid");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ToleranceInvalid);
    }
  }
  CHECK_NOTHROW((void)irreps_numeric(g, 0, 1e-2));
}

TEST_CASE("table groups fall back to the numeric path") {
  const FiniteGroup z3 = build_group("Z3");
  const FiniteGroup g = FiniteGroup::from_table(z3.table(), z3.labels(), GroupSpec::table(""));
  try {
    (void)irreps_catalog(g);
    FAIL("expected UnsupportedFamily");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedFamily);
  }
  const IrrepTable t = irreps_for(g, 3);
  CHECK(t.size() == 3);
  CHECK(validate_irreps(t).pass());
}

TEST_CASE("S5 is outside the catalog but decomposes numerically") {
  const FiniteGroup g = build_group("S5");
  CHECK_THROWS_AS((void)irreps_catalog(g), Error);
  const IrrepTable t = irreps_for(g, 0);
  CHECK(degrees(t) == std::vector<int>{1, 1, 4, 4, 5, 5, 6});
  CHECK(validate_irreps(t).pass());
}
