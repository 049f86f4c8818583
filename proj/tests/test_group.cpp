#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "ncft/error.hpp"
#include "ncft/group.hpp"
#include "oracles.hpp"

#include <set>

using namespace ncft;

namespace {

std::multiset<std::size_t> class_sizes(const std::vector<std::vector<int>>& classes) {
  std::multiset<std::size_t> s;
  for (const auto& c : classes) s.insert(c.size());
  return s;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

const char* kCatalog[] = {"Z1", "Z2", "Z7", "D3", "D4", "D5", "Q8", "S1", "S2", "S3", "S4", "Z2xZ2", "product(D3,Z2)"};

}  // namespace

TEST_CASE("cyclic(1) is the trivial group") {
  const FiniteGroup g = build_group(GroupSpec::cyclic(1));
  CHECK(g.order() == 1);
  CHECK(g.table() == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("quaternion8 has the five classes {e},{-e},{±i},{±j},{±k}") {
  const FiniteGroup g = build_group("Q8");
  REQUIRE(g.order() == 8);
  CHECK(g.classes().size() == 5);
  CHECK(class_sizes(g.classes()) == std::multiset<std::size_t>{1, 1, 2, 2, 2});
  const auto expected = oracle::classes(g.table());
  for (const auto& c : g.classes()) {
    const std::set<int> cs(c.begin(), c.end());
    CHECK(std::find(expected.begin(), expected.end(), cs) != expected.end());
  }
  for (const auto& c : g.classes()) {
    std::set<std::string> labels;
    for (int x : c) labels.insert(g.label(x));
    const bool known = labels == std::set<std::string>{"1"} || labels == std::set<std::string>{"-1"} ||
                       labels == std::set<std::string>{"i", "-i"} || labels == std::set<std::string>{"j", "-j"} ||
                       labels == std::set<std::string>{"k", "-k"};
    CHECK(known);
  }
}

TEST_CASE("Z2 x Z2: every non-identity element is an involution") {
  const FiniteGroup g = build_group(GroupSpec::product(GroupSpec::cyclic(2), GroupSpec::cyclic(2)));
  REQUIRE(g.order() == 4);
  for (int x = 1; x < 4; ++x) CHECK(g.mul(x, x) == 0);
}

TEST_CASE("conjugacy classes match the brute-force oracle") {
  SUBCASE("cyclic groups have singleton classes") {
    for (int n : {1, 5, 12}) {
      const FiniteGroup g = build_group(GroupSpec::cyclic(n));
      CHECK(g.classes().size() == static_cast<std::size_t>(n));
    }
  }
  SUBCASE("S3 has classes of sizes 1, 3, 2") {
    const FiniteGroup g = build_group("S3");
    CHECK(class_sizes(g.classes()) == std::multiset<std::size_t>{1, 2, 3});
    CHECK(oracle::classes(g.table()).size() == 3);
  }
  SUBCASE("D4 has five classes") {
    const FiniteGroup g = build_group("D4");
    CHECK(g.classes().size() == 5);
    CHECK(oracle::classes(g.table()).size() == 5);
  }
  SUBCASE("every catalog group") {
    for (const char* spec : kCatalog) {
      const FiniteGroup g = build_group(spec);
      CHECK(g.classes().size() == oracle::classes(g.table()).size());
      CHECK(g.classes().front() == std::vector<int>{0});
    }
  }
}

TEST_CASE("catalog groups satisfy the structural invariants") {
  for (const char* spec : kCatalog) {
    CAPTURE(spec);
    const FiniteGroup g = build_group(spec);
    std::size_t total = 0;
    for (const auto& c : g.classes()) total += c.size();
    CHECK(total == static_cast<std::size_t>(g.order()));
    for (int x = 0; x < g.order(); ++x) {
      CHECK(g.inverse(g.inverse(x)) == x);
      CHECK(g.mul(x, g.inverse(x)) == 0);
      CHECK(g.mul(g.inverse(x), x) == 0);
      CHECK(g.mul(0, x) == x);
      CHECK(g.class_of(x) >= 0);
    }
    CHECK(validate_table(g.table()).ok());
    CHECK(g.spec().expected_order() == g.order());
  }
}

TEST_CASE("abelian families have singleton classes") {
  for (const char* spec : {"Z6", "Z2xZ3", "product(Z2,product(Z2,Z2))"}) {
    const FiniteGroup g = build_group(spec);
    CHECK(g.is_abelian());
    CHECK(g.classes().size() == static_cast<std::size_t>(g.order()));
  }
  CHECK_FALSE(build_group("S3").is_abelian());
}

TEST_CASE("validate_table reports each failed axiom") {
  CHECK(validate_table({{0}}).ok());
  CHECK(validate_table({{0, 1}, {1, 0}}).ok());

  const TableValidation bad = validate_table({{0, 1}, {1, 1}});
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.latin);
  REQUIRE_FALSE(bad.failures.empty());
  CHECK(bad.failures.front().find("not a Latin square") != std::string::npos);

  // Latin square without identity: x*y = x - y mod 3.
  const TableValidation no_identity = validate_table({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}});
  CHECK_FALSE(no_identity.has_identity);

  // Latin square with identity 0 that is not associative (order-5 loop).
  const std::vector<std::vector<int>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  const TableValidation nonassoc = validate_table(loop);
  CHECK(nonassoc.latin);
  CHECK(nonassoc.has_identity);
  CHECK_FALSE(nonassoc.associative);

  CHECK_FALSE(validate_table({{0, 1}}).square);
}

TEST_CASE("associativity is sampled above order 64") {
  const FiniteGroup z = build_group(GroupSpec::cyclic(70));
  const TableValidation big = validate_table(z.table());
  CHECK(big.ok());
  CHECK_FALSE(big.associativity_exhaustive);
  CHECK(validate_table(build_group(GroupSpec::cyclic(64)).table()).associativity_exhaustive);
}

TEST_CASE("group specs parse in every accepted spelling") {
  CHECK(parse_group_spec("Z4") == GroupSpec::cyclic(4));
  CHECK(parse_group_spec("C4") == GroupSpec::cyclic(4));
  CHECK(parse_group_spec("cyclic(4)") == GroupSpec::cyclic(4));
  CHECK(parse_group_spec("dihedral(4)") == GroupSpec::dihedral(4));
  CHECK(parse_group_spec("quaternion8") == GroupSpec::quaternion8());
  CHECK(parse_group_spec("symmetric(3)") == GroupSpec::symmetric(3));
  CHECK(parse_group_spec("Z2xZ2") == GroupSpec::product(GroupSpec::cyclic(2), GroupSpec::cyclic(2)));
  CHECK(parse_group_spec(" product( Z2 , S3 ) ").to_string() == "product(Z2,S3)");
  CHECK(parse_group_spec("D4").to_string() == "D4");
  CHECK(parse_group_spec("table:foo.json") == GroupSpec::table("foo.json"));
  CHECK(parse_group_spec("table(foo.json)").to_string() == "table(foo.json)");

  for (const char* bad : {"", "nonsense", "Z0", "S6", "Z", "product(Z2)", "Z2x", "cyclic(-1)", "D1x"}) {
    CAPTURE(bad);
    try {
      (void)build_group(bad);
      FAIL("expected InvalidSpec");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidSpec);
    }
  }
}

TEST_CASE("table files load, relabel the identity to index 0 and reject bad tables") {
  // Z3 with the identity stored at index 2.
  const std::string path = write_temp("ncft_z3_shifted.json",
                                      R"({"order": 3, "mul": [[1,2,0],[2,0,1],[0,1,2]], "labels": ["a","b","e"]})");
  const FiniteGroup g = build_group("table:" + path);
  CHECK(g.order() == 3);
  CHECK(g.label(0) == "e");
  CHECK(g.mul(1, g.inverse(1)) == 0);
  CHECK(g.spec() == GroupSpec::table(path));

  const std::string bad = write_temp("ncft_bad_table.json", R"({"order": 2, "mul": [[0,1],[1,1]]})");
  try {
    (void)build_group("table(" + bad + ")");
    FAIL("expected InvalidTable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidTable);
  }
}

TEST_CASE("construction is deterministic") {
  CHECK(build_group("S4").table() == build_group("S4").table());
  CHECK(build_group("D5").labels() == build_group("dihedral(5)").labels());
}
