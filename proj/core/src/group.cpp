#include "ncft/group.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "ncft/error.hpp"

namespace ncft {

namespace {

constexpr int kMaxOrder = 4096;
constexpr int kExhaustiveAssociativityOrder = 64;

using Table2D = std::vector<std::vector<int>>;

// ---------------------------------------------------------------- parsing

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : s_(text) {}

  GroupSpec parse() {
    GroupSpec spec = parse_product_chain();
    skip_ws();
    if (pos_ != s_.size()) error("unexpected trailing input");
    return spec;
  }

 private:
  GroupSpec parse_product_chain() {
    GroupSpec left = parse_primary();
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == '*')) {
        ++pos_;
        left = GroupSpec::product(std::move(left), parse_primary());
      } else {
        return left;
      }
    }
  }

  GroupSpec parse_primary() {
    skip_ws();
    const std::string word = read_word();
    if (word.empty()) error("expected a group name");

    if (word == "table") {
      if (consume(':')) return GroupSpec::table(std::string(s_.substr(std::exchange(pos_, s_.size()))));
      expect('(');
      const auto close = s_.rfind(')');
      if (close == std::string_view::npos || close < pos_) error("unterminated table(...)");
      std::string path(s_.substr(pos_, close - pos_));
      pos_ = close + 1;
      return GroupSpec::table(std::move(path));
    }
    if (word == "product") {
      expect('(');
      GroupSpec a = parse_product_chain();
      expect(',');
      GroupSpec b = parse_product_chain();
      expect(')');
      return GroupSpec::product(std::move(a), std::move(b));
    }
    if (word == "quaternion8" || word == "Q8") return GroupSpec::quaternion8();
    if (word == "cyclic" || word == "dihedral" || word == "symmetric") {
      expect('(');
      const int n = read_int();
      expect(')');
      if (word == "cyclic") return GroupSpec::cyclic(n);
      if (word == "dihedral") return GroupSpec::dihedral(n);
      return GroupSpec::symmetric(n);
    }
    // Short forms: Z4, C4, D3, S3.
    const char head = word[0];
    const std::string digits = word.substr(1);
    if ((head == 'Z' || head == 'C' || head == 'D' || head == 'S') && !digits.empty() &&
        std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
      const int n = std::stoi(digits);
      if (head == 'Z' || head == 'C') return GroupSpec::cyclic(n);
      if (head == 'D') return GroupSpec::dihedral(n);
      return GroupSpec::symmetric(n);
    }
    error("unknown group family '" + word + "'");
  }

  std::string read_word() {
    const std::size_t start = pos_;
    // Words are an alphabetic prefix followed by digits (Z12, quaternion8).
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      // 'x' between two factors is the product operator, not part of a name.
      if (s_[pos_] == 'x' && pos_ > start) break;
      ++pos_;
    }
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  int read_int() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    if (pos_ - start > 6) error("integer parameter too large");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) error(std::string("expected '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::InvalidSpec, what + " in group spec '" + std::string(s_) + "' at offset " +
                                     std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- builders

struct Built {
  Table2D mul;
  std::vector<std::string> labels;
};

Built make_cyclic(int n) {
  Built b;
  b.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) b.mul[a][c] = (a + c) % n;
  for (int k = 0; k < n; ++k) b.labels.push_back(k == 0 ? "e" : "g^" + std::to_string(k));
  return b;
}

// r^k s^e has index k + n*e; (r^a s^e)(r^b s^f) = r^(a + (-1)^e b) s^(e+f).
Built make_dihedral(int n) {
  Built b;
  const int order = 2 * n;
  b.mul.assign(order, std::vector<int>(order));
  for (int x = 0; x < order; ++x) {
    const int a = x % n, e = x / n;
    for (int y = 0; y < order; ++y) {
      const int c = y % n, f = y / n;
      const int k = ((e == 0 ? a + c : a - c) % n + n) % n;
      b.mul[x][y] = k + n * ((e + f) % 2);
    }
  }
  for (int x = 0; x < order; ++x) {
    const int k = x % n, e = x / n;
    std::string l = k == 0 ? (e == 0 ? "e" : "") : (k == 1 ? "r" : "r^" + std::to_string(k));
    if (e == 1) l += "s";
    b.labels.push_back(l);
  }
  return b;
}

// Index 2u + s encodes sign (-1)^s times unit u in {1, i, j, k}.
Built make_quaternion8() {
  // unit product: kUnit[u][v] = {unit, sign}.
  constexpr std::array<std::array<std::pair<int, int>, 4>, 4> kUnit = {{
      {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}},
      {{{1, 0}, {0, 1}, {3, 0}, {2, 1}}},
      {{{2, 0}, {3, 1}, {0, 1}, {1, 0}}},
      {{{3, 0}, {2, 0}, {1, 1}, {0, 1}}},
  }};
  Built b;
  b.mul.assign(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      const auto [u, s] = kUnit[x / 2][y / 2];
      const int sign = (x % 2 + y % 2 + s) % 2;
      b.mul[x][y] = 2 * u + sign;
    }
  }
  b.labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  return b;
}

// Permutations of {0..n-1} in lexicographic order; (st)(i) = s(t(i)).
Built make_symmetric(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;

  Built b;
  const int order = static_cast<int>(perms.size());
  b.mul.assign(order, std::vector<int>(order));
  std::vector<int> comp(n);
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) {
      for (int i = 0; i < n; ++i) comp[i] = perms[x][perms[y][i]];
      b.mul[x][y] = index.at(comp);
    }
  }
  for (const auto& q : perms) {
    std::string l = "[";
    for (int i = 0; i < n; ++i) l += (i ? " " : "") + std::to_string(q[i] + 1);
    b.labels.push_back(l + "]");
  }
  return b;
}

Built make_built(const GroupSpec& spec);

Built make_product(const GroupSpec& a, const GroupSpec& b) {
  const Built x = make_built(a);
  const Built y = make_built(b);
  const int na = static_cast<int>(x.mul.size());
  const int nb = static_cast<int>(y.mul.size());
  Built out;
  out.mul.assign(na * nb, std::vector<int>(na * nb));
  for (int i = 0; i < na * nb; ++i)
    for (int j = 0; j < na * nb; ++j)
      out.mul[i][j] = x.mul[i / nb][j / nb] * nb + y.mul[i % nb][j % nb];
  for (int i = 0; i < na * nb; ++i) out.labels.push_back("(" + x.labels[i / nb] + "," + y.labels[i % nb] + ")");
  return out;
}

Built make_built(const GroupSpec& spec) {
  switch (spec.family) {
    case GroupSpec::Family::Cyclic: return make_cyclic(spec.n);
    case GroupSpec::Family::Dihedral: return make_dihedral(spec.n);
    case GroupSpec::Family::Quaternion8: return make_quaternion8();
    case GroupSpec::Family::Symmetric: return make_symmetric(spec.n);
    case GroupSpec::Family::Product: return make_product(spec.factors.at(0), spec.factors.at(1));
    case GroupSpec::Family::Table: {
      const FiniteGroup g = load_table_file(spec.path);
      return {g.table(), g.labels()};
    }
  }
  fail(ErrorCode::InvalidSpec, "unknown family");
}

void check_spec(const GroupSpec& spec) {
  using F = GroupSpec::Family;
  switch (spec.family) {
    case F::Cyclic:
      require(spec.n >= 1 && spec.n <= kMaxOrder, ErrorCode::InvalidSpec,
              "cyclic(n) requires 1 <= n <= " + std::to_string(kMaxOrder));
      break;
    case F::Dihedral:
      require(spec.n >= 1 && 2 * spec.n <= kMaxOrder, ErrorCode::InvalidSpec,
              "dihedral(n) requires 1 <= n <= " + std::to_string(kMaxOrder / 2));
      break;
    case F::Symmetric:
      require(spec.n >= 1 && spec.n <= 5, ErrorCode::InvalidSpec, "symmetric(n) requires 1 <= n <= 5");
      break;
    case F::Quaternion8: break;
    case F::Product:
      require(spec.factors.size() == 2, ErrorCode::InvalidSpec, "product needs two factors");
      check_spec(spec.factors[0]);
      check_spec(spec.factors[1]);
      if (spec.factors[0].expected_order() > 0 && spec.factors[1].expected_order() > 0)
        require(spec.expected_order() <= kMaxOrder, ErrorCode::InvalidSpec, "product order too large");
      break;
    case F::Table:
      require(!spec.path.empty(), ErrorCode::InvalidSpec, "table spec needs a file path");
      break;
  }
}

}  // namespace

// ---------------------------------------------------------------- GroupSpec

GroupSpec GroupSpec::cyclic(int n) { return {Family::Cyclic, n, {}, {}}; }
GroupSpec GroupSpec::dihedral(int n) { return {Family::Dihedral, n, {}, {}}; }
GroupSpec GroupSpec::quaternion8() { return {Family::Quaternion8, 8, {}, {}}; }
GroupSpec GroupSpec::symmetric(int n) { return {Family::Symmetric, n, {}, {}}; }
GroupSpec GroupSpec::product(GroupSpec a, GroupSpec b) {
  return {Family::Product, 0, {std::move(a), std::move(b)}, {}};
}
GroupSpec GroupSpec::table(std::string path) { return {Family::Table, 0, {}, std::move(path)}; }

std::string GroupSpec::to_string() const {
  switch (family) {
    case Family::Cyclic: return "Z" + std::to_string(n);
    case Family::Dihedral: return "D" + std::to_string(n);
    case Family::Quaternion8: return "Q8";
    case Family::Symmetric: return "S" + std::to_string(n);
    case Family::Product: return "product(" + factors.at(0).to_string() + "," + factors.at(1).to_string() + ")";
    case Family::Table: return "table(" + path + ")";
  }
  return "?";
}

int GroupSpec::expected_order() const {
  switch (family) {
    case Family::Cyclic: return n;
    case Family::Dihedral: return 2 * n;
    case Family::Quaternion8: return 8;
    case Family::Symmetric: {
      int f = 1;
      for (int k = 2; k <= n; ++k) f *= k;
      return f;
    }
    case Family::Product: {
      const int a = factors.at(0).expected_order();
      const int b = factors.at(1).expected_order();
      return (a > 0 && b > 0) ? a * b : 0;
    }
    case Family::Table: return 0;
  }
  return 0;
}

GroupSpec parse_group_spec(std::string_view text) {
  GroupSpec spec = SpecParser(text).parse();
  check_spec(spec);
  return spec;
}

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup FiniteGroup::from_table(const Table2D& mul, std::vector<std::string> labels, GroupSpec spec) {
  const TableValidation report = validate_table(mul);
  if (!report.ok()) {
    std::string msg;
    for (const auto& f : report.failures) msg += (msg.empty() ? "" : "; ") + f;
    fail(ErrorCode::InvalidTable, msg);
  }
  const int n = static_cast<int>(mul.size());
  if (labels.empty()) {
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  require(static_cast<int>(labels.size()) == n, ErrorCode::InvalidTable, "label count differs from order");

  // Relabel by swapping the identity with index 0.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[0], perm[report.identity]);  // perm: new index -> old index (an involution)

  FiniteGroup g;
  g.order_ = n;
  g.spec_ = std::move(spec);
  g.mul_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul_[static_cast<std::size_t>(a) * n + b] = perm[mul[perm[a]][perm[b]]];
  g.labels_.resize(n);
  for (int a = 0; a < n; ++a) g.labels_[a] = labels[perm[a]];
  g.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == 0) g.inv_[a] = b;
  g.classes_ = conjugacy_classes(g);
  g.class_of_.assign(n, -1);
  for (int c = 0; c < static_cast<int>(g.classes_.size()); ++c)
    for (const int x : g.classes_[c]) g.class_of_[x] = c;
  return g;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

Table2D FiniteGroup::table() const {
  Table2D t(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  return t;
}

FiniteGroup build_group(const GroupSpec& spec) {
  check_spec(spec);
  if (spec.family == GroupSpec::Family::Table) {
    FiniteGroup g = load_table_file(spec.path);
    return g;
  }
  Built b = make_built(spec);
  return FiniteGroup::from_table(b.mul, std::move(b.labels), spec);
}

FiniteGroup build_group(std::string_view spec_text) { return build_group(parse_group_spec(spec_text)); }

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<int> owner(n, -1);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < n; ++x) {
    if (owner[x] >= 0) continue;
    const int id = static_cast<int>(classes.size());
    classes.emplace_back();
    for (int h = 0; h < n; ++h) {
      const int y = g.mul(g.mul(h, x), g.inverse(h));
      if (owner[y] < 0) {
        owner[y] = id;
        classes[id].push_back(y);
      }
    }
    std::sort(classes[id].begin(), classes[id].end());
  }
  return classes;
}

TableValidation validate_table(const Table2D& mul) {
  TableValidation r;
  const int n = static_cast<int>(mul.size());
  if (n == 0) {
    r.square = false;
    r.failures.push_back("empty table");
    return r;
  }
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) r.square = false;
  }
  if (!r.square) {
    r.failures.push_back("table is not square");
    return r;
  }
  for (const auto& row : mul)
    for (const int v : row)
      if (v < 0 || v >= n) {
        r.latin = false;
        r.failures.push_back("closure: entry " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
        return r;
      }

  for (int i = 0; i < n && r.latin; ++i) {
    std::vector<char> row_seen(n, 0), col_seen(n, 0);
    for (int j = 0; j < n; ++j) {
      if (row_seen[mul[i][j]]++) {
        r.latin = false;
        r.failures.push_back("not a Latin square: row " + std::to_string(i) + " repeats " +
                             std::to_string(mul[i][j]));
        break;
      }
      if (col_seen[mul[j][i]]++) {
        r.latin = false;
        r.failures.push_back("not a Latin square: column " + std::to_string(i) + " repeats " +
                             std::to_string(mul[j][i]));
        break;
      }
    }
  }

  for (int e = 0; e < n && r.identity < 0; ++e) {
    bool is_id = true;
    for (int x = 0; x < n && is_id; ++x) is_id = mul[e][x] == x && mul[x][e] == x;
    if (is_id) r.identity = e;
  }
  if (r.identity < 0) {
    r.has_identity = false;
    r.has_inverses = false;
    r.failures.push_back("no two-sided identity element");
  } else {
    for (int x = 0; x < n; ++x) {
      bool found = false;
      for (int y = 0; y < n && !found; ++y) found = mul[x][y] == r.identity && mul[y][x] == r.identity;
      if (!found) {
        r.has_inverses = false;
        r.failures.push_back("element " + std::to_string(x) + " has no two-sided inverse");
        break;
      }
    }
  }

  const auto assoc = [&](int a, int b, int c) { return mul[mul[a][b]][c] == mul[a][mul[b][c]]; };
  const auto report_triple = [&](int a, int b, int c) {
    r.associative = false;
    r.failures.push_back("not associative: (" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                         std::to_string(c) + " != " + std::to_string(a) + "*(" + std::to_string(b) + "*" +
                         std::to_string(c) + ")");
  };
  if (n <= kExhaustiveAssociativityOrder) {
    for (int a = 0; a < n && r.associative; ++a)
      for (int b = 0; b < n && r.associative; ++b)
        for (int c = 0; c < n && r.associative; ++c)
          if (!assoc(a, b, c)) report_triple(a, b, c);
  } else {
    r.associativity_exhaustive = false;
    std::mt19937_64 rng(0x5eed0fa55u + static_cast<unsigned>(n));
    std::uniform_int_distribution<int> pick(0, n - 1);
    const long samples = 10L * n * n;
    for (long s = 0; s < samples && r.associative; ++s) {
      const int a = pick(rng), b = pick(rng), c = pick(rng);
      if (!assoc(a, b, c)) report_triple(a, b, c);
    }
  }
  return r;
}

FiniteGroup load_table_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open table file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidTable, "malformed JSON in '" + path + "': " + e.what());
  }
  Table2D mul;
  std::vector<std::string> labels;
  try {
    mul = j.at("mul").get<Table2D>();
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("order")) {
      require(j.at("order").get<int>() == static_cast<int>(mul.size()), ErrorCode::InvalidTable,
              "declared order does not match table size");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidTable, "bad table schema in '" + path + "': " + e.what());
  }
  require(static_cast<int>(mul.size()) <= kMaxOrder, ErrorCode::InvalidTable, "table order too large");
  return FiniteGroup::from_table(mul, std::move(labels), GroupSpec::table(path));
}

}  // namespace ncft
