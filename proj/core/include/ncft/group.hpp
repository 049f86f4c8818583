#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ncft {

/// Description of a group in the built-in catalog, or a reference to a
/// multiplication-table file.
struct GroupSpec {
  enum class Family { Cyclic, Dihedral, Quaternion8, Symmetric, Product, Table };

  Family family = Family::Cyclic;
  int n = 1;                        // Cyclic/Dihedral/Symmetric parameter
  std::vector<GroupSpec> factors;   // Product: exactly two
  std::string path;                 // Table: file path ("" for in-memory tables)

  static GroupSpec cyclic(int n);
  static GroupSpec dihedral(int n);
  static GroupSpec quaternion8();
  static GroupSpec symmetric(int n);
  static GroupSpec product(GroupSpec a, GroupSpec b);
  static GroupSpec table(std::string path);

  /// Canonical short form: Z4, D3, Q8, S3, product(Z2,Z2), table(path).
  std::string to_string() const;
  /// Order implied by the spec; 0 for table specs.
  int expected_order() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Parses Z4 | cyclic(4) | D4 | dihedral(4) | Q8 | quaternion8 | S3 |
/// symmetric(3) | product(A,B) | AxB | table(path) | table:path.
GroupSpec parse_group_spec(std::string_view text);

/// Flat multiplication table `mul[a * order + b] = a·b`.
using MulTable = std::vector<int>;

/// Finite group on dense indices 0..order-1 with identity 0. Immutable.
class FiniteGroup {
 public:
  /// Validates the table (throws InvalidTable) and relabels so the identity is 0.
  static FiniteGroup from_table(const std::vector<std::vector<int>>& mul,
                                std::vector<std::string> labels, GroupSpec spec);

  int order() const { return order_; }
  int identity() const { return 0; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
  int inverse(int g) const { return inv_[g]; }
  const std::vector<int>& inverses() const { return inv_; }
  const std::string& label(int g) const { return labels_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_of(int g) const { return class_of_[g]; }
  const GroupSpec& spec() const { return spec_; }
  bool is_abelian() const;

  std::vector<std::vector<int>> table() const;

 private:
  FiniteGroup() = default;

  int order_ = 0;
  MulTable mul_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  GroupSpec spec_;
};

/// Builds and validates a group. Throws InvalidSpec or InvalidTable.
FiniteGroup build_group(const GroupSpec& spec);
FiniteGroup build_group(std::string_view spec_text);

/// Conjugacy classes by exhaustive conjugation, each sorted, ordered by
/// smallest member (so the identity class {0} comes first).
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);

struct TableValidation {
  bool square = true;
  bool latin = true;
  bool has_identity = true;
  bool has_inverses = true;
  bool associative = true;
  bool associativity_exhaustive = true;
  int identity = -1;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks closure/Latin, identity, inverses and associativity. Associativity
/// is exhaustive up to order 64 and sampled (10·order² triples) above.
TableValidation validate_table(const std::vector<std::vector<int>>& mul);

/// Multiplication-table JSON file: {"order": n, "mul": [[...]], "labels": [...]}.
FiniteGroup load_table_file(const std::string& path);

}  // namespace ncft
