#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcat {

/// A finite group given by its full multiplication table.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(trivial()) {}
  /// mul[a * n + b] = a * b. Validates the group axioms exhaustively.
  FiniteGroup(std::vector<std::string> names, std::vector<int> mul);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup klein_four();
  /// Permutations of {0..n-1}, composed as (g h)(x) = g(h(x)).
  static FiniteGroup symmetric(int n);
  static FiniteGroup dihedral(int n);  // order 2n
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
  static FiniteGroup power(const FiniteGroup& g, int k);
  /// One representative of every isomorphism class of order <= 6.
  static std::vector<FiniteGroup> all_up_to_order_six();
  /// Named presets: "C<n>", "V4", "S3", "D<n>", "1".
  static FiniteGroup preset(std::string_view name);
  /// Skips the associativity check; for tables inherited from a validated
  /// group (subgroups, stabilizers). Identity and inverses are still derived.
  static FiniteGroup unchecked(std::vector<std::string> names, std::vector<int> mul);

  int order() const { return static_cast<int>(names_.size()); }
  int mul(int a, int b) const { return mul_[a * order() + b]; }
  int inverse(int a) const { return inverse_[a]; }
  int identity() const { return identity_; }
  int element_order(int a) const;
  bool is_abelian() const;
  const std::string& name(int a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> find(std::string_view name) const;
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// A small generating set, chosen greedily by decreasing element order.
  std::vector<int> generators() const;
  /// The subgroup on `elements` (must be closed), relabelled 0..k-1 in order.
  FiniteGroup subgroup(std::span<const int> elements) const;

 private:
  struct Unchecked {};
  FiniteGroup(Unchecked, std::vector<std::string> names, std::vector<int> mul);
  void derive_units();

  std::vector<std::string> names_;
  std::vector<int> mul_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string label_;
};

/// Extends generator images to a homomorphism G -> H; nullopt if the
/// assignment is not compatible with the relations of G.
std::optional<std::vector<int>> extend_homomorphism(const FiniteGroup& g, std::span<const int> generators,
                                                    std::span<const int> images, const FiniteGroup& h);

/// An isomorphism G -> H found by generator-image search with order pruning.
std::optional<std::vector<int>> find_group_isomorphism(const FiniteGroup& g, const FiniteGroup& h);
inline bool groups_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  return find_group_isomorphism(g, h).has_value();
}

}  // namespace hcat
