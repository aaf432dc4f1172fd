#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "hcat/group.hpp"

namespace hcat {

/// A finite category with a total composition table on composable pairs.
class FiniteCategory {
 public:
  struct Morphism {
    std::string name;
    int source = 0;
    int target = 0;
  };

  FiniteCategory() = default;
  /// compose[g * M + f] = g o f when target(f) == source(g), -1 otherwise.
  /// Validates associativity and unit laws on all triples.
  FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms, std::vector<int> identities,
                 std::vector<int> compose);

  /// Builds the dense table from (g, f, g o f) triples; compositions with
  /// identities may be omitted.
  static FiniteCategory from_triples(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                     std::vector<int> identities,
                                     const std::vector<std::tuple<int, int, int>>& triples);
  /// The one-object category of a group.
  static FiniteCategory from_group(const FiniteGroup& g);
  /// The one-object category of a monoid; mul[a * n + b] = a b, unit `unit`.
  static FiniteCategory from_monoid(const std::vector<std::string>& elements, const std::vector<int>& mul,
                                    int unit);
  /// The poset on {0..n-1} generated by the given strict relations a < b.
  static FiniteCategory from_poset(int n, const std::vector<std::pair<int, int>>& relations);
  /// The groupoid with exactly one morphism between any two objects.
  static FiniteCategory codiscrete(int n);
  static FiniteCategory disjoint_union(const FiniteCategory& a, const FiniteCategory& b);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object_name(int x) const { return objects_.at(x); }
  const std::vector<std::string>& objects() const { return objects_; }
  const Morphism& morphism(int f) const { return morphisms_.at(f); }
  const std::vector<Morphism>& morphisms() const { return morphisms_; }
  int source(int f) const { return morphisms_[f].source; }
  int target(int f) const { return morphisms_[f].target; }
  int identity(int x) const { return identities_[x]; }
  bool is_identity(int f) const { return identities_[source(f)] == f; }
  /// g o f; throws ArgumentError when not composable.
  int compose(int g, int f) const;
  std::vector<int> hom(int x, int y) const;
  std::optional<int> inverse(int f) const;
  bool is_groupoid() const;
  std::optional<int> find_object(std::string_view name) const;
  std::optional<int> find_morphism(std::string_view name) const;

  /// Number of pairs (f, g) with target(f) == source(g).
  std::size_t composable_pairs() const;

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<int> identities_;
  std::vector<int> compose_;
};

struct Functor {
  std::vector<int> objects;
  std::vector<int> morphisms;
  bool operator==(const Functor&) const = default;
};

/// True when F preserves sources, targets, identities and composition.
bool is_functor(const FiniteCategory& c, const FiniteCategory& d, const Functor& f);
/// All functors C -> D, by brute-force search.
std::vector<Functor> enumerate_functors(const FiniteCategory& c, const FiniteCategory& d);
/// An isomorphism of categories C -> D, if one exists.
std::optional<Functor> find_category_isomorphism(const FiniteCategory& c, const FiniteCategory& d);

/// A strict 2-category whose 2-cells are all invertible.
class Finite2Category {
 public:
  struct TwoCell {
    std::string name;
    int source = 0;  // 1-morphism
    int target = 0;  // 1-morphism, parallel to source
  };

  Finite2Category() = default;
  /// vertical[b * K + a] = b . a for a : f => g, b : g => h;
  /// horizontal[b * K + a] = b * a for a : f => f' (x -> y), b : g => g' (y -> z).
  /// Validates groupoid structure per hom, horizontal associativity and units,
  /// and the interchange law.
  Finite2Category(FiniteCategory base, std::vector<TwoCell> cells, std::vector<int> identity_cells,
                  std::vector<int> vertical, std::vector<int> horizontal);

  /// Only identity 2-cells.
  static Finite2Category locally_discrete(const FiniteCategory& c);
  /// Every 1-morphism carries the automorphisms Z/n, added under whiskering.
  static Finite2Category with_abelian_two_cells(const FiniteCategory& c, int n);
  /// Exactly one 2-cell between any two parallel 1-morphisms.
  static Finite2Category with_codiscrete_two_cells(const FiniteCategory& c);

  const FiniteCategory& base() const { return base_; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  const TwoCell& cell(int a) const { return cells_.at(a); }
  const std::vector<TwoCell>& cells() const { return cells_; }
  int identity_cell(int f) const { return identity_cells_[f]; }
  int vertical(int b, int a) const;
  int horizontal(int b, int a) const;
  int inverse_cell(int a) const;
  std::vector<int> cells_between(int f, int g) const;
  /// True when some 1-morphism carries a non-identity 2-cell out of it.
  bool has_nontrivial_two_cells() const;

 private:
  FiniteCategory base_;
  std::vector<TwoCell> cells_;
  std::vector<int> identity_cells_;
  std::vector<int> vertical_;
  std::vector<int> horizontal_;
};

}  // namespace hcat
