#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "hcat/category.hpp"
#include "hcat/group.hpp"

namespace hcat {

using Rational = boost::rational<std::int64_t>;

/// A finite groupoid. Morphisms are opaque 64-bit ids. Two table-free
/// backends sit next to the explicit one:
/// an explicit composition table, and the action groupoid of a (possibly
/// large, implicitly given) group acting on a finite set, whose morphisms
/// (h, x) : x -> h.x are never materialized. A third backend takes arbitrary
/// callbacks.
class FiniteGroupoid {
 public:
  using Mor = std::int64_t;

  /// A group given by callbacks, for groups too large to tabulate.
  struct ImplicitGroup {
    std::int64_t order = 1;
    std::function<std::int64_t(std::int64_t, std::int64_t)> mul;
    std::function<std::int64_t(std::int64_t)> inverse;
    std::int64_t identity = 0;
    std::vector<std::int64_t> generators;
    std::function<std::string(std::int64_t)> name;
  };

  /// An action of an implicit group on objects 0..object_count-1.
  struct ActionSpec {
    ImplicitGroup group;
    int object_count = 0;
    std::function<int(std::int64_t h, int x)> act;
    std::function<std::string(int)> object_name;
  };

  /// A groupoid given entirely by callbacks; `out(x)` lists the morphisms
  /// with source x.
  struct CallbackSpec {
    int object_count = 0;
    std::uint64_t morphism_count = 0;
    std::function<std::string(int)> object_name;
    std::function<std::vector<std::int64_t>(int)> out;
    std::function<int(std::int64_t)> source;
    std::function<int(std::int64_t)> target;
    std::function<std::int64_t(int)> identity;
    std::function<std::int64_t(std::int64_t, std::int64_t)> compose;
    std::function<std::int64_t(std::int64_t)> inverse;
    std::function<std::string(std::int64_t)> morphism_name;
  };

  class Backend;

  FiniteGroupoid();
  /// Throws ValidationError unless every morphism of `c` is invertible.
  static FiniteGroupoid from_category(const FiniteCategory& c);
  /// Morphisms (h, x) : x -> h.x with (h', h.x) o (h, x) = (h'h, x).
  static FiniteGroupoid from_action(ActionSpec spec);
  static FiniteGroupoid from_callbacks(CallbackSpec spec);
  static FiniteGroupoid discrete(const std::vector<std::string>& objects);
  /// BG: one object with automorphism group G.
  static FiniteGroupoid classifying(const FiniteGroup& g);

  int object_count() const;
  std::string object_name(int x) const;
  std::uint64_t morphism_count() const;
  int source(Mor f) const;
  int target(Mor f) const;
  Mor identity(int x) const;
  Mor compose(Mor g, Mor f) const;   // g o f
  Mor inverse(Mor f) const;
  std::string morphism_name(Mor f) const;
  std::vector<Mor> hom(int x, int y) const;
  std::vector<Mor> automorphisms(int x) const;

  /// Component index of every object; components are numbered in order of
  /// their least object.
  const std::vector<int>& components() const;
  int component_count() const;
  /// Aut(x) as a group table, elements in the order of automorphisms(x).
  FiniteGroup automorphism_group(int x) const;
  /// Materializes the groupoid as a category (explicit backends only, or
  /// action groupoids with at most `limit` morphisms).
  FiniteCategory to_category(std::uint64_t limit = 100'000) const;

 private:
  explicit FiniteGroupoid(std::shared_ptr<const Backend> backend);
  std::shared_ptr<const Backend> backend_;
  mutable std::optional<std::vector<int>> components_;
};

struct SkeletonEntry {
  int representative = 0;   // least object of the component
  FiniteGroup automorphisms;
};

/// One entry per component, ordered by representative.
std::vector<SkeletonEntry> skeleton(const FiniteGroupoid& g);

/// Equivalent iff the components can be paired with isomorphic automorphism
/// groups.
bool equivalence_check(const FiniteGroupoid& a, const FiniteGroupoid& b);

/// Sum over components of 1 / |Aut|.
Rational groupoid_cardinality(const FiniteGroupoid& g);

/// A functor between finite groupoids, given by callbacks.
struct GroupoidFunctor {
  std::function<int(int)> on_objects;
  std::function<FiniteGroupoid::Mor(FiniteGroupoid::Mor)> on_morphisms;
};

struct EquivalenceReport {
  bool functorial = true;            // on the automorphism groups checked
  bool essentially_surjective = false;
  bool injective_on_components = false;
  bool fully_faithful = false;       // Aut(x) -> Aut(Fx) bijective at every representative
  bool equivalence = false;
  std::string failure;
};

/// Checks that F : A -> B is an equivalence: a bijection on components and
/// an isomorphism Aut(x) -> Aut(F x) for each component representative x.
/// For groupoids a functor with these properties is fully faithful.
EquivalenceReport is_equivalence(const FiniteGroupoid& a, const FiniteGroupoid& b, const GroupoidFunctor& f);

/// The iso-comma 2-pullback A x_C B of F : A -> C and G : B -> C. Objects are
/// triples (a, b, phi : F a -> G b); morphisms (alpha, beta) with
/// G(beta) o phi = phi' o F(alpha). Explicit backends only.
FiniteGroupoid iso_comma(const FiniteGroupoid& a, const FiniteGroupoid& b, const FiniteGroupoid& c,
                         const GroupoidFunctor& f, const GroupoidFunctor& g);

}  // namespace hcat
