#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hcat/group.hpp"
#include "hcat/groupoid.hpp"
#include "hcat/simplicial_object.hpp"
#include "hcat/sset.hpp"

namespace hcat {

// ---------------------------------------------------------------------------
// Sites

/// A cover in the site of finite sets: a surjection E -> B. A covering family
/// {U_i -> B} is encoded by E = U_1 + ... + U_k, with pieces[e] = i; an empty
/// `pieces` means a single piece.
struct Cover {
  std::vector<std::string> e;
  std::vector<std::string> b;
  std::vector<int> pi;
  std::vector<int> pieces;

  /// Throws ArgumentError unless pi maps E onto B and pieces are numbered 0..k-1.
  void validate() const;
  SetMap as_map() const { return {e, b, pi}; }
  int piece_count() const;
  /// Elements of E in piece i, in order.
  std::vector<int> piece(int i) const;

  static Cover identity(const std::vector<std::string>& b);
  /// n points over a single point.
  static Cover of_point(int n);
};

/// E x_B B' -> B' for f : B' -> B. Elements are the pairs (e, b') with
/// pi(e) = f(b'), in lexicographic order.
Cover base_change(const Cover& c, const SetMap& f);

/// Every surjection {0..e-1} -> {0..b-1}, in lexicographic order of pi.
std::vector<Cover> enumerate_surjections(int e, int b);

/// A finite topological space, with opens stored as bitmasks of points.
class FiniteSpace {
 public:
  using Open = std::uint32_t;

  /// Throws ValidationError unless the opens contain the empty set and the
  /// whole space and are closed under union and intersection.
  FiniteSpace(std::vector<std::string> points, std::vector<Open> opens);
  /// The Alexandrov topology of a preorder: opens are the up-closed sets.
  /// `relations` lists pairs (a, b) meaning a <= b.
  static FiniteSpace alexandrov(int n, const std::vector<std::pair<int, int>>& relations);
  static FiniteSpace discrete(int n);
  /// Points {0, 1} with opens {}, {1}, {0, 1}.
  static FiniteSpace sierpinski();

  int point_count() const { return static_cast<int>(points_.size()); }
  const std::string& point(int p) const { return points_[p]; }
  const std::vector<Open>& opens() const { return opens_; }
  Open whole() const { return point_count() == 32 ? ~Open{0} : (Open{1} << point_count()) - 1; }
  bool is_open(Open u) const;
  std::string open_name(Open u) const;

 private:
  std::vector<std::string> points_;
  std::vector<Open> opens_;
};

/// A covering family of an open: opens contained in `target` whose union is
/// `target`.
struct OpenCover {
  FiniteSpace::Open target = 0;
  std::vector<FiniteSpace::Open> family;
  void validate(const FiniteSpace& x) const;
};

/// {U_i n V} covering V, for an open V contained in the target.
OpenCover base_change(const OpenCover& c, FiniteSpace::Open v);

// ---------------------------------------------------------------------------
// Set-valued presheaves

/// A presheaf of sets on finite sets. Sections over T = {0..n-1} are keys;
/// restrict(f, t, s) pulls a section over T (|T| = t) back along f : S -> T.
struct SetPresheaf {
  std::string name;
  std::function<std::vector<Key>(int n)> sections;
  std::function<Key(const std::vector<int>& f, int t, const Key& s)> restrict;

  /// Hom(-, S): sections over T are the maps T -> S.
  static SetPresheaf representable(int s);
  /// The constant presheaf with value A.
  static SetPresheaf constant(int a);
};

/// A presheaf of sets on the opens of a finite space; restrict(u, v, s) maps a
/// section over u to one over v, for v contained in u.
struct OpenPresheaf {
  std::string name;
  std::function<std::vector<Key>(FiniteSpace::Open)> sections;
  std::function<Key(FiniteSpace::Open u, FiniteSpace::Open v, const Key& s)> restrict;

  /// Hom(-, W): one section over V when V is contained in W, none otherwise.
  static OpenPresheaf representable(FiniteSpace::Open w);
  /// All functions from the points of V to {0..a-1}.
  static OpenPresheaf functions(const FiniteSpace& x, int a);
  static OpenPresheaf constant(int a);
};

/// Throws ValidationError if restriction is not functorial (identities and
/// composites along every chain of opens w <= v <= u).
void validate_presheaf(const OpenPresheaf& f, const FiniteSpace& x);

struct SheafReport {
  bool coproduct = true;      // finite coproducts go to products
  bool separated = true;      // F(B) -> equalizer injective
  bool glued = true;          // F(B) -> equalizer surjective
  bool sheaf = true;
  std::string counterexample;
  std::size_t base_sections = 0;
  std::size_t equalizer_size = 0;
  std::size_t limit_size = 0;     // cosimplicial limit over levels <= 3
  bool truncation_agrees = true;  // the limit and the equalizer are the same subset
};

/// Coproduct condition along the pieces of E, then the equalizer
/// F(B) -> eq(F(E) => F(E x_B E)), then the comparison with the limit over
/// the Cech nerve truncated at level 3.
SheafReport check_sheaf_sets(const SetPresheaf& f, const Cover& c);
/// F(empty) is a point and F(V u W) = F(V) x F(W) for disjoint opens, then
/// the equalizer and truncation checks for the family.
SheafReport check_sheaf_sets(const OpenPresheaf& f, const FiniteSpace& x, const OpenCover& c);

// ---------------------------------------------------------------------------
// Groupoid-valued presheaves

/// A presheaf of groupoids on finite sets. Restriction along f : S -> T is a
/// functor F(T) -> F(S); `coherence(f, g, u, a)` for f : R -> S, g : S -> T,
/// |T| = u, a in F(T) is the isomorphism f* g* a -> (g f)* a in F(R). A null
/// coherence means restriction is strictly functorial.
struct GroupoidPresheaf {
  using Mor = FiniteGroupoid::Mor;
  std::string name;
  std::function<FiniteGroupoid(int n)> value;
  std::function<int(const std::vector<int>& f, int t, int a)> restrict_object;
  std::function<Mor(const std::vector<int>& f, int t, Mor u)> restrict_morphism;
  std::function<Mor(const std::vector<int>& f, const std::vector<int>& g, int u, int a)> coherence;

  /// G-torsors over T. Every torsor over a finite set is trivial, so the
  /// value is modelled by its skeleton B(G^T); restriction is precomposition.
  static GroupoidPresheaf torsors(const FiniteGroup& g);
  /// BG on every set, with identity restrictions.
  static GroupoidPresheaf constant_bg(const FiniteGroup& g);
};

struct DescentGroupoid {
  FiniteGroupoid groupoid;
  int truncation = 2;
  FiniteGroupoid::Mor stride = 0;   // morphism (i, u) has id i * stride + u
  /// Object i is (objects[i].first, objects[i].second): an object of F(E) and
  /// a gluing isomorphism over E x_B E.
  std::vector<std::pair<int, FiniteGroupoid::Mor>> objects;
};

/// The 2-limit of F over the Cech nerve truncated at level 2 (descent data
/// satisfying the cocycle and unit conditions), or at level 3 (the cocycle
/// additionally restricted along the four faces of the triple overlaps).
/// Throws ConsistencyError if the coherence isomorphisms fail associativity.
DescentGroupoid descent_groupoid(const GroupoidPresheaf& f, const Cover& c, int truncation = 2);

struct StackReport {
  bool coproduct = true;
  EquivalenceReport comparison;  // F(B) -> Desc
  bool stack = false;
  std::string failure;
  int descent_objects = 0;
  Rational descent_cardinality{0};
  bool truncation_agrees = true;  // Desc over levels <= 2 and <= 3 are equivalent
};

StackReport check_stack_groupoids(const GroupoidPresheaf& f, const Cover& c);

// ---------------------------------------------------------------------------
// Nonabelian Cech descent for BG

/// Cocycles g : E x_B E -> G with g(x, x) = e and g(x, z) = g(y, z) g(x, y);
/// morphisms are cochains h : E -> G acting by (h.g)(x, y) = h(y) g(x, y) h(x)^-1.
struct CechDescent {
  FiniteGroup group;
  Cover cover;
  std::vector<std::pair<int, int>> pairs;   // E x_B E, lexicographic
  /// Action groupoid of G^E on cocycles; morphism (h, i) has id
  /// h * cocycle_count() + i.
  FiniteGroupoid groupoid;

  int cocycle_count() const { return groupoid.object_count(); }
  /// Values on `pairs` of cocycle i.
  std::vector<int> cocycle(int i) const;
  /// Index of a cocycle given by its values on `pairs`; -1 if it is not one.
  int find(const std::vector<int>& values) const;
  /// Cochain (one element per point of E) <-> element of G^E.
  std::int64_t encode(const std::vector<int>& h) const;
  std::vector<int> decode(std::int64_t h) const;
};

/// Throws ArgumentError if the cover is not surjective and CapacityError if
/// G^E does not fit in 63 bits.
CechDescent cech_descent_groupoid(const Cover& c, const FiniteGroup& g);

struct RefinementReport {
  bool valid = true;
  bool equivalent = false;          // equivalence_check on the two groupoids
  EquivalenceReport restriction;    // the functor induced by the refinement map
  bool invariant = false;
  Rational cardinality_coarse{0};
  Rational cardinality_fine{0};
};

/// `refinement` maps the points of `fine` to those of `coarse` over the base.
/// Throws ArgumentError if it is not a map over B.
RefinementReport refinement_invariance(const Cover& coarse, const Cover& fine, const std::vector<int>& refinement,
                                       const FiniteGroup& g);

}  // namespace hcat
