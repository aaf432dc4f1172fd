#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hcat {

inline constexpr int kDefaultDimCap = 4;
inline constexpr int kMaxDimCap = 6;
inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// A monotone map [k] -> [n], stored as its values alpha[0..k].
using MonotoneMap = std::vector<int>;

/// Encoded simplex data used by level models; compared lexicographically.
using Key = std::vector<int>;

/// A simplex in Eilenberg-Zilber normal form: s_{j1} ... s_{jt} y with
/// j1 > ... > jt and y a non-degenerate generator. `degeneracies` lists the
/// operator word left to right, so s_0 is applied first in {1, 0}.
struct SimplexRef {
  int gen_dim = 0;
  int gen = 0;
  std::vector<int> degeneracies;

  int dim() const { return gen_dim + static_cast<int>(degeneracies.size()); }
  bool degenerate() const { return !degeneracies.empty(); }

  auto operator<=>(const SimplexRef&) const = default;
  bool operator==(const SimplexRef&) const = default;
};

/// The surjection [dim] -> [dim - |J|] collapsing exactly the positions in J.
MonotoneMap surjection_of(std::span<const int> degeneracies, int dim);
/// Positions p with sigma(p) == sigma(p+1), strictly decreasing.
std::vector<int> degeneracies_of(std::span<const int> surjection);
/// Normal form of s_j applied to `ref`. Needs no face data.
SimplexRef degenerate(const SimplexRef& ref, int j);
/// Normal form of the total degeneracy of `ref` up to dimension `dim`.
SimplexRef degenerate_to(const SimplexRef& ref, int dim);

/// Coface delta^i : [n-1] -> [n] and codegeneracy sigma^j : [n+1] -> [n].
MonotoneMap coface_map(int n, int i);
MonotoneMap codegeneracy_map(int n, int j);

/// A finitely generated simplicial set truncated at `dim_cap`. Only
/// non-degenerate generators are stored; degenerate simplices are virtual.
class SimplicialSet {
 public:
  struct Generator {
    std::string name;
    std::vector<SimplexRef> faces;  // d_0 .. d_m, empty in dimension 0
  };

  SimplicialSet() = default;
  /// Validates face references; the simplicial identities are checked by
  /// validate().
  SimplicialSet(int dim_cap, std::vector<std::vector<Generator>> generators);

  int dim_cap() const { return dim_cap_; }
  int top_dim() const { return static_cast<int>(generators_.size()) - 1; }
  std::size_t generator_count(int dim) const;
  const Generator& generator(int dim, int gen) const { return generators_.at(dim).at(gen); }
  const std::vector<std::vector<Generator>>& generators() const { return generators_; }
  std::optional<SimplexRef> find(std::string_view name) const;

  /// Non-degenerate counts per dimension 0..dim_cap.
  std::vector<std::size_t> census() const;

  SimplexRef face(const SimplexRef& x, int i) const;
  SimplexRef degeneracy(const SimplexRef& x, int j) const { return degenerate(x, j); }
  /// x . alpha for a monotone alpha : [k] -> [dim x].
  SimplexRef apply(const SimplexRef& x, std::span<const int> alpha) const;
  /// Vertex sequence of x as refs of dimension 0.
  std::vector<SimplexRef> vertices(const SimplexRef& x) const;

  /// All simplices of dimension n, degenerate ones included, in a fixed order.
  std::vector<SimplexRef> simplices(int n) const;
  std::uint64_t level_size(int n) const;

  std::string describe(const SimplexRef& x) const;

  /// Throws ValidationError if any simplicial identity fails on a simplex of
  /// dimension <= dim_cap.
  void validate() const;

  bool operator==(const SimplicialSet&) const;

 private:
  int dim_cap_ = 0;
  std::vector<std::vector<Generator>> generators_;
  std::map<std::string, std::pair<int, int>, std::less<>> by_name_;
};

/// A levelwise description of a simplicial set: every simplex of each
/// level, with faces and degeneracies on encoded keys.
struct LevelModel {
  std::function<std::vector<Key>(int n)> level;
  std::function<Key(int n, int i, const Key&)> face;         // X_n -> X_{n-1}
  std::function<Key(int n, int j, const Key&)> degeneracy;   // X_n -> X_{n+1}
  std::function<std::string(int n, const Key&)> name;
};

/// A simplicial set together with the key of every simplex it was built from.
struct IndexedSimplicialSet {
  SimplicialSet set;
  std::vector<std::map<Key, SimplexRef>> index;   // per level, all simplices
  std::vector<std::vector<Key>> generator_keys;   // per dimension, per generator

  const SimplexRef& ref(int n, const Key& key) const;
};

/// Builds the simplicial set whose level n is model.level(n), detecting
/// degenerate simplices as images of degeneracy maps.
IndexedSimplicialSet build_simplicial_set(int dim_cap, const LevelModel& model);

/// Delta^n. Generators are strictly increasing sequences, named by digits.
IndexedSimplicialSet standard_simplex_indexed(int n, int dim_cap = -1);
SimplicialSet standard_simplex(int n, int dim_cap = -1);

enum class SubcomplexKind { Boundary, Horn };

/// The boundary of Delta^n, or the horn Lambda^n_k.
IndexedSimplicialSet subcomplex_of_simplex_indexed(int n, SubcomplexKind kind, int k = 0,
                                                   int dim_cap = -1);
SimplicialSet subcomplex_of_simplex(int n, SubcomplexKind kind, int k = 0, int dim_cap = -1);

/// One letter of a simplicial operator word.
struct Symbol {
  enum class Kind { Face, Degeneracy };
  Kind kind;
  int index;
  bool operator==(const Symbol&) const = default;
};

/// Parses "d1 s0 s0" (composition order, rightmost applied first).
std::vector<Symbol> parse_word(std::string_view text);

struct NormalizeOptions {
  /// Nonzero: pick rewrite positions pseudo-randomly from this seed.
  std::uint32_t shuffle_seed = 0;
};

/// Normal form of word(generator) obtained by rewriting with the simplicial
/// identities and the stored faces of generators.
SimplexRef normalize(const SimplicialSet& x, const SimplexRef& generator, std::span<const Symbol> word,
                     const NormalizeOptions& options = {});

/// Levelwise product. Keys are the concatenated encodings of both coordinates.
IndexedSimplicialSet product_indexed(const SimplicialSet& x, const SimplicialSet& y, int dim_cap);
SimplicialSet product(const SimplicialSet& x, const SimplicialSet& y, int dim_cap);
Key product_key(const SimplexRef& a, const SimplexRef& b);

Key encode(const SimplexRef& ref);
SimplexRef decode(std::span<const int> key, std::size_t& pos);

// ---------------------------------------------------------------------------
// Maps

/// Images of source generators, per dimension and generator index.
struct SimplicialMap {
  std::vector<std::vector<SimplexRef>> images;
  bool operator==(const SimplicialMap&) const = default;
};

/// Image of an arbitrary source simplex.
SimplexRef map_simplex(const SimplicialSet& target, const SimplicialMap& f, const SimplexRef& x);

/// Throws ValidationError unless f commutes with faces on every generator.
void validate_map(const SimplicialSet& source, const SimplicialSet& target, const SimplicialMap& f);

struct MapSearchOptions {
  int dim_cap = kDefaultDimCap;
  std::uint64_t node_budget = kDefaultNodeBudget;
  /// Generators of the source whose image is prescribed.
  std::map<std::pair<int, int>, SimplexRef> fixed;
  /// Only injective assignments onto non-degenerate generators.
  bool isomorphisms_only = false;
  /// Stop after this many maps (0 = all); a limited search returns the first
  /// maps in assignment order rather than sorted.
  std::size_t limit = 0;
};

/// Every simplicial map source -> target on the dim_cap skeleton, by
/// backtracking over generators; each generator is assigned right after its
/// faces. Results are ordered by the images in (dimension, index) order.
std::vector<SimplicialMap> enumerate_maps(const SimplicialSet& source, const SimplicialSet& target,
                                          const MapSearchOptions& options = {});

/// A face-commuting bijection of generators, if one exists.
std::optional<SimplicialMap> is_isomorphic(const SimplicialSet& x, const SimplicialSet& y,
                                           int dim_cap = kDefaultDimCap,
                                           std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace hcat
