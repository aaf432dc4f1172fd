#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hcat/sset.hpp"

namespace hcat {

/// The n-simplices of X whose faces d_i, i != k, agree with the horn map.
/// `horn_map` is a map Lambda^n_k -> X as produced by enumerate_maps on
/// subcomplex_of_simplex(n, Horn, k).
std::vector<SimplexRef> horn_fillers(const SimplicialSet& x, int n, int k, const SimplicialMap& horn_map);

/// Images of the faces of a horn map, indexed by face i (the k-th is empty).
std::vector<SimplexRef> horn_faces(const SimplicialSet& x, int n, int k, const SimplicialMap& horn_map);

struct HornVerdict {
  int n = 0;
  int k = 0;
  bool exists = true;   // every horn of this shape has a filler
  bool unique = true;   // every horn of this shape has exactly one filler
  std::size_t horn_maps = 0;
  std::size_t max_fillers = 0;
};

struct HornCounterexample {
  int n = 0;
  int k = 0;
  std::vector<SimplexRef> faces;   // d_i images, i != k; position k left as a vertex placeholder
  std::size_t fillers = 0;
};

/// Horn-filling verdicts, all relative to `dim_cap`.
struct KanReport {
  int dim_cap = 0;
  std::vector<HornVerdict> verdicts;   // (n, k) for 2 <= n <= dim_cap, 0 <= k <= n
  bool nerve_of_category = false;      // inner horns fill uniquely
  bool nerve_of_groupoid = false;      // all horns fill uniquely
  bool kan = false;                    // all horns fill
  bool weak_kan = false;               // inner horns fill
  std::optional<HornCounterexample> missing_filler;   // first horn without a filler
  std::optional<HornCounterexample> extra_filler;     // first horn with several fillers

  const HornVerdict& at(int n, int k) const;
};

struct ClassifyOptions {
  int dim_cap = kDefaultDimCap;
  std::uint64_t node_budget = kDefaultNodeBudget;
  bool inner_only = false;   // skip outer horns (kan / groupoid flags are then false)
};

/// Runs every horn of every shape (n, k) up to min(dim_cap, X.dim_cap()).
/// Throws CapacityError naming the (n, k) being enumerated on budget overflow.
KanReport classify(const SimplicialSet& x, const ClassifyOptions& options = {});

struct IsomorphismEdgeReport {
  bool isomorphism = false;
  /// Route 1 witnesses: g : y -> x with 2-simplices (f, g, s0 x) and (g, f, s0 y).
  std::optional<SimplexRef> inverse;
  std::optional<SimplexRef> left_homotopy;
  std::optional<SimplexRef> right_homotopy;
  /// Route 2: [f] is invertible in h(X).
  bool invertible_in_homotopy_category = false;
};

/// Decides whether an edge of a weak Kan X is an isomorphism, by direct
/// witness search and through h(X). Throws PreconditionError unless X is weak
/// Kan up to dimension 3, ConsistencyError if the two routes disagree.
IsomorphismEdgeReport is_isomorphism_edge(const SimplicialSet& x, const SimplexRef& f);

}  // namespace hcat
