#pragma once

#include <cstdint>
#include <vector>

#include "hcat/category.hpp"
#include "hcat/sset.hpp"

namespace hcat {

/// N(C). Level 0 keys are {object}; level n >= 1 keys are the strings
/// {f_1, ..., f_n} with f_i : c_{i-1} -> c_i.
IndexedSimplicialSet nerve_indexed(const FiniteCategory& c, int dim_cap = kDefaultDimCap);
SimplicialSet nerve(const FiniteCategory& c, int dim_cap = kDefaultDimCap);

/// The Duskin nerve of a (2,1)-category. An n-simplex is a list of objects
/// c_i, 1-morphisms f_ij : c_i -> c_j (i < j) and 2-cells
/// mu_ijk : f_jk o f_ij => f_ik (i < j < k) subject to the tetrahedron
/// condition mu_ikl . (f_kl * mu_ijk) = mu_ijl . (mu_jkl * f_ij).
/// Keys list the objects, then f_ij and mu_ijk in lexicographic order.
IndexedSimplicialSet duskin_nerve_indexed(const Finite2Category& c, int dim_cap = kDefaultDimCap);
SimplicialSet duskin_nerve(const Finite2Category& c, int dim_cap = kDefaultDimCap);

inline constexpr std::size_t kDefaultPathClassBudget = 100'000;

/// tau(X): vertices, edge paths, and the relations d1 = d0 o d2 from every
/// non-degenerate 2-simplex, with degenerate edges read as identities.
/// Computed by coset enumeration on the Cayley graph of post-composition;
/// throws CapacityError when more than `budget` path classes are defined.
FiniteCategory fundamental_category(const SimplicialSet& x, std::size_t budget = kDefaultPathClassBudget);

/// Per-instance evidence gathered while building h(X).
struct HomotopyCategoryReport {
  std::size_t edges = 0;
  std::size_t homotopy_pairs = 0;   // pairs (f, g) with f ~ g, witnessed by a 2-simplex
  std::size_t composites_checked = 0;
};

/// h(X) for X weak Kan in dimensions 2 and 3. Morphisms are classes of edges
/// under f ~ g iff some 2-simplex has faces (d2, d0, d1) = (f, s0 y, g).
/// Throws PreconditionError if X fails the inner horn check, and
/// ConsistencyError if the relation is not an equivalence or composition
/// depends on the chosen filler.
FiniteCategory homotopy_category(const SimplicialSet& x, HomotopyCategoryReport* report = nullptr);

/// Edge classes of h(X): the class index of every 1-simplex of X, in the
/// order of x.simplices(1), as used by homotopy_category.
std::vector<int> homotopy_classes(const SimplicialSet& x);

/// Map_X(x, y): n-simplices are maps Delta^n x Delta^1 -> X restricting to
/// the constant simplices at x and y on the two ends. Levels are computed up
/// to min(dim_cap, X.dim_cap() - 1) since Delta^n x Delta^1 has dimension n+1.
SimplicialSet mapping_space(const SimplicialSet& x, const SimplexRef& from, const SimplexRef& to,
                            int dim_cap = kDefaultDimCap - 1, std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace hcat
