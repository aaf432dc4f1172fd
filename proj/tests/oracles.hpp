#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hcat/action.hpp"
#include "hcat/descent.hpp"
#include "hcat/group.hpp"
#include "hcat/sset.hpp"

// Independent reference computations used to check the engine. None of them
// call into the code they check.
namespace oracle {

/// Applies a face/degeneracy word (rightmost letter first) to a simplex of
/// Delta^n given by its vertex sequence, as a composite of monotone maps.
std::vector<int> apply_word(std::vector<int> vertices, const std::vector<hcat::Symbol>& word);

std::uint64_t binomial(int n, int k);
/// Monotone maps [m] -> [n], counted by enumeration.
std::uint64_t count_monotone(int m, int n);

/// Orbits by breadth-first search along the whole group, sorted.
std::vector<std::vector<int>> orbits(const hcat::GroupAction& a);
int stabilizer_order(const hcat::GroupAction& a, int x);

/// Free and transitive on every fibre, and the base map is onto.
bool torsor_by_fibres(const hcat::GroupAction& a);

/// Homomorphisms G -> S_n, counted by assigning permutations to generators and
/// propagating along the Cayley graph.
std::size_t count_homomorphisms_to_symmetric(const hcat::FiniteGroup& g, int n);

/// Cocycles on E x_B E by enumerating all maps to G; nullopt when there are
/// more than `limit` candidates.
std::optional<std::size_t> count_cocycles(const hcat::Cover& c, const hcat::FiniteGroup& g,
                                          std::uint64_t limit = 2'000'000);

/// prod_b |G|^(|E_b| - 1).
std::uint64_t cocycle_formula(const hcat::Cover& c, const hcat::FiniteGroup& g);

/// Inner and outer horn filler counts of N(C) in dimension 2, from the
/// composition table: Lambda^2_1 from (f, g) has one filler; Lambda^2_0 from
/// (f, h) has |{g : g f = h}| fillers.
struct NerveHornCounts {
  std::size_t inner_min = 0, inner_max = 0;
  std::size_t outer_min = 0, outer_max = 0;
};
NerveHornCounts nerve_horns_dim2(const hcat::FiniteCategory& c);

}  // namespace oracle
