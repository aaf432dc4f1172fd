#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "hcat/error.hpp"
#include "hcat/kan.hpp"
#include "hcat/nerve.hpp"

using namespace hcat;

namespace {

// Strings of n composable morphisms, counted straight from the table.
std::uint64_t composable_strings(const FiniteCategory& c, int n) {
  if (n == 0) return c.object_count();
  std::vector<std::uint64_t> ending(c.object_count(), 0);
  for (int f = 0; f < c.morphism_count(); ++f) ++ending[c.target(f)];
  for (int step = 1; step < n; ++step) {
    std::vector<std::uint64_t> next(c.object_count(), 0);
    for (int g = 0; g < c.morphism_count(); ++g) next[c.target(g)] += ending[c.source(g)];
    ending = next;
  }
  std::uint64_t total = 0;
  for (auto v : ending) total += v;
  return total;
}

FiniteCategory bg(const FiniteGroup& g) { return FiniteCategory::from_group(g); }

const SimplexRef pt{0, 0, {}};

}  // namespace

TEST_CASE("nerve level sizes count composable strings") {
  for (const auto& nc : corpus::categories()) {
    auto x = nerve(nc.category, 4);
    x.validate();
    for (int n = 0; n <= 4; ++n) CHECK(x.level_size(n) == composable_strings(nc.category, n));
  }
  auto b = nerve(bg(FiniteGroup::cyclic(2)), 3);
  CHECK(b.level_size(0) == 1);
  CHECK(b.level_size(1) == 2);
  CHECK(b.level_size(2) == 4);
  CHECK(b.level_size(3) == 8);
}

TEST_CASE("nerve of [1] is Delta^1") {
  CHECK(is_isomorphic(nerve(FiniteCategory::from_poset(2, {{0, 1}}), 4), standard_simplex(1, 4)));
}

TEST_CASE("nerve is fully faithful on small pairs") {
  std::vector<FiniteCategory> cs{FiniteCategory::from_poset(2, {{0, 1}}), bg(FiniteGroup::cyclic(2)),
                                 FiniteCategory::from_poset(3, {{0, 1}, {0, 2}}), FiniteCategory::codiscrete(2),
                                 FiniteCategory::from_monoid({"1", "e"}, {0, 1, 1, 1}, 0)};
  for (const auto& c : cs) {
    for (const auto& d : cs) {
      auto functors = enumerate_functors(c, d);
      for (const auto& f : functors) CHECK(is_functor(c, d, f));
      CHECK(enumerate_maps(nerve(c, 3), nerve(d, 3), {.dim_cap = 3}).size() == functors.size());
    }
  }
}

TEST_CASE("category validation") {
  using Mor = FiniteCategory::Morphism;
  // A composite outside the category.
  CHECK_THROWS_AS(FiniteCategory::from_triples({"0"}, {{"id", 0, 0}, {"f", 0, 0}}, {0}, {{1, 1, 5}}),
                  ValidationError);
  // a a = b, a b = id, b a = a: then (a a) a = a but a (a a) = id.
  std::vector<Mor> m{{"id", 0, 0}, {"a", 0, 0}, {"b", 0, 0}};
  CHECK_THROWS_AS(
      FiniteCategory::from_triples({"0"}, m, {0}, {{1, 1, 2}, {1, 2, 0}, {2, 1, 1}, {2, 2, 2}}), ValidationError);
  CHECK(FiniteCategory::codiscrete(3).is_groupoid());
  CHECK_FALSE(FiniteCategory::from_poset(2, {{0, 1}}).is_groupoid());
  CHECK(FiniteCategory::from_poset(4, {{0, 1}, {1, 2}, {2, 3}}).morphism_count() == 10);
}

TEST_CASE("Duskin nerve of the C2 example") {
  const auto c = Finite2Category::with_abelian_two_cells(FiniteCategory::from_poset(1, {}), 2);
  auto x = duskin_nerve(c, 4);
  x.validate();
  // n-simplices are 2-cocycles on Delta^n with values in C2: 2^(C(n+1,2) - n).
  CHECK(x.level_size(2) == 2);
  CHECK(x.level_size(3) == 8);
  CHECK(x.level_size(4) == 64);
  auto horn = subcomplex_of_simplex(2, SubcomplexKind::Horn, 1);
  auto maps = enumerate_maps(horn, x);
  REQUIRE(maps.size() == 1);
  CHECK(horn_fillers(x, 2, 1, maps[0]).size() == 2);
  CHECK(homotopy_category(x).morphism_count() == 1);
}

TEST_CASE("Duskin nerve with trivial 2-cells is the nerve") {
  for (const auto& c : {FiniteCategory::from_poset(3, {{0, 1}, {1, 2}}), bg(FiniteGroup::cyclic(2)),
                        FiniteCategory::codiscrete(2)}) {
    CHECK(is_isomorphic(duskin_nerve(Finite2Category::locally_discrete(c), 4), nerve(c, 4)));
  }
}

TEST_CASE("2-category validation") {
  auto c2 = Finite2Category::with_abelian_two_cells(FiniteCategory::from_poset(1, {}), 2);
  CHECK(c2.has_nontrivial_two_cells());
  CHECK(c2.cells_between(0, 0).size() == 2);
  CHECK(c2.vertical(1, 1) == c2.identity_cell(0));
  CHECK_FALSE(Finite2Category::locally_discrete(bg(FiniteGroup::cyclic(3))).has_nontrivial_two_cells());
  // A vertical table that is not a group on the hom.
  CHECK_THROWS(Finite2Category(FiniteCategory::from_poset(1, {}), {{"i", 0, 0}, {"u", 0, 0}}, {0}, {0, 1, 1, 1},
                               {0, 1, 1, 0}));
}

TEST_CASE("fundamental category") {
  auto bd = fundamental_category(subcomplex_of_simplex(2, SubcomplexKind::Boundary));
  CHECK(bd.hom(0, 2).size() == 2);
  CHECK(find_category_isomorphism(fundamental_category(standard_simplex(2)),
                                  FiniteCategory::from_poset(3, {{0, 1}, {1, 2}})));
  // A loop with no relations generates an infinite free monoid.
  std::vector<std::vector<SimplicialSet::Generator>> gens(2);
  gens[0] = {{"v", {}}};
  gens[1] = {{"l", {pt, pt}}};
  CHECK_THROWS_AS(fundamental_category(SimplicialSet(1, gens), 50), CapacityError);
}

TEST_CASE("homotopy category") {
  auto s3 = bg(FiniteGroup::symmetric(3));
  CHECK(find_category_isomorphism(homotopy_category(nerve(s3)), s3));
  HomotopyCategoryReport rep;
  homotopy_category(nerve(FiniteCategory::from_poset(3, {{0, 1}, {1, 2}})), &rep);
  CHECK(rep.edges == 6);
  CHECK_THROWS_AS(homotopy_category(subcomplex_of_simplex(2, SubcomplexKind::Boundary)), PreconditionError);
  // h and tau agree on Duskin nerves.
  for (const auto& nc : corpus::two_categories()) {
    auto x = duskin_nerve(nc.category, 4);
    CHECK(find_category_isomorphism(homotopy_category(x), fundamental_category(x)));
  }
}

TEST_CASE("mapping spaces") {
  auto b = nerve(bg(FiniteGroup::cyclic(2)), 4);
  auto m = mapping_space(b, pt, pt);
  CHECK(m.generator_count(0) == 2);
  auto d1 = standard_simplex(1, 4);
  auto md = mapping_space(d1, pt, SimplexRef{0, 1, {}});
  CHECK(md.census() == std::vector<std::size_t>{1, 0, 0, 0});
  // For a 1-category the mapping space is the discrete set Hom(x, y).
  auto sq = FiniteCategory::from_poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  auto kr = FiniteCategory::from_triples({"0", "1"}, {{"id0", 0, 0}, {"id1", 1, 1}, {"f", 0, 1}, {"g", 0, 1}},
                                         {0, 1}, {});
  for (const auto& c : {sq, kr, bg(FiniteGroup::cyclic(3))}) {
    auto x = nerve(c, 4);
    for (int a = 0; a < c.object_count(); ++a) {
      for (int z = 0; z < c.object_count(); ++z) {
        auto ms = mapping_space(x, {0, a, {}}, {0, z, {}});
        auto census = ms.census();
        CHECK(census[0] == c.hom(a, z).size());
        for (std::size_t n = 1; n < census.size(); ++n) CHECK(census[n] == 0);
      }
    }
  }
}
