#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hcat/error.hpp"
#include "hcat/nerve.hpp"
#include "hcat/sset.hpp"
#include "oracles.hpp"

using namespace hcat;

namespace {

std::vector<std::size_t> counts(std::initializer_list<std::size_t> v) { return v; }

SimplexRef vertex(int i) { return {0, i, {}}; }

}  // namespace

TEST_CASE("standard simplex census") {
  CHECK(standard_simplex(2, 2).census() == counts({3, 3, 1}));
  CHECK(standard_simplex(1, 2).level_size(2) == 4);
  auto pt = standard_simplex(0, 4);
  for (int m = 0; m <= 4; ++m) CHECK(pt.level_size(m) == 1);
  CHECK(pt.census() == counts({1, 0, 0, 0, 0}));
}

TEST_CASE("level sizes of Delta^n are binomials") {
  for (int n = 0; n <= 4; ++n) {
    auto x = standard_simplex(n, 5);
    for (int m = 0; m <= 5; ++m) {
      CHECK(x.level_size(m) == oracle::binomial(n + m + 1, m + 1));
      CHECK(x.level_size(m) == oracle::count_monotone(m, n));
    }
  }
}

TEST_CASE("boundaries and horns") {
  CHECK(subcomplex_of_simplex(2, SubcomplexKind::Horn, 1, 2).census() == counts({3, 2, 0}));
  CHECK(subcomplex_of_simplex(2, SubcomplexKind::Boundary, 0, 2).census() == counts({3, 3, 0}));
  CHECK(subcomplex_of_simplex(3, SubcomplexKind::Horn, 0, 3).census() == counts({4, 6, 3, 0}));
  auto h = subcomplex_of_simplex(2, SubcomplexKind::Horn, 1);
  CHECK(h.find("01"));
  CHECK(h.find("12"));
  CHECK_FALSE(h.find("02"));
  CHECK_THROWS_AS(subcomplex_of_simplex(2, SubcomplexKind::Horn, 3), ArgumentError);
}

TEST_CASE("normalize examples") {
  auto d1 = standard_simplex(1, 3);
  const SimplexRef e{1, 0, {}};
  auto ss = normalize(d1, vertex(0), parse_word("s0 s0"));
  CHECK(ss == SimplexRef{0, 0, {1, 0}});
  CHECK(normalize(d1, e, parse_word("d0 s0")) == e);
  // d1 s0 = id, so d1 s0 s0 e = s0 e: the sequence 0001 loses position 1.
  CHECK(normalize(d1, e, parse_word("d1 s0 s0")) == SimplexRef{1, 0, {0}});
  CHECK(normalize(d1, e, parse_word("d2 s0 s0")) == SimplexRef{1, 0, {0}});
  CHECK(normalize(d1, e, parse_word("d3 s0 s0")) == SimplexRef{0, 0, {1, 0}});
  CHECK_THROWS_AS(normalize(d1, vertex(0), parse_word("d0")), ArgumentError);
  CHECK_THROWS(parse_word("d0 x1"));
}

TEST_CASE("normalize agrees across rewrite orders") {
  auto idx = standard_simplex_indexed(3, 6);
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::vector<Symbol> word;
    int dim = 3;
    for (int i = 0; i < 8; ++i) {
      bool face = dim > 0 && (dim == 6 || rng() % 2);
      int idx_ = static_cast<int>(rng() % (dim + 1));
      word.insert(word.begin(), Symbol{face ? Symbol::Kind::Face : Symbol::Kind::Degeneracy, idx_});
      dim += face ? -1 : 1;
    }
    const SimplexRef top{3, 0, {}};
    auto a = normalize(idx.set, top, word);
    auto b = normalize(idx.set, top, word, {.shuffle_seed = static_cast<std::uint32_t>(t + 1)});
    CHECK(a == b);
    CHECK(a == idx.ref(dim, oracle::apply_word({0, 1, 2, 3}, word)));
    // Idempotent: normalizing the generator of the result with its own
    // degeneracy word returns the same ref.
    std::vector<Symbol> again;
    for (int j : a.degeneracies) again.push_back({Symbol::Kind::Degeneracy, j});
    CHECK(normalize(idx.set, {a.gen_dim, a.gen, {}}, again) == a);
  }
}

TEST_CASE("maps out of Delta^n biject with n-simplices") {
  std::vector<SimplicialSet> xs{nerve(FiniteCategory::from_group(FiniteGroup::cyclic(2)), 3),
                                nerve(FiniteCategory::from_poset(3, {{0, 1}, {1, 2}}), 3),
                                subcomplex_of_simplex(2, SubcomplexKind::Boundary, 0, 3), standard_simplex(1, 3)};
  for (const auto& x : xs) {
    for (int n = 0; n <= 2; ++n) {
      CHECK(enumerate_maps(standard_simplex(n, 3), x, {.dim_cap = 3}).size() == x.level_size(n));
    }
  }
}

TEST_CASE("enumerate_maps examples") {
  auto poset = nerve(FiniteCategory::from_poset(3, {{0, 1}, {1, 2}}), 3);
  CHECK(enumerate_maps(subcomplex_of_simplex(2, SubcomplexKind::Horn, 1), poset).size() == 10);
  auto bc2 = nerve(FiniteCategory::from_group(FiniteGroup::cyclic(2)), 3);
  CHECK(enumerate_maps(standard_simplex(1), bc2).size() == 2);
  auto maps = enumerate_maps(standard_simplex(1), bc2, {.limit = 1});
  CHECK(maps.size() == 1);
  CHECK_THROWS_AS(enumerate_maps(standard_simplex(3, 3), nerve(FiniteCategory::from_group(FiniteGroup::cyclic(6)), 3),
                                 {.dim_cap = 3, .node_budget = 5}),
                  CapacityError);
}

TEST_CASE("products") {
  auto sq = product(standard_simplex(1), standard_simplex(1), 3);
  CHECK(sq.census() == counts({4, 5, 2, 0}));
  sq.validate();
  auto p12 = product(standard_simplex(1), standard_simplex(2), 4);
  CHECK(p12.census()[3] == 3);
  auto x = standard_simplex(1, 3);
  auto y = nerve(FiniteCategory::from_group(FiniteGroup::cyclic(2)), 3);
  auto p = product(x, y, 3);
  for (int n = 0; n <= 3; ++n) CHECK(p.level_size(n) == x.level_size(n) * y.level_size(n));
}

TEST_CASE("isomorphism of simplicial sets") {
  auto d1 = standard_simplex(1);
  auto w = is_isomorphic(d1, d1);
  REQUIRE(w);
  CHECK(w->images[0][0] == vertex(0));
  CHECK(w->images[0][1] == vertex(1));
  CHECK_FALSE(is_isomorphic(subcomplex_of_simplex(2, SubcomplexKind::Horn, 1),
                            subcomplex_of_simplex(2, SubcomplexKind::Boundary)));
  CHECK_FALSE(is_isomorphic(nerve(FiniteCategory::from_group(FiniteGroup::cyclic(2))), standard_simplex(1, 4)));
  CHECK(is_isomorphic(nerve(FiniteCategory::from_poset(2, {{0, 1}}), 4), standard_simplex(1, 4)));
}

TEST_CASE("validation rejects broken identities") {
  std::vector<std::vector<SimplicialSet::Generator>> gens(3);
  gens[0] = {{"a", {}}, {"b", {}}};
  gens[1] = {{"f", {vertex(1), vertex(0)}}, {"g", {vertex(0), vertex(1)}}};
  // d1 d2 t = d1 g = b but d1 d1 t = d1 f = a.
  gens[2] = {{"t", {SimplexRef{1, 0, {}}, SimplexRef{1, 0, {}}, SimplexRef{1, 1, {}}}}};
  SimplicialSet x(2, gens);
  CHECK_THROWS_AS(x.validate(), ValidationError);
  std::vector<std::vector<SimplicialSet::Generator>> bad(2);
  bad[0] = {{"a", {}}};
  bad[1] = {{"f", {vertex(3), vertex(0)}}};
  CHECK_THROWS_AS(SimplicialSet(1, bad), ValidationError);
}

TEST_CASE("monotone map helpers") {
  CHECK(coface_map(2, 1) == MonotoneMap{0, 2});
  CHECK(codegeneracy_map(1, 0) == MonotoneMap{0, 0, 1});
  const std::vector<int> js{1, 0};
  CHECK(surjection_of(js, 2) == MonotoneMap{0, 0, 0});
  const std::vector<int> sigma{0, 1, 1, 2};
  CHECK(degeneracies_of(sigma) == std::vector<int>{1});
  CHECK(degenerate(SimplexRef{0, 0, {0}}, 0) == SimplexRef{0, 0, {1, 0}});
}
