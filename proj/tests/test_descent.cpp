#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "hcat/descent.hpp"
#include "hcat/error.hpp"
#include "oracles.hpp"

using namespace hcat;

namespace {

// Compatible families for Hom(-, S) over a cover, by brute force: a map E -> S
// that is constant on fibres. The sheaf condition says these are exactly the
// maps B -> S.
std::size_t representable_families(const Cover& c, int s) {
  std::size_t count = 0;
  std::vector<int> f(c.e.size(), 0);
  while (true) {
    bool ok = true;
    for (std::size_t x = 0; x < c.e.size() && ok; ++x) {
      for (std::size_t y = 0; y < c.e.size() && ok; ++y) {
        if (c.pi[x] == c.pi[y] && f[x] != f[y]) ok = false;
      }
    }
    count += ok;
    std::size_t p = 0;
    while (p < f.size() && ++f[p] == s) f[p++] = 0;
    if (p == f.size()) break;
  }
  return count;
}

}  // namespace

TEST_CASE("covers") {
  auto c = corpus::fibred_cover({2, 1});
  c.validate();
  CHECK(c.piece_count() == 1);
  Cover bad{{"x"}, {"p", "q"}, {0}, {}};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  CHECK(enumerate_surjections(3, 2).size() == 6);
  CHECK(enumerate_surjections(4, 3).size() == 36);
  auto f = corpus::family_cover({1, 2});
  CHECK(f.piece_count() == 2);
  CHECK(f.piece(1).size() == 2);
  // Pulling 2+1 -> 2 back along the map {u, v, w} -> {p, q} sending u, v to p.
  auto pb = base_change(c, SetMap{{"u", "v", "w"}, c.b, {0, 0, 1}});
  CHECK(pb.e.size() == 5);
  pb.validate();
}

TEST_CASE("finite spaces") {
  auto s = FiniteSpace::sierpinski();
  CHECK(s.opens().size() == 3);
  CHECK(s.is_open(0b10));
  CHECK_FALSE(s.is_open(0b01));
  CHECK(FiniteSpace::discrete(3).opens().size() == 8);
  auto vee = FiniteSpace::alexandrov(3, {{0, 1}, {2, 1}});
  CHECK(vee.opens().size() == 5);
  CHECK_THROWS_AS(FiniteSpace({"a", "b"}, {0b00, 0b01, 0b10}), ValidationError);
  OpenCover oc{0b11, {0b10}};
  CHECK_THROWS(oc.validate(s));
  validate_presheaf(OpenPresheaf::functions(vee, 2), vee);
}

TEST_CASE("representable presheaves are sheaves on surjection covers") {
  for (int e = 1; e <= 4; ++e) {
    for (int b = 1; b <= std::min(e, 2); ++b) {
      for (const auto& c : enumerate_surjections(e, b)) {
        for (int s = 1; s <= 2; ++s) {
          auto r = check_sheaf_sets(SetPresheaf::representable(s), c);
          CHECK(r.sheaf);
          CHECK(r.equalizer_size == representable_families(c, s));
          CHECK(r.truncation_agrees);
        }
      }
    }
  }
}

TEST_CASE("sheaf examples") {
  auto r = check_sheaf_sets(SetPresheaf::constant(2), corpus::family_cover({1, 1}));
  CHECK_FALSE(r.coproduct);
  CHECK_FALSE(r.sheaf);
  CHECK_FALSE(r.counterexample.empty());
  auto id = check_sheaf_sets(SetPresheaf::constant(3), Cover::identity({"p", "q", "r"}));
  CHECK(id.sheaf);
  for (const auto& sc : corpus::set_presheaves()) {
    auto rep = check_sheaf_sets(sc.presheaf, sc.cover);
    CHECK_MESSAGE(rep.sheaf == sc.sheaf, sc.name);
    CHECK(rep.truncation_agrees);
    CHECK(rep.limit_size == rep.equalizer_size);
  }
  for (const auto& oc : corpus::open_presheaves()) {
    validate_presheaf(oc.presheaf, oc.space);
    auto rep = check_sheaf_sets(oc.presheaf, oc.space, oc.cover);
    CHECK_MESSAGE(rep.sheaf == oc.sheaf, oc.name);
    CHECK(rep.truncation_agrees);
  }
}

TEST_CASE("covers with redundant members") {
  auto d2 = FiniteSpace::discrete(2);
  OpenCover oc{0b11, {0b01, 0b11}};
  CHECK(check_sheaf_sets(OpenPresheaf::functions(d2, 2), d2, oc).sheaf);
  auto s = FiniteSpace::sierpinski();
  auto r = check_sheaf_sets(OpenPresheaf::constant(2), s, {0b11, {0b10, 0b11}});
  CHECK_FALSE(r.sheaf);
}

TEST_CASE("stack examples") {
  for (const auto& gc : corpus::groupoid_presheaves()) {
    auto r = check_stack_groupoids(gc.presheaf, gc.cover);
    CHECK_MESSAGE(r.stack == gc.stack, gc.name);
    CHECK(r.truncation_agrees);
  }
  auto t = check_stack_groupoids(GroupoidPresheaf::torsors(FiniteGroup::cyclic(2)), corpus::fibred_cover({2, 2}));
  CHECK(t.descent_cardinality == Rational(1, 4));
  auto c = check_stack_groupoids(GroupoidPresheaf::constant_bg(FiniteGroup::cyclic(2)),
                                 corpus::family_cover({1, 1}));
  CHECK_FALSE(c.coproduct);
  CHECK_FALSE(c.stack);
  auto d2 = descent_groupoid(GroupoidPresheaf::torsors(FiniteGroup::cyclic(3)), Cover::of_point(2), 2);
  auto d3 = descent_groupoid(GroupoidPresheaf::torsors(FiniteGroup::cyclic(3)), Cover::of_point(2), 3);
  CHECK(equivalence_check(d2.groupoid, d3.groupoid));
  CHECK(groupoid_cardinality(d2.groupoid) == Rational(1, 3));
  CHECK_THROWS_AS(descent_groupoid(GroupoidPresheaf::torsors(FiniteGroup::cyclic(2)), Cover::of_point(3), 3),
                  CapacityError);
}

TEST_CASE("Cech descent for BG") {
  auto c2 = FiniteGroup::cyclic(2);
  auto d = cech_descent_groupoid(Cover::of_point(2), c2);
  CHECK(d.cocycle_count() == 2);
  auto sk = skeleton(d.groupoid);
  REQUIRE(sk.size() == 1);
  CHECK(groups_isomorphic(sk[0].automorphisms, c2));
  CHECK(groupoid_cardinality(d.groupoid) == Rational(1, 2));

  for (const auto& g : FiniteGroup::all_up_to_order_six()) {
    for (int n = 1; n <= 4; ++n) {
      auto dn = cech_descent_groupoid(Cover::of_point(n), g);
      std::uint64_t expect = 1;
      for (int i = 1; i < n; ++i) expect *= g.order();
      CHECK(static_cast<std::uint64_t>(dn.cocycle_count()) == expect);
      CHECK(equivalence_check(dn.groupoid, FiniteGroupoid::classifying(g)));
    }
  }
  auto triv = cech_descent_groupoid(corpus::fibred_cover({2, 3}), FiniteGroup::trivial());
  CHECK(equivalence_check(triv.groupoid, FiniteGroupoid::discrete({"*"})));

  // cocycle(i) and find are inverse to each other.
  auto s3 = FiniteGroup::symmetric(3);
  auto cover = corpus::fibred_cover({2, 1});
  auto ds = cech_descent_groupoid(cover, s3);
  CHECK(static_cast<std::size_t>(ds.cocycle_count()) == *oracle::count_cocycles(cover, s3));
  for (int i = 0; i < ds.cocycle_count(); ++i) {
    auto v = ds.cocycle(i);
    CHECK(ds.find(v) == i);
  }
  std::vector<int> h{1, 5, 3};
  CHECK(ds.decode(ds.encode(h)) == h);
  CHECK_THROWS_AS(cech_descent_groupoid(Cover{{"x"}, {"p", "q"}, {0}, {}}, c2), ArgumentError);
}

TEST_CASE("refinement invariance") {
  for (const auto& rc : corpus::refinements()) {
    auto r = refinement_invariance(rc.coarse, rc.fine, rc.map, rc.group);
    CHECK_MESSAGE(r.invariant, rc.name);
    CHECK(r.restriction.equivalence);
    CHECK(r.cardinality_coarse == r.cardinality_fine);
  }
  auto r = refinement_invariance(corpus::fibred_cover({1, 1}), corpus::fibred_cover({2, 2}), {0, 0, 1, 1},
                                 FiniteGroup::cyclic(3));
  CHECK(r.cardinality_fine == Rational(1, 9));
  // A map that does not lie over the base.
  CHECK_THROWS_AS(refinement_invariance(corpus::fibred_cover({1, 1}), corpus::fibred_cover({2, 2}), {0, 1, 1, 0},
                                        FiniteGroup::cyclic(2)),
                  ArgumentError);
}
