// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "hcat/action.hpp"
#include "hcat/descent.hpp"
#include "hcat/error.hpp"
#include "hcat/kan.hpp"
#include "hcat/nerve.hpp"
#include "hcat/simplicial_object.hpp"
#include "oracles.hpp"

using namespace hcat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(const std::string& what) {
    pass = false;
    if (problems.size() < 5) problems.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

bool isomorphic_categories(const FiniteCategory& a, const FiniteCategory& b) {
  auto f = find_category_isomorphism(a, b);
  if (!f) return false;
  // Check the certificate rather than trusting the search.
  if (!is_functor(a, b, *f)) return false;
  std::set<int> objs(f->objects.begin(), f->objects.end());
  std::set<int> mors(f->morphisms.begin(), f->morphisms.end());
  return static_cast<int>(objs.size()) == b.object_count() && static_cast<int>(mors.size()) == b.morphism_count() &&
         a.object_count() == b.object_count() && a.morphism_count() == b.morphism_count();
}

Outcome segal_suite() {
  Outcome o;
  auto t0 = Clock::now();
  const auto cats = corpus::categories();
  int groupoids = 0, others = 0;
  for (const auto& nc : cats) {
    const auto& c = nc.category;
    if (c.object_count() > 4 || c.morphism_count() > 12) o.fail(nc.name + " is outside the size bounds");
    if (c.is_groupoid() != nc.groupoid) o.fail(nc.name + ": corpus groupoid flag is wrong");
    (c.is_groupoid() ? groupoids : others)++;
    auto r = classify(nerve(c, 4), {.dim_cap = 4});
    for (const auto& v : r.verdicts) {
      if (v.k > 0 && v.k < v.n && !(v.exists && v.unique)) {
        o.fail(nc.name + ": inner horn (" + std::to_string(v.n) + "," + std::to_string(v.k) + ") not uniquely filled");
      }
    }
    if (!r.nerve_of_category) o.fail(nc.name + ": not reported as a nerve");
    if (r.kan != c.is_groupoid()) o.fail(nc.name + ": Kan verdict disagrees with the composition table");
    if (r.nerve_of_groupoid != c.is_groupoid()) o.fail(nc.name + ": groupoid verdict disagrees");
    // Dimension-2 filler counts computed from the table.
    auto h = oracle::nerve_horns_dim2(c);
    const auto& v20 = r.at(2, 0);
    if (v20.exists != (h.outer_min > 0) || v20.unique != (h.outer_min == 1 && h.outer_max == 1) ||
        v20.max_fillers != h.outer_max) {
      o.fail(nc.name + ": (2,0) verdict disagrees with the table");
    }
  }
  const double secs = seconds_since(t0);
  if (cats.size() < 20) o.fail("corpus has fewer than 20 categories");
  if (groupoids < 3 || others < 3) o.fail("corpus needs 3 groupoids and 3 non-groupoids");
  if (secs >= 60) o.fail("runtime " + fmt_seconds(secs) + " exceeds 60s");
  o.detail = std::to_string(cats.size()) + " categories (" + std::to_string(groupoids) + " groupoids), " +
             fmt_seconds(secs);
  return o;
}

Outcome round_trips() {
  Outcome o;
  const auto cats = corpus::categories();
  for (const auto& nc : cats) {
    auto n = nerve(nc.category, 4);
    if (!isomorphic_categories(fundamental_category(n), nc.category)) o.fail(nc.name + ": tau(N C) is not C");
    if (!isomorphic_categories(homotopy_category(n), nc.category)) o.fail(nc.name + ": h(N C) is not C");
  }
  o.detail = std::to_string(cats.size()) + " categories, tau and h";
  return o;
}

// Lambda^2_1 fillers of the Duskin nerve against the 2-cells out of g o f.
Outcome duskin_suite() {
  Outcome o;
  const auto cats = corpus::two_categories();
  bool saw_c2 = false;
  for (const auto& nc : cats) {
    const auto& c = nc.category;
    auto idx = duskin_nerve_indexed(c, 4);
    const auto& x = idx.set;
    auto r = classify(x, {.dim_cap = 4, .inner_only = true});
    if (!r.weak_kan) o.fail(nc.name + ": not weak Kan up to dim 4");
    if (c.has_nontrivial_two_cells() != nc.parallel_cells) o.fail(nc.name + ": corpus 2-cell flag is wrong");
    if (r.nerve_of_category == nc.parallel_cells) o.fail(nc.name + ": uniqueness verdict disagrees with the 2-cells");

    std::map<SimplexRef, Key> key_of;
    for (const auto& [k, ref] : idx.index[1]) key_of[ref] = k;
    auto horn = subcomplex_of_simplex(2, SubcomplexKind::Horn, 1);
    std::size_t horns = 0;
    for (const auto& m : enumerate_maps(horn, x, {.dim_cap = 2})) {
      auto faces = horn_faces(x, 2, 1, m);
      // Edge keys are (c0, c1, f01).
      const int f = key_of.at(faces[2])[2];
      const int g = key_of.at(faces[0])[2];
      const int gf = c.base().compose(g, f);
      std::size_t cells = 0;
      for (int a = 0; a < c.cell_count(); ++a) cells += c.cell(a).source == gf;
      const auto fillers = horn_fillers(x, 2, 1, m).size();
      if (fillers != cells) o.fail(nc.name + ": Lambda^2_1 filler count differs from the 2-cell count");
      ++horns;
    }
    if (nc.name == "point with 2-cells C2") {
      saw_c2 = true;
      if (horns != 1 || r.at(2, 1).max_fillers != 2 || c.cell_count() != 2) {
        o.fail("C2 example: expected one horn with 2 fillers");
      }
    }
  }
  if (!saw_c2) o.fail("the C2 example is missing");
  if (cats.size() < 5) o.fail("fewer than 5 (2,1)-categories");
  o.detail = std::to_string(cats.size()) + " (2,1)-categories";
  return o;
}

Outcome joyal() {
  Outcome o;
  std::vector<std::pair<std::string, SimplicialSet>> xs;
  for (const auto& nc : corpus::categories()) xs.emplace_back("N " + nc.name, nerve(nc.category, 4));
  for (const auto& nc : corpus::two_categories()) xs.emplace_back("Duskin " + nc.name, duskin_nerve(nc.category, 4));
  for (int n = 0; n <= 3; ++n) xs.emplace_back("Delta^" + std::to_string(n), standard_simplex(n, 4));
  xs.emplace_back("boundary of Delta^2", subcomplex_of_simplex(2, SubcomplexKind::Boundary, 0, 4));
  xs.emplace_back("Lambda^2_1", subcomplex_of_simplex(2, SubcomplexKind::Horn, 1, 4));
  int weak = 0, kan = 0;
  for (const auto& [name, x] : xs) {
    auto r = classify(x, {.dim_cap = 4});
    if (!r.weak_kan) continue;
    ++weak;
    bool all_iso = true;
    for (const auto& e : x.simplices(1)) {
      if (!is_isomorphism_edge(x, e).isomorphism) {
        all_iso = false;
        break;
      }
    }
    kan += r.kan;
    if (all_iso != r.kan) o.fail(name + ": edges invertible = " + std::to_string(all_iso) + ", Kan = " +
                                 std::to_string(r.kan));
  }
  o.detail = std::to_string(weak) + " weak Kan complexes, " + std::to_string(kan) + " Kan";
  return o;
}

Outcome groupoid_objects() {
  Outcome o;
  std::size_t cech = 0, bars = 0;
  for (int e = 1; e <= 5; ++e) {
    for (int b = 1; b <= e; ++b) {
      for (const auto& c : enumerate_surjections(e, b)) {
        auto r = is_groupoid_object(cech_nerve(c.as_map(), 3), 3);
        if (!r.groupoid_object) o.fail("Cech nerve of a surjection " + std::to_string(e) + " -> " + std::to_string(b));
        ++cech;
      }
    }
  }
  for (const auto& g : FiniteGroup::all_up_to_order_six()) {
    for (int n = 0; n <= 4; ++n) {
      for (const auto& a : enumerate_actions(g, n)) {
        if (!is_groupoid_object(action_groupoid(a, 3), 3).groupoid_object) o.fail("bar construction of " + g.label());
        ++bars;
      }
    }
  }
  for (const auto& b : corpus::broken_objects()) {
    auto r = is_groupoid_object(b.object, 3);
    if (r.groupoid_object || !r.failure) {
      o.fail(b.name + " was accepted");
      continue;
    }
    const auto& f = *r.failure;
    if (f.n != b.n || f.s != b.s || f.s_prime != b.s_prime || f.injective != b.injective ||
        f.surjective != b.surjective) {
      o.fail(b.name + ": wrong witness partition");
    }
  }
  o.detail = std::to_string(cech) + " Cech nerves, " + std::to_string(bars) + " actions, " +
             std::to_string(corpus::broken_objects().size()) + " broken objects";
  return o;
}

Outcome orbit_stabilizer() {
  Outcome o;
  std::size_t actions = 0;
  for (const auto& g : FiniteGroup::all_up_to_order_six()) {
    for (int n = 0; n <= 4; ++n) {
      auto all = enumerate_actions(g, n);
      if (all.size() != oracle::count_homomorphisms_to_symmetric(g, n)) {
        o.fail(g.label() + " on " + std::to_string(n) + " points: action count differs from the oracle");
      }
      for (const auto& a : all) {
        ++actions;
        auto q = quotient_groupoid(a);
        auto expect = oracle::orbits(a);
        std::map<int, std::vector<int>> comps;
        for (int x = 0; x < a.size(); ++x) comps[q.components()[x]].push_back(x);
        std::vector<std::vector<int>> got;
        for (auto& [k, v] : comps) got.push_back(v);
        if (got != expect || orbits(a) != expect) o.fail(g.label() + ": components differ from orbits");
        bool free = true;
        for (int x = 0; x < a.size(); ++x) {
          const int order = oracle::stabilizer_order(a, x);
          free = free && order == 1;
          auto st = stabilizer(a, x);
          if (st.group.order() != order || !groups_isomorphic(q.automorphism_group(x), st.group)) {
            o.fail(g.label() + ": Aut(x) is not Stab(x)");
          }
        }
        std::vector<std::string> names(expect.size(), "o");
        for (std::size_t i = 0; i < names.size(); ++i) names[i] += std::to_string(i);
        const bool discrete = equivalence_check(q, FiniteGroupoid::discrete(names));
        const bool injective = act_pr_injective(a);
        if (free != injective || free != discrete) o.fail(g.label() + ": free / injective / discrete disagree");
      }
    }
  }
  o.detail = std::to_string(actions) + " actions";
  return o;
}

// Every G-invariant map from the carrier to {0..b-1}.
std::vector<std::vector<int>> invariant_maps(const GroupAction& a, int b) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(a.size(), 0);
  while (true) {
    bool ok = true;
    for (int g = 0; g < a.group.order() && ok; ++g) {
      for (int x = 0; x < a.size() && ok; ++x) ok = f[a.act(g, x)] == f[x];
    }
    if (ok) out.push_back(f);
    int p = 0;
    while (p < a.size() && ++f[p] == b) f[p++] = 0;
    if (p == a.size()) break;
  }
  return out;
}

Outcome torsor_suite() {
  Outcome o;
  std::vector<GroupAction> cases;
  for (const auto& g : FiniteGroup::all_up_to_order_six()) {
    for (int n = 1; n <= 4; ++n) {
      for (const auto& a : enumerate_actions(g, n)) {
        for (int b = 1; b <= 3; ++b) {
          for (const auto& f : invariant_maps(a, b)) {
            GroupAction c = a;
            c.base = GroupAction::Base{};
            for (int y = 0; y < b; ++y) c.base->set.push_back("b" + std::to_string(y));
            c.base->pi = f;
            cases.push_back(std::move(c));
          }
        }
      }
    }
    for (int b = 1; b <= 3; ++b) {
      std::vector<std::string> base;
      for (int y = 0; y < b; ++y) base.push_back("b" + std::to_string(y));
      auto t = GroupAction::trivial_torsor(g, base);
      cases.push_back(t);
      // The same torsor with the carrier relabelled by a fixed shuffle.
      std::vector<int> perm(t.size());
      for (int x = 0; x < t.size(); ++x) perm[x] = (x * 5 + 3) % t.size();
      if (std::set<int>(perm.begin(), perm.end()).size() == perm.size()) {
        GroupAction s = t;
        for (int h = 0; h < g.order(); ++h) {
          for (int x = 0; x < t.size(); ++x) s.table[h * t.size() + perm[x]] = perm[t.act(h, x)];
        }
        for (int x = 0; x < t.size(); ++x) s.base->pi[perm[x]] = t.base->pi[x];
        cases.push_back(s);
      }
      // Two fibres merged over one point: not a torsor once b >= 2.
      if (b >= 2) {
        GroupAction m = t;
        for (int& p : m.base->pi) p = p == 1 ? 0 : p;
        cases.push_back(m);
      }
    }
  }
  std::size_t accepted = 0;
  for (const auto& a : cases) {
    const auto r = check_torsor(a);
    const bool expect = oracle::torsor_by_fibres(a);
    if (r.torsor != expect) o.fail(a.group.label() + ": torsor verdict differs from the fibre oracle");
    if (!r.torsor) continue;
    ++accepted;
    auto rec = torsor_reconstruction(a, 3);
    if (!rec.levelwise_bijective || !rec.simplicial) o.fail(a.group.label() + ": reconstruction fails at level " +
                                                            std::to_string(rec.failing_level));
  }
  if (accepted == 0 || accepted == cases.size()) o.fail("the torsor cases do not separate");
  o.detail = std::to_string(cases.size()) + " based actions, " + std::to_string(accepted) + " torsors";
  return o;
}

Outcome descent_suite() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t covers = 0, brute = 0;
  const auto groups = FiniteGroup::all_up_to_order_six();
  for (int b = 1; b <= 3; ++b) {
    for (int e = b; e <= 5; ++e) {
      for (const auto& c : enumerate_surjections(e, b)) {
        for (const auto& g : groups) {
          ++covers;
          auto d = cech_descent_groupoid(c, g);
          auto target = FiniteGroupoid::classifying(FiniteGroup::power(g, b));
          std::int64_t den = 1;
          for (int i = 0; i < b; ++i) den *= g.order();
          if (!equivalence_check(d.groupoid, target)) o.fail("not equivalent to BG^B");
          if (groupoid_cardinality(d.groupoid) != Rational(1, den)) o.fail("cardinality is not (1/|G|)^|B|");
          if (static_cast<std::uint64_t>(d.cocycle_count()) != oracle::cocycle_formula(c, g)) {
            o.fail("cocycle count differs from prod |G|^(|E_b|-1)");
          }
          if (auto n = oracle::count_cocycles(c, g, 200'000)) {
            ++brute;
            if (*n != static_cast<std::size_t>(d.cocycle_count())) o.fail("cocycle count differs from enumeration");
          }
        }
      }
    }
  }
  std::size_t refinements = 0;
  for (const auto& rc : corpus::refinements()) {
    auto r = refinement_invariance(rc.coarse, rc.fine, rc.map, rc.group);
    if (!r.invariant || r.cardinality_coarse != r.cardinality_fine) o.fail(rc.name + ": not invariant");
    ++refinements;
  }
  std::size_t presheaves = 0;
  for (const auto& sc : corpus::set_presheaves()) {
    auto r = check_sheaf_sets(sc.presheaf, sc.cover);
    if (!r.truncation_agrees || r.limit_size != r.equalizer_size) o.fail(sc.name + ": equalizer and limit differ");
    if (r.sheaf != sc.sheaf) o.fail(sc.name + ": unexpected sheaf verdict");
    ++presheaves;
  }
  for (const auto& oc : corpus::open_presheaves()) {
    auto r = check_sheaf_sets(oc.presheaf, oc.space, oc.cover);
    if (!r.truncation_agrees || r.limit_size != r.equalizer_size) o.fail(oc.name + ": equalizer and limit differ");
    if (r.sheaf != oc.sheaf) o.fail(oc.name + ": unexpected sheaf verdict");
    ++presheaves;
  }
  for (const auto& gc : corpus::groupoid_presheaves()) {
    auto r = check_stack_groupoids(gc.presheaf, gc.cover);
    if (!r.truncation_agrees) o.fail(gc.name + ": descent over levels 2 and 3 differ");
    if (r.stack != gc.stack) o.fail(gc.name + ": unexpected stack verdict");
    ++presheaves;
  }
  const double secs = seconds_since(t0);
  if (secs >= 120) o.fail("runtime " + fmt_seconds(secs) + " exceeds 120s");
  o.detail = std::to_string(covers) + " cover/group pairs (" + std::to_string(brute) + " enumerated), " +
             std::to_string(refinements) + " refinements, " + std::to_string(presheaves) + " presheaves, " +
             fmt_seconds(secs);
  return o;
}

Outcome identity_fuzz() {
  Outcome o;
  constexpr int kCap = 6;
  std::vector<IndexedSimplicialSet> simplices;
  for (int n = 0; n <= 5; ++n) simplices.push_back(standard_simplex_indexed(n, kCap));
  std::mt19937 rng(20240611);
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  constexpr int kWords = 10000;
  for (int t = 0; t < kWords; ++t) {
    const int n = pick(0, 5);
    const auto& idx = simplices[n];
    // A random non-degenerate simplex: a random non-empty subset of [n].
    std::vector<int> verts;
    while (verts.empty()) {
      verts.clear();
      for (int v = 0; v <= n; ++v) {
        if (pick(0, 1)) verts.push_back(v);
      }
    }
    int dim = static_cast<int>(verts.size()) - 1;
    const SimplexRef gen = idx.ref(dim, verts);
    const int len = pick(0, 10);
    std::vector<Symbol> word;   // built right to left
    for (int i = 0; i < len; ++i) {
      const bool face = dim > 0 && (dim == kCap || pick(0, 1));
      if (face) {
        word.insert(word.begin(), Symbol{Symbol::Kind::Face, pick(0, dim)});
        --dim;
      } else {
        word.insert(word.begin(), Symbol{Symbol::Kind::Degeneracy, pick(0, dim)});
        ++dim;
      }
    }
    NormalizeOptions opts;
    if (t % 2) opts.shuffle_seed = static_cast<std::uint32_t>(rng() | 1);
    const SimplexRef got = normalize(idx.set, gen, word, opts);
    const std::vector<int> expect = oracle::apply_word(verts, word);
    if (got != idx.ref(dim, expect)) {
      o.fail("word " + std::to_string(t) + " on Delta^" + std::to_string(n));
      continue;
    }
    for (std::size_t p = 1; p < got.degeneracies.size(); ++p) {
      if (got.degeneracies[p - 1] <= got.degeneracies[p]) o.fail("normal form is not decreasing");
    }
  }
  for (int n = 0; n <= 5; ++n) {
    for (int m = 0; m <= 5; ++m) {
      const auto size = simplices[n].set.level_size(m);
      if (size != oracle::binomial(n + m + 1, m + 1) || size != oracle::count_monotone(m, n)) {
        o.fail("|Delta^" + std::to_string(n) + "_" + std::to_string(m) + "|");
      }
    }
  }
  o.detail = std::to_string(kWords) + " words, 36 level sizes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"nerves: unique inner fillers, Kan exactly for groupoids", segal_suite},
      {"round trips: tau(N C) = C and h(N C) = C", round_trips},
      {"Duskin nerves: weak Kan, Lambda^2_1 fillers = 2-cells", duskin_suite},
      {"weak Kan: all edges invertible iff Kan", joyal},
      {"groupoid objects: Cech nerves, bar constructions, broken objects", groupoid_objects},
      {"actions: orbits, stabilizers, free actions", orbit_stabilizer},
      {"torsors: fibre oracle and reconstruction", torsor_suite},
      {"descent: cocycles, refinements, truncations", descent_suite},
      {"simplicial identities: normalize against monotone maps", identity_fuzz},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first;
    if (!o.detail.empty()) line << " (" << o.detail << ")";
    std::printf("%s\n", line.str().c_str());
    for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
