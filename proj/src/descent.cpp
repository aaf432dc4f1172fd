#include "hcat/descent.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>

#include "hcat/error.hpp"

namespace hcat {

namespace {

using Mor = FiniteGroupoid::Mor;

std::string key_string(const Key& k) {
  std::string s = "[";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "]";
}

std::string key_string(const std::vector<Key>& ks) {
  std::string s = "(";
  for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? "," : "") + key_string(ks[i]);
  return s + ")";
}

std::vector<Key> all_functions(int n, int a) {
  std::vector<Key> out;
  if (a == 0 && n > 0) return out;
  Key cur(n, 0);
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == a - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::vector<int> compose_maps(const std::vector<int>& g, const std::vector<int>& f) {
  std::vector<int> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
  return out;
}

std::vector<int> identity_map(int n) {
  std::vector<int> out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// The Cech nerve of a cover as finite sets and maps between them.
struct CechSets {
  SimplicialObject u;
  int size(int n) const { return u.size(n); }
  std::vector<int> face(int n, int i) const {
    std::vector<int> out(u.size(n));
    for (int x = 0; x < u.size(n); ++x) out[x] = u.face(n, i, x);
    return out;
  }
  std::vector<int> degeneracy(int n, int j) const {
    std::vector<int> out(u.size(n));
    for (int x = 0; x < u.size(n); ++x) out[x] = u.degeneracy(n, j, x);
    return out;
  }
};

/// The cosimplicial set of sections over a Cech nerve, truncated at level 3.
template <class V>
struct CechSections {
  std::vector<V> base;
  std::vector<V> level0;
  std::function<V(const V&)> pull;                          // F(B) -> F(C_0)
  std::function<V(int n, int i, const V&)> coface;          // F(C_{n-1}) -> F(C_n)
  std::function<V(int n, int j, const V&)> codegeneracy;    // F(C_{n+1}) -> F(C_n)
};

template <class V>
void equalizer_checks(const CechSections<V>& s, SheafReport& r) {
  std::set<V> eq;
  for (const auto& v : s.level0) {
    if (s.coface(1, 0, v) == s.coface(1, 1, v)) eq.insert(v);
  }
  r.base_sections = s.base.size();
  r.equalizer_size = eq.size();
  std::map<V, std::size_t> preimage;
  for (std::size_t b = 0; b < s.base.size(); ++b) {
    V img = s.pull(s.base[b]);
    auto [it, inserted] = preimage.emplace(img, b);
    if (!inserted && r.separated) {
      r.separated = false;
      if (r.counterexample.empty()) {
        r.counterexample = "non-separated pair " + key_string(s.base[it->second]) + ", " + key_string(s.base[b]) +
                           " with common restriction " + key_string(img);
      }
    }
  }
  for (const auto& v : eq) {
    if (!preimage.count(v)) {
      r.glued = false;
      if (r.counterexample.empty()) r.counterexample = "compatible family " + key_string(v) + " does not glue";
      break;
    }
  }
  std::set<V> limit;
  for (const auto& v0 : s.level0) {
    std::vector<V> v{v0};
    for (int n = 1; n <= 3; ++n) v.push_back(s.coface(n, n, v[n - 1]));
    bool ok = true;
    for (int n = 1; n <= 3 && ok; ++n) {
      for (int i = 0; i <= n && ok; ++i) ok = s.coface(n, i, v[n - 1]) == v[n];
    }
    for (int n = 0; n < 3 && ok; ++n) {
      for (int j = 0; j <= n && ok; ++j) ok = s.codegeneracy(n, j, v[n + 1]) == v[n];
    }
    if (ok) limit.insert(v0);
  }
  r.limit_size = limit.size();
  r.truncation_agrees = limit == eq;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sites

void Cover::validate() const {
  if (pi.size() != e.size()) throw ArgumentError("cover map has " + std::to_string(pi.size()) + " entries for " +
                                                 std::to_string(e.size()) + " points");
  std::vector<int> hit(b.size(), 0);
  for (int v : pi) {
    if (v < 0 || v >= static_cast<int>(b.size())) throw ArgumentError("cover map leaves the base");
    hit[v] = 1;
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!hit[i]) throw ArgumentError("cover is not surjective: nothing lies over '" + b[i] + "'");
  }
  if (!pieces.empty()) {
    if (pieces.size() != e.size()) throw ArgumentError("pieces has the wrong size");
    const int k = piece_count();
    std::vector<int> used(k, 0);
    for (int p : pieces) {
      if (p < 0) throw ArgumentError("negative piece index");
      used[p] = 1;
    }
    if (std::count(used.begin(), used.end(), 0)) throw ArgumentError("pieces are not numbered 0..k-1");
  }
}

int Cover::piece_count() const {
  if (pieces.empty()) return 1;
  return *std::max_element(pieces.begin(), pieces.end()) + 1;
}

std::vector<int> Cover::piece(int i) const {
  std::vector<int> out;
  for (int x = 0; x < static_cast<int>(e.size()); ++x) {
    if ((pieces.empty() ? 0 : pieces[x]) == i) out.push_back(x);
  }
  return out;
}

Cover Cover::identity(const std::vector<std::string>& b) { return {b, b, identity_map(static_cast<int>(b.size())), {}}; }

Cover Cover::of_point(int n) {
  Cover c;
  c.b = {"pt"};
  for (int x = 0; x < n; ++x) {
    c.e.push_back("x" + std::to_string(x));
    c.pi.push_back(0);
  }
  return c;
}

Cover base_change(const Cover& c, const SetMap& f) {
  c.validate();
  f.validate();
  if (f.target.size() != c.b.size()) throw ArgumentError("base change map does not land in the base");
  Cover out;
  out.b = f.source;
  for (int x = 0; x < static_cast<int>(c.e.size()); ++x) {
    for (int p = 0; p < static_cast<int>(f.source.size()); ++p) {
      if (c.pi[x] != f.map[p]) continue;
      out.e.push_back("(" + c.e[x] + "," + f.source[p] + ")");
      out.pi.push_back(p);
      if (!c.pieces.empty()) out.pieces.push_back(c.pieces[x]);
    }
  }
  return out;
}

std::vector<Cover> enumerate_surjections(int e, int b) {
  std::vector<Cover> out;
  std::vector<std::string> es, bs;
  for (int x = 0; x < e; ++x) es.push_back("x" + std::to_string(x));
  for (int y = 0; y < b; ++y) bs.push_back("b" + std::to_string(y));
  for (const Key& k : all_functions(e, b)) {
    if (static_cast<int>(std::set<int>(k.begin(), k.end()).size()) != b) continue;
    out.push_back({es, bs, k, {}});
  }
  return out;
}

FiniteSpace::FiniteSpace(std::vector<std::string> points, std::vector<Open> opens)
    : points_(std::move(points)), opens_(std::move(opens)) {
  if (points_.size() > 32) throw CapacityError("finite spaces have at most 32 points");
  std::sort(opens_.begin(), opens_.end());
  opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  for (Open u : opens_) {
    if (u & ~whole()) throw ValidationError("open set mentions a point outside the space");
  }
  if (!is_open(0)) throw ValidationError("the empty set is not open");
  if (!is_open(whole())) throw ValidationError("the whole space is not open");
  for (Open u : opens_) {
    for (Open v : opens_) {
      if (!is_open(u | v)) throw ValidationError("opens are not closed under union: " + open_name(u | v));
      if (!is_open(u & v)) throw ValidationError("opens are not closed under intersection: " + open_name(u & v));
    }
  }
}

FiniteSpace FiniteSpace::alexandrov(int n, const std::vector<std::pair<int, int>>& relations) {
  if (n < 0 || n > 16) throw CapacityError("Alexandrov spaces are built on at most 16 points");
  std::vector<std::string> points;
  for (int p = 0; p < n; ++p) points.push_back(std::to_string(p));
  for (auto [a, b] : relations) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw ArgumentError("relation mentions a point outside the space");
  }
  std::vector<Open> opens;
  for (Open u = 0; u < (Open{1} << n); ++u) {
    bool up = true;
    for (auto [a, b] : relations) {
      if ((u >> a & 1) && !(u >> b & 1)) up = false;
    }
    if (up) opens.push_back(u);
  }
  return FiniteSpace(std::move(points), std::move(opens));
}

FiniteSpace FiniteSpace::discrete(int n) { return alexandrov(n, {}); }

FiniteSpace FiniteSpace::sierpinski() { return alexandrov(2, {{0, 1}}); }

bool FiniteSpace::is_open(Open u) const { return std::binary_search(opens_.begin(), opens_.end(), u); }

std::string FiniteSpace::open_name(Open u) const {
  std::string s = "{";
  bool first = true;
  for (int p = 0; p < point_count(); ++p) {
    if (!(u >> p & 1)) continue;
    s += (first ? "" : ",") + points_[p];
    first = false;
  }
  return s + "}";
}

void OpenCover::validate(const FiniteSpace& x) const {
  if (!x.is_open(target)) throw ArgumentError("cover target " + x.open_name(target) + " is not open");
  FiniteSpace::Open all = 0;
  for (auto u : family) {
    if (!x.is_open(u)) throw ArgumentError(x.open_name(u) + " is not open");
    if (u & ~target) throw ArgumentError(x.open_name(u) + " is not contained in the target");
    all |= u;
  }
  if (all != target) throw ArgumentError("the family does not cover " + x.open_name(target));
}

OpenCover base_change(const OpenCover& c, FiniteSpace::Open v) {
  if (v & ~c.target) throw ArgumentError("base change along an open outside the target");
  OpenCover out{v, {}};
  for (auto u : c.family) out.family.push_back(u & v);
  return out;
}

// ---------------------------------------------------------------------------
// Set-valued presheaves

SetPresheaf SetPresheaf::representable(int s) {
  SetPresheaf f;
  f.name = "Hom(-," + std::to_string(s) + ")";
  f.sections = [s](int n) { return all_functions(n, s); };
  f.restrict = [](const std::vector<int>& m, int, const Key& sec) {
    Key out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = sec[m[i]];
    return out;
  };
  return f;
}

SetPresheaf SetPresheaf::constant(int a) {
  SetPresheaf f;
  f.name = "const(" + std::to_string(a) + ")";
  f.sections = [a](int) { return all_functions(1, a); };
  f.restrict = [](const std::vector<int>&, int, const Key& sec) { return sec; };
  return f;
}

OpenPresheaf OpenPresheaf::representable(FiniteSpace::Open w) {
  OpenPresheaf f;
  f.name = "Hom(-," + std::to_string(w) + ")";
  f.sections = [w](FiniteSpace::Open v) { return (v & ~w) ? std::vector<Key>{} : std::vector<Key>{Key{}}; };
  f.restrict = [](FiniteSpace::Open, FiniteSpace::Open, const Key&) { return Key{}; };
  return f;
}

OpenPresheaf OpenPresheaf::functions(const FiniteSpace&, int a) {
  OpenPresheaf f;
  f.name = "functions(" + std::to_string(a) + ")";
  f.sections = [a](FiniteSpace::Open v) { return all_functions(std::popcount(v), a); };
  f.restrict = [](FiniteSpace::Open u, FiniteSpace::Open v, const Key& s) {
    Key out;
    int pos = 0;
    for (int p = 0; p < 32; ++p) {
      if (!(u >> p & 1)) continue;
      if (v >> p & 1) out.push_back(s[pos]);
      ++pos;
    }
    return out;
  };
  return f;
}

OpenPresheaf OpenPresheaf::constant(int a) {
  OpenPresheaf f;
  f.name = "const(" + std::to_string(a) + ")";
  f.sections = [a](FiniteSpace::Open) { return all_functions(1, a); };
  f.restrict = [](FiniteSpace::Open, FiniteSpace::Open, const Key& s) { return s; };
  return f;
}

void validate_presheaf(const OpenPresheaf& f, const FiniteSpace& x) {
  std::map<FiniteSpace::Open, std::set<Key>> secs;
  for (auto u : x.opens()) {
    auto s = f.sections(u);
    secs[u] = {s.begin(), s.end()};
  }
  for (auto u : x.opens()) {
    for (const Key& s : secs[u]) {
      if (f.restrict(u, u, s) != s) throw ValidationError("restriction to " + x.open_name(u) + " is not the identity");
      for (auto v : x.opens()) {
        if (v & ~u) continue;
        const Key sv = f.restrict(u, v, s);
        if (!secs[v].count(sv)) throw ValidationError("restriction to " + x.open_name(v) + " is not a section");
        for (auto w : x.opens()) {
          if (w & ~v) continue;
          if (f.restrict(v, w, sv) != f.restrict(u, w, s)) {
            throw ValidationError("restriction " + x.open_name(u) + " -> " + x.open_name(w) + " is not functorial");
          }
        }
      }
    }
  }
}

SheafReport check_sheaf_sets(const SetPresheaf& f, const Cover& c) {
  c.validate();
  SheafReport r;
  const int ne = static_cast<int>(c.e.size());
  const int nb = static_cast<int>(c.b.size());

  // Coproducts: F(E) -> prod_i F(U_i).
  std::vector<std::vector<int>> incl;
  std::size_t product = 1;
  for (int i = 0; i < c.piece_count(); ++i) {
    incl.push_back(c.piece(i));
    product *= f.sections(static_cast<int>(incl.back().size())).size();
  }
  std::set<std::vector<Key>> images;
  const auto e_sections = f.sections(ne);
  for (const Key& s : e_sections) {
    std::vector<Key> t;
    for (const auto& m : incl) t.push_back(f.restrict(m, ne, s));
    if (!images.insert(t).second && r.coproduct) {
      r.coproduct = false;
      r.counterexample = "F(E) -> prod F(U_i) is not injective at " + key_string(t);
    }
  }
  if (r.coproduct && images.size() != product) {
    r.coproduct = false;
    r.counterexample = "F(E) has " + std::to_string(e_sections.size()) + " sections but prod F(U_i) has " +
                       std::to_string(product);
  }

  CechSets cs{cech_nerve(c.as_map(), 3)};
  std::vector<std::vector<std::vector<int>>> faces(4), degens(3);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i <= n; ++i) faces[n].push_back(cs.face(n, i));
  }
  for (int n = 0; n < 3; ++n) {
    for (int j = 0; j <= n; ++j) degens[n].push_back(cs.degeneracy(n, j));
  }
  CechSections<Key> s;
  s.base = f.sections(nb);
  s.level0 = e_sections;
  s.pull = [&](const Key& b) { return f.restrict(c.pi, nb, b); };
  s.coface = [&](int n, int i, const Key& v) { return f.restrict(faces[n][i], cs.size(n - 1), v); };
  s.codegeneracy = [&](int n, int j, const Key& v) { return f.restrict(degens[n][j], cs.size(n + 1), v); };
  equalizer_checks(s, r);
  r.sheaf = r.coproduct && r.separated && r.glued;
  return r;
}

SheafReport check_sheaf_sets(const OpenPresheaf& f, const FiniteSpace& x, const OpenCover& c) {
  c.validate(x);
  SheafReport r;
  using Open = FiniteSpace::Open;

  if (f.sections(0).size() != 1) {
    r.coproduct = false;
    r.counterexample = "F(empty) has " + std::to_string(f.sections(0).size()) + " sections";
  }
  for (Open v : x.opens()) {
    for (Open w : x.opens()) {
      if (!r.coproduct) break;
      if (v == 0 || w == 0 || v >= w || (v & w)) continue;
      std::set<std::pair<Key, Key>> images;
      const auto secs = f.sections(v | w);
      for (const Key& s : secs) images.emplace(f.restrict(v | w, v, s), f.restrict(v | w, w, s));
      const std::size_t product = f.sections(v).size() * f.sections(w).size();
      if (images.size() != secs.size() || images.size() != product) {
        r.coproduct = false;
        r.counterexample = "F(" + x.open_name(v | w) + ") -> F(" + x.open_name(v) + ") x F(" + x.open_name(w) +
                           ") is not a bijection";
      }
    }
  }

  const int m = static_cast<int>(c.family.size());
  // C_n is the set of index tuples (i_0..i_n), numbered in base m.
  auto tuple = [m](int n, int idx) {
    std::vector<int> t(n + 1);
    for (int k = n; k >= 0; --k) {
      t[k] = idx % m;
      idx /= m;
    }
    return t;
  };
  auto index = [m](const std::vector<int>& t) {
    int idx = 0;
    for (int v : t) idx = idx * m + v;
    return idx;
  };
  auto meet = [&](const std::vector<int>& t) {
    Open u = c.target;
    for (int v : t) u &= c.family[v];
    return u;
  };
  auto count = [m](int n) {
    int k = 1;
    for (int i = 0; i <= n; ++i) k *= m;
    return k;
  };
  using V = std::vector<Key>;
  CechSections<V> s;
  s.base = {};
  for (const Key& b : f.sections(c.target)) s.base.push_back({b});
  // Level 0 is the product of the F(U_i).
  std::vector<std::vector<Key>> factors;
  for (Open u : c.family) factors.push_back(f.sections(u));
  std::function<void(std::size_t, V&)> rec = [&](std::size_t i, V& cur) {
    if (i == factors.size()) {
      s.level0.push_back(cur);
      return;
    }
    for (const Key& k : factors[i]) {
      cur.push_back(k);
      rec(i + 1, cur);
      cur.pop_back();
    }
  };
  V cur;
  rec(0, cur);
  s.pull = [&](const V& b) {
    V out;
    for (Open u : c.family) out.push_back(f.restrict(c.target, u, b[0]));
    return out;
  };
  s.coface = [&](int n, int i, const V& v) {
    V out;
    for (int idx = 0; idx < count(n); ++idx) {
      auto t = tuple(n, idx);
      auto src = t;
      src.erase(src.begin() + i);
      out.push_back(f.restrict(meet(src), meet(t), v[index(src)]));
    }
    return out;
  };
  s.codegeneracy = [&](int n, int j, const V& v) {
    V out;
    for (int idx = 0; idx < count(n); ++idx) {
      auto t = tuple(n, idx);
      auto src = t;
      src.insert(src.begin() + j, t[j]);
      out.push_back(f.restrict(meet(src), meet(t), v[index(src)]));
    }
    return out;
  };
  // The base enters through one-element vectors; unwrap for the report.
  SheafReport eq;
  equalizer_checks(s, eq);
  r.separated = eq.separated;
  r.glued = eq.glued;
  r.base_sections = eq.base_sections;
  r.equalizer_size = eq.equalizer_size;
  r.limit_size = eq.limit_size;
  r.truncation_agrees = eq.truncation_agrees;
  if (r.counterexample.empty()) r.counterexample = eq.counterexample;
  r.sheaf = r.coproduct && r.separated && r.glued;
  return r;
}

// ---------------------------------------------------------------------------
// Groupoid-valued presheaves

namespace {

std::int64_t checked_power(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (std::int64_t{1} << 62) / std::max<std::int64_t>(base, 1)) {
      throw CapacityError("group of order " + std::to_string(base) + "^" + std::to_string(exp) + " is too large");
    }
    out *= base;
  }
  return out;
}

// G^n with elements encoded in base |G|, coordinate 0 least significant.
struct PowerCodec {
  int order = 1;
  int n = 0;
  std::vector<int> decode(std::int64_t h) const {
    std::vector<int> out(n);
    for (int k = 0; k < n; ++k) {
      out[k] = static_cast<int>(h % order);
      h /= order;
    }
    return out;
  }
  std::int64_t encode(const std::vector<int>& v) const {
    std::int64_t h = 0;
    for (int k = n - 1; k >= 0; --k) h = h * order + v[k];
    return h;
  }
};

FiniteGroupoid::ImplicitGroup power_group(const FiniteGroup& g, int n) {
  FiniteGroupoid::ImplicitGroup out;
  out.order = checked_power(g.order(), n);
  PowerCodec codec{g.order(), n};
  out.mul = [g, codec](std::int64_t a, std::int64_t b) {
    auto x = codec.decode(a), y = codec.decode(b);
    for (int k = 0; k < codec.n; ++k) x[k] = g.mul(x[k], y[k]);
    return codec.encode(x);
  };
  out.inverse = [g, codec](std::int64_t a) {
    auto x = codec.decode(a);
    for (int& v : x) v = g.inverse(v);
    return codec.encode(x);
  };
  out.identity = codec.encode(std::vector<int>(n, g.identity()));
  for (int k = 0; k < n; ++k) {
    for (int s : g.generators()) {
      std::vector<int> v(n, g.identity());
      v[k] = s;
      out.generators.push_back(codec.encode(v));
    }
  }
  out.name = [g, codec](std::int64_t a) {
    auto x = codec.decode(a);
    std::string s = "(";
    for (int k = 0; k < codec.n; ++k) s += (k ? "," : "") + g.name(x[k]);
    return s + ")";
  };
  return out;
}

}  // namespace

GroupoidPresheaf GroupoidPresheaf::torsors(const FiniteGroup& g) {
  GroupoidPresheaf f;
  f.name = "torsors(" + g.label() + ")";
  f.value = [g](int n) {
    FiniteGroupoid::ActionSpec spec;
    spec.group = power_group(g, n);
    spec.object_count = 1;
    spec.act = [](std::int64_t, int) { return 0; };
    spec.object_name = [](int) { return std::string("trivial"); };
    return FiniteGroupoid::from_action(std::move(spec));
  };
  f.restrict_object = [](const std::vector<int>&, int, int) { return 0; };
  f.restrict_morphism = [g](const std::vector<int>& m, int t, Mor u) {
    const PowerCodec from{g.order(), t};
    const PowerCodec to{g.order(), static_cast<int>(m.size())};
    return to.encode(compose_maps(from.decode(u), m));
  };
  return f;
}

GroupoidPresheaf GroupoidPresheaf::constant_bg(const FiniteGroup& g) {
  GroupoidPresheaf f;
  f.name = "B" + g.label();
  const FiniteGroupoid bg = FiniteGroupoid::classifying(g);
  f.value = [bg](int) { return bg; };
  f.restrict_object = [](const std::vector<int>&, int, int a) { return a; };
  f.restrict_morphism = [](const std::vector<int>&, int, Mor u) { return u; };
  return f;
}

namespace {

struct DescentState {
  FiniteGroupoid f0;
  FiniteGroupoid f1;
  std::vector<std::pair<int, Mor>> objects;
  std::map<std::pair<int, Mor>, int> index;
  std::vector<std::vector<Mor>> out;   // morphisms of F(C_0) out of each object
  std::vector<int> d0, d1;
  int n0 = 0;
  Mor stride = 0;
  GroupoidPresheaf f;
};

}  // namespace

DescentGroupoid descent_groupoid(const GroupoidPresheaf& f, const Cover& c, int truncation) {
  if (truncation != 2 && truncation != 3) throw ArgumentError("descent data are truncated at level 2 or 3");
  c.validate();
  CechSets cs{cech_nerve(c.as_map(), truncation)};
  auto st = std::make_shared<DescentState>();
  st->f = f;
  st->n0 = cs.size(0);
  st->f0 = f.value(cs.size(0));
  st->f1 = f.value(cs.size(1));
  const FiniteGroupoid f2 = f.value(cs.size(2));
  st->d0 = cs.face(1, 0);
  st->d1 = cs.face(1, 1);
  st->stride = static_cast<Mor>(st->f0.morphism_count());
  const int nb = static_cast<int>(c.b.size());

  auto gamma = [&f](const std::vector<int>& a, const std::vector<int>& b, int t, int obj,
                    const FiniteGroupoid& target) -> Mor {
    if (!f.coherence) {
      return target.identity(f.restrict_object(a, static_cast<int>(b.size()), f.restrict_object(b, t, obj)));
    }
    return f.coherence(a, b, t, obj);
  };

  // Associativity of the coherence isomorphisms on the chains used below.
  auto check_assoc = [&](const std::vector<int>& x, const std::vector<int>& y, const std::vector<int>& z, int u,
                         int a, const FiniteGroupoid& fx) {
    if (!f.coherence) return;
    const int s = static_cast<int>(y.size());
    const int t = static_cast<int>(z.size());
    const auto zy = compose_maps(z, y);
    const auto yx = compose_maps(y, x);
    const Mor p1 = fx.compose(f.coherence(x, zy, u, a), f.restrict_morphism(x, s, f.coherence(y, z, u, a)));
    const Mor p2 = fx.compose(f.coherence(yx, z, u, a), f.coherence(x, y, t, f.restrict_object(z, u, a)));
    if (p1 != p2) throw ConsistencyError("coherence isomorphisms of " + f.name + " are not associative");
  };
  const FiniteGroupoid fb = f.value(nb);
  for (int a = 0; a < fb.object_count(); ++a) {
    for (int i = 0; i <= 2; ++i) {
      for (int j = 0; j <= 1; ++j) check_assoc(cs.face(2, i), cs.face(1, j), c.pi, nb, a, f2);
    }
  }
  std::optional<FiniteGroupoid> f3;
  if (truncation == 3) {
    f3 = f.value(cs.size(3));
    for (int a = 0; a < st->f0.object_count(); ++a) {
      for (int i = 0; i <= 3; ++i) {
        for (int j = 0; j <= 2; ++j) {
          for (int k = 0; k <= 1; ++k) check_assoc(cs.face(3, i), cs.face(2, j), cs.face(1, k), st->n0, a, *f3);
        }
      }
    }
  }

  // Transport of r*(m) for m : p* a -> q* a to (p r)* a -> (q r)* a.
  auto transport = [&](const std::vector<int>& r, int rsize, const std::vector<int>& p, const std::vector<int>& q,
                       int base_size, int a, Mor m, const FiniteGroupoid& target) {
    const Mor src = gamma(r, p, base_size, a, target);
    const Mor dst = gamma(r, q, base_size, a, target);
    return target.compose(dst, target.compose(f.restrict_morphism(r, rsize, m), target.inverse(src)));
  };

  // psi_i : the gluing iso restricted along the i-th face C_2 -> C_1, between
  // vertex restrictions of a.
  auto psis = [&](int a, Mor phi) {
    std::vector<Mor> out;
    for (int i = 0; i <= 2; ++i) {
      out.push_back(transport(cs.face(2, i), cs.size(1), st->d1, st->d0, st->n0, a, phi, f2));
    }
    return out;
  };
  const auto s0 = cs.degeneracy(0, 0);

  for (int a = 0; a < st->f0.object_count(); ++a) {
    const int src = f.restrict_object(st->d1, st->n0, a);
    const int dst = f.restrict_object(st->d0, st->n0, a);
    for (Mor phi : st->f1.hom(src, dst)) {
      const Mor unit = transport(s0, cs.size(1), st->d1, st->d0, st->n0, a, phi, st->f0);
      if (unit != st->f0.identity(st->f0.source(unit))) continue;
      const auto psi = psis(a, phi);
      if (psi[1] != f2.compose(psi[0], psi[2])) continue;
      bool ok = true;
      if (truncation == 3) {
        // Vertex maps C_2 -> C_0 along which psi_i is defined.
        const std::vector<std::vector<int>> p = {compose_maps(st->d1, cs.face(2, 2)), compose_maps(st->d0, cs.face(2, 2)),
                                                 compose_maps(st->d0, cs.face(2, 0))};
        const std::pair<int, int> ends[3] = {{1, 2}, {0, 2}, {0, 1}};
        for (int e = 0; e <= 3 && ok; ++e) {
          const auto eps = cs.face(3, e);
          std::vector<Mor> r;
          for (int i = 0; i <= 2; ++i) {
            r.push_back(transport(eps, cs.size(2), p[ends[i].first], p[ends[i].second], st->n0, a, psi[i], *f3));
          }
          ok = r[1] == f3->compose(r[0], r[2]);
        }
      }
      if (!ok) continue;
      st->index[{a, phi}] = static_cast<int>(st->objects.size());
      st->objects.emplace_back(a, phi);
    }
  }
  st->out.resize(st->f0.object_count());
  for (int a = 0; a < st->f0.object_count(); ++a) {
    for (int b = 0; b < st->f0.object_count(); ++b) {
      for (Mor u : st->f0.hom(a, b)) {
        if (u < 0 || u >= st->stride) throw ConsistencyError("morphism ids of F(E) are not dense");
        st->out[a].push_back(u);
      }
    }
  }

  FiniteGroupoid::CallbackSpec spec;
  spec.object_count = static_cast<int>(st->objects.size());
  for (const auto& [a, phi] : st->objects) spec.morphism_count += st->out[a].size();
  spec.object_name = [st](int i) {
    const auto& [a, phi] = st->objects[i];
    return "(" + st->f0.object_name(a) + "," + st->f1.morphism_name(phi) + ")";
  };
  spec.out = [st](int i) {
    std::vector<Mor> out;
    for (Mor u : st->out[st->objects[i].first]) out.push_back(i * st->stride + u);
    return out;
  };
  spec.source = [st](Mor m) { return static_cast<int>(m / st->stride); };
  spec.target = [st](Mor m) {
    const int i = static_cast<int>(m / st->stride);
    const Mor u = m % st->stride;
    const auto& [a, phi] = st->objects[i];
    const Mor top = st->f.restrict_morphism(st->d0, st->n0, u);
    const Mor bottom = st->f.restrict_morphism(st->d1, st->n0, u);
    const Mor phi2 = st->f1.compose(top, st->f1.compose(phi, st->f1.inverse(bottom)));
    auto it = st->index.find({st->f0.target(u), phi2});
    if (it == st->index.end()) throw ConsistencyError("transported gluing datum is not a descent datum");
    return it->second;
  };
  spec.identity = [st](int i) { return i * st->stride + st->f0.identity(st->objects[i].first); };
  spec.compose = [st](Mor g, Mor h) {
    return (h / st->stride) * st->stride + st->f0.compose(g % st->stride, h % st->stride);
  };
  spec.inverse = [st, target = spec.target](Mor m) {
    return static_cast<Mor>(target(m)) * st->stride + st->f0.inverse(m % st->stride);
  };
  spec.morphism_name = [st](Mor m) { return st->f0.morphism_name(m % st->stride); };

  DescentGroupoid d;
  d.truncation = truncation;
  d.stride = st->stride;
  d.objects = st->objects;
  d.groupoid = FiniteGroupoid::from_callbacks(std::move(spec));
  return d;
}

StackReport check_stack_groupoids(const GroupoidPresheaf& f, const Cover& c) {
  c.validate();
  StackReport r;
  const int ne = static_cast<int>(c.e.size());
  const int nb = static_cast<int>(c.b.size());

  // Coproducts: F(E) -> prod_i F(U_i) is an equivalence.
  const FiniteGroupoid fe = f.value(ne);
  std::vector<std::vector<int>> incl;
  std::vector<FiniteGroupoid> parts;
  std::int64_t component_product = 1;
  for (int i = 0; i < c.piece_count(); ++i) {
    incl.push_back(c.piece(i));
    parts.push_back(f.value(static_cast<int>(incl.back().size())));
    component_product *= parts.back().component_count();
  }
  std::set<std::vector<int>> component_images;
  for (const auto& entry : skeleton(fe)) {
    const int x = entry.representative;
    std::vector<int> comps;
    std::int64_t aut_product = 1;
    for (std::size_t i = 0; i < incl.size(); ++i) {
      const int y = f.restrict_object(incl[i], ne, x);
      comps.push_back(parts[i].components()[y]);
      aut_product *= static_cast<std::int64_t>(parts[i].automorphisms(y).size());
    }
    if (!component_images.insert(comps).second && r.coproduct) {
      r.coproduct = false;
      r.failure = "F(E) -> prod F(U_i) is not injective on components";
    }
    std::set<std::vector<Mor>> auts;
    for (Mor v : fe.automorphisms(x)) {
      std::vector<Mor> t;
      for (std::size_t i = 0; i < incl.size(); ++i) t.push_back(f.restrict_morphism(incl[i], ne, v));
      auts.insert(t);
    }
    if ((static_cast<std::int64_t>(auts.size()) != aut_product ||
         auts.size() != fe.automorphisms(x).size()) && r.coproduct) {
      r.coproduct = false;
      r.failure = "F(E) -> prod F(U_i) is not fully faithful at " + fe.object_name(x);
    }
  }
  if (r.coproduct && static_cast<std::int64_t>(component_images.size()) != component_product) {
    r.coproduct = false;
    r.failure = "F(E) has " + std::to_string(component_images.size()) + " components but prod F(U_i) has " +
                std::to_string(component_product);
  }

  const DescentGroupoid desc = descent_groupoid(f, c, 2);
  const DescentGroupoid desc3 = descent_groupoid(f, c, 3);
  r.descent_objects = desc.groupoid.object_count();
  r.descent_cardinality = groupoid_cardinality(desc.groupoid);
  r.truncation_agrees = equivalence_check(desc.groupoid, desc3.groupoid);

  // Comparison F(B) -> Desc: b goes to (pi* b, the canonical gluing).
  const FiniteGroupoid fb = f.value(nb);
  CechSets cs{cech_nerve(c.as_map(), 1)};
  const FiniteGroupoid f1 = f.value(cs.size(1));
  const auto d0 = cs.face(1, 0), d1 = cs.face(1, 1);
  const auto route = compose_maps(c.pi, d1);
  std::map<std::pair<int, Mor>, int> index;
  for (std::size_t i = 0; i < desc.objects.size(); ++i) index[desc.objects[i]] = static_cast<int>(i);
  std::vector<int> object_image(fb.object_count(), -1);
  for (int b = 0; b < fb.object_count(); ++b) {
    const int a = f.restrict_object(c.pi, nb, b);
    Mor phi;
    if (f.coherence) {
      phi = f1.compose(f1.inverse(f.coherence(d0, c.pi, nb, b)), f.coherence(d1, c.pi, nb, b));
    } else {
      phi = f1.identity(f.restrict_object(route, nb, b));
    }
    auto it = index.find({a, phi});
    if (it == index.end()) throw ConsistencyError("the canonical gluing of a global section is not a descent datum");
    object_image[b] = it->second;
  }
  GroupoidFunctor comparison;
  comparison.on_objects = [object_image](int b) { return object_image[b]; };
  const Mor stride = desc.stride;
  comparison.on_morphisms = [f, fb, nb, c, stride, object_image](Mor v) {
    return object_image[fb.source(v)] * stride + f.restrict_morphism(c.pi, nb, v);
  };
  r.comparison = is_equivalence(fb, desc.groupoid, comparison);
  r.stack = r.coproduct && r.comparison.equivalence;
  if (r.failure.empty() && !r.comparison.equivalence) r.failure = "F(B) -> Desc: " + r.comparison.failure;
  return r;
}

// ---------------------------------------------------------------------------
// Nonabelian Cech descent for BG

namespace {

struct CechLayout {
  FiniteGroup g;
  std::vector<int> base_point;   // least element of the fiber of each point
  std::vector<int> free;         // points that are not base points, in order
  std::vector<int> free_pos;     // position in `free`, or -1
  PowerCodec objects;            // digits on the free points
  PowerCodec cochains;           // one digit per point of E

  // b[y] = g(x0, y) for the base point x0 of y's fiber.
  std::vector<int> base_values(int i) const {
    std::vector<int> b(base_point.size(), g.identity());
    auto digits = objects.decode(i);
    for (std::size_t k = 0; k < free.size(); ++k) b[free[k]] = digits[k];
    return b;
  }
  int index_of(const std::vector<int>& b) const {
    std::vector<int> digits;
    for (int y : free) digits.push_back(b[y]);
    return static_cast<int>(objects.encode(digits));
  }
};

}  // namespace

std::vector<int> CechDescent::cocycle(int i) const {
  std::vector<int> b(cover.e.size(), group.identity());
  // Base values are decoded with the same layout as the groupoid.
  std::vector<int> base_point(cover.e.size(), -1);
  std::vector<int> free;
  for (int x = 0; x < static_cast<int>(cover.e.size()); ++x) {
    for (int y = 0; y < static_cast<int>(cover.e.size()); ++y) {
      if (cover.pi[y] == cover.pi[x]) {
        base_point[x] = y;
        break;
      }
    }
    if (base_point[x] != x) free.push_back(x);
  }
  const PowerCodec codec{group.order(), static_cast<int>(free.size())};
  auto digits = codec.decode(i);
  for (std::size_t k = 0; k < free.size(); ++k) b[free[k]] = digits[k];
  std::vector<int> out;
  for (auto [x, y] : pairs) out.push_back(group.mul(b[y], group.inverse(b[x])));
  return out;
}

int CechDescent::find(const std::vector<int>& values) const {
  if (values.size() != pairs.size()) return -1;
  std::map<std::pair<int, int>, int> at;
  for (std::size_t k = 0; k < pairs.size(); ++k) at[pairs[k]] = values[k];
  for (auto [x, y] : pairs) {
    if (x == y && at[{x, y}] != group.identity()) return -1;
    for (auto [y2, z] : pairs) {
      if (y2 != y) continue;
      if (at[{x, z}] != group.mul(at[{y, z}], at[{x, y}])) return -1;
    }
  }
  std::int64_t idx = 0;
  for (int y = static_cast<int>(cover.e.size()) - 1; y >= 0; --y) {
    int x0 = y;
    for (int x = 0; x < y; ++x) {
      if (cover.pi[x] == cover.pi[y]) {
        x0 = x;
        break;
      }
    }
    if (x0 == y) continue;
    idx = idx * group.order() + at[{x0, y}];
  }
  return static_cast<int>(idx);
}

std::int64_t CechDescent::encode(const std::vector<int>& h) const {
  return PowerCodec{group.order(), static_cast<int>(cover.e.size())}.encode(h);
}

std::vector<int> CechDescent::decode(std::int64_t h) const {
  return PowerCodec{group.order(), static_cast<int>(cover.e.size())}.decode(h);
}

CechDescent cech_descent_groupoid(const Cover& c, const FiniteGroup& g) {
  c.validate();
  const int ne = static_cast<int>(c.e.size());
  auto layout = std::make_shared<CechLayout>();
  layout->g = g;
  layout->base_point.assign(ne, -1);
  layout->free_pos.assign(ne, -1);
  for (int x = 0; x < ne; ++x) {
    for (int y = 0; y <= x; ++y) {
      if (c.pi[y] == c.pi[x]) {
        layout->base_point[x] = y;
        break;
      }
    }
    if (layout->base_point[x] != x) {
      layout->free_pos[x] = static_cast<int>(layout->free.size());
      layout->free.push_back(x);
    }
  }
  layout->objects = {g.order(), static_cast<int>(layout->free.size())};
  layout->cochains = {g.order(), ne};
  const std::int64_t object_count = checked_power(g.order(), static_cast<int>(layout->free.size()));
  if (object_count > (std::int64_t{1} << 30)) throw CapacityError("too many cocycles");

  CechDescent d;
  d.group = g;
  d.cover = c;
  for (int x = 0; x < ne; ++x) {
    for (int y = 0; y < ne; ++y) {
      if (c.pi[x] == c.pi[y]) d.pairs.emplace_back(x, y);
    }
  }
  FiniteGroupoid::ActionSpec spec;
  spec.group = power_group(g, ne);
  spec.object_count = static_cast<int>(object_count);
  spec.act = [layout](std::int64_t h, int i) {
    const auto hv = layout->cochains.decode(h);
    auto b = layout->base_values(i);
    for (int y : layout->free) {
      const int x0 = layout->base_point[y];
      b[y] = layout->g.mul(layout->g.mul(hv[y], b[y]), layout->g.inverse(hv[x0]));
    }
    return layout->index_of(b);
  };
  spec.object_name = [layout](int i) {
    const auto b = layout->base_values(i);
    std::string s = "[";
    for (std::size_t k = 0; k < layout->free.size(); ++k) s += (k ? "," : "") + layout->g.name(b[layout->free[k]]);
    return s + "]";
  };
  d.groupoid = FiniteGroupoid::from_action(std::move(spec));
  return d;
}

RefinementReport refinement_invariance(const Cover& coarse, const Cover& fine, const std::vector<int>& refinement,
                                       const FiniteGroup& g) {
  coarse.validate();
  fine.validate();
  if (coarse.b.size() != fine.b.size()) throw ArgumentError("the two covers have different bases");
  if (refinement.size() != fine.e.size()) throw ArgumentError("refinement map has the wrong size");
  for (std::size_t x = 0; x < refinement.size(); ++x) {
    const int y = refinement[x];
    if (y < 0 || y >= static_cast<int>(coarse.e.size())) throw ArgumentError("refinement map leaves the coarse cover");
    if (coarse.pi[y] != fine.pi[x]) {
      throw ArgumentError("refinement map is not over the base at '" + fine.e[x] + "'");
    }
  }
  RefinementReport r;
  const CechDescent a = cech_descent_groupoid(coarse, g);
  const CechDescent b = cech_descent_groupoid(fine, g);
  r.cardinality_coarse = groupoid_cardinality(a.groupoid);
  r.cardinality_fine = groupoid_cardinality(b.groupoid);
  r.equivalent = equivalence_check(a.groupoid, b.groupoid);

  std::map<std::pair<int, int>, int> pos;
  for (std::size_t k = 0; k < a.pairs.size(); ++k) pos[a.pairs[k]] = static_cast<int>(k);
  auto on_objects = [a, b, pos, refinement](int i) {
    const auto values = a.cocycle(i);
    std::vector<int> pulled;
    for (auto [x, y] : b.pairs) pulled.push_back(values[pos.at({refinement[x], refinement[y]})]);
    const int j = b.find(pulled);
    if (j < 0) throw ConsistencyError("restricted cocycle is not a cocycle");
    return j;
  };
  GroupoidFunctor functor;
  functor.on_objects = on_objects;
  const std::int64_t na = a.cocycle_count(), nbc = b.cocycle_count();
  functor.on_morphisms = [a, b, refinement, on_objects, na, nbc](Mor m) {
    const auto h = a.decode(m / na);
    const int i = static_cast<int>(m % na);
    return b.encode(compose_maps(h, refinement)) * nbc + on_objects(i);
  };
  r.restriction = is_equivalence(a.groupoid, b.groupoid, functor);
  r.invariant = r.equivalent && r.restriction.equivalence;
  return r;
}

}  // namespace hcat
