#include "hcat/nerve.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "hcat/error.hpp"
#include "hcat/kan.hpp"

namespace hcat {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string edge_name(const std::vector<std::string>& objects, const std::string& name) {
  return std::find(objects.begin(), objects.end(), name) == objects.end() ? name : "[" + name + "]";
}

}  // namespace

IndexedSimplicialSet nerve_indexed(const FiniteCategory& c, int dim_cap) {
  if (dim_cap < 0 || dim_cap > kMaxDimCap) throw CapacityError("nerve dim_cap out of range");
  LevelModel model;
  model.level = [&c](int n) {
    std::vector<Key> out;
    if (n == 0) {
      for (int x = 0; x < c.object_count(); ++x) out.push_back({x});
      return out;
    }
    Key cur;
    std::function<void()> rec = [&]() {
      if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
      }
      for (int f = 0; f < c.morphism_count(); ++f) {
        if (!cur.empty() && c.source(f) != c.target(cur.back())) continue;
        cur.push_back(f);
        rec();
        cur.pop_back();
      }
    };
    rec();
    return out;
  };
  model.face = [&c](int n, int i, const Key& k) -> Key {
    if (n == 1) return {i == 0 ? c.target(k[0]) : c.source(k[0])};
    Key out = k;
    if (i == 0) {
      out.erase(out.begin());
    } else if (i == n) {
      out.pop_back();
    } else {
      out[i - 1] = c.compose(k[i], k[i - 1]);
      out.erase(out.begin() + i);
    }
    return out;
  };
  model.degeneracy = [&c](int n, int j, const Key& k) -> Key {
    if (n == 0) return {c.identity(k[0])};
    const int obj = j < n ? c.source(k[j]) : c.target(k[n - 1]);
    Key out = k;
    out.insert(out.begin() + j, c.identity(obj));
    return out;
  };
  model.name = [&c](int n, const Key& k) -> std::string {
    if (n == 0) return c.object_name(k[0]);
    std::vector<std::string> parts;
    for (int f : k) parts.push_back(c.morphism(f).name);
    if (n == 1) return edge_name(c.objects(), parts[0]);
    return "[" + join(parts, ",") + "]";
  };
  return build_simplicial_set(dim_cap, model);
}

SimplicialSet nerve(const FiniteCategory& c, int dim_cap) { return nerve_indexed(c, dim_cap).set; }

// ---------------------------------------------------------------------------
// Duskin nerve

namespace {

// Dense view of one simplex of the Duskin nerve; f and mu are also defined on
// repeated indices (identities).
struct DuskinData {
  int n = 0;
  std::vector<int> c;
  std::vector<int> f;    // f[i * N + j], i <= j
  std::vector<int> mu;   // mu[(i * N + j) * N + k], i <= j <= k

  int N() const { return n + 1; }
  int& F(int i, int j) { return f[i * N() + j]; }
  int F(int i, int j) const { return f[i * N() + j]; }
  int& M(int i, int j, int k) { return mu[(i * N() + j) * N() + k]; }
  int M(int i, int j, int k) const { return mu[(i * N() + j) * N() + k]; }
};

class DuskinCodec {
 public:
  explicit DuskinCodec(const Finite2Category& c) : c_(c) {}

  Key encode(const DuskinData& d) const {
    Key k = d.c;
    for (int i = 0; i <= d.n; ++i) {
      for (int j = i + 1; j <= d.n; ++j) k.push_back(d.F(i, j));
    }
    for (int i = 0; i <= d.n; ++i) {
      for (int j = i + 1; j <= d.n; ++j) {
        for (int l = j + 1; l <= d.n; ++l) k.push_back(d.M(i, j, l));
      }
    }
    return k;
  }

  DuskinData decode(int n, const Key& k) const {
    DuskinData d = blank(n);
    std::size_t pos = 0;
    for (int i = 0; i <= n; ++i) d.c[i] = k[pos++];
    for (int i = 0; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) d.F(i, j) = k[pos++];
    }
    for (int i = 0; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        for (int l = j + 1; l <= n; ++l) d.M(i, j, l) = k[pos++];
      }
    }
    fill_degenerate(d);
    return d;
  }

  DuskinData blank(int n) const {
    DuskinData d;
    d.n = n;
    d.c.assign(n + 1, -1);
    d.f.assign((n + 1) * (n + 1), -1);
    d.mu.assign((n + 1) * (n + 1) * (n + 1), -1);
    return d;
  }

  // Identity 1-morphisms on the diagonal and identity 2-cells on triples with
  // a repeated index.
  void fill_degenerate(DuskinData& d) const {
    const auto& b = c_.base();
    for (int i = 0; i <= d.n; ++i) d.F(i, i) = b.identity(d.c[i]);
    for (int i = 0; i <= d.n; ++i) {
      for (int j = i; j <= d.n; ++j) {
        for (int l = j; l <= d.n; ++l) {
          if (i == j || j == l) d.M(i, j, l) = c_.identity_cell(d.F(i, l));
        }
      }
    }
  }

  Key pullback(int n, const Key& k, std::span<const int> alpha) const {
    DuskinData d = decode(n, k);
    const int m = static_cast<int>(alpha.size()) - 1;
    DuskinData out = blank(m);
    for (int p = 0; p <= m; ++p) out.c[p] = d.c[alpha[p]];
    for (int p = 0; p <= m; ++p) {
      for (int q = p; q <= m; ++q) {
        out.F(p, q) = d.F(alpha[p], alpha[q]);
        for (int r = q; r <= m; ++r) out.M(p, q, r) = d.M(alpha[p], alpha[q], alpha[r]);
      }
    }
    return encode(out);
  }

  // mu_ikl . (f_kl * mu_ijk) == mu_ijl . (mu_jkl * f_ij)
  bool tetrahedron(const DuskinData& d, int i, int j, int k, int l) const {
    int lhs = c_.vertical(d.M(i, k, l), c_.horizontal(c_.identity_cell(d.F(k, l)), d.M(i, j, k)));
    int rhs = c_.vertical(d.M(i, j, l), c_.horizontal(d.M(j, k, l), c_.identity_cell(d.F(i, j))));
    return lhs == rhs;
  }

  std::string name(int n, const Key& k) const {
    const auto& b = c_.base();
    DuskinData d = decode(n, k);
    if (n == 0) return b.object_name(d.c[0]);
    if (n == 1) return edge_name(b.objects(), b.morphism(d.F(0, 1)).name);
    std::vector<std::string> fs, ms;
    for (int i = 0; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        fs.push_back(b.morphism(d.F(i, j)).name);
        for (int l = j + 1; l <= n; ++l) ms.push_back(c_.cell(d.M(i, j, l)).name);
      }
    }
    return "[" + join(fs, ",") + "|" + join(ms, ",") + "]";
  }

  // All ways to extend an (n-1)-simplex by a new last vertex.
  void extend(const DuskinData& prev, std::vector<Key>& out) const {
    const auto& b = c_.base();
    const int n = prev.n + 1;
    DuskinData d = blank(n);
    for (int i = 0; i < n; ++i) {
      d.c[i] = prev.c[i];
      for (int j = i; j < n; ++j) {
        d.F(i, j) = prev.F(i, j);
        for (int l = j; l < n; ++l) d.M(i, j, l) = prev.M(i, j, l);
      }
    }
    // Triples (i, j, n) in lexicographic order of (i, j).
    std::vector<std::pair<int, int>> triples;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) triples.emplace_back(i, j);
    }
    std::function<void(std::size_t)> assign_cells = [&](std::size_t t) {
      if (t == triples.size()) {
        out.push_back(encode(d));
        return;
      }
      auto [i, j] = triples[t];
      int src = b.compose(d.F(j, n), d.F(i, j));
      for (int cell : c_.cells_between(src, d.F(i, n))) {
        d.M(i, j, n) = cell;
        // (i, j) is the last of the pairs (h, i), (h, j), (i, j) to be assigned.
        bool ok = true;
        for (int h = 0; h < i && ok; ++h) ok = tetrahedron(d, h, i, j, n);
        if (ok) assign_cells(t + 1);
      }
      d.M(i, j, n) = -1;
    };
    std::function<void(int)> assign_edges = [&](int i) {
      if (i == n) {
        fill_degenerate(d);
        assign_cells(0);
        return;
      }
      for (int f : b.hom(d.c[i], d.c[n])) {
        d.F(i, n) = f;
        assign_edges(i + 1);
      }
    };
    for (int x = 0; x < b.object_count(); ++x) {
      d.c[n] = x;
      assign_edges(0);
    }
  }

 private:
  const Finite2Category& c_;
};

}  // namespace

IndexedSimplicialSet duskin_nerve_indexed(const Finite2Category& c, int dim_cap) {
  if (dim_cap < 0 || dim_cap > kMaxDimCap) throw CapacityError("Duskin nerve dim_cap out of range");
  auto codec = std::make_shared<DuskinCodec>(c);
  auto levels = std::make_shared<std::vector<std::vector<Key>>>();
  LevelModel model;
  model.level = [codec, levels, &c](int n) {
    if (static_cast<int>(levels->size()) <= n) {
      levels->resize(n + 1);
      const int top = n;
      for (int m = 0; m <= top; ++m) {
        auto& lv = (*levels)[m];
        if (!lv.empty()) continue;
        if (m == 0) {
          for (int x = 0; x < c.base().object_count(); ++x) lv.push_back({x});
        } else {
          for (const auto& k : (*levels)[m - 1]) codec->extend(codec->decode(m - 1, k), lv);
        }
        std::sort(lv.begin(), lv.end());
      }
    }
    return (*levels)[n];
  };
  model.face = [codec](int n, int i, const Key& k) { return codec->pullback(n, k, coface_map(n, i)); };
  model.degeneracy = [codec](int n, int j, const Key& k) { return codec->pullback(n, k, codegeneracy_map(n, j)); };
  model.name = [codec](int n, const Key& k) { return codec->name(n, k); };
  return build_simplicial_set(dim_cap, model);
}

SimplicialSet duskin_nerve(const Finite2Category& c, int dim_cap) { return duskin_nerve_indexed(c, dim_cap).set; }

// ---------------------------------------------------------------------------
// tau(X)

FiniteCategory fundamental_category(const SimplicialSet& x, std::size_t budget) {
  const int nv = static_cast<int>(x.generator_count(0));
  const int ne = static_cast<int>(x.generator_count(1));
  if (nv == 0) return FiniteCategory({}, {}, {}, {});
  std::vector<int> esrc(ne), etgt(ne);
  for (int e = 0; e < ne; ++e) {
    esrc[e] = x.generator(1, e).faces[1].gen;
    etgt[e] = x.generator(1, e).faces[0].gen;
  }
  auto word = [](const SimplexRef& edge) {
    return edge.degenerate() ? std::vector<int>{} : std::vector<int>{edge.gen};
  };
  struct Relation {
    int source;
    std::vector<int> lhs, rhs;
  };
  std::vector<Relation> relations;
  for (std::size_t t = 0; t < x.generator_count(2); ++t) {
    const auto& faces = x.generator(2, static_cast<int>(t)).faces;
    Relation r;
    r.source = x.face(faces[2], 1).gen;
    r.lhs = word(faces[2]);
    auto tail = word(faces[0]);
    r.lhs.insert(r.lhs.end(), tail.begin(), tail.end());
    r.rhs = word(faces[1]);
    relations.push_back(std::move(r));
  }

  struct Node {
    int source, target;
    std::vector<int> word;
  };
  std::vector<Node> nodes;
  std::vector<int> next;   // next[u * ne + e] = node reached by post-composing e
  std::vector<int> parent;
  auto find = [&](int u) {
    while (parent[u] != u) {
      parent[u] = parent[parent[u]];
      u = parent[u];
    }
    return u;
  };
  auto define = [&](int source, int target, std::vector<int> w) {
    if (nodes.size() >= budget) {
      throw CapacityError("fundamental category exceeded " + std::to_string(budget) +
                          " path classes; the path category is probably infinite");
    }
    nodes.push_back({source, target, std::move(w)});
    next.resize(next.size() + ne, -1);
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(nodes.size()) - 1;
  };
  auto step = [&](int u, int e) {
    u = find(u);
    int& slot = next[u * ne + e];
    if (slot < 0) {
      std::vector<int> w = nodes[u].word;
      w.push_back(e);
      int v = define(nodes[u].source, etgt[e], std::move(w));
      next[u * ne + e] = v;
      return v;
    }
    return find(slot);
  };
  auto trace = [&](int u, const std::vector<int>& w) {
    for (int e : w) u = step(u, e);
    return find(u);
  };
  std::vector<std::pair<int, int>> pending;
  auto merge = [&](int a, int b) {
    pending.emplace_back(a, b);
    while (!pending.empty()) {
      auto [p, q] = pending.back();
      pending.pop_back();
      p = find(p);
      q = find(q);
      if (p == q) continue;
      if (p > q) std::swap(p, q);
      if (nodes[p].source != nodes[q].source || nodes[p].target != nodes[q].target) {
        throw ConsistencyError("path classes with different endpoints were identified");
      }
      parent[q] = p;
      for (int e = 0; e < ne; ++e) {
        int t = next[q * ne + e];
        if (t < 0) continue;
        int& s = next[p * ne + e];
        if (s < 0) s = t;
        else pending.emplace_back(s, t);
      }
    }
  };

  for (int v = 0; v < nv; ++v) define(v, v, {});
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    const int iu = static_cast<int>(u);
    if (find(iu) != iu) continue;
    for (const auto& r : relations) {
      if (r.source != nodes[u].target) continue;
      int a = trace(iu, r.lhs);
      int b = trace(iu, r.rhs);
      merge(a, b);
      if (find(iu) != iu) break;
    }
    if (find(iu) != iu) continue;
    for (int e = 0; e < ne; ++e) {
      if (esrc[e] == nodes[u].target) step(iu, e);
    }
  }

  std::vector<int> live;
  std::vector<int> index(nodes.size(), -1);
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    if (find(static_cast<int>(u)) == static_cast<int>(u)) {
      index[u] = static_cast<int>(live.size());
      live.push_back(static_cast<int>(u));
    }
  }
  std::vector<std::string> objects;
  for (int v = 0; v < nv; ++v) objects.push_back(x.generator(0, v).name);
  std::vector<FiniteCategory::Morphism> ms;
  for (int u : live) {
    const auto& w = nodes[u].word;
    std::string name;
    if (w.empty()) {
      name = "id_" + objects[nodes[u].source];
    } else {
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        name += (it == w.rbegin() ? "" : ".") + x.generator(1, *it).name;
      }
    }
    ms.push_back({name, nodes[u].source, nodes[u].target});
  }
  std::vector<int> identities(nv);
  for (int v = 0; v < nv; ++v) identities[v] = index[find(v)];
  const int m = static_cast<int>(live.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m, -1);
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (ms[f].target != ms[g].source) continue;
      table[g * m + f] = index[trace(live[f], nodes[live[g]].word)];
    }
  }
  return FiniteCategory(std::move(objects), std::move(ms), std::move(identities), std::move(table));
}

// ---------------------------------------------------------------------------
// h(X)

namespace {

struct EdgeClasses {
  std::vector<SimplexRef> edges;
  std::map<SimplexRef, int> edge_index;
  std::vector<int> cls;
  int count = 0;
  std::size_t pairs = 0;
};

EdgeClasses edge_classes(const SimplicialSet& x) {
  EdgeClasses out;
  out.edges = x.simplices(1);
  const int ne = static_cast<int>(out.edges.size());
  for (int i = 0; i < ne; ++i) out.edge_index[out.edges[i]] = i;
  std::set<std::pair<int, int>> rel;
  for (const auto& s : x.simplices(2)) {
    SimplexRef d0 = x.face(s, 0);
    if (d0.degenerate()) {
      SimplexRef d2 = x.face(s, 2);
      if (d0 == degenerate(x.face(d2, 0), 0)) rel.emplace(out.edge_index.at(d2), out.edge_index.at(x.face(s, 1)));
    }
  }
  for (int i = 0; i < ne; ++i) {
    if (!rel.count({i, i})) throw ConsistencyError("homotopy relation is not reflexive at " + x.describe(out.edges[i]));
  }
  for (auto [a, b] : rel) {
    if (!rel.count({b, a})) {
      throw ConsistencyError("homotopy relation is not symmetric at " + x.describe(out.edges[a]) + " ~ " +
                             x.describe(out.edges[b]));
    }
    for (auto it = rel.lower_bound({b, -1}); it != rel.end() && it->first == b; ++it) {
      if (!rel.count({a, it->second})) {
        throw ConsistencyError("homotopy relation is not transitive at " + x.describe(out.edges[a]));
      }
    }
  }
  out.pairs = rel.size();
  out.cls.assign(ne, -1);
  for (int i = 0; i < ne; ++i) {
    if (out.cls[i] >= 0) continue;
    for (auto it = rel.lower_bound({i, -1}); it != rel.end() && it->first == i; ++it) out.cls[it->second] = out.count;
    ++out.count;
  }
  return out;
}

}  // namespace

std::vector<int> homotopy_classes(const SimplicialSet& x) { return edge_classes(x).cls; }

FiniteCategory homotopy_category(const SimplicialSet& x, HomotopyCategoryReport* report) {
  ClassifyOptions co;
  co.dim_cap = 3;
  co.inner_only = true;
  if (!classify(x, co).weak_kan) {
    throw PreconditionError("homotopy category needs a weak Kan complex (inner horns up to dimension 3)");
  }
  EdgeClasses ec = edge_classes(x);
  const int nc = ec.count;
  std::vector<std::vector<int>> members(nc);
  for (std::size_t i = 0; i < ec.edges.size(); ++i) members[ec.cls[i]].push_back(static_cast<int>(i));

  // 2-simplices indexed by (d2, d0); the first entry is the lexicographically first filler.
  std::map<std::pair<int, int>, std::vector<int>> fillers;
  for (const auto& s : x.simplices(2)) {
    fillers[{ec.edge_index.at(x.face(s, 2)), ec.edge_index.at(x.face(s, 0))}].push_back(
        ec.edge_index.at(x.face(s, 1)));
  }
  std::vector<int> csrc(nc), ctgt(nc);
  for (int c = 0; c < nc; ++c) {
    const auto& e = ec.edges[members[c][0]];
    csrc[c] = x.face(e, 1).gen;
    ctgt[c] = x.face(e, 0).gen;
  }
  std::size_t checked = 0;
  std::vector<std::tuple<int, int, int>> triples;
  for (int a = 0; a < nc; ++a) {
    for (int b = 0; b < nc; ++b) {
      if (ctgt[a] != csrc[b]) continue;
      auto first = fillers.find({members[a][0], members[b][0]});
      if (first == fillers.end()) throw ConsistencyError("inner horn without a filler in dimension 2");
      const int composite = ec.cls[first->second.front()];
      for (int f : members[a]) {
        for (int g : members[b]) {
          auto it = fillers.find({f, g});
          if (it == fillers.end()) throw ConsistencyError("inner horn without a filler in dimension 2");
          for (int h : it->second) {
            ++checked;
            if (ec.cls[h] != composite) {
              throw ConsistencyError("composition in h(X) depends on the chosen filler at " +
                                     x.describe(ec.edges[f]) + ", " + x.describe(ec.edges[g]));
            }
          }
        }
      }
      triples.emplace_back(b, a, composite);
    }
  }
  std::vector<std::string> objects;
  for (std::size_t v = 0; v < x.generator_count(0); ++v) objects.push_back(x.generator(0, static_cast<int>(v)).name);
  std::vector<FiniteCategory::Morphism> ms;
  for (int c = 0; c < nc; ++c) ms.push_back({x.describe(ec.edges[members[c][0]]), csrc[c], ctgt[c]});
  std::vector<int> identities;
  for (std::size_t v = 0; v < objects.size(); ++v) {
    identities.push_back(ec.cls[ec.edge_index.at(degenerate(SimplexRef{0, static_cast<int>(v), {}}, 0))]);
  }
  const int m = nc;
  std::vector<int> table(static_cast<std::size_t>(m) * m, -1);
  for (auto [g, f, gf] : triples) table[g * m + f] = gf;
  if (report) {
    report->edges = ec.edges.size();
    report->homotopy_pairs = ec.pairs;
    report->composites_checked = checked;
  }
  return FiniteCategory(std::move(objects), std::move(ms), std::move(identities), std::move(table));
}

// ---------------------------------------------------------------------------
// Map_X(x, y)

namespace {

struct Prism {
  IndexedSimplicialSet simplex;   // Delta^n
  IndexedSimplicialSet prism;     // Delta^n x Delta^1
  MapSearchOptions options;
};

Key encode_map(const SimplicialMap& f) {
  Key k;
  for (const auto& dim : f.images) {
    for (const auto& r : dim) {
      Key e = encode(r);
      k.insert(k.end(), e.begin(), e.end());
    }
  }
  return k;
}

SimplicialMap decode_map(const SimplicialSet& source, const Key& k) {
  SimplicialMap f;
  std::size_t pos = 0;
  f.images.resize(source.top_dim() + 1);
  for (int m = 0; m <= source.top_dim(); ++m) {
    for (std::size_t g = 0; g < source.generator_count(m); ++g) f.images[m].push_back(decode(k, pos));
  }
  return f;
}

}  // namespace

SimplicialSet mapping_space(const SimplicialSet& x, const SimplexRef& from, const SimplexRef& to, int dim_cap,
                            std::uint64_t node_budget) {
  if (from.dim() != 0 || to.dim() != 0) throw ArgumentError("mapping space endpoints must be vertices");
  if (static_cast<std::size_t>(from.gen) >= x.generator_count(0) ||
      static_cast<std::size_t>(to.gen) >= x.generator_count(0)) {
    throw ArgumentError("mapping space endpoint is not a vertex of X");
  }
  const int cap = std::min(dim_cap, x.dim_cap() - 1);
  if (cap < 0) throw ArgumentError("mapping space needs X represented in dimension >= 1");
  auto prisms = std::make_shared<std::vector<Prism>>();
  const SimplicialSet interval = standard_simplex(1, cap + 1);
  for (int n = 0; n <= cap; ++n) {
    Prism p;
    // Degeneracies out of level n look up simplices of dimension n + 2.
    const int pcap = std::min(n + 2, kMaxDimCap);
    p.simplex = standard_simplex_indexed(n, pcap);
    p.prism = product_indexed(p.simplex.set, interval, pcap);
    p.options.dim_cap = n + 1;
    p.options.node_budget = node_budget;
    for (int m = 0; m <= p.prism.set.top_dim(); ++m) {
      for (std::size_t g = 0; g < p.prism.set.generator_count(m); ++g) {
        const Key& key = p.prism.generator_keys[m][g];
        std::size_t pos = 0;
        decode(key, pos);
        SimplexRef b = decode(key, pos);
        if (b.gen_dim == 0) p.options.fixed[{m, static_cast<int>(g)}] = degenerate_to(b.gen == 0 ? from : to, m);
      }
    }
    prisms->push_back(std::move(p));
  }

  // phi . (theta x id) for theta : [m] -> [n].
  auto precompose = [prisms, &x](int n, const Key& k, int m, std::span<const int> theta) {
    const Prism& src = (*prisms)[n];
    const Prism& dst = (*prisms)[m];
    SimplicialMap phi = decode_map(src.prism.set, k);
    SimplicialMap out;
    out.images.resize(dst.prism.set.top_dim() + 1);
    for (int d = 0; d <= dst.prism.set.top_dim(); ++d) {
      for (std::size_t g = 0; g < dst.prism.set.generator_count(d); ++g) {
        const Key& key = dst.prism.generator_keys[d][g];
        std::size_t pos = 0;
        SimplexRef a = decode(key, pos);
        SimplexRef b = decode(key, pos);
        Key seq;
        for (const auto& v : dst.simplex.set.vertices(a)) seq.push_back(theta[v.gen]);
        SimplexRef a2 = src.simplex.ref(d, seq);
        out.images[d].push_back(map_simplex(x, phi, src.prism.ref(d, product_key(a2, b))));
      }
    }
    return encode_map(out);
  };

  LevelModel model;
  model.level = [prisms, &x](int n) {
    const Prism& p = (*prisms)[n];
    std::vector<Key> out;
    for (const auto& f : enumerate_maps(p.prism.set, x, p.options)) out.push_back(encode_map(f));
    return out;
  };
  model.face = [precompose](int n, int i, const Key& k) { return precompose(n, k, n - 1, coface_map(n, i)); };
  model.degeneracy = [precompose](int n, int j, const Key& k) {
    return precompose(n, k, n + 1, codegeneracy_map(n, j));
  };
  model.name = [prisms, &x](int n, const Key& k) {
    const Prism& p = (*prisms)[n];
    SimplicialMap f = decode_map(p.prism.set, k);
    std::vector<std::string> parts;
    for (const auto& r : f.images.back()) parts.push_back(x.describe(r));
    return n == 0 ? parts[0] : "[" + join(parts, ",") + "]";
  };
  return build_simplicial_set(cap, model).set;
}

}  // namespace hcat
