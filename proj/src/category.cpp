#include "hcat/category.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "hcat/error.hpp"

namespace hcat {

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                               std::vector<int> identities, std::vector<int> compose)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      compose_(std::move(compose)) {
  const int n = object_count();
  const int m = morphism_count();
  if (static_cast<int>(identities_.size()) != n) throw ValidationError("one identity per object is required");
  if (static_cast<std::size_t>(m) * m != compose_.size()) throw ValidationError("composition table has the wrong size");
  {
    std::set<std::string> names(objects_.begin(), objects_.end());
    if (static_cast<int>(names.size()) != n) throw ValidationError("duplicate object name");
    std::set<std::string> mnames;
    for (const auto& f : morphisms_) mnames.insert(f.name);
    if (static_cast<int>(mnames.size()) != m) throw ValidationError("duplicate morphism name");
  }
  for (const auto& f : morphisms_) {
    if (f.source < 0 || f.source >= n || f.target < 0 || f.target >= n) {
      throw ValidationError("morphism '" + f.name + "' has an unknown endpoint");
    }
  }
  for (int x = 0; x < n; ++x) {
    int i = identities_[x];
    if (i < 0 || i >= m || source(i) != x || target(i) != x) {
      throw ValidationError("identity of '" + objects_[x] + "' is not an endomorphism of it");
    }
  }
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      int c = compose_[g * m + f];
      if (target(f) != source(g)) {
        if (c != -1) throw ValidationError("composite of non-composable pair");
        continue;
      }
      if (c < 0 || c >= m || source(c) != source(f) || target(c) != target(g)) {
        throw ValidationError("composite " + morphisms_[g].name + " o " + morphisms_[f].name +
                              " is missing or has the wrong endpoints");
      }
    }
  }
  for (int f = 0; f < m; ++f) {
    if (compose_[identities_[target(f)] * m + f] != f || compose_[f * m + identities_[source(f)]] != f) {
      throw ValidationError("unit law fails at '" + morphisms_[f].name + "'");
    }
  }
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (target(f) != source(g)) continue;
      int gf = compose_[g * m + f];
      for (int h = 0; h < m; ++h) {
        if (target(g) != source(h)) continue;
        if (compose_[h * m + gf] != compose_[compose_[h * m + g] * m + f]) {
          throw ValidationError("associativity fails at (" + morphisms_[h].name + "," + morphisms_[g].name + "," +
                                morphisms_[f].name + ")");
        }
      }
    }
  }
}

FiniteCategory FiniteCategory::from_triples(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                            std::vector<int> identities,
                                            const std::vector<std::tuple<int, int, int>>& triples) {
  const int m = static_cast<int>(morphisms.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m, -1);
  auto set = [&](int g, int f, int gf) {
    if (g < 0 || g >= m || f < 0 || f >= m || gf < 0 || gf >= m) throw ValidationError("composition names an unknown morphism");
    int& slot = table[g * m + f];
    if (slot >= 0 && slot != gf) {
      throw ValidationError("conflicting composites for " + morphisms[g].name + " o " + morphisms[f].name);
    }
    slot = gf;
  };
  for (int x = 0; x < static_cast<int>(identities.size()); ++x) {
    int i = identities[x];
    if (i < 0 || i >= m) throw ValidationError("identity names an unknown morphism");
    for (int f = 0; f < m; ++f) {
      if (morphisms[f].target == x) set(i, f, f);
      if (morphisms[f].source == x) set(f, i, f);
    }
  }
  for (auto [g, f, gf] : triples) set(g, f, gf);
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      if (morphisms[f].target == morphisms[g].source && table[g * m + f] < 0) {
        throw ValidationError("no composite given for " + morphisms[g].name + " o " + morphisms[f].name);
      }
    }
  }
  return FiniteCategory(std::move(objects), std::move(morphisms), std::move(identities), std::move(table));
}

FiniteCategory FiniteCategory::from_group(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<Morphism> ms;
  for (int a = 0; a < n; ++a) ms.push_back({g.name(a), 0, 0});
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[a * n + b] = g.mul(a, b);
  }
  return FiniteCategory({"*"}, std::move(ms), {g.identity()}, std::move(table));
}

FiniteCategory FiniteCategory::from_monoid(const std::vector<std::string>& elements, const std::vector<int>& mul,
                                           int unit) {
  const int n = static_cast<int>(elements.size());
  if (static_cast<int>(mul.size()) != n * n) throw ValidationError("monoid table has the wrong size");
  std::vector<Morphism> ms;
  for (const auto& e : elements) ms.push_back({e, 0, 0});
  return FiniteCategory({"*"}, std::move(ms), {unit}, mul);
}

FiniteCategory FiniteCategory::from_poset(int n, const std::vector<std::pair<int, int>>& relations) {
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) le[a][a] = true;
  for (auto [a, b] : relations) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw ArgumentError("poset relation out of range");
    le[a][b] = true;
  }
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (le[a][k] && le[k][b]) le[a][b] = true;
      }
    }
  }
  std::vector<std::string> objects;
  for (int a = 0; a < n; ++a) objects.push_back(std::to_string(a));
  std::vector<Morphism> ms;
  std::vector<std::vector<int>> id_of(n, std::vector<int>(n, -1));
  std::vector<int> identities(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!le[a][b]) continue;
      if (a != b && le[b][a]) throw ArgumentError("poset relations contain a cycle");
      id_of[a][b] = static_cast<int>(ms.size());
      if (a == b) identities[a] = id_of[a][b];
      ms.push_back({a == b ? "id" + std::to_string(a) : std::to_string(a) + "<" + std::to_string(b), a, b});
    }
  }
  const int m = static_cast<int>(ms.size());
  std::vector<int> table(m * m, -1);
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (ms[f].target == ms[g].source) table[g * m + f] = id_of[ms[f].source][ms[g].target];
    }
  }
  return FiniteCategory(std::move(objects), std::move(ms), std::move(identities), std::move(table));
}

FiniteCategory FiniteCategory::codiscrete(int n) {
  std::vector<std::string> objects;
  for (int a = 0; a < n; ++a) objects.push_back(std::to_string(a));
  std::vector<Morphism> ms;
  std::vector<int> identities(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) identities[a] = static_cast<int>(ms.size());
      ms.push_back({a == b ? "id" + std::to_string(a) : std::to_string(a) + "~" + std::to_string(b), a, b});
    }
  }
  const int m = n * n;
  std::vector<int> table(m * m, -1);
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (ms[f].target == ms[g].source) table[g * m + f] = ms[f].source * n + ms[g].target;
    }
  }
  return FiniteCategory(std::move(objects), std::move(ms), std::move(identities), std::move(table));
}

FiniteCategory FiniteCategory::disjoint_union(const FiniteCategory& a, const FiniteCategory& b) {
  auto fresh = [](std::set<std::string>& used, std::string name) {
    while (!used.insert(name).second) name += "'";
    return name;
  };
  std::set<std::string> onames(a.objects_.begin(), a.objects_.end());
  std::set<std::string> mnames;
  for (const auto& f : a.morphisms_) mnames.insert(f.name);
  std::vector<std::string> objects = a.objects_;
  for (const auto& o : b.objects_) objects.push_back(fresh(onames, o));
  std::vector<Morphism> ms = a.morphisms_;
  const int na = a.object_count();
  const int ma = a.morphism_count();
  for (const auto& f : b.morphisms_) ms.push_back({fresh(mnames, f.name), f.source + na, f.target + na});
  std::vector<int> identities = a.identities_;
  for (int i : b.identities_) identities.push_back(i + ma);
  const int m = static_cast<int>(ms.size());
  std::vector<int> table(m * m, -1);
  for (int g = 0; g < ma; ++g) {
    for (int f = 0; f < ma; ++f) table[g * m + f] = a.compose_[g * ma + f];
  }
  const int mb = b.morphism_count();
  for (int g = 0; g < mb; ++g) {
    for (int f = 0; f < mb; ++f) {
      int c = b.compose_[g * mb + f];
      table[(g + ma) * m + f + ma] = c < 0 ? -1 : c + ma;
    }
  }
  return FiniteCategory(std::move(objects), std::move(ms), std::move(identities), std::move(table));
}

int FiniteCategory::compose(int g, int f) const {
  if (target(f) != source(g)) {
    throw ArgumentError("cannot compose " + morphisms_[g].name + " after " + morphisms_[f].name);
  }
  return compose_[g * morphism_count() + f];
}

std::vector<int> FiniteCategory::hom(int x, int y) const {
  std::vector<int> out;
  for (int f = 0; f < morphism_count(); ++f) {
    if (source(f) == x && target(f) == y) out.push_back(f);
  }
  return out;
}

std::optional<int> FiniteCategory::inverse(int f) const {
  for (int g : hom(target(f), source(f))) {
    if (compose(g, f) == identity(source(f)) && compose(f, g) == identity(target(f))) return g;
  }
  return std::nullopt;
}

bool FiniteCategory::is_groupoid() const {
  for (int f = 0; f < morphism_count(); ++f) {
    if (!inverse(f)) return false;
  }
  return true;
}

std::optional<int> FiniteCategory::find_object(std::string_view name) const {
  for (int x = 0; x < object_count(); ++x) {
    if (objects_[x] == name) return x;
  }
  return std::nullopt;
}

std::optional<int> FiniteCategory::find_morphism(std::string_view name) const {
  for (int f = 0; f < morphism_count(); ++f) {
    if (morphisms_[f].name == name) return f;
  }
  return std::nullopt;
}

std::size_t FiniteCategory::composable_pairs() const {
  std::size_t n = 0;
  for (int f = 0; f < morphism_count(); ++f) {
    for (int g = 0; g < morphism_count(); ++g) n += target(f) == source(g);
  }
  return n;
}

// ---------------------------------------------------------------------------

bool is_functor(const FiniteCategory& c, const FiniteCategory& d, const Functor& f) {
  if (static_cast<int>(f.objects.size()) != c.object_count() ||
      static_cast<int>(f.morphisms.size()) != c.morphism_count()) {
    return false;
  }
  for (int x : f.objects) {
    if (x < 0 || x >= d.object_count()) return false;
  }
  for (int m = 0; m < c.morphism_count(); ++m) {
    int fm = f.morphisms[m];
    if (fm < 0 || fm >= d.morphism_count()) return false;
    if (d.source(fm) != f.objects[c.source(m)] || d.target(fm) != f.objects[c.target(m)]) return false;
  }
  for (int x = 0; x < c.object_count(); ++x) {
    if (f.morphisms[c.identity(x)] != d.identity(f.objects[x])) return false;
  }
  for (int a = 0; a < c.morphism_count(); ++a) {
    for (int b = 0; b < c.morphism_count(); ++b) {
      if (c.target(a) != c.source(b)) continue;
      if (f.morphisms[c.compose(b, a)] != d.compose(f.morphisms[b], f.morphisms[a])) return false;
    }
  }
  return true;
}

namespace {

std::vector<Functor> search_functors(const FiniteCategory& c, const FiniteCategory& d, bool iso, bool first) {
  std::vector<Functor> out;
  if (iso && (c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count())) return out;
  const int nc = c.object_count();
  const int mc = c.morphism_count();
  // Composition constraints, keyed by the largest morphism index involved.
  std::vector<std::vector<std::tuple<int, int, int>>> checks(mc);
  for (int a = 0; a < mc; ++a) {
    for (int b = 0; b < mc; ++b) {
      if (c.target(a) != c.source(b)) continue;
      int ba = c.compose(b, a);
      checks[std::max({a, b, ba})].emplace_back(b, a, ba);
    }
  }
  Functor cur;
  cur.objects.assign(nc, -1);
  cur.morphisms.assign(mc, -1);
  std::vector<bool> used_obj(d.object_count(), false);
  std::vector<bool> used_mor(d.morphism_count(), false);
  bool done = false;

  std::function<void(int)> assign_morphism = [&](int m) {
    if (done) return;
    if (m == mc) {
      out.push_back(cur);
      if (first) done = true;
      return;
    }
    const int x = cur.objects[c.source(m)];
    const int y = cur.objects[c.target(m)];
    std::vector<int> cands;
    if (c.is_identity(m)) cands.push_back(d.identity(x));
    else cands = d.hom(x, y);
    for (int t : cands) {
      if (iso && (used_mor[t] || d.is_identity(t) != c.is_identity(m))) continue;
      cur.morphisms[m] = t;
      bool ok = true;
      for (auto [b, a, ba] : checks[m]) {
        if (cur.morphisms[ba] != d.compose(cur.morphisms[b], cur.morphisms[a])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        if (iso) used_mor[t] = true;
        assign_morphism(m + 1);
        if (iso) used_mor[t] = false;
      }
      cur.morphisms[m] = -1;
      if (done) return;
    }
  };
  std::function<void(int)> assign_object = [&](int x) {
    if (done) return;
    if (x == nc) {
      assign_morphism(0);
      return;
    }
    for (int y = 0; y < d.object_count(); ++y) {
      if (iso && used_obj[y]) continue;
      cur.objects[x] = y;
      if (iso) used_obj[y] = true;
      assign_object(x + 1);
      if (iso) used_obj[y] = false;
      if (done) return;
    }
  };
  assign_object(0);
  return out;
}

}  // namespace

std::vector<Functor> enumerate_functors(const FiniteCategory& c, const FiniteCategory& d) {
  return search_functors(c, d, false, false);
}

std::optional<Functor> find_category_isomorphism(const FiniteCategory& c, const FiniteCategory& d) {
  auto found = search_functors(c, d, true, true);
  if (found.empty()) return std::nullopt;
  return found.front();
}

// ---------------------------------------------------------------------------

Finite2Category::Finite2Category(FiniteCategory base, std::vector<TwoCell> cells, std::vector<int> identity_cells,
                                 std::vector<int> vertical, std::vector<int> horizontal)
    : base_(std::move(base)),
      cells_(std::move(cells)),
      identity_cells_(std::move(identity_cells)),
      vertical_(std::move(vertical)),
      horizontal_(std::move(horizontal)) {
  const int k = cell_count();
  const int m = base_.morphism_count();
  const std::size_t kk = static_cast<std::size_t>(k) * k;
  if (static_cast<int>(identity_cells_.size()) != m) throw ValidationError("one identity 2-cell per 1-morphism");
  if (vertical_.size() != kk || horizontal_.size() != kk) throw ValidationError("2-cell tables have the wrong size");
  for (const auto& a : cells_) {
    if (a.source < 0 || a.source >= m || a.target < 0 || a.target >= m) {
      throw ValidationError("2-cell '" + a.name + "' has an unknown boundary");
    }
    if (base_.source(a.source) != base_.source(a.target) || base_.target(a.source) != base_.target(a.target)) {
      throw ValidationError("2-cell '" + a.name + "' joins non-parallel 1-morphisms");
    }
  }
  for (int f = 0; f < m; ++f) {
    int i = identity_cells_[f];
    if (i < 0 || i >= k || cells_[i].source != f || cells_[i].target != f) {
      throw ValidationError("identity 2-cell of '" + base_.morphism(f).name + "' is malformed");
    }
  }
  auto vcomposable = [&](int b, int a) { return cells_[a].target == cells_[b].source; };
  auto hcomposable = [&](int b, int a) { return base_.target(cells_[a].source) == base_.source(cells_[b].source); };
  for (int b = 0; b < k; ++b) {
    for (int a = 0; a < k; ++a) {
      int v = vertical_[b * k + a];
      if (!vcomposable(b, a)) {
        if (v != -1) throw ValidationError("vertical composite of non-composable 2-cells");
      } else if (v < 0 || v >= k || cells_[v].source != cells_[a].source || cells_[v].target != cells_[b].target) {
        throw ValidationError("vertical composite " + cells_[b].name + " . " + cells_[a].name + " is malformed");
      }
      int h = horizontal_[b * k + a];
      if (!hcomposable(b, a)) {
        if (h != -1) throw ValidationError("horizontal composite of non-composable 2-cells");
      } else if (h < 0 || h >= k || cells_[h].source != base_.compose(cells_[b].source, cells_[a].source) ||
                 cells_[h].target != base_.compose(cells_[b].target, cells_[a].target)) {
        throw ValidationError("horizontal composite " + cells_[b].name + " * " + cells_[a].name + " is malformed");
      }
    }
  }
  for (int a = 0; a < k; ++a) {
    if (this->vertical(identity_cells_[cells_[a].target], a) != a || this->vertical(a, identity_cells_[cells_[a].source]) != a) {
      throw ValidationError("vertical unit law fails at '" + cells_[a].name + "'");
    }
    int x = base_.source(cells_[a].source);
    int y = base_.target(cells_[a].source);
    if (this->horizontal(a, identity_cells_[base_.identity(x)]) != a ||
        this->horizontal(identity_cells_[base_.identity(y)], a) != a) {
      throw ValidationError("horizontal unit law fails at '" + cells_[a].name + "'");
    }
    bool invertible = false;
    for (int b = 0; b < k && !invertible; ++b) {
      invertible = vcomposable(b, a) && vcomposable(a, b) && this->vertical(b, a) == identity_cells_[cells_[a].source] &&
                   this->vertical(a, b) == identity_cells_[cells_[a].target];
    }
    if (!invertible) throw ValidationError("2-cell '" + cells_[a].name + "' is not invertible");
  }
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (base_.target(f) != base_.source(g)) continue;
      if (this->horizontal(identity_cells_[g], identity_cells_[f]) != identity_cells_[base_.compose(g, f)]) {
        throw ValidationError("horizontal composite of identities is not an identity");
      }
    }
  }
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (vcomposable(b, a)) {
        int ba = this->vertical(b, a);
        for (int c = 0; c < k; ++c) {
          if (vcomposable(c, b) && this->vertical(c, ba) != this->vertical(this->vertical(c, b), a)) {
            throw ValidationError("vertical composition is not associative");
          }
        }
      }
      if (hcomposable(b, a)) {
        int ba = this->horizontal(b, a);
        for (int c = 0; c < k; ++c) {
          if (hcomposable(c, b) && this->horizontal(c, ba) != this->horizontal(this->horizontal(c, b), a)) {
            throw ValidationError("horizontal composition is not associative");
          }
        }
      }
    }
  }
  // Interchange: (b' . b) * (a' . a) = (b' * a') . (b * a).
  for (int a = 0; a < k; ++a) {
    for (int a2 = 0; a2 < k; ++a2) {
      if (!vcomposable(a2, a)) continue;
      for (int b = 0; b < k; ++b) {
        if (!hcomposable(b, a)) continue;
        for (int b2 = 0; b2 < k; ++b2) {
          if (!vcomposable(b2, b)) continue;
          if (this->horizontal(this->vertical(b2, b), this->vertical(a2, a)) != this->vertical(this->horizontal(b2, a2), this->horizontal(b, a))) {
            throw ValidationError("interchange law fails at (" + cells_[b2].name + "," + cells_[b].name + "," +
                                  cells_[a2].name + "," + cells_[a].name + ")");
          }
        }
      }
    }
  }
}

int Finite2Category::vertical(int b, int a) const {
  int v = vertical_[b * cell_count() + a];
  if (v < 0) throw ArgumentError("2-cells " + cells_[b].name + " and " + cells_[a].name + " are not composable");
  return v;
}

int Finite2Category::horizontal(int b, int a) const {
  int h = horizontal_[b * cell_count() + a];
  if (h < 0) throw ArgumentError("2-cells " + cells_[b].name + " and " + cells_[a].name + " are not composable");
  return h;
}

int Finite2Category::inverse_cell(int a) const {
  for (int b : cells_between(cells_[a].target, cells_[a].source)) {
    if (vertical(b, a) == identity_cells_[cells_[a].source]) return b;
  }
  throw ConsistencyError("2-cell without inverse");
}

std::vector<int> Finite2Category::cells_between(int f, int g) const {
  std::vector<int> out;
  for (int a = 0; a < cell_count(); ++a) {
    if (cells_[a].source == f && cells_[a].target == g) out.push_back(a);
  }
  return out;
}

bool Finite2Category::has_nontrivial_two_cells() const {
  for (int a = 0; a < cell_count(); ++a) {
    if (identity_cells_[cells_[a].source] != a) return true;
  }
  return false;
}

Finite2Category Finite2Category::locally_discrete(const FiniteCategory& c) {
  const int m = c.morphism_count();
  std::vector<TwoCell> cells;
  std::vector<int> ids(m);
  for (int f = 0; f < m; ++f) {
    ids[f] = f;
    cells.push_back({"1_" + c.morphism(f).name, f, f});
  }
  std::vector<int> v(m * m, -1), h(m * m, -1);
  for (int f = 0; f < m; ++f) {
    v[f * m + f] = f;
    for (int g = 0; g < m; ++g) {
      if (c.target(f) == c.source(g)) h[g * m + f] = c.compose(g, f);
    }
  }
  return Finite2Category(c, std::move(cells), std::move(ids), std::move(v), std::move(h));
}

Finite2Category Finite2Category::with_abelian_two_cells(const FiniteCategory& c, int n) {
  if (n < 1) throw ArgumentError("2-cell group order must be positive");
  const int m = c.morphism_count();
  const int k = m * n;
  std::vector<TwoCell> cells;
  std::vector<int> ids(m);
  for (int f = 0; f < m; ++f) {
    ids[f] = f * n;
    for (int a = 0; a < n; ++a) cells.push_back({c.morphism(f).name + ":" + std::to_string(a), f, f});
  }
  std::vector<int> v(k * k, -1), h(k * k, -1);
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      int f = p / n, a = p % n, g = q / n, b = q % n;
      if (f == g) v[q * k + p] = f * n + (a + b) % n;
      if (c.target(f) == c.source(g)) h[q * k + p] = c.compose(g, f) * n + (a + b) % n;
    }
  }
  return Finite2Category(c, std::move(cells), std::move(ids), std::move(v), std::move(h));
}

Finite2Category Finite2Category::with_codiscrete_two_cells(const FiniteCategory& c) {
  const int m = c.morphism_count();
  std::vector<TwoCell> cells;
  std::vector<std::vector<int>> id_of(m, std::vector<int>(m, -1));
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (c.source(f) != c.source(g) || c.target(f) != c.target(g)) continue;
      id_of[f][g] = static_cast<int>(cells.size());
      cells.push_back({c.morphism(f).name + "=>" + c.morphism(g).name, f, g});
    }
  }
  std::vector<int> ids(m);
  for (int f = 0; f < m; ++f) ids[f] = id_of[f][f];
  const int k = static_cast<int>(cells.size());
  std::vector<int> v(k * k, -1), h(k * k, -1);
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      const auto& a = cells[p];
      const auto& b = cells[q];
      if (a.target == b.source) v[q * k + p] = id_of[a.source][b.target];
      if (c.target(a.source) == c.source(b.source)) {
        h[q * k + p] = id_of[c.compose(b.source, a.source)][c.compose(b.target, a.target)];
      }
    }
  }
  return Finite2Category(c, std::move(cells), std::move(ids), std::move(v), std::move(h));
}

}  // namespace hcat
