#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace oracle {

std::vector<int> apply_word(std::vector<int> vertices, const std::vector<hcat::Symbol>& word) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    std::vector<int> next;
    const int n = static_cast<int>(vertices.size()) - 1;
    if (it->kind == hcat::Symbol::Kind::Face) {
      // x . delta^i skips vertex i.
      for (int p = 0; p <= n; ++p) {
        if (p != it->index) next.push_back(vertices[p]);
      }
    } else {
      // x . sigma^j repeats vertex j.
      for (int p = 0; p <= n; ++p) {
        next.push_back(vertices[p]);
        if (p == it->index) next.push_back(vertices[p]);
      }
    }
    vertices = std::move(next);
  }
  return vertices;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t count_monotone(int m, int n) {
  std::vector<int> seq(m + 1, 0);
  std::uint64_t count = 0;
  while (true) {
    ++count;
    int p = m;
    while (p >= 0 && seq[p] == n) --p;
    if (p < 0) break;
    ++seq[p];
    for (int q = p + 1; q <= m; ++q) seq[q] = seq[p];
  }
  return count;
}

std::vector<std::vector<int>> orbits(const hcat::GroupAction& a) {
  std::vector<int> seen(a.size(), 0);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < a.size(); ++x) {
    if (seen[x]) continue;
    std::vector<int> orbit;
    std::deque<int> queue{x};
    seen[x] = 1;
    while (!queue.empty()) {
      int y = queue.front();
      queue.pop_front();
      orbit.push_back(y);
      for (int g = 0; g < a.group.order(); ++g) {
        int z = a.table[g * a.size() + y];
        if (!seen[z]) {
          seen[z] = 1;
          queue.push_back(z);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(orbit);
  }
  return out;
}

int stabilizer_order(const hcat::GroupAction& a, int x) {
  int count = 0;
  for (int g = 0; g < a.group.order(); ++g) count += a.table[g * a.size() + x] == x;
  return count;
}

bool torsor_by_fibres(const hcat::GroupAction& a) {
  const auto& base = *a.base;
  const int nb = static_cast<int>(base.set.size());
  std::vector<std::vector<int>> fibres(nb);
  for (int x = 0; x < a.size(); ++x) fibres[base.pi[x]].push_back(x);
  for (const auto& f : fibres) {
    if (f.empty()) return false;
    if (static_cast<int>(f.size()) != a.group.order()) return false;
    for (int x : f) {
      std::set<int> image;
      for (int g = 0; g < a.group.order(); ++g) {
        int y = a.table[g * a.size() + x];
        if (base.pi[y] != base.pi[x]) return false;
        image.insert(y);
      }
      if (image.size() != f.size()) return false;
    }
  }
  return true;
}

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

std::vector<Perm> all_perms(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// A generating set found by closing under multiplication, independent of the
// group's own generator choice.
std::vector<int> generating_set(const hcat::FiniteGroup& g) {
  std::vector<int> gens;
  std::set<int> span{g.identity()};
  for (int a = 0; a < g.order(); ++a) {
    if (span.count(a)) continue;
    gens.push_back(a);
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x : std::vector<int>(span.begin(), span.end())) {
        for (int s : gens) {
          if (span.insert(g.mul(s, x)).second) grew = true;
        }
      }
    }
  }
  return gens;
}

}  // namespace

std::size_t count_homomorphisms_to_symmetric(const hcat::FiniteGroup& g, int n) {
  const auto perms = all_perms(n);
  const auto gens = generating_set(g);
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  std::size_t count = 0;
  std::vector<std::size_t> choice(gens.size(), 0);
  while (true) {
    std::vector<std::optional<Perm>> rho(g.order());
    rho[g.identity()] = id;
    std::deque<int> queue{g.identity()};
    bool ok = true;
    while (!queue.empty() && ok) {
      int x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        int y = g.mul(gens[i], x);
        Perm p = compose(perms[choice[i]], *rho[x]);
        if (!rho[y]) {
          rho[y] = p;
          queue.push_back(y);
        } else if (*rho[y] != p) {
          ok = false;
        }
      }
    }
    count += ok;
    std::size_t p = 0;
    while (p < choice.size() && ++choice[p] == perms.size()) choice[p++] = 0;
    if (p == choice.size()) break;
  }
  return count;
}

std::optional<std::size_t> count_cocycles(const hcat::Cover& c, const hcat::FiniteGroup& g, std::uint64_t limit) {
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> where;
  const int ne = static_cast<int>(c.e.size());
  for (int x = 0; x < ne; ++x) {
    for (int y = 0; y < ne; ++y) {
      if (c.pi[x] == c.pi[y]) {
        where[{x, y}] = static_cast<int>(pairs.size());
        pairs.emplace_back(x, y);
      }
    }
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    total *= g.order();
    if (total > limit) return std::nullopt;
  }
  std::vector<int> v(pairs.size(), 0);
  std::size_t count = 0;
  while (true) {
    bool ok = true;
    for (int x = 0; x < ne && ok; ++x) {
      if (v[where[{x, x}]] != g.identity()) ok = false;
    }
    for (auto [x, y] : pairs) {
      if (!ok) break;
      for (int z = 0; z < ne && ok; ++z) {
        if (c.pi[z] != c.pi[x]) continue;
        // g(x, z) = g(y, z) g(x, y)
        if (v[where[{x, z}]] != g.mul(v[where[{y, z}]], v[where[{x, y}]])) ok = false;
      }
    }
    count += ok;
    std::size_t p = 0;
    while (p < v.size() && ++v[p] == g.order()) v[p++] = 0;
    if (p == v.size()) break;
  }
  return count;
}

std::uint64_t cocycle_formula(const hcat::Cover& c, const hcat::FiniteGroup& g) {
  std::vector<int> fibre(c.b.size(), 0);
  for (int b : c.pi) ++fibre[b];
  std::uint64_t r = 1;
  for (int f : fibre) {
    for (int i = 1; i < f; ++i) r *= g.order();
  }
  return r;
}

NerveHornCounts nerve_horns_dim2(const hcat::FiniteCategory& c) {
  NerveHornCounts r;
  r.inner_min = r.outer_min = static_cast<std::size_t>(-1);
  const int m = c.morphism_count();
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (c.target(f) == c.source(g)) {
        r.inner_min = std::min<std::size_t>(r.inner_min, 1);
        r.inner_max = std::max<std::size_t>(r.inner_max, 1);
      }
    }
    for (int h = 0; h < m; ++h) {
      if (c.source(h) != c.source(f)) continue;
      std::size_t fillers = 0;
      for (int g = 0; g < m; ++g) {
        if (c.source(g) == c.target(f) && c.target(g) == c.target(h) && c.compose(g, f) == h) ++fillers;
      }
      r.outer_min = std::min(r.outer_min, fillers);
      r.outer_max = std::max(r.outer_max, fillers);
    }
  }
  return r;
}

}  // namespace oracle
