#include "hcat/sset.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hcat/error.hpp"

namespace hcat {

MonotoneMap surjection_of(std::span<const int> degeneracies, int dim) {
  MonotoneMap sigma(dim + 1, 0);
  for (int p = 0; p < dim; ++p) {
    bool collapsed = std::find(degeneracies.begin(), degeneracies.end(), p) != degeneracies.end();
    sigma[p + 1] = sigma[p] + (collapsed ? 0 : 1);
  }
  return sigma;
}

std::vector<int> degeneracies_of(std::span<const int> surjection) {
  std::vector<int> out;
  for (int p = static_cast<int>(surjection.size()) - 2; p >= 0; --p) {
    if (surjection[p] == surjection[p + 1]) out.push_back(p);
  }
  return out;
}

SimplexRef degenerate(const SimplexRef& ref, int j) {
  if (j < 0 || j > ref.dim()) {
    throw ArgumentError("degeneracy s_" + std::to_string(j) + " out of range in dimension " +
                        std::to_string(ref.dim()));
  }
  std::vector<int> next{j};
  for (int q : ref.degeneracies) next.push_back(q < j ? q : q + 1);
  std::sort(next.begin(), next.end(), std::greater<>());
  return SimplexRef{ref.gen_dim, ref.gen, std::move(next)};
}

SimplexRef degenerate_to(const SimplexRef& ref, int dim) {
  SimplexRef out = ref;
  while (out.dim() < dim) out = degenerate(out, 0);
  return out;
}

MonotoneMap coface_map(int n, int i) {
  MonotoneMap alpha;
  for (int p = 0; p <= n; ++p) {
    if (p != i) alpha.push_back(p);
  }
  return alpha;
}

MonotoneMap codegeneracy_map(int n, int j) {
  MonotoneMap alpha;
  for (int p = 0; p <= n + 1; ++p) alpha.push_back(p <= j ? p : p - 1);
  return alpha;
}

// ---------------------------------------------------------------------------

SimplicialSet::SimplicialSet(int dim_cap, std::vector<std::vector<Generator>> generators)
    : dim_cap_(dim_cap), generators_(std::move(generators)) {
  if (dim_cap_ < 0) throw ArgumentError("negative dim_cap");
  if (top_dim() > dim_cap_) throw ArgumentError("generators above dim_cap");
  for (int m = 0; m <= top_dim(); ++m) {
    for (std::size_t g = 0; g < generators_[m].size(); ++g) {
      const auto& gen = generators_[m][g];
      if (!by_name_.emplace(gen.name, std::pair{m, static_cast<int>(g)}).second) {
        throw ValidationError("duplicate generator name '" + gen.name + "'");
      }
      if (static_cast<int>(gen.faces.size()) != (m == 0 ? 0 : m + 1)) {
        throw ValidationError("generator '" + gen.name + "' has the wrong number of faces");
      }
      for (const auto& f : gen.faces) {
        if (f.dim() != m - 1 || f.gen_dim < 0 || f.gen_dim >= m ||
            f.gen < 0 || static_cast<std::size_t>(f.gen) >= generators_[f.gen_dim].size()) {
          throw ValidationError("generator '" + gen.name + "' has an invalid face reference");
        }
        for (std::size_t t = 0; t < f.degeneracies.size(); ++t) {
          int j = f.degeneracies[t];
          if (j < 0 || j >= f.dim() || (t > 0 && f.degeneracies[t - 1] <= j)) {
            throw ValidationError("face of '" + gen.name + "' is not in normal form");
          }
        }
      }
    }
  }
  // Trailing empty dimensions carry no information.
  while (!generators_.empty() && generators_.back().empty()) generators_.pop_back();
}

std::size_t SimplicialSet::generator_count(int dim) const {
  if (dim < 0 || dim > top_dim()) return 0;
  return generators_[dim].size();
}

std::optional<SimplexRef> SimplicialSet::find(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return SimplexRef{it->second.first, it->second.second, {}};
}

std::vector<std::size_t> SimplicialSet::census() const {
  std::vector<std::size_t> out(dim_cap_ + 1, 0);
  for (int m = 0; m <= top_dim(); ++m) out[m] = generators_[m].size();
  return out;
}

SimplexRef SimplicialSet::apply(const SimplexRef& x, std::span<const int> alpha) const {
  const int n = x.dim();
  for (std::size_t p = 0; p < alpha.size(); ++p) {
    if (alpha[p] < 0 || alpha[p] > n || (p > 0 && alpha[p - 1] > alpha[p])) {
      throw ArgumentError("apply: map is not monotone into [" + std::to_string(n) + "]");
    }
  }
  if (alpha.empty()) throw ArgumentError("apply: empty map");

  // beta : [k] -> [m] is the composite of alpha with the collapse onto the
  // current generator; peel off missing vertices one face at a time.
  MonotoneMap sigma = surjection_of(x.degeneracies, n);
  MonotoneMap beta(alpha.size());
  for (std::size_t p = 0; p < alpha.size(); ++p) beta[p] = sigma[alpha[p]];
  int gen_dim = x.gen_dim;
  int gen = x.gen;
  while (true) {
    std::vector<bool> hit(gen_dim + 1, false);
    for (int v : beta) hit[v] = true;
    auto missing = std::find(hit.begin(), hit.end(), false);
    if (missing == hit.end()) {
      return SimplexRef{gen_dim, gen, degeneracies_of(beta)};
    }
    const int i = static_cast<int>(missing - hit.begin());
    const SimplexRef& f = generators_[gen_dim][gen].faces[i];
    MonotoneMap tau = surjection_of(f.degeneracies, gen_dim - 1);
    for (int& v : beta) v = tau[v < i ? v : v - 1];
    gen_dim = f.gen_dim;
    gen = f.gen;
  }
}

SimplexRef SimplicialSet::face(const SimplexRef& x, int i) const {
  const int n = x.dim();
  if (n < 1 || i < 0 || i > n) {
    throw ArgumentError("face d_" + std::to_string(i) + " out of range in dimension " + std::to_string(n));
  }
  return apply(x, coface_map(n, i));
}

std::vector<SimplexRef> SimplicialSet::vertices(const SimplexRef& x) const {
  std::vector<SimplexRef> out;
  for (int p = 0; p <= x.dim(); ++p) {
    const int alpha[] = {p};
    out.push_back(apply(x, alpha));
  }
  return out;
}

namespace {

// Strictly decreasing subsets of {0..n-1} of size t, in lexicographic order.
void decreasing_subsets(int n, int t, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int upper) {
    if (static_cast<int>(cur.size()) == t) {
      out.push_back(cur);
      return;
    }
    for (int j = 0; j < upper; ++j) {
      cur.push_back(j);
      rec(j);
      cur.pop_back();
    }
  };
  rec(n);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<SimplexRef> SimplicialSet::simplices(int n) const {
  std::vector<SimplexRef> out;
  for (int m = 0; m <= std::min(n, top_dim()); ++m) {
    std::vector<std::vector<int>> subsets;
    decreasing_subsets(n, n - m, subsets);
    for (std::size_t g = 0; g < generators_[m].size(); ++g) {
      for (const auto& j : subsets) out.push_back(SimplexRef{m, static_cast<int>(g), j});
    }
  }
  return out;
}

std::uint64_t SimplicialSet::level_size(int n) const {
  std::uint64_t total = 0;
  for (int m = 0; m <= std::min(n, top_dim()); ++m) total += generators_[m].size() * binomial(n, m);
  return total;
}

std::string SimplicialSet::describe(const SimplexRef& x) const {
  std::string out;
  for (int j : x.degeneracies) out += "s" + std::to_string(j);
  const std::string& base = generators_.at(x.gen_dim).at(x.gen).name;
  return x.degeneracies.empty() ? base : out + "(" + base + ")";
}

void SimplicialSet::validate() const {
  auto fail = [&](const SimplexRef& x, const std::string& what) {
    throw ValidationError("simplicial identity " + what + " fails at " + describe(x));
  };
  for (int n = 0; n <= dim_cap_; ++n) {
    for (const auto& x : simplices(n)) {
      for (int j = 1; j <= n && n >= 2; ++j) {
        for (int i = 0; i < j; ++i) {
          if (face(face(x, j), i) != face(face(x, i), j - 1)) fail(x, "d_i d_j = d_{j-1} d_i");
        }
      }
      if (n + 1 > dim_cap_) continue;
      for (int j = 0; j <= n; ++j) {
        SimplexRef sx = degeneracy(x, j);
        for (int i = 0; i <= n + 1; ++i) {
          SimplexRef lhs = face(sx, i);
          SimplexRef rhs;
          if (i < j) rhs = degeneracy(face(x, i), j - 1);
          else if (i == j || i == j + 1) rhs = x;
          else rhs = degeneracy(face(x, i - 1), j);
          if (lhs != rhs) fail(x, "d_i s_j");
        }
        if (n + 2 > dim_cap_) continue;
        for (int i = 0; i <= j; ++i) {
          if (degeneracy(degeneracy(x, j), i) != degeneracy(degeneracy(x, i), j + 1)) {
            fail(x, "s_i s_j = s_{j+1} s_i");
          }
        }
      }
    }
  }
}

bool SimplicialSet::operator==(const SimplicialSet& other) const {
  if (dim_cap_ != other.dim_cap_ || generators_.size() != other.generators_.size()) return false;
  for (std::size_t m = 0; m < generators_.size(); ++m) {
    if (generators_[m].size() != other.generators_[m].size()) return false;
    for (std::size_t g = 0; g < generators_[m].size(); ++g) {
      if (generators_[m][g].name != other.generators_[m][g].name ||
          generators_[m][g].faces != other.generators_[m][g].faces) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

const SimplexRef& IndexedSimplicialSet::ref(int n, const Key& key) const {
  auto it = index.at(n).find(key);
  if (it == index.at(n).end()) throw ConsistencyError("unknown simplex key in level " + std::to_string(n));
  return it->second;
}

IndexedSimplicialSet build_simplicial_set(int dim_cap, const LevelModel& model) {
  IndexedSimplicialSet out;
  std::vector<std::vector<SimplicialSet::Generator>> gens(dim_cap + 1);
  out.index.resize(dim_cap + 1);
  out.generator_keys.resize(dim_cap + 1);
  for (int n = 0; n <= dim_cap; ++n) {
    std::vector<Key> keys = model.level(n);
    std::set<Key> members(keys.begin(), keys.end());
    if (members.size() != keys.size()) throw ConsistencyError("duplicate simplex in level " + std::to_string(n));
    auto& idx = out.index[n];
    if (n > 0) {
      for (const auto& [ykey, yref] : out.index[n - 1]) {
        for (int j = 0; j < n; ++j) {
          Key k = model.degeneracy(n - 1, j, ykey);
          if (!members.count(k)) {
            throw ConsistencyError("degeneracy leaves level " + std::to_string(n));
          }
          SimplexRef r = degenerate(yref, j);
          auto [it, inserted] = idx.emplace(k, r);
          if (!inserted && it->second != r) {
            throw ConsistencyError("degenerate simplex has two normal forms in level " + std::to_string(n));
          }
        }
      }
    }
    for (const auto& key : keys) {
      if (idx.count(key)) continue;
      SimplicialSet::Generator g;
      g.name = model.name(n, key);
      for (int i = 0; n > 0 && i <= n; ++i) {
        Key fk = model.face(n, i, key);
        auto it = out.index[n - 1].find(fk);
        if (it == out.index[n - 1].end()) throw ConsistencyError("face leaves level " + std::to_string(n - 1));
        g.faces.push_back(it->second);
      }
      idx.emplace(key, SimplexRef{n, static_cast<int>(gens[n].size()), {}});
      gens[n].push_back(std::move(g));
      out.generator_keys[n].push_back(key);
    }
  }
  out.set = SimplicialSet(dim_cap, std::move(gens));
  return out;
}

namespace {

int resolve_cap(int n, int dim_cap) {
  if (n < 0) throw ArgumentError("negative simplex dimension");
  if (n > kMaxDimCap) {
    throw CapacityError("simplex dimension " + std::to_string(n) + " exceeds the bound " +
                        std::to_string(kMaxDimCap));
  }
  int cap = dim_cap < 0 ? std::max(n, kDefaultDimCap) : dim_cap;
  if (cap > kMaxDimCap) throw CapacityError("dim_cap " + std::to_string(cap) + " exceeds the bound");
  return cap;
}

// Monotone sequences in [0..top] whose vertex set passes `allowed`.
IndexedSimplicialSet sequences_model(int top, int cap, std::function<bool(const std::vector<int>&)> allowed) {
  LevelModel model;
  model.level = [top, allowed](int n) {
    std::vector<Key> out;
    Key cur;
    std::function<void(int)> rec = [&](int lo) {
      if (static_cast<int>(cur.size()) == n + 1) {
        Key support = cur;
        support.erase(std::unique(support.begin(), support.end()), support.end());
        if (allowed(support)) out.push_back(cur);
        return;
      }
      for (int v = lo; v <= top; ++v) {
        cur.push_back(v);
        rec(v);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  };
  model.face = [](int, int i, const Key& k) {
    Key out = k;
    out.erase(out.begin() + i);
    return out;
  };
  model.degeneracy = [](int, int j, const Key& k) {
    Key out = k;
    out.insert(out.begin() + j, k[j]);
    return out;
  };
  model.name = [](int, const Key& k) {
    std::string s;
    for (int v : k) s += std::to_string(v);
    return s;
  };
  return build_simplicial_set(cap, model);
}

}  // namespace

IndexedSimplicialSet standard_simplex_indexed(int n, int dim_cap) {
  int cap = resolve_cap(n, dim_cap);
  return sequences_model(n, cap, [](const std::vector<int>&) { return true; });
}

SimplicialSet standard_simplex(int n, int dim_cap) { return standard_simplex_indexed(n, dim_cap).set; }

IndexedSimplicialSet subcomplex_of_simplex_indexed(int n, SubcomplexKind kind, int k, int dim_cap) {
  if (n < 1) throw ArgumentError("boundary and horns need n >= 1");
  if (kind == SubcomplexKind::Horn && (k < 0 || k > n)) {
    throw ArgumentError("horn index " + std::to_string(k) + " out of range for n = " + std::to_string(n));
  }
  int cap = resolve_cap(n, dim_cap);
  return sequences_model(n, cap, [n, kind, k](const std::vector<int>& support) {
    if (static_cast<int>(support.size()) == n + 1) return false;
    if (kind == SubcomplexKind::Boundary) return true;
    // Missing exactly k means the simplex lies only in the omitted face.
    if (static_cast<int>(support.size()) == n) {
      return std::find(support.begin(), support.end(), k) != support.end();
    }
    return true;
  });
}

SimplicialSet subcomplex_of_simplex(int n, SubcomplexKind kind, int k, int dim_cap) {
  return subcomplex_of_simplex_indexed(n, kind, k, dim_cap).set;
}

// ---------------------------------------------------------------------------

std::vector<Symbol> parse_word(std::string_view text) {
  std::vector<Symbol> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    for (std::size_t pos = 0; pos < tok.size();) {
      char c = tok[pos];
      if (c == '*' || c == 'o' || c == '.') {
        ++pos;
        continue;
      }
      if (c != 'd' && c != 's') throw ParseError("bad operator word '" + std::string(text) + "'");
      std::size_t end = pos + 1;
      while (end < tok.size() && std::isdigit(static_cast<unsigned char>(tok[end]))) ++end;
      if (end == pos + 1) throw ParseError("operator without index in '" + std::string(text) + "'");
      int idx = std::stoi(tok.substr(pos + 1, end - pos - 1));
      out.push_back(Symbol{c == 'd' ? Symbol::Kind::Face : Symbol::Kind::Degeneracy, idx});
      pos = end;
    }
  }
  return out;
}

SimplexRef normalize(const SimplicialSet& x, const SimplexRef& generator, std::span<const Symbol> word,
                     const NormalizeOptions& options) {
  if (generator.degenerate()) throw ArgumentError("normalize expects a generator");
  if (generator.gen_dim < 0 || generator.gen < 0 ||
      static_cast<std::size_t>(generator.gen) >= x.generator_count(generator.gen_dim)) {
    throw ArgumentError("normalize: unknown generator");
  }
  int dim = generator.gen_dim;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->kind == Symbol::Kind::Face) {
      if (dim < 1 || it->index < 0 || it->index > dim) throw ArgumentError("dimension mismatch in word");
      --dim;
    } else {
      if (it->index < 0 || it->index > dim) throw ArgumentError("dimension mismatch in word");
      ++dim;
    }
  }

  using K = Symbol::Kind;
  std::vector<Symbol> w(word.begin(), word.end());
  int gdim = generator.gen_dim;
  int gen = generator.gen;
  std::mt19937 rng(options.shuffle_seed);
  while (true) {
    // Rewrite to s...s d...d.
    while (true) {
      std::vector<std::size_t> redexes;
      for (std::size_t p = 0; p + 1 < w.size(); ++p) {
        const Symbol& a = w[p];
        const Symbol& b = w[p + 1];
        if ((a.kind == K::Face && b.kind == K::Degeneracy) ||
            (a.kind == K::Degeneracy && b.kind == K::Degeneracy && a.index <= b.index) ||
            (a.kind == K::Face && b.kind == K::Face && a.index < b.index)) {
          redexes.push_back(p);
          if (options.shuffle_seed == 0) break;
        }
      }
      if (redexes.empty()) break;
      std::size_t p = redexes.front();
      if (options.shuffle_seed != 0) p = redexes[rng() % redexes.size()];
      const int i = w[p].index;
      const int j = w[p + 1].index;
      if (w[p].kind == K::Face && w[p + 1].kind == K::Degeneracy) {
        if (i < j) {
          w[p] = {K::Degeneracy, j - 1};
          w[p + 1] = {K::Face, i};
        } else if (i == j || i == j + 1) {
          w.erase(w.begin() + p, w.begin() + p + 2);
        } else {
          w[p] = {K::Degeneracy, j};
          w[p + 1] = {K::Face, i - 1};
        }
      } else if (w[p].kind == K::Degeneracy) {
        w[p] = {K::Degeneracy, j + 1};
        w[p + 1] = {K::Degeneracy, i};
      } else {
        w[p] = {K::Face, j - 1};
        w[p + 1] = {K::Face, i};
      }
    }
    if (w.empty() || w.back().kind == K::Degeneracy) break;
    // The rightmost face hits the generator directly.
    const int i = w.back().index;
    w.pop_back();
    const SimplexRef& f = x.generator(gdim, gen).faces[i];
    for (int s : f.degeneracies) w.push_back({K::Degeneracy, s});
    gdim = f.gen_dim;
    gen = f.gen;
  }
  SimplexRef out{gdim, gen, {}};
  for (const auto& s : w) out.degeneracies.push_back(s.index);
  return out;
}

// ---------------------------------------------------------------------------

Key encode(const SimplexRef& ref) {
  Key k{ref.gen_dim, ref.gen, static_cast<int>(ref.degeneracies.size())};
  k.insert(k.end(), ref.degeneracies.begin(), ref.degeneracies.end());
  return k;
}

SimplexRef decode(std::span<const int> key, std::size_t& pos) {
  SimplexRef r;
  r.gen_dim = key[pos];
  r.gen = key[pos + 1];
  int t = key[pos + 2];
  r.degeneracies.assign(key.begin() + pos + 3, key.begin() + pos + 3 + t);
  pos += 3 + t;
  return r;
}

Key product_key(const SimplexRef& a, const SimplexRef& b) {
  Key k = encode(a);
  Key kb = encode(b);
  k.insert(k.end(), kb.begin(), kb.end());
  return k;
}

IndexedSimplicialSet product_indexed(const SimplicialSet& x, const SimplicialSet& y, int dim_cap) {
  if (dim_cap < 0 || dim_cap > kMaxDimCap) throw CapacityError("product dim_cap out of range");
  auto split = [](const Key& k) {
    std::size_t pos = 0;
    SimplexRef a = decode(k, pos);
    SimplexRef b = decode(k, pos);
    return std::pair{a, b};
  };
  LevelModel model;
  model.level = [&](int n) {
    std::vector<Key> out;
    auto xs = x.simplices(n);
    auto ys = y.simplices(n);
    out.reserve(xs.size() * ys.size());
    for (const auto& a : xs) {
      for (const auto& b : ys) out.push_back(product_key(a, b));
    }
    return out;
  };
  model.face = [&](int, int i, const Key& k) {
    auto [a, b] = split(k);
    return product_key(x.face(a, i), y.face(b, i));
  };
  model.degeneracy = [&](int, int j, const Key& k) {
    auto [a, b] = split(k);
    return product_key(degenerate(a, j), degenerate(b, j));
  };
  model.name = [&](int, const Key& k) {
    auto [a, b] = split(k);
    return "(" + x.describe(a) + "," + y.describe(b) + ")";
  };
  return build_simplicial_set(dim_cap, model);
}

SimplicialSet product(const SimplicialSet& x, const SimplicialSet& y, int dim_cap) {
  return product_indexed(x, y, dim_cap).set;
}

}  // namespace hcat
