#include "hcat/simplicial_object.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "hcat/error.hpp"

namespace hcat {

void SetMap::validate() const {
  if (map.size() != source.size()) throw ValidationError("map has the wrong number of entries");
  for (int v : map) {
    if (v < 0 || v >= static_cast<int>(target.size())) throw ValidationError("map leaves its target");
  }
}

bool SetMap::surjective() const {
  std::set<int> hit(map.begin(), map.end());
  return hit.size() == target.size();
}

std::vector<std::vector<int>> SetMap::fibers() const {
  std::vector<std::vector<int>> out(target.size());
  for (std::size_t e = 0; e < map.size(); ++e) out[map[e]].push_back(static_cast<int>(e));
  return out;
}

SimplicialObject::SimplicialObject(std::vector<std::vector<std::string>> levels,
                                   std::vector<std::vector<std::vector<int>>> faces,
                                   std::vector<std::vector<std::vector<int>>> degeneracies)
    : levels_(std::move(levels)), faces_(std::move(faces)), degeneracies_(std::move(degeneracies)) {
  const int cap = level_cap();
  if (cap < 0) throw ValidationError("a simplicial object needs level 0");
  faces_.resize(cap + 1);
  degeneracies_.resize(cap + 1);
  for (int n = 0; n <= cap; ++n) {
    auto check = [&](const std::vector<std::vector<int>>& maps, int count, int target, const char* what) {
      if (static_cast<int>(maps.size()) != count) throw ValidationError(std::string("wrong number of ") + what);
      for (const auto& m : maps) {
        if (static_cast<int>(m.size()) != size(n)) throw ValidationError(std::string(what) + " has the wrong size");
        for (int v : m) {
          if (v < 0 || v >= size(target)) throw ValidationError(std::string(what) + " leaves its level");
        }
      }
    };
    if (n > 0) check(faces_[n], n + 1, n - 1, "face maps");
    if (n < cap) check(degeneracies_[n], n + 1, n + 1, "degeneracy maps");
  }
}

SimplicialObject SimplicialObject::from_model(int level_cap, const LevelModel& model) {
  std::vector<std::vector<Key>> keys(level_cap + 1);
  std::vector<std::map<Key, int>> index(level_cap + 1);
  std::vector<std::vector<std::string>> levels(level_cap + 1);
  for (int n = 0; n <= level_cap; ++n) {
    keys[n] = model.level(n);
    for (std::size_t i = 0; i < keys[n].size(); ++i) {
      if (!index[n].emplace(keys[n][i], static_cast<int>(i)).second) {
        throw ConsistencyError("duplicate element in level " + std::to_string(n));
      }
      levels[n].push_back(model.name(n, keys[n][i]));
    }
  }
  auto lookup = [&](int n, const Key& k) {
    auto it = index[n].find(k);
    if (it == index[n].end()) throw ConsistencyError("structure map leaves level " + std::to_string(n));
    return it->second;
  };
  std::vector<std::vector<std::vector<int>>> faces(level_cap + 1), degens(level_cap + 1);
  for (int n = 0; n <= level_cap; ++n) {
    if (n > 0) {
      faces[n].resize(n + 1);
      for (int i = 0; i <= n; ++i) {
        for (const auto& k : keys[n]) faces[n][i].push_back(lookup(n - 1, model.face(n, i, k)));
      }
    }
    if (n < level_cap) {
      degens[n].resize(n + 1);
      for (int j = 0; j <= n; ++j) {
        for (const auto& k : keys[n]) degens[n][j].push_back(lookup(n + 1, model.degeneracy(n, j, k)));
      }
    }
  }
  return SimplicialObject(std::move(levels), std::move(faces), std::move(degens));
}

SimplicialObject SimplicialObject::from_simplicial_set(const SimplicialSet& x, int level_cap) {
  std::vector<std::vector<SimplexRef>> simplices(level_cap + 1);
  std::vector<std::map<SimplexRef, int>> index(level_cap + 1);
  std::vector<std::vector<std::string>> levels(level_cap + 1);
  for (int n = 0; n <= level_cap; ++n) {
    simplices[n] = x.simplices(n);
    for (std::size_t i = 0; i < simplices[n].size(); ++i) {
      index[n][simplices[n][i]] = static_cast<int>(i);
      levels[n].push_back(x.describe(simplices[n][i]));
    }
  }
  std::vector<std::vector<std::vector<int>>> faces(level_cap + 1), degens(level_cap + 1);
  for (int n = 0; n <= level_cap; ++n) {
    if (n > 0) {
      faces[n].resize(n + 1);
      for (int i = 0; i <= n; ++i) {
        for (const auto& s : simplices[n]) faces[n][i].push_back(index[n - 1].at(x.face(s, i)));
      }
    }
    if (n < level_cap) {
      degens[n].resize(n + 1);
      for (int j = 0; j <= n; ++j) {
        for (const auto& s : simplices[n]) degens[n][j].push_back(index[n + 1].at(x.degeneracy(s, j)));
      }
    }
  }
  return SimplicialObject(std::move(levels), std::move(faces), std::move(degens));
}

int SimplicialObject::restrict(int n, const std::vector<int>& subset, int x) const {
  // Delete the missing vertices from the top down so indices stay valid.
  int level = n;
  for (int v = n; v >= 0; --v) {
    if (std::find(subset.begin(), subset.end(), v) != subset.end()) continue;
    x = face(level, v, x);
    --level;
  }
  return x;
}

void SimplicialObject::validate() const {
  const int cap = level_cap();
  auto fail = [](const std::string& what, int n, int x) {
    throw ValidationError("simplicial identity " + what + " fails at element " + std::to_string(x) + " of level " +
                          std::to_string(n));
  };
  for (int n = 0; n <= cap; ++n) {
    for (int x = 0; x < size(n); ++x) {
      for (int j = 0; j <= n && n >= 2; ++j) {
        for (int i = 0; i < j; ++i) {
          if (face(n - 1, i, face(n, j, x)) != face(n - 1, j - 1, face(n, i, x))) fail("d_i d_j", n, x);
        }
      }
      if (n == cap) continue;
      for (int j = 0; j <= n; ++j) {
        const int sx = degeneracy(n, j, x);
        for (int i = 0; i <= n + 1; ++i) {
          const int lhs = face(n + 1, i, sx);
          int rhs;
          if (i < j) rhs = degeneracy(n - 1, j - 1, face(n, i, x));
          else if (i == j || i == j + 1) rhs = x;
          else rhs = degeneracy(n - 1, j, face(n, i - 1, x));
          if (lhs != rhs) fail("d_i s_j", n, x);
        }
        if (n + 1 == cap) continue;
        for (int i = 0; i <= j; ++i) {
          if (degeneracy(n + 1, i, degeneracy(n, j, x)) != degeneracy(n + 1, j + 1, degeneracy(n, i, x))) {
            fail("s_i s_j", n, x);
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

LevelModel cech_model(const SetMap& f) {
  LevelModel m;
  m.level = [&f](int n) {
    std::vector<Key> out;
    for (const auto& fiber : f.fibers()) {
      Key cur;
      std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == n + 1) {
          out.push_back(cur);
          return;
        }
        for (int e : fiber) {
          cur.push_back(e);
          rec();
          cur.pop_back();
        }
      };
      rec();
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  m.face = [](int, int i, const Key& k) {
    Key out = k;
    out.erase(out.begin() + i);
    return out;
  };
  m.degeneracy = [](int, int j, const Key& k) {
    Key out = k;
    out.insert(out.begin() + j, k[j]);
    return out;
  };
  m.name = [&f](int, const Key& k) {
    std::string s = "(";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + f.source[k[i]];
    return s + ")";
  };
  return m;
}

LevelModel action_model(const GroupAction& a) {
  LevelModel m;
  const FiniteGroup& g = a.group;
  m.level = [&a, &g](int n) {
    std::vector<Key> out;
    Key cur;
    std::function<void()> rec = [&]() {
      if (static_cast<int>(cur.size()) == n) {
        for (int x = 0; x < a.size(); ++x) {
          Key k = cur;
          k.push_back(x);
          out.push_back(std::move(k));
        }
        return;
      }
      for (int h = 0; h < g.order(); ++h) {
        cur.push_back(h);
        rec();
        cur.pop_back();
      }
    };
    rec();
    return out;
  };
  m.face = [&a, &g](int n, int i, const Key& k) {
    Key out = k;
    if (i == 0) {
      out.back() = a.act(k[0], k.back());
      out.erase(out.begin());
    } else if (i == n) {
      out.erase(out.begin() + (n - 1));
    } else {
      out[i - 1] = g.mul(k[i], k[i - 1]);
      out.erase(out.begin() + i);
    }
    return out;
  };
  m.degeneracy = [&g](int, int j, const Key& k) {
    Key out = k;
    out.insert(out.begin() + j, g.identity());
    return out;
  };
  m.name = [&a, &g](int, const Key& k) {
    std::string s = "(";
    for (std::size_t i = 0; i + 1 < k.size(); ++i) s += g.name(k[i]) + ",";
    return s + a.carrier[k.back()] + ")";
  };
  return m;
}

}  // namespace

SimplicialObject cech_nerve(const SetMap& f, int level_cap) {
  f.validate();
  return SimplicialObject::from_model(level_cap, cech_model(f));
}

SimplicialObject action_groupoid(const GroupAction& a, int level_cap) {
  a.validate();
  return SimplicialObject::from_model(level_cap, action_model(a));
}

GroupoidObjectReport is_groupoid_object(const SimplicialObject& u, int level_cap) {
  GroupoidObjectReport r;
  r.level_cap = level_cap < 0 ? u.level_cap() : std::min(level_cap, u.level_cap());
  for (int n = 1; n <= r.level_cap; ++n) {
    const int full = (1 << (n + 1)) - 1;
    for (int smask = 1; smask <= full; ++smask) {
      for (int tmask = 1; tmask <= full; ++tmask) {
        if ((smask | tmask) != full) continue;
        const int meet = smask & tmask;
        if (meet == 0 || (meet & (meet - 1)) != 0) continue;
        std::vector<int> s, t;
        int m = 0;
        for (int v = 0; v <= n; ++v) {
          if (smask >> v & 1) s.push_back(v);
          if (tmask >> v & 1) t.push_back(v);
          if (meet >> v & 1) m = v;
        }
        // Positions of m inside S and S', for restricting U_S and U_S' to the vertex.
        const int ms = static_cast<int>(std::find(s.begin(), s.end(), m) - s.begin());
        const int mt = static_cast<int>(std::find(t.begin(), t.end(), m) - t.begin());
        const int ds = static_cast<int>(s.size()) - 1;
        const int dt = static_cast<int>(t.size()) - 1;
        std::set<std::pair<int, int>> image;
        bool injective = true;
        for (int x = 0; x < u.size(n); ++x) {
          if (!image.emplace(u.restrict(n, s, x), u.restrict(n, t, x)).second) injective = false;
        }
        std::size_t pullback = 0;
        for (int a = 0; a < u.size(ds); ++a) {
          const int va = u.restrict(ds, {ms}, a);
          for (int b = 0; b < u.size(dt); ++b) pullback += u.restrict(dt, {mt}, b) == va;
        }
        const bool surjective = image.size() == pullback;
        ++r.squares_checked;
        if ((!injective || !surjective) && r.groupoid_object) {
          r.groupoid_object = false;
          r.failure = PartitionFailure{n, s, t, injective, surjective};
        }
      }
    }
  }
  return r;
}

TorsorReconstruction torsor_reconstruction(const GroupAction& a, int level_cap) {
  if (!a.base) throw PreconditionError("torsor reconstruction needs a base map");
  a.validate();
  SetMap pi{a.carrier, a.base->set, a.base->pi};
  LevelModel bar = action_model(a);
  LevelModel cech = cech_model(pi);
  auto phi = [&a](const Key& k) {
    const int n = static_cast<int>(k.size()) - 1;
    Key out{k.back()};
    for (int i = 0; i < n; ++i) out.push_back(a.act(k[i], out.back()));
    return out;
  };
  TorsorReconstruction r;
  for (int n = 0; n <= level_cap; ++n) {
    auto source = bar.level(n);
    auto target = cech.level(n);
    std::set<Key> image;
    std::set<Key> members(target.begin(), target.end());
    for (const auto& k : source) {
      Key v = phi(k);
      if (!members.count(v) || !image.insert(v).second) r.levelwise_bijective = false;
      for (int i = 0; n > 0 && i <= n; ++i) {
        if (phi(bar.face(n, i, k)) != cech.face(n, i, v)) r.simplicial = false;
      }
      for (int j = 0; n < level_cap && j <= n; ++j) {
        if (phi(bar.degeneracy(n, j, k)) != cech.degeneracy(n, j, v)) r.simplicial = false;
      }
    }
    if (image.size() != members.size()) r.levelwise_bijective = false;
    if ((!r.levelwise_bijective || !r.simplicial) && r.failing_level < 0) r.failing_level = n;
  }
  return r;
}

}  // namespace hcat
