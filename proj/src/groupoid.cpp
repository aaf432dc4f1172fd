#include "hcat/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "hcat/error.hpp"

namespace hcat {

class FiniteGroupoid::Backend {
 public:
  virtual ~Backend() = default;
  virtual int object_count() const = 0;
  virtual std::string object_name(int x) const = 0;
  virtual std::uint64_t morphism_count() const = 0;
  virtual int source(Mor f) const = 0;
  virtual int target(Mor f) const = 0;
  virtual Mor identity(int x) const = 0;
  virtual Mor compose(Mor g, Mor f) const = 0;
  virtual Mor inverse(Mor f) const = 0;
  virtual std::string morphism_name(Mor f) const = 0;
  virtual std::vector<Mor> hom(int x, int y) const = 0;
  virtual std::vector<Mor> automorphisms(int x) const { return hom(x, x); }
  virtual std::vector<int> components() const = 0;
  virtual const FiniteCategory* category() const { return nullptr; }
};

namespace {

std::vector<int> number_components(std::vector<int> parent) {
  auto find = [&](int u) {
    while (parent[u] != u) u = parent[u] = parent[parent[u]];
    return u;
  };
  std::vector<int> out(parent.size(), -1);
  std::map<int, int> ids;
  for (std::size_t x = 0; x < parent.size(); ++x) {
    int r = find(static_cast<int>(x));
    auto [it, inserted] = ids.emplace(r, static_cast<int>(ids.size()));
    out[x] = it->second;
  }
  return out;
}

class ExplicitBackend : public FiniteGroupoid::Backend {
 public:
  using Mor = FiniteGroupoid::Mor;
  explicit ExplicitBackend(FiniteCategory c) : c_(std::move(c)) {
    inverses_.resize(c_.morphism_count());
    for (int f = 0; f < c_.morphism_count(); ++f) {
      auto inv = c_.inverse(f);
      if (!inv) throw ValidationError("morphism '" + c_.morphism(f).name + "' is not invertible");
      inverses_[f] = *inv;
    }
  }
  int object_count() const override { return c_.object_count(); }
  std::string object_name(int x) const override { return c_.object_name(x); }
  std::uint64_t morphism_count() const override { return c_.morphism_count(); }
  int source(Mor f) const override { return c_.source(static_cast<int>(f)); }
  int target(Mor f) const override { return c_.target(static_cast<int>(f)); }
  Mor identity(int x) const override { return c_.identity(x); }
  Mor compose(Mor g, Mor f) const override { return c_.compose(static_cast<int>(g), static_cast<int>(f)); }
  Mor inverse(Mor f) const override { return inverses_[f]; }
  std::string morphism_name(Mor f) const override { return c_.morphism(static_cast<int>(f)).name; }
  std::vector<Mor> hom(int x, int y) const override {
    auto h = c_.hom(x, y);
    return {h.begin(), h.end()};
  }
  std::vector<int> components() const override {
    std::vector<int> parent(c_.object_count());
    std::iota(parent.begin(), parent.end(), 0);
    for (int f = 0; f < c_.morphism_count(); ++f) {
      int a = c_.source(f), b = c_.target(f);
      while (parent[a] != a) a = parent[a];
      while (parent[b] != b) b = parent[b];
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    return number_components(parent);
  }
  const FiniteCategory* category() const override { return &c_; }

 private:
  FiniteCategory c_;
  std::vector<int> inverses_;
};

class ActionBackend : public FiniteGroupoid::Backend {
 public:
  using Mor = FiniteGroupoid::Mor;
  explicit ActionBackend(FiniteGroupoid::ActionSpec spec) : s_(std::move(spec)) {
    if (s_.group.order < 1 || s_.object_count < 0) throw ArgumentError("malformed action groupoid");
  }
  int object_count() const override { return s_.object_count; }
  std::string object_name(int x) const override {
    return s_.object_name ? s_.object_name(x) : std::to_string(x);
  }
  std::uint64_t morphism_count() const override {
    return static_cast<std::uint64_t>(s_.group.order) * static_cast<std::uint64_t>(s_.object_count);
  }
  Mor pack(std::int64_t h, int x) const { return h * s_.object_count + x; }
  std::int64_t element(Mor f) const { return f / s_.object_count; }
  int source(Mor f) const override { return static_cast<int>(f % s_.object_count); }
  int target(Mor f) const override { return s_.act(element(f), source(f)); }
  Mor identity(int x) const override { return pack(s_.group.identity, x); }
  Mor compose(Mor g, Mor f) const override {
    if (source(g) != target(f)) throw ArgumentError("action groupoid morphisms are not composable");
    return pack(s_.group.mul(element(g), element(f)), source(f));
  }
  Mor inverse(Mor f) const override { return pack(s_.group.inverse(element(f)), target(f)); }
  std::string morphism_name(Mor f) const override {
    std::string h = s_.group.name ? s_.group.name(element(f)) : std::to_string(element(f));
    return "(" + h + "," + object_name(source(f)) + ")";
  }
  std::vector<Mor> hom(int x, int y) const override {
    std::vector<Mor> out;
    for (std::int64_t h = 0; h < s_.group.order; ++h) {
      if (s_.act(h, x) == y) out.push_back(pack(h, x));
    }
    return out;
  }
  std::vector<int> components() const override {
    std::vector<int> comp(s_.object_count, -1);
    int next = 0;
    for (int x = 0; x < s_.object_count; ++x) {
      if (comp[x] >= 0) continue;
      std::vector<int> queue{x};
      comp[x] = next;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        for (auto gen : s_.group.generators) {
          int y = s_.act(gen, queue[q]);
          if (comp[y] < 0) {
            comp[y] = next;
            queue.push_back(y);
          }
        }
      }
      ++next;
    }
    return comp;
  }

 private:
  FiniteGroupoid::ActionSpec s_;
};

class CallbackBackend : public FiniteGroupoid::Backend {
 public:
  using Mor = FiniteGroupoid::Mor;
  explicit CallbackBackend(FiniteGroupoid::CallbackSpec spec) : s_(std::move(spec)) {
    if (s_.object_count < 0 || !s_.out || !s_.source || !s_.target || !s_.identity || !s_.compose || !s_.inverse) {
      throw ArgumentError("malformed callback groupoid");
    }
  }
  int object_count() const override { return s_.object_count; }
  std::string object_name(int x) const override {
    return s_.object_name ? s_.object_name(x) : std::to_string(x);
  }
  std::uint64_t morphism_count() const override { return s_.morphism_count; }
  int source(Mor f) const override { return s_.source(f); }
  int target(Mor f) const override { return s_.target(f); }
  Mor identity(int x) const override { return s_.identity(x); }
  Mor compose(Mor g, Mor f) const override {
    if (source(g) != target(f)) throw ArgumentError("morphisms are not composable");
    return s_.compose(g, f);
  }
  Mor inverse(Mor f) const override { return s_.inverse(f); }
  std::string morphism_name(Mor f) const override {
    return s_.morphism_name ? s_.morphism_name(f) : std::to_string(f);
  }
  std::vector<Mor> hom(int x, int y) const override {
    std::vector<Mor> out;
    for (Mor f : s_.out(x)) {
      if (s_.target(f) == y) out.push_back(f);
    }
    return out;
  }
  std::vector<int> components() const override {
    std::vector<int> parent(s_.object_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int u) {
      while (parent[u] != u) u = parent[u] = parent[parent[u]];
      return u;
    };
    for (int x = 0; x < s_.object_count; ++x) {
      for (Mor f : s_.out(x)) {
        int a = find(x), b = find(s_.target(f));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    return number_components(parent);
  }

 private:
  FiniteGroupoid::CallbackSpec s_;
};

}  // namespace

FiniteGroupoid::FiniteGroupoid() : FiniteGroupoid(discrete({})) {}
FiniteGroupoid::FiniteGroupoid(std::shared_ptr<const Backend> backend) : backend_(std::move(backend)) {}

FiniteGroupoid FiniteGroupoid::from_category(const FiniteCategory& c) {
  return FiniteGroupoid(std::make_shared<ExplicitBackend>(c));
}

FiniteGroupoid FiniteGroupoid::from_action(ActionSpec spec) {
  return FiniteGroupoid(std::make_shared<ActionBackend>(std::move(spec)));
}

FiniteGroupoid FiniteGroupoid::from_callbacks(CallbackSpec spec) {
  return FiniteGroupoid(std::make_shared<CallbackBackend>(std::move(spec)));
}

FiniteGroupoid FiniteGroupoid::discrete(const std::vector<std::string>& objects) {
  std::vector<FiniteCategory::Morphism> ms;
  std::vector<int> ids;
  for (int x = 0; x < static_cast<int>(objects.size()); ++x) {
    ids.push_back(x);
    ms.push_back({"id_" + objects[x], x, x});
  }
  return from_category(FiniteCategory::from_triples(objects, std::move(ms), std::move(ids), {}));
}

FiniteGroupoid FiniteGroupoid::classifying(const FiniteGroup& g) {
  return from_category(FiniteCategory::from_group(g));
}

int FiniteGroupoid::object_count() const { return backend_->object_count(); }
std::string FiniteGroupoid::object_name(int x) const { return backend_->object_name(x); }
std::uint64_t FiniteGroupoid::morphism_count() const { return backend_->morphism_count(); }
int FiniteGroupoid::source(Mor f) const { return backend_->source(f); }
int FiniteGroupoid::target(Mor f) const { return backend_->target(f); }
FiniteGroupoid::Mor FiniteGroupoid::identity(int x) const { return backend_->identity(x); }
FiniteGroupoid::Mor FiniteGroupoid::compose(Mor g, Mor f) const { return backend_->compose(g, f); }
FiniteGroupoid::Mor FiniteGroupoid::inverse(Mor f) const { return backend_->inverse(f); }
std::string FiniteGroupoid::morphism_name(Mor f) const { return backend_->morphism_name(f); }
std::vector<FiniteGroupoid::Mor> FiniteGroupoid::hom(int x, int y) const { return backend_->hom(x, y); }
std::vector<FiniteGroupoid::Mor> FiniteGroupoid::automorphisms(int x) const { return backend_->automorphisms(x); }

const std::vector<int>& FiniteGroupoid::components() const {
  if (!components_) components_ = backend_->components();
  return *components_;
}

int FiniteGroupoid::component_count() const {
  const auto& c = components();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

FiniteGroup FiniteGroupoid::automorphism_group(int x) const {
  auto auts = automorphisms(x);
  std::unordered_map<Mor, int> pos;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < auts.size(); ++i) {
    pos[auts[i]] = static_cast<int>(i);
    names.push_back(morphism_name(auts[i]));
  }
  const int k = static_cast<int>(auts.size());
  std::vector<int> mul(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) mul[a * k + b] = pos.at(compose(auts[a], auts[b]));
  }
  return FiniteGroup::unchecked(std::move(names), std::move(mul));
}

FiniteCategory FiniteGroupoid::to_category(std::uint64_t limit) const {
  if (const FiniteCategory* c = backend_->category()) return *c;
  if (morphism_count() > limit) {
    throw CapacityError("groupoid with " + std::to_string(morphism_count()) + " morphisms is too large to tabulate");
  }
  std::vector<std::string> objects;
  for (int x = 0; x < object_count(); ++x) objects.push_back(object_name(x));
  std::vector<FiniteCategory::Morphism> ms;
  std::unordered_map<Mor, int> pos;
  std::vector<Mor> all;
  for (int x = 0; x < object_count(); ++x) {
    for (int y = 0; y < object_count(); ++y) {
      for (Mor f : hom(x, y)) {
        pos[f] = static_cast<int>(all.size());
        all.push_back(f);
        ms.push_back({morphism_name(f), x, y});
      }
    }
  }
  std::vector<int> ids;
  for (int x = 0; x < object_count(); ++x) ids.push_back(pos.at(identity(x)));
  const int m = static_cast<int>(all.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m, -1);
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (ms[f].target == ms[g].source) table[g * m + f] = pos.at(compose(all[g], all[f]));
    }
  }
  return FiniteCategory(std::move(objects), std::move(ms), std::move(ids), std::move(table));
}

// ---------------------------------------------------------------------------

std::vector<SkeletonEntry> skeleton(const FiniteGroupoid& g) {
  const auto& comp = g.components();
  std::vector<SkeletonEntry> out(g.component_count());
  std::vector<bool> seen(out.size(), false);
  for (int x = 0; x < g.object_count(); ++x) {
    if (seen[comp[x]]) continue;
    seen[comp[x]] = true;
    out[comp[x]] = SkeletonEntry{x, g.automorphism_group(x)};
  }
  return out;
}

bool equivalence_check(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.component_count() != b.component_count()) return false;
  auto sa = skeleton(a);
  auto sb = skeleton(b);
  std::vector<bool> used(sb.size(), false);
  // Isomorphism of groups is an equivalence relation, so greedy pairing is exact.
  for (const auto& e : sa) {
    bool matched = false;
    for (std::size_t j = 0; j < sb.size() && !matched; ++j) {
      if (used[j] || sb[j].automorphisms.order() != e.automorphisms.order()) continue;
      if (groups_isomorphic(e.automorphisms, sb[j].automorphisms)) used[j] = matched = true;
    }
    if (!matched) return false;
  }
  return true;
}

Rational groupoid_cardinality(const FiniteGroupoid& g) {
  Rational total(0);
  const auto& comp = g.components();
  std::vector<bool> seen(g.component_count(), false);
  for (int x = 0; x < g.object_count(); ++x) {
    if (seen[comp[x]]) continue;
    seen[comp[x]] = true;
    total += Rational(1, static_cast<std::int64_t>(g.automorphisms(x).size()));
  }
  return total;
}

EquivalenceReport is_equivalence(const FiniteGroupoid& a, const FiniteGroupoid& b, const GroupoidFunctor& f) {
  EquivalenceReport r;
  const auto& ca = a.components();
  const auto& cb = b.components();
  std::vector<int> image(a.component_count(), -1);
  std::vector<int> rep(a.component_count(), -1);
  for (int x = 0; x < a.object_count(); ++x) {
    int fx = f.on_objects(x);
    if (fx < 0 || fx >= b.object_count()) {
      r.functorial = false;
      r.failure = "object image out of range";
      return r;
    }
    if (rep[ca[x]] < 0) {
      rep[ca[x]] = x;
      image[ca[x]] = cb[fx];
    } else if (image[ca[x]] != cb[fx]) {
      r.functorial = false;
      r.failure = "objects of one component land in different components";
      return r;
    }
  }
  std::vector<int> hits(b.component_count(), 0);
  for (int c : image) ++hits[c];
  r.injective_on_components = std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; });
  r.essentially_surjective = std::all_of(hits.begin(), hits.end(), [](int h) { return h >= 1; });
  if (!r.injective_on_components) r.failure = "two components are identified";
  else if (!r.essentially_surjective) r.failure = "a component of the target is missed";

  r.fully_faithful = true;
  for (int x : rep) {
    const int fx = f.on_objects(x);
    auto auts = a.automorphisms(x);
    auto target_auts = b.automorphisms(fx);
    std::map<FiniteGroupoid::Mor, FiniteGroupoid::Mor> img;
    for (auto m : auts) {
      auto fm = f.on_morphisms(m);
      if (b.source(fm) != fx || b.target(fm) != fx) {
        r.functorial = false;
        r.failure = "automorphism of " + a.object_name(x) + " is not sent to an automorphism";
        return r;
      }
      img[m] = fm;
    }
    if (img.at(a.identity(x)) != b.identity(fx)) {
      r.functorial = false;
      r.failure = "identity of " + a.object_name(x) + " is not preserved";
      return r;
    }
    for (auto m1 : auts) {
      for (auto m2 : auts) {
        if (img.at(a.compose(m1, m2)) != b.compose(img.at(m1), img.at(m2))) {
          r.functorial = false;
          r.failure = "composition at " + a.object_name(x) + " is not preserved";
          return r;
        }
      }
    }
    std::vector<FiniteGroupoid::Mor> values;
    for (auto& [m, fm] : img) values.push_back(fm);
    std::sort(values.begin(), values.end());
    bool injective = std::adjacent_find(values.begin(), values.end()) == values.end();
    if (!injective || values.size() != target_auts.size()) {
      r.fully_faithful = false;
      if (r.failure.empty()) r.failure = "Aut(" + a.object_name(x) + ") -> Aut(F x) is not bijective";
    }
  }
  r.equivalence = r.functorial && r.injective_on_components && r.essentially_surjective && r.fully_faithful;
  return r;
}

FiniteGroupoid iso_comma(const FiniteGroupoid& a, const FiniteGroupoid& b, const FiniteGroupoid& c,
                         const GroupoidFunctor& f, const GroupoidFunctor& g) {
  using Mor = FiniteGroupoid::Mor;
  struct Obj {
    int a, b;
    Mor phi;
  };
  std::vector<Obj> objs;
  std::map<std::tuple<int, int, Mor>, int> obj_index;
  for (int x = 0; x < a.object_count(); ++x) {
    for (int y = 0; y < b.object_count(); ++y) {
      for (Mor phi : c.hom(f.on_objects(x), g.on_objects(y))) {
        obj_index[{x, y, phi}] = static_cast<int>(objs.size());
        objs.push_back({x, y, phi});
      }
    }
  }
  auto out_of = [](const FiniteGroupoid& h, int x) {
    std::vector<Mor> out;
    for (int y = 0; y < h.object_count(); ++y) {
      auto hs = h.hom(x, y);
      out.insert(out.end(), hs.begin(), hs.end());
    }
    return out;
  };
  struct Arrow {
    int src, tgt;
    Mor alpha, beta;
  };
  std::vector<Arrow> arrows;
  std::map<std::tuple<int, Mor, Mor>, int> arrow_index;
  std::vector<std::string> names;
  for (int o = 0; o < static_cast<int>(objs.size()); ++o) {
    names.push_back("(" + a.object_name(objs[o].a) + "," + b.object_name(objs[o].b) + "," +
                    c.morphism_name(objs[o].phi) + ")");
    for (Mor alpha : out_of(a, objs[o].a)) {
      for (Mor beta : out_of(b, objs[o].b)) {
        Mor phi2 = c.compose(c.compose(g.on_morphisms(beta), objs[o].phi), c.inverse(f.on_morphisms(alpha)));
        int t = obj_index.at({a.target(alpha), b.target(beta), phi2});
        arrow_index[{o, alpha, beta}] = static_cast<int>(arrows.size());
        arrows.push_back({o, t, alpha, beta});
      }
    }
  }
  std::vector<FiniteCategory::Morphism> ms;
  for (const auto& ar : arrows) {
    ms.push_back({"(" + a.morphism_name(ar.alpha) + "," + b.morphism_name(ar.beta) + ")@" + std::to_string(ar.src),
                  ar.src, ar.tgt});
  }
  std::vector<int> ids;
  for (int o = 0; o < static_cast<int>(objs.size()); ++o) {
    ids.push_back(arrow_index.at({o, a.identity(objs[o].a), b.identity(objs[o].b)}));
  }
  const int m = static_cast<int>(arrows.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m, -1);
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      if (arrows[p].tgt != arrows[q].src) continue;
      table[q * m + p] = arrow_index.at(
          {arrows[p].src, a.compose(arrows[q].alpha, arrows[p].alpha), b.compose(arrows[q].beta, arrows[p].beta)});
    }
  }
  return FiniteGroupoid::from_category(FiniteCategory(std::move(names), std::move(ms), std::move(ids), std::move(table)));
}

}  // namespace hcat
