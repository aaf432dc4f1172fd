#include "hcat/action.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hcat/error.hpp"

namespace hcat {

void GroupAction::validate() const {
  const int n = size();
  const int k = group.order();
  if (static_cast<int>(table.size()) != k * n) throw ValidationError("action table has the wrong size");
  for (int v : table) {
    if (v < 0 || v >= n) throw ValidationError("action leaves the carrier");
  }
  for (int x = 0; x < n; ++x) {
    if (act(group.identity(), x) != x) throw ValidationError("identity moves '" + carrier[x] + "'");
    for (int g = 0; g < k; ++g) {
      for (int h = 0; h < k; ++h) {
        if (act(g, act(h, x)) != act(group.mul(g, h), x)) {
          throw ValidationError("g.(h.x) != (gh).x at g=" + group.name(g) + ", h=" + group.name(h) + ", x=" +
                                carrier[x]);
        }
      }
    }
  }
  if (base) {
    if (static_cast<int>(base->pi.size()) != n) throw ValidationError("base map has the wrong size");
    for (int x = 0; x < n; ++x) {
      const int b = base->pi[x];
      if (b < 0 || b >= static_cast<int>(base->set.size())) throw ValidationError("base map leaves the base");
      for (int g = 0; g < k; ++g) {
        if (base->pi[act(g, x)] != b) throw ValidationError("base map is not invariant at '" + carrier[x] + "'");
      }
    }
  }
}

GroupAction GroupAction::trivial(const FiniteGroup& g, std::vector<std::string> carrier) {
  GroupAction a;
  a.group = g;
  a.carrier = std::move(carrier);
  for (int h = 0; h < g.order(); ++h) {
    for (int x = 0; x < a.size(); ++x) a.table.push_back(x);
  }
  return a;
}

GroupAction GroupAction::regular(const FiniteGroup& g) {
  GroupAction a;
  a.group = g;
  a.carrier = g.names();
  for (int h = 0; h < g.order(); ++h) {
    for (int x = 0; x < g.order(); ++x) a.table.push_back(g.mul(h, x));
  }
  return a;
}

GroupAction GroupAction::trivial_torsor(const FiniteGroup& g, const std::vector<std::string>& base) {
  GroupAction a;
  a.group = g;
  const int nb = static_cast<int>(base.size());
  Base b{base, {}};
  for (int h = 0; h < g.order(); ++h) {
    for (int p = 0; p < nb; ++p) {
      a.carrier.push_back("(" + g.name(h) + "," + base[p] + ")");
      b.pi.push_back(p);
    }
  }
  for (int k = 0; k < g.order(); ++k) {
    for (int h = 0; h < g.order(); ++h) {
      for (int p = 0; p < nb; ++p) a.table.push_back(g.mul(k, h) * nb + p);
    }
  }
  a.base = std::move(b);
  return a;
}

GroupAction GroupAction::natural(int n) {
  GroupAction a;
  a.group = FiniteGroup::symmetric(n);
  for (int x = 0; x < n; ++x) a.carrier.push_back(std::to_string(x));
  for (int g = 0; g < a.group.order(); ++g) {
    for (int x = 0; x < n; ++x) a.table.push_back(a.group.name(g)[x] - '0');
  }
  return a;
}

std::vector<GroupAction> enumerate_actions(const FiniteGroup& g, int n) {
  if (n < 0 || n > 5) throw CapacityError("actions are enumerated on at most 5 points");
  std::vector<std::string> carrier;
  for (int x = 0; x < n; ++x) carrier.push_back(std::to_string(x));
  std::vector<GroupAction> out;
  if (n == 0) {
    out.push_back(GroupAction::trivial(g, carrier));
    return out;
  }
  const FiniteGroup sym = FiniteGroup::symmetric(n);
  const std::vector<int> gens = g.generators();
  std::vector<int> images(gens.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == gens.size()) {
      auto hom = extend_homomorphism(g, gens, images, sym);
      if (!hom) return;
      GroupAction a;
      a.group = g;
      a.carrier = carrier;
      for (int h = 0; h < g.order(); ++h) {
        for (int x = 0; x < n; ++x) a.table.push_back(sym.name((*hom)[h])[x] - '0');
      }
      out.push_back(std::move(a));
      return;
    }
    for (int s = 0; s < sym.order(); ++s) {
      if (sym.element_order(s) > 0 && g.element_order(gens[i]) % sym.element_order(s) != 0) continue;
      images[i] = s;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<int>> orbits(const GroupAction& a) {
  std::vector<int> seen(a.size(), 0);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < a.size(); ++x) {
    if (seen[x]) continue;
    std::set<int> orbit;
    for (int g = 0; g < a.group.order(); ++g) orbit.insert(a.act(g, x));
    for (int y : orbit) seen[y] = 1;
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

FiniteGroupoid quotient_groupoid(const GroupAction& a) {
  FiniteGroupoid::ActionSpec spec;
  const FiniteGroup g = a.group;
  spec.group.order = g.order();
  spec.group.mul = [g](std::int64_t x, std::int64_t y) -> std::int64_t {
    return g.mul(static_cast<int>(x), static_cast<int>(y));
  };
  spec.group.inverse = [g](std::int64_t x) -> std::int64_t { return g.inverse(static_cast<int>(x)); };
  spec.group.identity = g.identity();
  for (int s : g.generators()) spec.group.generators.push_back(s);
  spec.group.name = [g](std::int64_t x) { return g.name(static_cast<int>(x)); };
  spec.object_count = a.size();
  spec.act = [a](std::int64_t h, int x) { return a.act(static_cast<int>(h), x); };
  spec.object_name = [a](int x) { return a.carrier[x]; };
  return FiniteGroupoid::from_action(std::move(spec));
}

Stabilizer stabilizer(const GroupAction& a, int x) {
  if (x < 0 || x >= a.size()) throw ArgumentError("stabilizer of an element outside the carrier");
  Stabilizer s;
  for (int g = 0; g < a.group.order(); ++g) {
    if (a.act(g, x) == x) s.elements.push_back(g);
  }
  s.group = a.group.subgroup(s.elements);
  return s;
}

bool act_pr_injective(const GroupAction& a) {
  for (int x = 0; x < a.size(); ++x) {
    std::set<int> images;
    for (int g = 0; g < a.group.order(); ++g) {
      if (!images.insert(a.act(g, x)).second) return false;
    }
  }
  return true;
}

TorsorReport check_torsor(const GroupAction& a) {
  if (!a.base) throw PreconditionError("torsor check needs a base map");
  const auto& base = *a.base;
  const int nb = static_cast<int>(base.set.size());
  TorsorReport r;
  std::vector<std::vector<int>> fibers(nb);
  for (int x = 0; x < a.size(); ++x) fibers[base.pi[x]].push_back(x);
  r.surjective = std::none_of(fibers.begin(), fibers.end(), [](const auto& f) { return f.empty(); });
  if (!r.surjective) {
    for (int b = 0; b < nb; ++b) {
      if (fibers[b].empty()) {
        r.failure = "fiber over '" + base.set[b] + "' is empty";
        break;
      }
    }
  }
  r.act_pr_injective = act_pr_injective(a);
  if (!r.act_pr_injective && r.failure.empty()) r.failure = "(act, pr) is not injective: the action is not free";
  r.act_pr_surjective = true;
  for (const auto& fiber : fibers) {
    for (int u : fiber) {
      std::set<int> reached;
      for (int g = 0; g < a.group.order(); ++g) reached.insert(a.act(g, u));
      if (reached.size() != fiber.size()) r.act_pr_surjective = false;
    }
  }
  if (!r.act_pr_surjective && r.failure.empty()) {
    r.failure = "(act, pr) is not surjective: the action is not transitive on a fiber";
  }
  r.act_pr_bijective = r.act_pr_injective && r.act_pr_surjective;
  r.section_exists = r.surjective;
  if (r.section_exists) {
    for (const auto& fiber : fibers) r.section.push_back(fiber.front());
    std::set<int> image;
    for (int g = 0; g < a.group.order(); ++g) {
      for (int b = 0; b < nb; ++b) image.insert(a.act(g, r.section[b]));
    }
    r.trivialized = static_cast<int>(image.size()) == a.size() && a.group.order() * nb == a.size();
  }
  r.torsor = r.surjective && r.act_pr_bijective;
  return r;
}

}  // namespace hcat
