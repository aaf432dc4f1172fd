#include "hcat/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "hcat/error.hpp"

namespace hcat {

FiniteGroup::FiniteGroup(Unchecked, std::vector<std::string> names, std::vector<int> mul)
    : names_(std::move(names)), mul_(std::move(mul)) {
  const int n = order();
  if (n == 0) throw ValidationError("a group needs at least one element");
  if (static_cast<int>(mul_.size()) != n * n) throw ValidationError("multiplication table has the wrong size");
  for (int v : mul_) {
    if (v < 0 || v >= n) throw ValidationError("multiplication table leaves the group");
  }
  derive_units();
}

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<int> mul)
    : FiniteGroup(Unchecked{}, std::move(names), std::move(mul)) {
  const int n = order();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int ab = this->mul(a, b);
      for (int c = 0; c < n; ++c) {
        if (this->mul(ab, c) != this->mul(a, this->mul(b, c))) {
          throw ValidationError("multiplication is not associative at (" + names_[a] + "," + names_[b] + "," +
                                names_[c] + ")");
        }
      }
    }
  }
}

FiniteGroup FiniteGroup::unchecked(std::vector<std::string> names, std::vector<int> mul) {
  return FiniteGroup(Unchecked{}, std::move(names), std::move(mul));
}

void FiniteGroup::derive_units() {
  const int n = order();
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool unit = true;
    for (int a = 0; a < n && unit; ++a) unit = mul(e, a) == a && mul(a, e) == a;
    if (unit) identity_ = e;
  }
  if (identity_ < 0) throw ValidationError("no identity element");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n && inverse_[a] < 0; ++b) {
      if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[a] = b;
    }
    if (inverse_[a] < 0) throw ValidationError("element '" + names_[a] + "' has no inverse");
  }
}

FiniteGroup FiniteGroup::trivial() {
  FiniteGroup g(std::vector<std::string>{"e"}, std::vector<int>{0});
  g.label_ = "1";
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw ArgumentError("cyclic group of order < 1");
  std::vector<std::string> names;
  std::vector<int> mul(n * n);
  for (int a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
  }
  FiniteGroup g(std::move(names), std::move(mul));
  g.label_ = "C" + std::to_string(n);
  return g;
}

FiniteGroup FiniteGroup::klein_four() {
  FiniteGroup g = direct_product(cyclic(2), cyclic(2));
  g.label_ = "V4";
  return g;
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 5) throw ArgumentError("symmetric group degree out of range");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    index[perms[i]] = static_cast<int>(i);
    std::string s;
    for (int v : perms[i]) s += std::to_string(v);
    names.push_back(s);
  }
  const int k = static_cast<int>(perms.size());
  std::vector<int> mul(k * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      mul[a * k + b] = index.at(c);
    }
  }
  FiniteGroup g(std::move(names), std::move(mul));
  g.label_ = "S" + std::to_string(n);
  return g;
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw ArgumentError("dihedral group of order < 2");
  // (r^a f^s)(r^b f^t) = r^(a + (-1)^s b) f^(s+t)
  const int k = 2 * n;
  std::vector<std::string> names;
  std::vector<int> mul(k * k);
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < n; ++a) names.push_back((s ? "f" : "r") + std::to_string(a));
  }
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      int s = x / n, a = x % n, t = y / n, b = y % n;
      int c = ((a + (s ? -b : b)) % n + n) % n;
      mul[x * k + y] = ((s + t) % 2) * n + c;
    }
  }
  FiniteGroup g(std::move(names), std::move(mul));
  g.label_ = "D" + std::to_string(n);
  return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int a = g.order(), b = h.order(), k = a * b;
  std::vector<std::string> names;
  std::vector<int> mul(k * k);
  for (int x = 0; x < a; ++x) {
    for (int y = 0; y < b; ++y) names.push_back("(" + g.name(x) + "," + h.name(y) + ")");
  }
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      mul[p * k + q] = g.mul(p / b, q / b) * b + h.mul(p % b, q % b);
    }
  }
  FiniteGroup out = unchecked(std::move(names), std::move(mul));
  out.label_ = g.label_ + "x" + h.label_;
  return out;
}

FiniteGroup FiniteGroup::power(const FiniteGroup& g, int k) {
  if (k < 0) throw ArgumentError("negative group power");
  if (k == 0) return trivial();
  FiniteGroup out = g;
  for (int i = 1; i < k; ++i) out = direct_product(out, g);
  out.label_ = g.label_ + "^" + std::to_string(k);
  return out;
}

std::vector<FiniteGroup> FiniteGroup::all_up_to_order_six() {
  std::vector<FiniteGroup> out{trivial(), cyclic(2), cyclic(3), cyclic(4), klein_four(), cyclic(5), cyclic(6),
                               symmetric(3)};
  return out;
}

FiniteGroup FiniteGroup::preset(std::string_view name) {
  std::string s(name);
  if (s == "1" || s == "C1" || s == "trivial") return trivial();
  if (s == "V4") return klein_four();
  try {
    if (s.size() > 1 && s[0] == 'C') return cyclic(std::stoi(s.substr(1)));
    if (s.size() > 1 && s[0] == 'S') return symmetric(std::stoi(s.substr(1)));
    if (s.size() > 1 && s[0] == 'D') return dihedral(std::stoi(s.substr(1)));
  } catch (const std::logic_error&) {
  }
  throw ArgumentError("unknown group preset '" + s + "'");
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a) {
    for (int b = 0; b < a; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::optional<int> FiniteGroup::find(std::string_view name) const {
  for (int a = 0; a < order(); ++a) {
    if (names_[a] == name) return a;
  }
  return std::nullopt;
}

namespace {

std::vector<bool> closure(const FiniteGroup& g, std::span<const int> gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<int> queue{g.identity()};
  in[g.identity()] = true;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (int s : gens) {
      int y = g.mul(queue[q], s);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  }
  return in;
}

// Fills `map` on the subgroup generated by `gens`; false on a conflict or a
// non-injective assignment.
bool extend_partial(const FiniteGroup& g, std::span<const int> gens, std::span<const int> images,
                    const FiniteGroup& h, std::vector<int>& map, bool injective) {
  map.assign(g.order(), -1);
  std::vector<int> preimage(injective ? h.order() : 0, -1);
  map[g.identity()] = h.identity();
  if (injective) preimage[h.identity()] = g.identity();
  std::vector<int> queue{g.identity()};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int x = queue[q];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const int y = g.mul(x, gens[i]);
      const int img = h.mul(map[x], images[i]);
      if (map[y] < 0) {
        if (injective) {
          if (preimage[img] >= 0) return false;
          preimage[img] = y;
        }
        map[y] = img;
        queue.push_back(y);
      } else if (map[y] != img) {
        return false;
      }
    }
  }
  return true;
}

std::vector<int> order_profile(const FiniteGroup& g) {
  std::vector<int> out;
  for (int a = 0; a < g.order(); ++a) out.push_back(g.element_order(a));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<int> FiniteGroup::generators() const {
  std::vector<int> cands(order());
  std::iota(cands.begin(), cands.end(), 0);
  std::stable_sort(cands.begin(), cands.end(),
                   [&](int a, int b) { return element_order(a) > element_order(b); });
  std::vector<int> gens;
  std::vector<bool> in = closure(*this, gens);
  for (int c : cands) {
    if (in[c]) continue;
    gens.push_back(c);
    in = closure(*this, gens);
  }
  return gens;
}

FiniteGroup FiniteGroup::subgroup(std::span<const int> elements) const {
  std::vector<int> pos(order(), -1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    pos[elements[i]] = static_cast<int>(i);
    names.push_back(names_[elements[i]]);
  }
  const int k = static_cast<int>(elements.size());
  std::vector<int> mul(k * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      int p = pos[this->mul(elements[a], elements[b])];
      if (p < 0) throw ValidationError("subset is not closed under multiplication");
      mul[a * k + b] = p;
    }
  }
  return unchecked(std::move(names), std::move(mul));
}

std::optional<std::vector<int>> extend_homomorphism(const FiniteGroup& g, std::span<const int> generators,
                                                    std::span<const int> images, const FiniteGroup& h) {
  if (generators.size() != images.size()) throw ArgumentError("generator and image counts differ");
  std::vector<int> map;
  if (!extend_partial(g, generators, images, h, map, false)) return std::nullopt;
  if (std::find(map.begin(), map.end(), -1) != map.end()) return std::nullopt;
  return map;
}

std::optional<std::vector<int>> find_group_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order() || order_profile(g) != order_profile(h)) return std::nullopt;
  if (g.is_abelian() != h.is_abelian()) return std::nullopt;
  const std::vector<int> gens = g.generators();
  std::vector<std::vector<int>> cands(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int ord = g.element_order(gens[i]);
    for (int b = 0; b < h.order(); ++b) {
      if (h.element_order(b) == ord) cands[i].push_back(b);
    }
  }
  std::vector<int> images;
  std::vector<int> map;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == gens.size()) return true;
    for (int b : cands[i]) {
      images.push_back(b);
      std::span<const int> gs(gens.data(), i + 1);
      if (extend_partial(g, gs, images, h, map, true) && rec(i + 1)) return true;
      images.pop_back();
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  extend_partial(g, gens, images, h, map, true);
  return map;
}

}  // namespace hcat
