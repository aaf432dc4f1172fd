#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcat/group.hpp"
#include "hcat/groupoid.hpp"

namespace hcat {

/// A left action of a finite group on a finite set, optionally over a base.
struct GroupAction {
  struct Base {
    std::vector<std::string> set;
    std::vector<int> pi;   // carrier -> set
  };

  FiniteGroup group;
  std::vector<std::string> carrier;
  std::vector<int> table;   // table[g * |carrier| + x] = g.x
  std::optional<Base> base;

  int size() const { return static_cast<int>(carrier.size()); }
  int act(int g, int x) const { return table[g * size() + x]; }

  /// Unit and compatibility laws, plus G-invariance of the base map.
  void validate() const;

  static GroupAction trivial(const FiniteGroup& g, std::vector<std::string> carrier);
  /// G acting on itself by left multiplication.
  static GroupAction regular(const FiniteGroup& g);
  /// The trivial torsor G x B -> B, with g.(h, b) = (gh, b).
  static GroupAction trivial_torsor(const FiniteGroup& g, const std::vector<std::string>& base);
  /// S_n on {0..n-1}.
  static GroupAction natural(int n);
};

/// Every action of G on {0..n-1}, one per homomorphism G -> S_n, in a fixed
/// order.
std::vector<GroupAction> enumerate_actions(const FiniteGroup& g, int n);

/// Orbits, each sorted, ordered by least element.
std::vector<std::vector<int>> orbits(const GroupAction& a);

/// [X/G]: morphisms (g, x) : x -> g.x, composed by (h, g.x) o (g, x) = (hg, x).
FiniteGroupoid quotient_groupoid(const GroupAction& a);

struct Stabilizer {
  std::vector<int> elements;   // sorted
  FiniteGroup group;
};
Stabilizer stabilizer(const GroupAction& a, int x);

/// True when (g, u) -> (g.u, u) is injective on G x U.
bool act_pr_injective(const GroupAction& a);

struct TorsorReport {
  bool surjective = false;          // pi is onto the base
  bool act_pr_injective = false;
  bool act_pr_surjective = false;   // onto U x_B U
  bool act_pr_bijective = false;
  bool section_exists = false;
  std::vector<int> section;         // least element of every fiber, when it exists
  bool trivialized = false;         // (g, b) -> g.section(b) is a bijection G x B -> U
  bool torsor = false;              // surjective and act_pr_bijective
  std::string failure;
};

/// Throws PreconditionError if the action carries no base.
TorsorReport check_torsor(const GroupAction& a);

}  // namespace hcat
