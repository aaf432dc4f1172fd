#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcat/action.hpp"
#include "hcat/sset.hpp"

namespace hcat {

inline constexpr int kDefaultLevelCap = 3;

/// A map of finite sets.
struct SetMap {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::vector<int> map;

  void validate() const;
  bool surjective() const;
  std::vector<std::vector<int>> fibers() const;
};

/// A simplicial diagram of finite sets, truncated at level_cap.
class SimplicialObject {
 public:
  SimplicialObject() = default;
  /// faces[n][i][x] for 1 <= n <= cap; degeneracies[n][j][x] for n < cap.
  SimplicialObject(std::vector<std::vector<std::string>> levels, std::vector<std::vector<std::vector<int>>> faces,
                   std::vector<std::vector<std::vector<int>>> degeneracies);

  /// Levels, faces and degeneracies read off a level model.
  static SimplicialObject from_model(int level_cap, const LevelModel& model);
  static SimplicialObject from_simplicial_set(const SimplicialSet& x, int level_cap = kDefaultLevelCap);

  int level_cap() const { return static_cast<int>(levels_.size()) - 1; }
  int size(int n) const { return static_cast<int>(levels_.at(n).size()); }
  const std::string& name(int n, int x) const { return levels_.at(n).at(x); }
  int face(int n, int i, int x) const { return faces_[n][i][x]; }
  int degeneracy(int n, int j, int x) const { return degeneracies_[n][j][x]; }
  /// Restriction along the order-preserving inclusion of `subset` into [n].
  int restrict(int n, const std::vector<int>& subset, int x) const;

  /// Throws ValidationError naming the first simplicial identity that fails.
  void validate() const;

 private:
  std::vector<std::vector<std::string>> levels_;
  std::vector<std::vector<std::vector<int>>> faces_;
  std::vector<std::vector<std::vector<int>>> degeneracies_;
};

/// Level n is the (n+1)-fold fibre power of E over B; faces delete entries,
/// degeneracies repeat them.
SimplicialObject cech_nerve(const SetMap& f, int level_cap = kDefaultLevelCap);

/// The bar construction: level n is G^n x X with keys (g_1, ..., g_n, x),
/// d_0 = (g_2, ..., g_n, g_1.x), d_i multiplies g_{i+1} g_i, d_n drops g_n,
/// s_j inserts e. It is the nerve of the quotient groupoid.
SimplicialObject action_groupoid(const GroupAction& a, int level_cap = kDefaultLevelCap);

struct PartitionFailure {
  int n = 0;
  std::vector<int> s;
  std::vector<int> s_prime;
  bool injective = false;
  bool surjective = false;
};

struct GroupoidObjectReport {
  bool groupoid_object = true;
  std::optional<PartitionFailure> failure;   // first failing partition
  std::size_t squares_checked = 0;
  int level_cap = 0;
};

/// Checks that U_n -> U_S x_{U_{S n S'}} U_S' is a bijection for every
/// n <= level_cap and every [n] = S u S' with |S n S'| = 1. Partitions are
/// visited by n, then by the bitmask of S.
GroupoidObjectReport is_groupoid_object(const SimplicialObject& u, int level_cap = -1);

struct TorsorReconstruction {
  bool levelwise_bijective = true;
  bool simplicial = true;   // commutes with faces and degeneracies
  int failing_level = -1;
};

/// Compares the bar construction of a torsor with the Cech nerve of its base
/// map along (g_1, ..., g_n, x) -> (x, g_1 x, g_2 g_1 x, ...).
TorsorReconstruction torsor_reconstruction(const GroupAction& a, int level_cap = kDefaultLevelCap);

}  // namespace hcat
