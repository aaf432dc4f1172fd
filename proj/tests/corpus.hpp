#pragma once

#include <string>
#include <vector>

#include "hcat/category.hpp"
#include "hcat/descent.hpp"
#include "hcat/simplicial_object.hpp"

namespace corpus {

struct NamedCategory {
  std::string name;
  hcat::FiniteCategory category;
  bool groupoid = false;   // expected, checked against the tables separately
};

struct Named2Category {
  std::string name;
  hcat::Finite2Category category;
  bool parallel_cells = false;   // some 1-morphism has a non-identity 2-cell out of it
};

/// Small categories: at most 4 objects and 12 morphisms.
std::vector<NamedCategory> categories();

/// Small (2,1)-categories for the Duskin nerve.
std::vector<Named2Category> two_categories();

struct BrokenObject {
  std::string name;
  hcat::SimplicialObject object;
  int n = 0;
  std::vector<int> s;
  std::vector<int> s_prime;
  bool injective = false;
  bool surjective = false;
};

/// Simplicial sets that are not groupoid objects, with the first failing
/// partition worked out by hand.
std::vector<BrokenObject> broken_objects();

struct SetCase {
  std::string name;
  hcat::SetPresheaf presheaf;
  hcat::Cover cover;
  bool sheaf = false;
};

struct OpenCase {
  std::string name;
  hcat::FiniteSpace space;
  hcat::OpenPresheaf presheaf;
  hcat::OpenCover cover;
  bool sheaf = false;
};

struct GroupoidCase {
  std::string name;
  hcat::GroupoidPresheaf presheaf;
  hcat::Cover cover;
  bool stack = false;
};

std::vector<SetCase> set_presheaves();
std::vector<OpenCase> open_presheaves();
std::vector<GroupoidCase> groupoid_presheaves();

struct RefinementCase {
  std::string name;
  hcat::Cover coarse;
  hcat::Cover fine;
  std::vector<int> map;
  hcat::FiniteGroup group;
};

std::vector<RefinementCase> refinements();

/// The cover {U_1, ..., U_k} of their disjoint union, with |U_i| = sizes[i].
hcat::Cover family_cover(const std::vector<int>& sizes);

/// A cover given by its fibre sizes over B = {0..k-1}.
hcat::Cover fibred_cover(const std::vector<int>& fibres);

}  // namespace corpus
