#include "hcat/kan.hpp"

#include <algorithm>
#include <map>

#include "hcat/error.hpp"
#include "hcat/nerve.hpp"

namespace hcat {

namespace {

Key face_sequence(int n, int i) {
  Key seq;
  for (int p = 0; p <= n; ++p) {
    if (p != i) seq.push_back(p);
  }
  return seq;
}

std::vector<SimplexRef> faces_of_horn_map(const IndexedSimplicialSet& horn, const SimplicialSet& x, int n, int k,
                                          const SimplicialMap& f) {
  std::vector<SimplexRef> out(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (i == k) continue;
    out[i] = map_simplex(x, f, horn.ref(n - 1, face_sequence(n, i)));
  }
  return out;
}

std::vector<SimplexRef> faces_except(const SimplicialSet& x, const SimplexRef& s, int k) {
  std::vector<SimplexRef> out(s.dim() + 1);
  for (int i = 0; i <= s.dim(); ++i) {
    if (i != k) out[i] = x.face(s, i);
  }
  return out;
}

}  // namespace

std::vector<SimplexRef> horn_faces(const SimplicialSet& x, int n, int k, const SimplicialMap& horn_map) {
  auto horn = subcomplex_of_simplex_indexed(n, SubcomplexKind::Horn, k);
  return faces_of_horn_map(horn, x, n, k, horn_map);
}

std::vector<SimplexRef> horn_fillers(const SimplicialSet& x, int n, int k, const SimplicialMap& horn_map) {
  auto horn = subcomplex_of_simplex_indexed(n, SubcomplexKind::Horn, k);
  validate_map(horn.set, x, horn_map);
  auto want = faces_of_horn_map(horn, x, n, k, horn_map);
  std::vector<SimplexRef> out;
  for (const auto& s : x.simplices(n)) {
    if (faces_except(x, s, k) == want) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const HornVerdict& KanReport::at(int n, int k) const {
  for (const auto& v : verdicts) {
    if (v.n == n && v.k == k) return v;
  }
  throw ArgumentError("no verdict for horn (" + std::to_string(n) + "," + std::to_string(k) + ")");
}

KanReport classify(const SimplicialSet& x, const ClassifyOptions& options) {
  KanReport report;
  report.dim_cap = std::min(options.dim_cap, x.dim_cap());
  for (int n = 2; n <= report.dim_cap; ++n) {
    const auto level = x.simplices(n);
    for (int k = 0; k <= n; ++k) {
      const bool inner = 0 < k && k < n;
      if (options.inner_only && !inner) continue;
      auto horn = subcomplex_of_simplex_indexed(n, SubcomplexKind::Horn, k);
      std::map<std::vector<SimplexRef>, std::size_t> fillers;
      for (const auto& s : level) ++fillers[faces_except(x, s, k)];
      MapSearchOptions mo;
      mo.dim_cap = n - 1;
      mo.node_budget = options.node_budget;
      std::vector<SimplicialMap> maps;
      try {
        maps = enumerate_maps(horn.set, x, mo);
      } catch (const CapacityError& e) {
        throw CapacityError("horn (" + std::to_string(n) + "," + std::to_string(k) + "): " + e.what());
      }
      HornVerdict v;
      v.n = n;
      v.k = k;
      v.horn_maps = maps.size();
      for (const auto& f : maps) {
        auto faces = faces_of_horn_map(horn, x, n, k, f);
        auto it = fillers.find(faces);
        std::size_t count = it == fillers.end() ? 0 : it->second;
        v.max_fillers = std::max(v.max_fillers, count);
        if (count == 0) {
          v.exists = false;
          v.unique = false;
          if (!report.missing_filler) report.missing_filler = HornCounterexample{n, k, faces, 0};
        } else if (count > 1) {
          v.unique = false;
          if (!report.extra_filler) report.extra_filler = HornCounterexample{n, k, faces, count};
        }
      }
      report.verdicts.push_back(v);
    }
  }
  report.weak_kan = report.nerve_of_category = true;
  report.kan = report.nerve_of_groupoid = !options.inner_only;
  for (const auto& v : report.verdicts) {
    const bool inner = 0 < v.k && v.k < v.n;
    if (!v.exists) report.kan = false;
    if (!v.unique) report.nerve_of_groupoid = false;
    if (inner && !v.exists) report.weak_kan = false;
    if (inner && !v.unique) report.nerve_of_category = false;
  }
  if ((report.nerve_of_category && !report.weak_kan) || (report.nerve_of_groupoid && !report.kan) ||
      (report.kan && !report.weak_kan) || (report.nerve_of_groupoid && !report.nerve_of_category)) {
    throw ConsistencyError("inconsistent horn-filling flags");
  }
  return report;
}

IsomorphismEdgeReport is_isomorphism_edge(const SimplicialSet& x, const SimplexRef& f) {
  if (f.dim() != 1) throw ArgumentError("is_isomorphism_edge expects an edge");
  ClassifyOptions co;
  co.dim_cap = 3;
  co.inner_only = true;
  if (!classify(x, co).weak_kan) throw PreconditionError("simplicial set is not weak Kan up to dimension 3");

  IsomorphismEdgeReport out;
  const SimplexRef a = x.face(f, 1);
  const SimplexRef b = x.face(f, 0);
  const SimplexRef id_a = degenerate(a, 0);
  const SimplexRef id_b = degenerate(b, 0);
  const auto triangles = x.simplices(2);
  for (const auto& g : x.simplices(1)) {
    if (x.face(g, 1) != b || x.face(g, 0) != a) continue;
    std::optional<SimplexRef> left, right;
    for (const auto& s : triangles) {
      if (!left && x.face(s, 2) == f && x.face(s, 0) == g && x.face(s, 1) == id_a) left = s;
      if (!right && x.face(s, 2) == g && x.face(s, 0) == f && x.face(s, 1) == id_b) right = s;
      if (left && right) break;
    }
    if (left && right) {
      out.isomorphism = true;
      out.inverse = g;
      out.left_homotopy = left;
      out.right_homotopy = right;
      break;
    }
  }

  FiniteCategory h = homotopy_category(x);
  auto classes = homotopy_classes(x);
  const auto edges = x.simplices(1);
  auto pos = std::find(edges.begin(), edges.end(), f);
  if (pos == edges.end()) throw ArgumentError("edge does not belong to the simplicial set");
  out.invertible_in_homotopy_category = h.inverse(classes[pos - edges.begin()]).has_value();
  if (out.invertible_in_homotopy_category != out.isomorphism) {
    throw ConsistencyError("isomorphism witness search and h(X) disagree on " + x.describe(f));
  }
  return out;
}

}  // namespace hcat
