#include "hcat/io.hpp"

#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "hcat/error.hpp"

namespace hcat::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing member '" + key + "'");
  return *it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

const Json& as_object(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  return j;
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < as_array(j, where).size(); ++i) {
    out.push_back(as_string(j[i], where + "/" + std::to_string(i)));
  }
  return out;
}

/// Name -> index, rejecting duplicates.
std::map<std::string, int> name_index(const std::vector<std::string>& names, const std::string& where) {
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!out.emplace(names[i], static_cast<int>(i)).second) fail(where, "duplicate name '" + names[i] + "'");
  }
  return out;
}

int lookup(const std::map<std::string, int>& index, const Json& j, const std::string& where, const char* what) {
  const std::string name = as_string(j, where);
  auto it = index.find(name);
  if (it == index.end()) fail(where, std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}

std::vector<std::array<int, 3>> triples(const Json& j, const std::map<std::string, int>& index,
                                        const std::string& where, const char* what) {
  std::vector<std::array<int, 3>> out;
  for (std::size_t i = 0; i < as_array(j, where).size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != 3) fail(w, "expected a triple");
    out.push_back({lookup(index, j[i][0], w + "/0", what), lookup(index, j[i][1], w + "/1", what),
                   lookup(index, j[i][2], w + "/2", what)});
  }
  return out;
}

}  // namespace

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": byte " + std::to_string(e.byte) + ": malformed JSON");
  }
}

// ---------------------------------------------------------------------------
// Simplicial sets

SimplicialSet sset_from_json(const Json& j) {
  if (j.is_object() && j.contains("simplicial_set")) return sset_from_json(j["simplicial_set"]);
  const int dim_cap = as_int(member(j, "dim_cap", ""), "/dim_cap");
  if (dim_cap < 0 || dim_cap > kMaxDimCap) fail("/dim_cap", "must lie in 0.." + std::to_string(kMaxDimCap));
  const Json& gens = as_object(member(j, "generators", ""), "/generators");
  int top = -1;
  for (auto it = gens.begin(); it != gens.end(); ++it) {
    int d = -1;
    try {
      d = std::stoi(it.key());
    } catch (const std::exception&) {
      fail("/generators/" + it.key(), "dimension keys must be integers");
    }
    if (d < 0 || d > dim_cap) fail("/generators/" + it.key(), "dimension outside 0..dim_cap");
    top = std::max(top, d);
  }
  std::vector<std::vector<std::string>> names(top + 1);
  std::map<std::string, std::pair<int, int>> where_is;
  for (int d = 0; d <= top; ++d) {
    const std::string key = std::to_string(d);
    if (!gens.contains(key)) continue;
    names[d] = string_list(gens[key], "/generators/" + key);
    for (std::size_t i = 0; i < names[d].size(); ++i) {
      if (!where_is.emplace(names[d][i], std::pair{d, static_cast<int>(i)}).second) {
        fail("/generators/" + key, "duplicate generator '" + names[d][i] + "'");
      }
    }
  }
  const Json empty = Json::object();
  const Json& faces = j.contains("faces") ? as_object(j["faces"], "/faces") : empty;
  for (auto it = faces.begin(); it != faces.end(); ++it) {
    if (!where_is.count(it.key())) fail("/faces/" + it.key(), "faces given for an unknown generator");
  }
  auto face_ref = [&](const Json& f, int dim, const std::string& w) {
    std::string gen;
    std::vector<int> deg;
    if (f.is_string()) {
      gen = f.get<std::string>();
    } else {
      gen = as_string(member(f, "gen", w), w + "/gen");
      if (f.contains("deg")) {
        for (std::size_t i = 0; i < as_array(f["deg"], w + "/deg").size(); ++i) {
          deg.push_back(as_int(f["deg"][i], w + "/deg/" + std::to_string(i)));
        }
      }
    }
    auto it = where_is.find(gen);
    if (it == where_is.end()) fail(w, "unknown generator '" + gen + "'");
    SimplexRef ref{it->second.first, it->second.second, {}};
    if (ref.gen_dim + static_cast<int>(deg.size()) != dim) fail(w, "face has the wrong dimension");
    for (auto d = deg.rbegin(); d != deg.rend(); ++d) {
      if (*d < 0 || *d > ref.dim()) fail(w, "degeneracy index out of range");
      ref = degenerate(ref, *d);
    }
    return ref;
  };
  std::vector<std::vector<SimplicialSet::Generator>> out(top + 1);
  for (int d = 0; d <= top; ++d) {
    for (const auto& name : names[d]) {
      SimplicialSet::Generator g{name, {}};
      if (d > 0) {
        const std::string w = "/faces/" + name;
        const Json& fs = as_array(member(faces, name, "/faces"), w);
        if (static_cast<int>(fs.size()) != d + 1) fail(w, "expected " + std::to_string(d + 1) + " faces");
        for (int i = 0; i <= d; ++i) g.faces.push_back(face_ref(fs[i], d - 1, w + "/" + std::to_string(i)));
      }
      out[d].push_back(std::move(g));
    }
  }
  SimplicialSet x(dim_cap, std::move(out));
  x.validate();
  return x;
}

Json simplex_json(const SimplicialSet& x, const SimplexRef& s) {
  const std::string& name = x.generator(s.gen_dim, s.gen).name;
  if (!s.degenerate()) return name;
  return Json{{"gen", name}, {"deg", s.degeneracies}};
}

SimplexRef simplex_from_json(const SimplicialSet& x, const Json& j, const std::string& where) {
  std::string gen;
  std::vector<int> deg;
  if (j.is_string()) {
    gen = j.get<std::string>();
  } else {
    gen = as_string(member(j, "gen", where), where + "/gen");
    if (j.contains("deg")) {
      for (std::size_t i = 0; i < as_array(j["deg"], where + "/deg").size(); ++i) {
        deg.push_back(as_int(j["deg"][i], where + "/deg/" + std::to_string(i)));
      }
    }
  }
  auto ref = x.find(gen);
  if (!ref) fail(where, "unknown simplex '" + gen + "'");
  SimplexRef out = *ref;
  for (auto d = deg.rbegin(); d != deg.rend(); ++d) {
    if (*d < 0 || *d > out.dim()) fail(where, "degeneracy index out of range");
    out = degenerate(out, *d);
  }
  return out;
}

Json to_json(const SimplicialSet& x) {
  Json gens = Json::object();
  Json faces = Json::object();
  for (int d = 0; d <= x.top_dim(); ++d) {
    Json names = Json::array();
    for (std::size_t i = 0; i < x.generator_count(d); ++i) {
      const auto& g = x.generator(d, static_cast<int>(i));
      names.push_back(g.name);
      if (d == 0) continue;
      Json fs = Json::array();
      for (const auto& f : g.faces) fs.push_back(simplex_json(x, f));
      faces[g.name] = fs;
    }
    gens[std::to_string(d)] = names;
  }
  return Json{{"dim_cap", x.dim_cap()}, {"generators", gens}, {"faces", faces}};
}

// ---------------------------------------------------------------------------
// Categories

FiniteCategory category_from_json(const Json& j) {
  const auto objects = string_list(member(j, "objects", ""), "/objects");
  const auto obj_index = name_index(objects, "/objects");
  const Json& ms = as_array(member(j, "morphisms", ""), "/morphisms");
  std::vector<FiniteCategory::Morphism> morphisms;
  std::vector<std::string> mnames;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string w = "/morphisms/" + std::to_string(i);
    const std::string id = as_string(member(ms[i], "id", w), w + "/id");
    morphisms.push_back({id, lookup(obj_index, member(ms[i], "src", w), w + "/src", "object"),
                         lookup(obj_index, member(ms[i], "tgt", w), w + "/tgt", "object")});
    mnames.push_back(id);
  }
  const auto mor_index = name_index(mnames, "/morphisms");
  const Json& ids = as_object(member(j, "identities", ""), "/identities");
  std::vector<int> identities(objects.size(), -1);
  for (auto it = ids.begin(); it != ids.end(); ++it) {
    const std::string w = "/identities/" + it.key();
    auto o = obj_index.find(it.key());
    if (o == obj_index.end()) fail(w, "unknown object '" + it.key() + "'");
    identities[o->second] = lookup(mor_index, it.value(), w, "morphism");
  }
  for (std::size_t x = 0; x < objects.size(); ++x) {
    if (identities[x] < 0) fail("/identities", "no identity for '" + objects[x] + "'");
  }
  std::vector<std::tuple<int, int, int>> comp;
  if (j.contains("compose")) {
    for (auto [g, f, gf] : triples(j["compose"], mor_index, "/compose", "morphism")) comp.emplace_back(g, f, gf);
  }
  return FiniteCategory::from_triples(objects, std::move(morphisms), std::move(identities), comp);
}

Json to_json(const FiniteCategory& c) {
  Json ms = Json::array();
  for (const auto& m : c.morphisms()) {
    ms.push_back({{"id", m.name}, {"src", c.object_name(m.source)}, {"tgt", c.object_name(m.target)}});
  }
  Json ids = Json::object();
  for (int x = 0; x < c.object_count(); ++x) ids[c.object_name(x)] = c.morphism(c.identity(x)).name;
  Json comp = Json::array();
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (c.is_identity(g) || c.source(g) != c.target(f)) continue;
      comp.push_back({c.morphism(g).name, c.morphism(f).name, c.morphism(c.compose(g, f)).name});
    }
  }
  return Json{{"objects", c.objects()}, {"morphisms", ms}, {"identities", ids}, {"compose", comp}};
}

Finite2Category two_category_from_json(const Json& j) {
  const FiniteCategory base = category_from_json(j);
  const Json& cells = member(j, "two_cells", "");
  if (cells.is_string()) {
    const std::string kind = cells.get<std::string>();
    if (kind == "discrete") return Finite2Category::locally_discrete(base);
    if (kind == "codiscrete") return Finite2Category::with_codiscrete_two_cells(base);
    fail("/two_cells", "unknown preset '" + kind + "'");
  }
  if (cells.is_object()) {
    const int n = as_int(member(cells, "abelian", "/two_cells"), "/two_cells/abelian");
    if (n < 1) fail("/two_cells/abelian", "must be positive");
    return Finite2Category::with_abelian_two_cells(base, n);
  }
  std::map<std::string, int> mor_index;
  for (int f = 0; f < base.morphism_count(); ++f) mor_index[base.morphism(f).name] = f;
  std::vector<Finite2Category::TwoCell> list;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < as_array(cells, "/two_cells").size(); ++i) {
    const std::string w = "/two_cells/" + std::to_string(i);
    const std::string id = as_string(member(cells[i], "id", w), w + "/id");
    list.push_back({id, lookup(mor_index, member(cells[i], "src", w), w + "/src", "morphism"),
                    lookup(mor_index, member(cells[i], "tgt", w), w + "/tgt", "morphism")});
    names.push_back(id);
  }
  const auto cell_index = name_index(names, "/two_cells");
  const int k = static_cast<int>(list.size());
  std::vector<int> identity_cells(base.morphism_count(), -1);
  const Json& ids = as_object(member(j, "identity_cells", ""), "/identity_cells");
  for (auto it = ids.begin(); it != ids.end(); ++it) {
    const std::string w = "/identity_cells/" + it.key();
    auto f = mor_index.find(it.key());
    if (f == mor_index.end()) fail(w, "unknown morphism '" + it.key() + "'");
    identity_cells[f->second] = lookup(cell_index, it.value(), w, "2-cell");
  }
  for (int f = 0; f < base.morphism_count(); ++f) {
    if (identity_cells[f] < 0) fail("/identity_cells", "no identity 2-cell for '" + base.morphism(f).name + "'");
  }
  auto table = [&](const char* key) {
    std::vector<int> t(static_cast<std::size_t>(k) * k, -1);
    for (auto [b, a, ba] : triples(member(j, key, ""), cell_index, std::string("/") + key, "2-cell")) {
      t[b * k + a] = ba;
    }
    return t;
  };
  auto vertical = table("vertical");
  auto horizontal = table("horizontal");
  return Finite2Category(base, std::move(list), std::move(identity_cells), std::move(vertical),
                         std::move(horizontal));
}

Json to_json(const Finite2Category& c) {
  Json j = to_json(c.base());
  Json cells = Json::array();
  for (const auto& a : c.cells()) {
    cells.push_back({{"id", a.name}, {"src", c.base().morphism(a.source).name}, {"tgt", c.base().morphism(a.target).name}});
  }
  Json ids = Json::object();
  for (int f = 0; f < c.base().morphism_count(); ++f) ids[c.base().morphism(f).name] = c.cell(c.identity_cell(f)).name;
  Json vert = Json::array(), hor = Json::array();
  for (int b = 0; b < c.cell_count(); ++b) {
    for (int a = 0; a < c.cell_count(); ++a) {
      if (c.cell(a).target == c.cell(b).source) {
        vert.push_back({c.cell(b).name, c.cell(a).name, c.cell(c.vertical(b, a)).name});
      }
      if (c.base().target(c.cell(a).source) == c.base().source(c.cell(b).source)) {
        hor.push_back({c.cell(b).name, c.cell(a).name, c.cell(c.horizontal(b, a)).name});
      }
    }
  }
  j["two_cells"] = cells;
  j["identity_cells"] = ids;
  j["vertical"] = vert;
  j["horizontal"] = hor;
  return j;
}

// ---------------------------------------------------------------------------
// Groups, actions, covers

FiniteGroup group_from_json(const Json& j) {
  if (j.is_string()) return FiniteGroup::preset(j.get<std::string>());
  if (j.is_object() && j.contains("preset")) {
    try {
      return FiniteGroup::preset(as_string(j["preset"], "/preset"));
    } catch (const ArgumentError& e) {
      fail("/preset", e.what());
    }
  }
  const auto elements = string_list(member(j, "elements", ""), "/elements");
  const auto index = name_index(elements, "/elements");
  const int n = static_cast<int>(elements.size());
  if (n == 0) fail("/elements", "a group has at least one element");
  std::vector<int> mul(static_cast<std::size_t>(n) * n, -1);
  for (auto [a, b, ab] : triples(member(j, "mul", ""), index, "/mul", "element")) mul[a * n + b] = ab;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (mul[a * n + b] < 0) fail("/mul", "no product for " + elements[a] + " * " + elements[b]);
    }
  }
  FiniteGroup g(elements, mul);
  if (j.contains("label")) g.set_label(as_string(j["label"], "/label"));
  return g;
}

Json to_json(const FiniteGroup& g) {
  Json mul = Json::array();
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) mul.push_back({g.name(a), g.name(b), g.name(g.mul(a, b))});
  }
  Json j{{"elements", g.names()}, {"mul", mul}};
  if (!g.label().empty()) j["label"] = g.label();
  return j;
}

GroupAction action_from_json(const Json& j) {
  GroupAction a;
  try {
    a.group = group_from_json(member(j, "group", ""));
  } catch (const ParseError& e) {
    throw ParseError(std::string("/group") + e.what());
  }
  a.carrier = string_list(member(j, "carrier", ""), "/carrier");
  const auto xs = name_index(a.carrier, "/carrier");
  std::map<std::string, int> gs;
  for (int g = 0; g < a.group.order(); ++g) gs[a.group.name(g)] = g;
  const int n = a.size();
  a.table.assign(static_cast<std::size_t>(a.group.order()) * n, -1);
  for (int x = 0; x < n; ++x) a.table[a.group.identity() * n + x] = x;
  const Json& act = as_array(member(j, "act", ""), "/act");
  for (std::size_t i = 0; i < act.size(); ++i) {
    const std::string w = "/act/" + std::to_string(i);
    if (!act[i].is_array() || act[i].size() != 3) fail(w, "expected a triple");
    const int g = lookup(gs, act[i][0], w + "/0", "group element");
    const int x = lookup(xs, act[i][1], w + "/1", "carrier element");
    a.table[g * n + x] = lookup(xs, act[i][2], w + "/2", "carrier element");
  }
  for (int g = 0; g < a.group.order(); ++g) {
    for (int x = 0; x < n; ++x) {
      if (a.table[g * n + x] < 0) fail("/act", "no image for " + a.group.name(g) + " . " + a.carrier[x]);
    }
  }
  if (j.contains("base")) {
    const Json& b = j["base"];
    GroupAction::Base base;
    base.set = string_list(member(b, "set", "/base"), "/base/set");
    const auto bs = name_index(base.set, "/base/set");
    base.pi.assign(n, -1);
    const Json& pi = as_object(member(b, "pi", "/base"), "/base/pi");
    for (auto it = pi.begin(); it != pi.end(); ++it) {
      const std::string w = "/base/pi/" + it.key();
      auto x = xs.find(it.key());
      if (x == xs.end()) fail(w, "unknown carrier element '" + it.key() + "'");
      base.pi[x->second] = lookup(bs, it.value(), w, "base element");
    }
    for (int x = 0; x < n; ++x) {
      if (base.pi[x] < 0) fail("/base/pi", "no image for '" + a.carrier[x] + "'");
    }
    a.base = std::move(base);
  }
  a.validate();
  return a;
}

Json to_json(const GroupAction& a) {
  Json act = Json::array();
  for (int g = 0; g < a.group.order(); ++g) {
    for (int x = 0; x < a.size(); ++x) act.push_back({a.group.name(g), a.carrier[x], a.carrier[a.act(g, x)]});
  }
  Json j{{"group", to_json(a.group)}, {"carrier", a.carrier}, {"act", act}};
  if (a.base) {
    Json pi = Json::object();
    for (int x = 0; x < a.size(); ++x) pi[a.carrier[x]] = a.base->set[a.base->pi[x]];
    j["base"] = {{"set", a.base->set}, {"pi", pi}};
  }
  return j;
}

Cover cover_from_json(const Json& j) {
  Cover c;
  c.e = string_list(member(j, "E", ""), "/E");
  c.b = string_list(member(j, "B", ""), "/B");
  const auto es = name_index(c.e, "/E");
  const auto bs = name_index(c.b, "/B");
  c.pi.assign(c.e.size(), -1);
  const Json& pi = as_object(member(j, "pi", ""), "/pi");
  for (auto it = pi.begin(); it != pi.end(); ++it) {
    auto x = es.find(it.key());
    if (x == es.end()) fail("/pi/" + it.key(), "unknown element '" + it.key() + "'");
    c.pi[x->second] = lookup(bs, it.value(), "/pi/" + it.key(), "base element");
  }
  for (std::size_t x = 0; x < c.e.size(); ++x) {
    if (c.pi[x] < 0) fail("/pi", "no image for '" + c.e[x] + "'");
  }
  if (j.contains("pieces")) {
    c.pieces.assign(c.e.size(), -1);
    const Json& ps = as_object(j["pieces"], "/pieces");
    for (auto it = ps.begin(); it != ps.end(); ++it) {
      auto x = es.find(it.key());
      if (x == es.end()) fail("/pieces/" + it.key(), "unknown element '" + it.key() + "'");
      c.pieces[x->second] = as_int(it.value(), "/pieces/" + it.key());
    }
    for (std::size_t x = 0; x < c.e.size(); ++x) {
      if (c.pieces[x] < 0) fail("/pieces", "no piece for '" + c.e[x] + "'");
    }
  }
  c.validate();
  return c;
}

Json to_json(const Cover& c) {
  Json pi = Json::object();
  for (std::size_t x = 0; x < c.e.size(); ++x) pi[c.e[x]] = c.b[c.pi[x]];
  Json j{{"E", c.e}, {"B", c.b}, {"pi", pi}};
  if (!c.pieces.empty()) {
    Json ps = Json::object();
    for (std::size_t x = 0; x < c.e.size(); ++x) ps[c.e[x]] = c.pieces[x];
    j["pieces"] = ps;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const Rational& q) { return Json{{"num", q.numerator()}, {"den", q.denominator()}}; }

Json to_json(const KanReport& r, const SimplicialSet& x) {
  Json verdicts = Json::object();
  for (const auto& v : r.verdicts) {
    verdicts["(" + std::to_string(v.n) + "," + std::to_string(v.k) + ")"] = {
        {"exists", v.exists}, {"unique", v.unique}, {"horn_maps", v.horn_maps}, {"max_fillers", v.max_fillers}};
  }
  auto horn = [&x](const HornCounterexample& h) {
    Json faces = Json::array();
    for (int i = 0; i < static_cast<int>(h.faces.size()); ++i) {
      faces.push_back(i == h.k ? Json(nullptr) : simplex_json(x, h.faces[i]));
    }
    return Json{{"n", h.n}, {"k", h.k}, {"faces", faces}, {"fillers", h.fillers}};
  };
  Json ce = Json::object();
  if (r.missing_filler) ce["missing_filler"] = horn(*r.missing_filler);
  if (r.extra_filler) ce["extra_filler"] = horn(*r.extra_filler);
  return Json{{"dim_cap", r.dim_cap},
              {"verdicts", verdicts},
              {"flags",
               {{"kan", r.kan},
                {"weak_kan", r.weak_kan},
                {"nerve_of_category", r.nerve_of_category},
                {"nerve_of_groupoid", r.nerve_of_groupoid}}},
              {"counterexample", ce.empty() ? Json(nullptr) : ce}};
}

Json skeleton_json(const FiniteGroupoid& g) {
  static const std::vector<FiniteGroup> small = FiniteGroup::all_up_to_order_six();
  Json out = Json::array();
  for (const auto& e : skeleton(g)) {
    Json entry{{"object", g.object_name(e.representative)}, {"aut_order", e.automorphisms.order()}};
    std::string label;
    for (const auto& h : small) {
      if (h.order() == e.automorphisms.order() && groups_isomorphic(e.automorphisms, h)) label = h.label();
    }
    if (!label.empty()) entry["aut_group"] = label;
    out.push_back(entry);
  }
  return out;
}

}  // namespace hcat::io
