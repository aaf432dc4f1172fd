#include "hcat/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "hcat/action.hpp"
#include "hcat/descent.hpp"
#include "hcat/error.hpp"
#include "hcat/io.hpp"
#include "hcat/kan.hpp"
#include "hcat/nerve.hpp"
#include "hcat/simplicial_object.hpp"

namespace hcat::cli {

namespace {

using io::Json;

struct Options {
  int dim_cap = kDefaultDimCap;
  int level_cap = kDefaultLevelCap;
  std::uint64_t budget = kDefaultNodeBudget;
  std::string format = "text";
  std::string output;
};

/// A finished command: the report and whether its check passed.
struct Outcome {
  Json report;
  bool passed = true;
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("HCAT_BUDGET")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw ArgumentError(std::string("HCAT_BUDGET is not a positive integer: '") + env + "'");
  }
  return kDefaultNodeBudget;
}

Json caps(const Options& o) {
  return Json{{"dim_cap", o.dim_cap}, {"level_cap", o.level_cap}, {"budget", o.budget}};
}

FiniteGroup load_group(const std::string& spec) {
  if (!std::filesystem::exists(spec)) {
    try {
      return FiniteGroup::preset(spec);
    } catch (const ArgumentError&) {
      throw ParseError(spec + ": neither a file nor a group preset");
    }
  }
  try {
    return io::group_from_json(io::read_file(spec));
  } catch (const ParseError& e) {
    throw ParseError(spec + ": " + e.what());
  }
}

template <class F>
auto load(const std::string& path, F parse) {
  const Json j = io::read_file(path);
  try {
    return parse(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Json level_sizes(const SimplicialSet& x, int cap) {
  Json out = Json::array();
  for (int n = 0; n <= std::min(cap, x.dim_cap()); ++n) out.push_back(x.level_size(n));
  return out;
}

Json census(const SimplicialSet& x) {
  Json out = Json::array();
  for (auto c : x.census()) out.push_back(c);
  return out;
}

std::string render_text(const Json& report) {
  std::string s;
  for (auto it = report.begin(); it != report.end(); ++it) {
    s += it.key() + ": ";
    s += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    s += "\n";
  }
  return s;
}

SimplexRef vertex(const SimplicialSet& x, const std::string& name) {
  auto ref = x.find(name);
  if (!ref || ref->gen_dim != 0) throw ArgumentError("'" + name + "' is not a vertex");
  return *ref;
}

// ---------------------------------------------------------------------------
// Commands

Outcome sset_info(const std::string& path, const Options& o) {
  const SimplicialSet x = load(path, io::sset_from_json);
  return {Json{{"dim_cap", x.dim_cap()}, {"census", census(x)}, {"level_sizes", level_sizes(x, o.dim_cap)},
               {"valid", true}},
          true};
}

Outcome sset_check_kan(const std::string& path, bool inner, const Options& o) {
  const SimplicialSet x = load(path, io::sset_from_json);
  ClassifyOptions opts;
  opts.dim_cap = o.dim_cap;
  opts.node_budget = o.budget;
  opts.inner_only = inner;
  const KanReport r = classify(x, opts);
  Json j = io::to_json(r, x);
  j["check"] = inner ? "weak_kan" : "kan";
  return {j, inner ? r.weak_kan : r.kan};
}

Outcome sset_fillers(const std::string& path, int n, int k, const Options& o) {
  const SimplicialSet x = load(path, io::sset_from_json);
  if (n < 1 || n > std::min(o.dim_cap, x.dim_cap()) || k < 0 || k > n) {
    throw ArgumentError("horn shape (" + std::to_string(n) + "," + std::to_string(k) + ") is outside the caps");
  }
  MapSearchOptions opts;
  opts.dim_cap = n - 1;
  opts.node_budget = o.budget;
  const auto horn = subcomplex_of_simplex(n, SubcomplexKind::Horn, k, n);
  Json horns = Json::array();
  bool all = true;
  for (const auto& m : enumerate_maps(horn, x, opts)) {
    Json faces = Json::array();
    const auto fs = horn_faces(x, n, k, m);
    for (int i = 0; i <= n; ++i) faces.push_back(i == k ? Json(nullptr) : io::simplex_json(x, fs[i]));
    Json fillers = Json::array();
    for (const auto& s : horn_fillers(x, n, k, m)) fillers.push_back(io::simplex_json(x, s));
    all = all && !fillers.empty();
    horns.push_back({{"faces", faces}, {"fillers", fillers}});
  }
  return {Json{{"n", n}, {"k", k}, {"horns", horns}, {"all_fill", all}}, all};
}

Outcome cat_nerve(const std::string& path, const Options& o) {
  const FiniteCategory c = load(path, io::category_from_json);
  const SimplicialSet x = nerve(c, o.dim_cap);
  return {Json{{"simplicial_set", io::to_json(x)}, {"census", census(x)}}, true};
}

Outcome cat_duskin(const std::string& path, const Options& o) {
  const Finite2Category c = load(path, io::two_category_from_json);
  const SimplicialSet x = duskin_nerve(c, o.dim_cap);
  return {Json{{"simplicial_set", io::to_json(x)}, {"census", census(x)}}, true};
}

Outcome cat_tau(const std::string& path, const Options& o) {
  const SimplicialSet x = load(path, io::sset_from_json);
  const FiniteCategory c = fundamental_category(x, static_cast<std::size_t>(o.budget));
  return {Json{{"category", io::to_json(c)}, {"objects", c.object_count()}, {"morphisms", c.morphism_count()}}, true};
}

Outcome cat_hcat(const std::string& path, const Options&) {
  const SimplicialSet x = load(path, io::sset_from_json);
  HomotopyCategoryReport rep;
  const FiniteCategory c = homotopy_category(x, &rep);
  return {Json{{"category", io::to_json(c)},
               {"objects", c.object_count()},
               {"morphisms", c.morphism_count()},
               {"edges", rep.edges},
               {"homotopy_pairs", rep.homotopy_pairs},
               {"composites_checked", rep.composites_checked}},
          true};
}

Outcome cat_maps(const std::string& path, const std::string& from, const std::string& to, const Options& o) {
  const SimplicialSet x = load(path, io::sset_from_json);
  const int cap = std::min(o.dim_cap, x.dim_cap() - 1);
  const SimplicialSet m = mapping_space(x, vertex(x, from), vertex(x, to), cap, o.budget);
  return {Json{{"simplicial_set", io::to_json(m)}, {"census", census(m)}}, true};
}

Outcome grpd_quotient(const std::string& path, const Options&) {
  const GroupAction a = load(path, io::action_from_json);
  const FiniteGroupoid q = quotient_groupoid(a);
  Json orbs = Json::array();
  for (const auto& orbit : orbits(a)) {
    Json names = Json::array();
    for (int x : orbit) names.push_back(a.carrier[x]);
    orbs.push_back(names);
  }
  return {Json{{"skeleton", io::skeleton_json(q)},
               {"components", q.component_count()},
               {"orbits", orbs},
               {"cardinality", io::to_json(groupoid_cardinality(q))}},
          true};
}

Outcome grpd_stabilizer(const std::string& path, const std::string& element, const Options&) {
  const GroupAction a = load(path, io::action_from_json);
  const FiniteGroupoid q = quotient_groupoid(a);
  Json out = Json::array();
  bool agree = true;
  bool found = element.empty();
  for (int x = 0; x < a.size(); ++x) {
    if (!element.empty() && a.carrier[x] != element) continue;
    found = true;
    const Stabilizer s = stabilizer(a, x);
    Json names = Json::array();
    for (int g : s.elements) names.push_back(a.group.name(g));
    const bool iso = groups_isomorphic(s.group, q.automorphism_group(x));
    agree = agree && iso;
    out.push_back({{"element", a.carrier[x]}, {"stabilizer", names}, {"order", s.elements.size()},
                   {"isomorphic_to_automorphisms", iso}});
  }
  if (!found) throw ArgumentError("'" + element + "' is not in the carrier");
  return {Json{{"stabilizers", out}, {"free", act_pr_injective(a)}}, agree};
}

Outcome grpd_torsor(const std::string& path, const Options& o) {
  const GroupAction a = load(path, io::action_from_json);
  const TorsorReport r = check_torsor(a);
  Json j{{"surjective", r.surjective},
         {"act_pr_injective", r.act_pr_injective},
         {"act_pr_surjective", r.act_pr_surjective},
         {"act_pr_bijective", r.act_pr_bijective},
         {"section_exists", r.section_exists},
         {"trivialized", r.trivialized},
         {"torsor", r.torsor},
         {"failure", r.failure}};
  if (r.section_exists) {
    Json sec = Json::array();
    for (int x : r.section) sec.push_back(a.carrier[x]);
    j["section"] = sec;
  }
  if (r.torsor) {
    const TorsorReconstruction t = torsor_reconstruction(a, o.level_cap);
    j["reconstruction"] = {{"levelwise_bijective", t.levelwise_bijective}, {"simplicial", t.simplicial},
                           {"failing_level", t.failing_level}};
  }
  return {j, r.torsor};
}

Outcome grpd_cech(const std::string& path, const Options& o) {
  const Cover c = load(path, io::cover_from_json);
  const SimplicialObject u = cech_nerve(c.as_map(), o.level_cap);
  u.validate();
  Json sizes = Json::array();
  for (int n = 0; n <= u.level_cap(); ++n) sizes.push_back(u.size(n));
  const GroupoidObjectReport r = is_groupoid_object(u);
  Json j{{"level_sizes", sizes}, {"groupoid_object", r.groupoid_object}, {"squares_checked", r.squares_checked}};
  if (r.failure) {
    j["failure"] = {{"n", r.failure->n}, {"s", r.failure->s}, {"s_prime", r.failure->s_prime},
                    {"injective", r.failure->injective}, {"surjective", r.failure->surjective}};
  }
  return {j, r.groupoid_object};
}

std::vector<FiniteSpace::Open> opens_from(const Json& j, const std::map<std::string, int>& points,
                                          const std::string& where) {
  std::vector<FiniteSpace::Open> out;
  if (!j.is_array()) throw ParseError(where + ": expected an array of opens");
  for (std::size_t i = 0; i < j.size(); ++i) {
    FiniteSpace::Open u = 0;
    if (!j[i].is_array()) throw ParseError(where + "/" + std::to_string(i) + ": expected an array of points");
    for (const auto& p : j[i]) {
      auto it = p.is_string() ? points.find(p.get<std::string>()) : points.end();
      if (it == points.end()) throw ParseError(where + "/" + std::to_string(i) + ": unknown point " + p.dump());
      u |= FiniteSpace::Open{1} << it->second;
    }
    out.push_back(u);
  }
  return out;
}

Json sheaf_json(const SheafReport& r) {
  return Json{{"coproduct", r.coproduct},         {"separated", r.separated},
              {"glued", r.glued},                 {"sheaf", r.sheaf},
              {"counterexample", r.counterexample}, {"base_sections", r.base_sections},
              {"equalizer_size", r.equalizer_size}, {"limit_size", r.limit_size},
              {"truncation_agrees", r.truncation_agrees}};
}

int presheaf_size(const Json& p, const std::string& where) {
  if (!p.contains("size") || !p["size"].is_number_integer() || p["size"].get<int>() < 0) {
    throw ParseError(where + ": presheaf needs a non-negative integer 'size'");
  }
  return p["size"].get<int>();
}

Outcome descent_sheaf(const std::string& path, const Options&) {
  const Json doc = io::read_file(path);
  auto member = [&](const Json& j, const char* key, const std::string& where) -> const Json& {
    if (!j.is_object() || !j.contains(key)) throw ParseError(path + ": " + where + ": missing member '" + key + "'");
    return j[key];
  };
  const std::string site = member(doc, "site", "/").is_string() ? doc["site"].get<std::string>() : "";
  const Json& p = member(doc, "presheaf", "/");
  const std::string kind = member(p, "kind", "/presheaf").is_string() ? p["kind"].get<std::string>() : "";
  SheafReport r;
  if (site == "finset") {
    Cover c;
    try {
      c = io::cover_from_json(member(doc, "cover", "/"));
    } catch (const ParseError& e) {
      throw ParseError(path + ": /cover" + e.what());
    }
    SetPresheaf f;
    if (kind == "representable") f = SetPresheaf::representable(presheaf_size(p, path + ": /presheaf"));
    else if (kind == "constant") f = SetPresheaf::constant(presheaf_size(p, path + ": /presheaf"));
    else throw ParseError(path + ": /presheaf/kind: expected 'representable' or 'constant'");
    r = check_sheaf_sets(f, c);
  } else if (site == "opens") {
    const Json& sp = member(doc, "space", "/");
    std::vector<std::string> points;
    for (const auto& q : member(sp, "points", "/space")) {
      if (!q.is_string()) throw ParseError(path + ": /space/points: expected strings");
      points.push_back(q.get<std::string>());
    }
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = static_cast<int>(i);
    std::optional<FiniteSpace> x;
    if (sp.contains("opens")) {
      x.emplace(points, opens_from(sp["opens"], index, path + ": /space/opens"));
    } else {
      std::vector<std::pair<int, int>> rel;
      for (const auto& pr : member(sp, "preorder", "/space")) {
        if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string() ||
            !index.count(pr[0].get<std::string>()) || !index.count(pr[1].get<std::string>())) {
          throw ParseError(path + ": /space/preorder: expected pairs of points");
        }
        rel.emplace_back(index[pr[0].get<std::string>()], index[pr[1].get<std::string>()]);
      }
      FiniteSpace a = FiniteSpace::alexandrov(static_cast<int>(points.size()), rel);
      x.emplace(points, a.opens());
    }
    const Json& cj = member(doc, "cover", "/");
    OpenCover c;
    c.target = opens_from(Json::array({member(cj, "target", "/cover")}), index, path + ": /cover/target")[0];
    c.family = opens_from(member(cj, "family", "/cover"), index, path + ": /cover/family");
    OpenPresheaf f;
    if (kind == "representable") {
      f = OpenPresheaf::representable(opens_from(Json::array({member(p, "open", "/presheaf")}), index,
                                                 path + ": /presheaf/open")[0]);
    } else if (kind == "functions") {
      f = OpenPresheaf::functions(*x, presheaf_size(p, path + ": /presheaf"));
    } else if (kind == "constant") {
      f = OpenPresheaf::constant(presheaf_size(p, path + ": /presheaf"));
    } else {
      throw ParseError(path + ": /presheaf/kind: expected 'representable', 'functions' or 'constant'");
    }
    validate_presheaf(f, *x);
    r = check_sheaf_sets(f, *x, c);
  } else {
    throw ParseError(path + ": /site: expected 'finset' or 'opens'");
  }
  Json j = sheaf_json(r);
  j["presheaf"] = kind;
  j["site"] = site;
  return {j, r.sheaf};
}

Outcome descent_stack(const std::string& presheaf, const std::string& cover, const std::string& group,
                      const Options&) {
  const Cover c = load(cover, io::cover_from_json);
  const FiniteGroup g = load_group(group);
  GroupoidPresheaf f;
  if (presheaf == "torsors") f = GroupoidPresheaf::torsors(g);
  else if (presheaf == "constant-bg") f = GroupoidPresheaf::constant_bg(g);
  else throw ArgumentError("--presheaf must be 'torsors' or 'constant-bg'");
  const StackReport r = check_stack_groupoids(f, c);
  return {Json{{"presheaf", f.name},
               {"coproduct", r.coproduct},
               {"comparison",
                {{"essentially_surjective", r.comparison.essentially_surjective},
                 {"injective_on_components", r.comparison.injective_on_components},
                 {"fully_faithful", r.comparison.fully_faithful},
                 {"equivalence", r.comparison.equivalence}}},
               {"stack", r.stack},
               {"failure", r.failure},
               {"descent_objects", r.descent_objects},
               {"descent_cardinality", io::to_json(r.descent_cardinality)},
               {"truncation_agrees", r.truncation_agrees}},
          r.stack};
}

Outcome descent_cocycles(const std::string& cover, const std::string& group, const Options&) {
  const Cover c = load(cover, io::cover_from_json);
  const FiniteGroup g = load_group(group);
  const CechDescent d = cech_descent_groupoid(c, g);
  const FiniteGroupoid target = FiniteGroupoid::classifying(FiniteGroup::power(g, static_cast<int>(c.b.size())));
  const bool equivalent = equivalence_check(d.groupoid, target);
  return {Json{{"cocycles", d.cocycle_count()},
               {"components", d.groupoid.component_count()},
               {"skeleton", io::skeleton_json(d.groupoid)},
               {"cardinality", io::to_json(groupoid_cardinality(d.groupoid))},
               {"equivalent_to_power_of_bg", equivalent}},
          true};
}

Outcome descent_refine(const std::string& path, const std::string& group, const Options&) {
  const Json doc = io::read_file(path);
  Cover coarse, fine;
  std::vector<int> map;
  try {
    if (!doc.is_object() || !doc.contains("coarse") || !doc.contains("fine") || !doc.contains("map")) {
      throw ParseError("/: expected members 'coarse', 'fine' and 'map'");
    }
    coarse = io::cover_from_json(doc["coarse"]);
    fine = io::cover_from_json(doc["fine"]);
    map.assign(fine.e.size(), -1);
    for (auto it = doc["map"].begin(); it != doc["map"].end() && doc["map"].is_object(); ++it) {
      auto x = std::find(fine.e.begin(), fine.e.end(), it.key());
      auto y = it.value().is_string() ? std::find(coarse.e.begin(), coarse.e.end(), it.value().get<std::string>())
                                      : coarse.e.end();
      if (x == fine.e.end() || y == coarse.e.end()) throw ParseError("/map/" + it.key() + ": unknown element");
      map[x - fine.e.begin()] = static_cast<int>(y - coarse.e.begin());
    }
    for (std::size_t x = 0; x < map.size(); ++x) {
      if (map[x] < 0) throw ParseError("/map: no image for '" + fine.e[x] + "'");
    }
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  const FiniteGroup g = load_group(group);
  const RefinementReport r = refinement_invariance(coarse, fine, map, g);
  return {Json{{"equivalent", r.equivalent},
               {"restriction_equivalence", r.restriction.equivalence},
               {"restriction_failure", r.restriction.failure},
               {"invariant", r.invariant},
               {"cardinality_coarse", io::to_json(r.cardinality_coarse)},
               {"cardinality_fine", io::to_json(r.cardinality_fine)}},
          r.invariant};
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation";
  if (dynamic_cast<const CapacityError*>(&e)) return "capacity";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const ArgumentError*>(&e)) return "argument";
  if (dynamic_cast<const ConsistencyError*>(&e)) return "consistency";
  return "internal";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite simplicial sets, nerves, groupoids and descent"};
  app.require_subcommand(1);
  Options o;
  std::function<Outcome()> action;
  std::string command;

  try {
    o.budget = default_budget();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--dim-cap", o.dim_cap, "Highest simplex dimension examined")
        ->check(CLI::Range(0, kMaxDimCap))
        ->capture_default_str();
    sub->add_option("--level-cap", o.level_cap, "Highest simplicial level examined")
        ->check(CLI::Range(0, 6))
        ->capture_default_str();
    sub->add_option("--budget", o.budget, "Search node budget (default from HCAT_BUDGET, else 10^7)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    sub->add_option("--output", o.output, "Write the report to this file");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    common(sub);
    return sub;
  };

  std::string file, from, to, element, cover, group, presheaf;
  int horn_n = 2, horn_k = 1;
  bool inner = false;

  CLI::App* sset = app.add_subcommand("sset", "Simplicial sets")->require_subcommand(1);
  {
    auto* s = leaf(sset, "info", "Census and level sizes");
    s->add_option("file", file, "Simplicial set document")->required();
    s->final_callback([&] { action = [&] { return sset_info(file, o); }; });
    s = leaf(sset, "check-kan", "Horn-filling classification");
    s->add_option("file", file, "Simplicial set document")->required();
    s->add_flag("--inner", inner, "Pass when inner horns fill (weak Kan) rather than all horns");
    s->final_callback([&] { action = [&] { return sset_check_kan(file, inner, o); }; });
    s = leaf(sset, "fillers", "Every horn of one shape with its fillers");
    s->add_option("file", file, "Simplicial set document")->required();
    s->add_option("--n", horn_n, "Horn dimension")->capture_default_str();
    s->add_option("--k", horn_k, "Missing face")->capture_default_str();
    s->final_callback([&] { action = [&] { return sset_fillers(file, horn_n, horn_k, o); }; });
  }
  CLI::App* cat = app.add_subcommand("cat", "Categories and their nerves")->require_subcommand(1);
  {
    auto* s = leaf(cat, "nerve", "Nerve of a finite category");
    s->add_option("file", file, "Category document")->required();
    s->final_callback([&] { action = [&] { return cat_nerve(file, o); }; });
    s = leaf(cat, "duskin", "Duskin nerve of a finite (2,1)-category");
    s->add_option("file", file, "2-category document")->required();
    s->final_callback([&] { action = [&] { return cat_duskin(file, o); }; });
    s = leaf(cat, "tau", "Fundamental category of a simplicial set");
    s->add_option("file", file, "Simplicial set document")->required();
    s->final_callback([&] { action = [&] { return cat_tau(file, o); }; });
    s = leaf(cat, "hcat", "Homotopy category of a weak Kan complex");
    s->add_option("file", file, "Simplicial set document")->required();
    s->final_callback([&] { action = [&] { return cat_hcat(file, o); }; });
    s = leaf(cat, "maps", "Mapping space between two vertices");
    s->add_option("file", file, "Simplicial set document")->required();
    s->add_option("--from", from, "Source vertex")->required();
    s->add_option("--to", to, "Target vertex")->required();
    s->final_callback([&] { action = [&] { return cat_maps(file, from, to, o); }; });
  }
  CLI::App* grpd = app.add_subcommand("grpd", "Group actions and groupoids")->require_subcommand(1);
  {
    auto* s = leaf(grpd, "quotient", "Quotient groupoid [X/G]");
    s->add_option("file", file, "Action document")->required();
    s->final_callback([&] { action = [&] { return grpd_quotient(file, o); }; });
    s = leaf(grpd, "stabilizer", "Stabilizers against automorphism groups of [X/G]");
    s->add_option("file", file, "Action document")->required();
    s->add_option("--element", element, "Only this carrier element");
    s->final_callback([&] { action = [&] { return grpd_stabilizer(file, element, o); }; });
    s = leaf(grpd, "torsor", "Torsor check over the action's base");
    s->add_option("file", file, "Action document with a base")->required();
    s->final_callback([&] { action = [&] { return grpd_torsor(file, o); }; });
    s = leaf(grpd, "cech", "Cech nerve of a cover and its groupoid-object check");
    s->add_option("file", file, "Cover document")->required();
    s->final_callback([&] { action = [&] { return grpd_cech(file, o); }; });
  }
  CLI::App* desc = app.add_subcommand("descent", "Sheaves, stacks and Cech descent")->require_subcommand(1);
  {
    auto* s = leaf(desc, "sheaf", "Sheaf condition for a set-valued presheaf");
    s->add_option("file", file, "Sheaf problem document")->required();
    s->final_callback([&] { action = [&] { return descent_sheaf(file, o); }; });
    s = leaf(desc, "stack", "Stack condition for a groupoid-valued presheaf");
    s->add_option("--presheaf", presheaf, "torsors or constant-bg")->required();
    s->add_option("--cover", cover, "Cover document")->required();
    s->add_option("--group", group, "Group document or preset")->required();
    s->final_callback([&] { action = [&] { return descent_stack(presheaf, cover, group, o); }; });
    s = leaf(desc, "cocycles", "Nonabelian Cech descent groupoid for BG");
    s->add_option("--cover", cover, "Cover document")->required();
    s->add_option("--group", group, "Group document or preset")->required();
    s->final_callback([&] { action = [&] { return descent_cocycles(cover, group, o); }; });
    s = leaf(desc, "refine", "Refinement invariance of Cech descent");
    s->add_option("file", file, "Refinement document")->required();
    s->add_option("--group", group, "Group document or preset")->required();
    s->final_callback([&] { action = [&] { return descent_refine(file, group, o); }; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }
  if (!action) return kExitError;
  for (const CLI::App* group : app.get_subcommands()) {
    for (const CLI::App* sub : group->get_subcommands()) command = group->get_name() + " " + sub->get_name();
  }

  Json report;
  int status = kExitPassed;
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome r = action();
    report = std::move(r.report);
    report["ok"] = r.passed;
    status = r.passed ? kExitPassed : kExitFailed;
  } catch (const std::exception& e) {
    err << "error (" << error_kind(e) << "): " << e.what() << "\n";
    report = Json{{"ok", false}, {"error", {{"kind", error_kind(e)}, {"message", e.what()}}}};
    status = kExitError;
  }
  report["command"] = command;
  report["caps"] = caps(o);
  report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};

  const std::string text = o.format == "json" ? report.dump(2) + "\n" : render_text(report);
  if (!o.output.empty()) {
    std::ofstream f(o.output);
    if (!f) {
      err << "error (argument): cannot write '" << o.output << "'\n";
      return kExitError;
    }
    f << text;
  } else {
    out << text;
  }
  return status;
}

}  // namespace hcat::cli
