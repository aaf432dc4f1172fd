#pragma once

#include <string>

#include <json.hpp>

#include "hcat/action.hpp"
#include "hcat/category.hpp"
#include "hcat/descent.hpp"
#include "hcat/group.hpp"
#include "hcat/groupoid.hpp"
#include "hcat/kan.hpp"
#include "hcat/sset.hpp"

namespace hcat::io {

using Json = nlohmann::json;

/// Reads and parses a JSON file; ParseError carries the path and the
/// parser's byte offset.
Json read_file(const std::string& path);

// Every *_from_json throws ParseError naming the JSON pointer of the
// offending value, and lets ValidationError from the constructors through.

/// {"dim_cap": n, "generators": {"0": [ids], ...}, "faces": {id: [face, ...]}}
/// where a face is an id or {"gen": id, "deg": [j, ...]}. A document with a
/// "simplicial_set" member is read through that member.
SimplicialSet sset_from_json(const Json& j);
Json to_json(const SimplicialSet& x);
Json simplex_json(const SimplicialSet& x, const SimplexRef& s);
SimplexRef simplex_from_json(const SimplicialSet& x, const Json& j, const std::string& where = "");

/// {"objects": [...], "morphisms": [{"id", "src", "tgt"}], "identities":
/// {obj: id}, "compose": [[g, f, gf], ...]}; compositions with identities may
/// be omitted.
FiniteCategory category_from_json(const Json& j);
Json to_json(const FiniteCategory& c);

/// A category document plus "two_cells": [{"id", "src", "tgt"}],
/// "identity_cells": {morphism: cell}, "vertical" and "horizontal" triples.
/// "two_cells" may instead be "discrete", "codiscrete" or {"abelian": n}.
Finite2Category two_category_from_json(const Json& j);
Json to_json(const Finite2Category& c);

/// {"elements": [...], "mul": [[g, h, gh], ...]} or {"preset": "S3"}.
FiniteGroup group_from_json(const Json& j);
Json to_json(const FiniteGroup& g);

/// {"group": ..., "carrier": [...], "act": [[g, x, gx], ...], "base":
/// {"set": [...], "pi": {x: b}}}; rows for the identity may be omitted.
GroupAction action_from_json(const Json& j);
Json to_json(const GroupAction& a);

/// {"E": [...], "B": [...], "pi": {e: b}, "pieces": {e: i}}; pieces optional.
Cover cover_from_json(const Json& j);
Json to_json(const Cover& c);

Json to_json(const Rational& q);
Json to_json(const KanReport& r, const SimplicialSet& x);
Json skeleton_json(const FiniteGroupoid& g);

}  // namespace hcat::io
