#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hcat/cli.hpp"
#include "hcat/io.hpp"
#include "hcat/nerve.hpp"

using hcat::io::Json;

namespace {

const std::string kData = HCAT_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Result {
  int code = -1;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = hcat::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Result run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  return run(std::move(args));
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hcat_cli_" + name)).string();
}

}  // namespace

TEST_CASE("check-kan on the nerve of BC2") {
  auto r = run_json({"sset", "check-kan", data("nerve_bc2.json"), "--dim-cap", "4"});
  CHECK(r.code == hcat::cli::kExitPassed);
  auto j = r.json();
  CHECK(j["flags"]["kan"] == true);
  CHECK(j["caps"]["dim_cap"] == 4);
  CHECK(j["ok"] == true);
}

TEST_CASE("quotient of the trivial C2 action on a point") {
  auto r = run_json({"grpd", "quotient", data("c2_trivial_on_pt.json")});
  CHECK(r.code == 0);
  auto sk = r.json()["skeleton"];
  REQUIRE(sk.size() == 1);
  CHECK(sk[0]["object"] == "pt");
  CHECK(sk[0]["aut_order"] == 2);
}

TEST_CASE("cocycles over a two-point cover") {
  auto r = run_json({"descent", "cocycles", "--cover", data("cover2.json"), "--group", data("c2.json")});
  CHECK(r.code == 0);
  CHECK(r.json()["cardinality"] == Json{{"num", 1}, {"den", 2}});
  auto p = run_json({"descent", "cocycles", "--cover", data("cover2.json"), "--group", "S3"});
  CHECK(p.code == 0);
  CHECK(p.json()["cardinality"] == Json{{"num", 1}, {"den", 6}});
}

TEST_CASE("failed checks exit with 1") {
  auto poset = run_json({"sset", "check-kan", temp_path("unused"), "--dim-cap", "3"});
  CHECK(poset.code == hcat::cli::kExitError);   // missing file

  const std::string doc = temp_path("poset.json");
  REQUIRE(run({"cat", "nerve", data("poset3.json"), "--format", "json", "--output", doc}).code == 0);
  auto r = run_json({"sset", "check-kan", doc});
  CHECK(r.code == hcat::cli::kExitFailed);
  auto j = r.json();
  CHECK(j["flags"]["kan"] == false);
  CHECK_FALSE(j["counterexample"].is_null());
  CHECK(run_json({"sset", "check-kan", doc, "--inner"}).code == 0);
  CHECK(run_json({"descent", "sheaf", data("sheaf_constant.json")}).code == 1);
  CHECK(run_json({"descent", "sheaf", data("sheaf_finset.json")}).code == 0);
  CHECK(run_json({"descent", "sheaf", data("sheaf_opens.json")}).code == 0);
  CHECK(run_json({"descent", "stack", "--presheaf", "constant-bg", "--cover", data("cover2_family.json"), "--group",
                  "C2"})
            .code == 1);
  CHECK(run_json({"descent", "stack", "--presheaf", "torsors", "--cover", data("cover2.json"), "--group", "C2"})
            .code == 0);
  std::filesystem::remove(doc);
}

TEST_CASE("input errors exit with 2 and a diagnostic") {
  auto unknown = run({"sset", "info", data("nerve_bc2.json"), "--frobnicate"});
  CHECK(unknown.code == 2);
  CHECK_FALSE(unknown.err.empty());
  CHECK(run({}).code == 2);
  CHECK(run({"sset", "info", data("nerve_bc2.json"), "--format", "xml"}).code == 2);

  const std::string bad = temp_path("bad.json");
  {
    std::ofstream f(bad);
    f << R"({"group": {"preset": "C2"}, "carrier": ["p"], "act": [["7", "p", "p"]]})";
  }
  auto r = run_json({"grpd", "quotient", bad});
  CHECK(r.code == 2);
  auto j = r.json();
  CHECK(j["ok"] == false);
  CHECK(j["error"]["message"].get<std::string>().find("/act/0/0") != std::string::npos);
  {
    std::ofstream f(bad);
    f << "{\"E\": [";
  }
  CHECK(run({"descent", "cocycles", "--cover", bad, "--group", "C2"}).code == 2);
  std::filesystem::remove(bad);
}

TEST_CASE("reports are deterministic apart from timing") {
  const std::vector<std::vector<std::string>> commands{
      {"sset", "info", data("nerve_bc2.json")},
      {"cat", "duskin", data("duskin_c2.json")},
      {"cat", "tau", data("nerve_bc2.json")},
      {"grpd", "torsor", data("torsor_c2.json")},
      {"descent", "refine", data("refine_point.json"), "--group", "C2"},
  };
  for (const auto& c : commands) {
    auto a = run_json(c);
    auto b = run_json(c);
    REQUIRE(a.code == b.code);
    auto ja = a.json();
    auto jb = b.json();
    ja.erase("timing");
    jb.erase("timing");
    CHECK(ja.dump() == jb.dump());
    CHECK(ja.contains("caps"));
  }
}

TEST_CASE("machine-readable simplicial sets round-trip") {
  auto r = run_json({"cat", "nerve", data("bc2_category.json")});
  REQUIRE(r.code == 0);
  auto parsed = hcat::io::sset_from_json(r.json());
  auto direct = hcat::nerve(hcat::FiniteCategory::from_group(hcat::FiniteGroup::cyclic(2)), 4);
  CHECK(hcat::is_isomorphic(parsed, direct));
  CHECK(hcat::io::sset_from_json(hcat::io::to_json(direct)) == direct);
}

TEST_CASE("the budget comes from the environment unless given") {
  setenv("HCAT_BUDGET", "12345", 1);
  auto r = run_json({"sset", "info", data("nerve_bc2.json")});
  CHECK(r.json()["caps"]["budget"] == 12345);
  auto o = run_json({"sset", "info", data("nerve_bc2.json"), "--budget", "99"});
  CHECK(o.json()["caps"]["budget"] == 99);
  unsetenv("HCAT_BUDGET");
  CHECK(run_json({"sset", "info", data("nerve_bc2.json")}).json()["caps"]["budget"] == 10000000);
}

TEST_CASE("text output") {
  auto r = run({"grpd", "quotient", data("c2_trivial_on_pt.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("components: 1") != std::string::npos);
}
