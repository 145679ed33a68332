#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nichols/cli.hpp"
#include "nichols/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nichols;

namespace {

const std::string data = NICHOLS_DATA_DIR;

struct Run
{
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args)
{
  args.insert(args.begin(), "nichols");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string &name, const std::string &text)
{
  auto p = std::filesystem::temp_directory_path() / ("nichols_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

std::size_t count(const std::string &s, const std::string &needle)
{
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1))
    ++n;
  return n;
}

} // namespace

TEST_CASE("scheme-enumerate on the standard schemes")
{
  const std::vector<std::pair<std::string, std::size_t>> expected{
      {"a2", 3}, {"b2", 4}, {"g2", 6}, {"a1xa1", 2}};
  for (const auto &[name, roots] : expected) {
    Run r = run({"scheme-enumerate", "--scheme", data + "/" + name + ".json"});
    CAPTURE(name);
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["verdict"] == "finite");
    CHECK(j["root_count"] == roots);
    CHECK(j["positive_roots"].size() == roots);
    CHECK(j["axioms"]["ok"] == true);
    CHECK(j["axioms"]["exponents"][0]["m"] == roots);
  }

  Run inf = run({"scheme-enumerate", "--scheme", data + "/affine.json"});
  CHECK(inf.code == 0);
  Json j = Json::parse(inf.out);
  CHECK(j["verdict"] == "infinite_witness");
  CHECK(j["root_count"].is_null());
  CHECK(j["witness"]["products"][0]["product"] == Json::parse("[[3,-2],[2,-1]]"));
}

TEST_CASE("axiom findings exit with 2")
{
  Run r = run({"scheme-enumerate", "--scheme", data + "/two_objects.json", "--format", "table"});
  CHECK(r.code == 2);
  CHECK(r.out.find("R4") != std::string::npos);

  std::string bad = temp_file("bad_gcm.json", R"j({"rank": 2, "objects": [{"id": "N", "cartan": [[2, -1], [0, 2]]}]})j");
  Run c = run({"scheme-check", "--scheme", bad});
  CHECK(c.code == 2);
  CHECK(Json::parse(c.out)["valid"] == false);
  CHECK(run({"scheme-check", "--scheme", data + "/g2.json"}).code == 0);
}

TEST_CASE("scheme-rank2")
{
  Run r = run({"scheme-rank2", "--scheme", data + "/affine.json"});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["infinite"] == true);
  CHECK(j["certificate"]["products"][0]["shape"] == true);
  Run f = run({"scheme-rank2", "--scheme", data + "/a2.json"});
  CHECK(f.code == 0);
  CHECK(Json::parse(f.out)["certificate"].is_null());
  CHECK(run({"scheme-rank2", "--scheme", data + "/a2.json", "--pair", "1,1"}).code == 1);
}

TEST_CASE("group-obstructions on two transposition classes")
{
  Run r = run({"group-obstructions", "--group", "S3", "--classes", "(12),(12)"});
  CHECK(r.code == 2);
  Json j = Json::parse(r.out);
  CHECK(j["commuting_class_pairs"] == Json::parse(R"j([["(123)","(123)"]])j"));
  const Json &stst = j["screens"][0];
  CHECK(stst["screen"] == "stst");
  CHECK(stst["pass"] == false);
  CHECK(stst["witness"] == "s=(12) t=(13) (st)^2=(123) (ts)^2=(132)");
  CHECK(j["screens"][1]["pass"] == true);

  Run a5 = run({"group-obstructions", "--group", "A5"});
  CHECK(a5.code == 0);
  CHECK(Json::parse(a5.out)["commuting_class_pairs"].empty());
  CHECK(run({"group-obstructions", "--group", "S3", "--classes", "(14)"}).code == 1);
  CHECK(run({"group-obstructions", "--group", "Q8x"}).code == 1);
}

TEST_CASE("yd-dims")
{
  Run r = run({"yd-dims", "--diagonal", data + "/qneg1.json", "--degree", "3"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["totals"] == Json::parse("[1,1,0,0]"));
  Run t = run({"yd-dims", "--diagonal", data + "/qneg1.json", "--degree", "3", "--format", "table"});
  CHECK(t.out.find("dims: 1,1,0,0") != std::string::npos);

  Run q3 = run({"yd-dims", "--diagonal", data + "/q3.json", "--degree", "3"});
  CHECK(Json::parse(q3.out)["totals"] == Json::parse("[1,1,1,0]"));
  Run fk = run({"yd-dims", "--tuple", data + "/s3_transposition.json", "--degree", "5"});
  CHECK(Json::parse(fk.out)["totals"] == Json::parse("[1,3,4,3,1,0]"));
}

TEST_CASE("yd-cartan, yd-reflect and yd-consistency")
{
  Run c = run({"yd-cartan", "--diagonal", data + "/a2_q5.json"});
  REQUIRE(c.code == 0);
  CHECK(Json::parse(c.out)["cartan"] == Json::parse("[[2,-1],[-1,2]]"));

  std::string wild = temp_file("wild.json", R"j({"order": 5, "q": [[0, 1], [0, 1]]})j");
  Run w = run({"yd-cartan", "--diagonal", wild, "--h-cap", "4"});
  CHECK(w.code == 0);
  Json wj = Json::parse(w.out);
  CHECK(wj["cartan"][0][1].is_null());
  CHECK(wj["i_finite"][0] == false);
  Run wr = run({"yd-reflect", "--diagonal", wild, "--index", "1", "--h-cap", "4"});
  CHECK(wr.code == 2);
  CHECK(Json::parse(wr.out)["failure"]["kind"] == "not i-finite");

  Run r = run({"yd-reflect", "--diagonal", data + "/a2_q5.json", "--index", "1"});
  REQUIRE(r.code == 0);
  Json rj = Json::parse(r.out);
  CHECK(rj["row"] == Json::parse("[2,-1]"));
  CHECK(run({"yd-reflect", "--diagonal", data + "/a2_q5.json", "--index", "3"}).code == 1);

  Run k = run({"yd-consistency", "--diagonal", data + "/a2_q5.json", "--index", "1", "--degree", "4"});
  CHECK(k.code == 0);
  CHECK(Json::parse(k.out)["ok"] == true);
}

TEST_CASE("yd-build")
{
  Run r = run({"yd-build", "--diagonal", data + "/a2_q5.json", "--properties"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["complete"] == true);
  CHECK(j["finiteness"]["verdict"] == "finite");
  CHECK(j["roots"].size() == 3);
  CHECK(j["findings"].empty());
  CHECK(j["property_failures"].empty());

  Run inf = run({"yd-build", "--diagonal", data + "/affine_q5.json"});
  CHECK(inf.code == 0);
  CHECK(Json::parse(inf.out)["finiteness"]["verdict"] == "infinite_witness");

  Run capped = run({"yd-build", "--diagonal", data + "/affine_q5.json", "--max-objects", "3"});
  CHECK(capped.code == 2);
  Json cj = Json::parse(capped.out);
  CHECK(cj["complete"] == false);
  CHECK(cj["findings"][0]["kind"] == "object cap");
}

TEST_CASE("malformed input points at the JSON path")
{
  std::string bad_base = temp_file("bad_base.json", R"j({"group": "S3", "modules": [
    {"base": "(12)", "fiber": {"kind": "character", "values": [{"element": "(12)", "value": -1}]}},
    {"base": "(14)", "fiber": {"kind": "character", "values": []}}]})j");
  Run r = run({"yd-cartan", "--tuple", bad_base});
  CHECK(r.code == 1);
  CHECK(r.err.find("$.modules[1].base") != std::string::npos);

  std::string bad_value = temp_file("bad_value.json", R"j({"group": "S3", "modules": [
    {"base": "(12)", "fiber": {"kind": "character", "values": [{"element": "(12)", "value": [1]}]}}]})j");
  Run v = run({"yd-dims", "--tuple", bad_value});
  CHECK(v.code == 1);
  CHECK(v.err.find("$.modules[0].fiber.values[0].value") != std::string::npos);

  std::string no_rank = temp_file("no_rank.json", R"j({"objects": []})j");
  Run s = run({"scheme-check", "--scheme", no_rank});
  CHECK(s.code == 1);
  CHECK(s.err.find("$.rank") != std::string::npos);

  std::string bad_q = temp_file("bad_q.json", R"j({"order": 4, "q": [[1, 2], [3]]})j");
  Run q = run({"yd-dims", "--diagonal", bad_q});
  CHECK(q.code == 1);
  CHECK(q.err.find("$.q[1]") != std::string::npos);

  std::string syntax = temp_file("syntax.json", "{\"rank\": 2,");
  CHECK(run({"scheme-check", "--scheme", syntax}).code == 1);
  CHECK(run({"scheme-check", "--scheme", "/nonexistent/x.json"}).code == 1);
  CHECK(run({"no-such-command"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"yd-dims", "--diagonal", data + "/qneg1.json", "--format", "dot"}).code == 1);
  CHECK(run({"yd-dims", "--diagonal", data + "/qneg1.json", "--format", "xml"}).code == 1);
  CHECK(run({"yd-dims"}).code == 1);
}

TEST_CASE("emitted JSON re-parses")
{
  Run r = run({"yd-reflect", "--diagonal", data + "/a2_q5.json", "--index", "2"});
  REQUIRE(r.code == 0);
  YDTuple back = parse_tuple(Json::parse(r.out)["tuple"]);
  YDTuple m = parse_tuple(load_json_file(data + "/a2_q5.json"));
  Reflection direct = reflect_tuple(m, 1);
  REQUIRE(direct.tuple);
  REQUIRE(back.rank() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    YDModule moved = parse_module(module_json(direct.tuple->modules[k]), back.group());
    CHECK(is_isomorphic(moved, back.modules[k]));
  }

  Run b = run({"yd-build", "--tuple", data + "/s3xz2.json"});
  REQUIRE(b.code == 0);
  CartanScheme c = parse_scheme(Json::parse(b.out)["scheme"]);
  CHECK(c.size() == 1);
  CHECK(c.cartan[0] == IntMatrix{{2, 0}, {0, 2}});

  Run t = run({"yd-reflect", "--tuple", data + "/s3xz2.json", "--index", "1"});
  YDTuple s = parse_tuple(Json::parse(t.out)["tuple"]);
  CHECK(s.group()->order() == 12);
  CHECK(s.modules[1].dim() == 1);

  for (const char *name : {"a2", "two_objects", "affine"}) {
    CartanScheme x = parse_scheme(load_json_file(data + "/" + name + ".json"));
    CartanScheme y = parse_scheme(scheme_json(x));
    CHECK(y.ids == x.ids);
    CHECK(y.cartan == x.cartan);
    CHECK(y.reflections == x.reflections);
  }
}

TEST_CASE("module JSON round trip with a two-dimensional fiber")
{
  GroupPtr g = parse_group(Json("S3"));
  Json two = Json::parse(R"j({"base": "()", "fiber": {"kind": "matrices", "dim": 2, "images": {
      "(12)": [[0, 1], [1, 0]],
      "(123)": [[0, -1], [1, -1]]}}})j");
  YDModule v = parse_module(two, g);
  CHECK(v.dim() == 2);
  CHECK(is_irreducible(v));
  YDModule w = parse_module(module_json(v), g);
  CHECK(is_isomorphic(v, w));
  CHECK(module_json(w).dump() == module_json(v).dump());

  Json q = Json::parse(R"j({"base": "(123)", "fiber": {"kind": "character", "values": [
      {"element": "(123)", "value": {"order": 3, "power": 1}}]}})j");
  YDModule u = parse_module(q, g);
  CHECK(u.dim() == 2);
  CHECK(is_isomorphic(u, parse_module(module_json(u), g)));

  Json rel = Json::parse(R"j({"base": "()", "fiber": {"kind": "matrices", "dim": 2, "images": {
      "(12)": [[0, 1], [1, 0]], "(123)": [[0, 1], [1, 0]]}}})j");
  CHECK_THROWS_AS(parse_module(rel, g), InputError);
}

TEST_CASE("DOT export")
{
  std::string a2 = run({"scheme-enumerate", "--scheme", data + "/a2.json", "--format", "dot"}).out;
  CHECK(a2.rfind("graph weyl_groupoid {", 0) == 0);
  CHECK(count(a2, "[label=\"N\\n") == 1);
  CHECK(count(a2, "\"N\" -- \"N\"") == 2);

  std::string two = run({"scheme-check", "--scheme", data + "/two_objects.json", "--format", "dot"}).out;
  CHECK(count(two, "\\n[[2,-1],[-1,2]]\"") == 2);
  CHECK(count(two, " -- ") == 3);
  CHECK(count(two, "\"P\" -- \"Q\" [label=\"s1\"]") == 1);
  CHECK(count(two, "\"Q\" -- \"P\"") == 0);

  std::string built = run({"yd-build", "--diagonal", data + "/a2_q5.json", "--format", "dot"}).out;
  CHECK(count(built, "[label=\"N") == 6);
  CHECK(count(built, " -- ") == 6);

  std::string empty = export_dot(SchemeBuildResult{});
  CHECK(empty.find("// warning:") != std::string::npos);
  CHECK(empty.find(" -- ") == std::string::npos);
}

TEST_CASE("output is deterministic")
{
  const std::vector<std::vector<std::string>> cmds{
      {"yd-build", "--diagonal", data + "/affine_q5.json"},
      {"yd-build", "--tuple", data + "/s3xz2.json", "--format", "table"},
      {"scheme-enumerate", "--scheme", data + "/g2.json"},
      {"group-obstructions", "--group", "S4", "--classes", "(12)(34),(123)"},
  };
  for (const auto &c : cmds) {
    Run a = run(c), b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
