#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "spec_io.hpp"

using namespace loxo;
using namespace loxo::cli;

namespace {

const std::string samples = LOXO_SAMPLES_DIR;

std::string sample(const std::string& name) { return samples + "/" + name; }

Json run_ok(const std::vector<std::string>& args) {
  const auto r = run_command(args);
  INFO(r.err);
  REQUIRE(r.exit_code == 0);
  return Json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("loxo_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("parse_map_spec examples") {
  const auto torus = parse_map_spec(R"({"type":"torus","matrix":[[2,1],[1,1]],"translation":["2","3"]})");
  CHECK(spec_type(torus) == "torus");
  CHECK(spec_characteristic(torus) == 0);
  CHECK_THROWS_AS(parse_map_spec(R"({"type":"torus","matrix":[[2,1],[2,1]],"translation":["2","3"]})"),
                  InvariantViolation);
  CHECK_THROWS_AS(parse_map_spec(R"({"type":"plane","word":[{"henon":{"poly":["0","1"],"delta":"1"}}]})"),
                  InvariantViolation);
  CHECK_THROWS_AS(parse_map_spec(R"({"type":"plane","word":[{"henon":{"poly":["0","0","1"],"delta":"0"}}]})"),
                  InvariantViolation);

  try {
    parse_map_spec(R"({"type":"torus","matrix":[[2,1],[1,1]]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("translation") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_map_spec("{not json"), ParseError);
  CHECK_THROWS_AS(parse_map_spec(R"({"type":"sphere"})"), ParseError);
  CHECK_THROWS_AS(parse_map_spec(R"({"type":"torus","matrix":[[2,1],[1,1]],"translation":["0","3"]})"), Error);
  CHECK_THROWS_AS(parse_map_spec(R"({"type":"frobenius","p":2,"q":4,"word":[]})"), ParseError);
  CHECK_THROWS_AS(parse_map_spec(R"({"type":"frobenius","p":4,"word":[]})"), ParseError);

  const auto frob = parse_map_spec(
      R"({"type":"frobenius","p":2,"q":2,"word":[{"transvection":{"side":"upper","additive":["0","1"]}},{"diag":["t","t+1"]}],"translation":["t","0"]})");
  CHECK(spec_characteristic(frob) == 2);
  const auto ff = parse_map_spec(R"({"type":"torus","p":3,"matrix":[[0,1],[1,1]],"translation":["t","2"]})");
  CHECK(spec_characteristic(ff) == 3);
}

TEST_CASE("sample specs round-trip through serialization") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(samples)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    INFO(entry.path().string());
    const MapSpec spec = parse_map_spec(ss.str());
    const Json once = serialize_map_spec(spec);
    const MapSpec again = parse_map_spec(once.dump());
    CHECK(again == spec);
    CHECK(serialize_map_spec(again) == once);
    ++count;
  }
  CHECK(count >= 6);
}

TEST_CASE("ranges, points and varieties") {
  CHECK(parse_range("-200:200") == std::pair<long, long>{-200, 200});
  CHECK(parse_range("3:3") == std::pair<long, long>{3, 3});
  CHECK_THROWS_AS(parse_range("5:1"), ParseError);
  CHECK_THROWS_AS(parse_range("a:b"), ParseError);
  CHECK_THROWS_AS(parse_range("7"), ParseError);
  CHECK(parse_pair<Rational>("2/3, 5", 0)[0] == Rational(2, 3));
  CHECK_THROWS_AS(parse_pair<Rational>("1,2,3", 0), ParseError);
  CHECK(parse_pair<RationalFunction>("t^2+1,t", 2)[1] == RationalFunction::t(2));
  CHECK(split_start("1,1;2,3").second == "2,3");
  const auto v = parse_variety<Rational>(R"({"polynomials":[{"terms":[[1,0,0,0,"1"],[0,0,-1,0,"-1"]]}]})", 0);
  REQUIRE(v.size() == 1);
  CHECK(v[0][1].exps == std::vector<long>{0, 0, -1, 0});
  CHECK(v[0][1].coeff == -1);
  CHECK_THROWS_AS(parse_variety<Rational>(R"({"polynomials":[{"terms":[[1,0,0,"1"]]}]})", 0), ParseError);
  CHECK(parse_quadratic(Json::parse(R"({"rat":"3/2","surd":"1/2","D":5})")).radicand() == 5);
}

TEST_CASE("analyze reports the dynamical data") {
  const Json r = run_ok({"analyze", sample("torus_cat.json")})["results"];
  CHECK(r["dynamical_degree"]["decimal"] == "2.61803398875");
  CHECK(r["dynamical_degree"]["exact"]["rat"] == "3/2");
  CHECK(r["loxodromic"] == true);
  CHECK(r["mobius_fixed_points"]["v_plus"]["decimal"] == "1.61803398875");
  CHECK(r["eigenweight"]["t"]["decimal"] == "0.61803398875");

  const Json h = run_ok({"analyze", sample("henon_composite.json")})["results"];
  CHECK(h["dynamical_degree"] == 6);
  const Json g = run_ok({"analyze", sample("frobenius_f2.json")})["results"];
  CHECK(g["canonical_form"]["translation"][0] == "t");
}

TEST_CASE("height and valuation commands") {
  const Json r = run_ok({"height", "--point", "2/3,5"})["results"];
  CHECK(r["height"]["H"] == "15");
  CHECK(r["height"]["decimal"] == "2.7080502011");
  const Json f = run_ok({"height", "--point", "t^2+1,1/t", "--char", "3"})["results"];
  CHECK(f["height"]["exact"] == "3");  // (t : t^3 + t : 1)

  const Json v = run_ok({"valuation", "--poly", R"([[1,0,"1"],[0,1,"1"]])", "--weight", R"(["1","2"])"})["results"];
  CHECK(v["value"]["rat"] == "1");
  const Json e = run_ok({"valuation", sample("torus_cat.json"), "--poly", R"([[1,0,"1"],[0,1,"1"]])"})["results"];
  CHECK(e["functoriality"]["holds"] == true);
  CHECK(run_command({"valuation", "--poly", R"([[1,0,"1"]])"}).exit_code == 2);
}

TEST_CASE("orbit command") {
  const Json r = run_ok({"orbit", sample("torus_cat.json"), "--point", "1,1", "--range", "0:3", "--place", "p:2"})["results"];
  REQUIRE(r["rows"].size() == 4);
  CHECK(r["rows"][1]["point"] == "2,3");
  CHECK(r["rows"][1]["u"][0]["ord"] == "1");
  const Json h = run_ok({"orbit", sample("henon_square.json"), "--point", "1,0", "--range", "0:3"})["results"];
  CHECK(h["rows"][3]["point"] == "1,2");
  CHECK(h["rows"][1]["u"][0] == nullptr);

  const Json cut = run_ok({"--max-digits", "20", "orbit", sample("henon_square.json"), "--point", "1,0", "--range", "0:40"});
  CHECK(cut["results"]["truncated"] == true);
  CHECK_FALSE(cut["warnings"].empty());
}

TEST_CASE("intersect on the g = f^2 instance") {
  const std::string report = temp_file("report.json", "");
  const auto run = run_command({"intersect", sample("torus_cat.json"), sample("torus_cat_squared.json"), "--p", "1,1",
                                "--q", "1,1", "--window", "0:40", "--window-g", "0:20", "--report", report});
  REQUIRE(run.exit_code == 0);
  const Json r = Json::parse(run.out)["results"];
  CHECK(r["count"] == 21);
  CHECK(r["decomposition"]["progressions"].size() == 1);
  CHECK(r["decomposition"]["progressions"][0]["step"] == 2);
  CHECK(r["certificate"]["N"] == 2);
  CHECK(r["certificate"]["M"] == 1);
  CHECK(r["spectral_compatibility"]["trace"] == "47");
  std::ifstream in(report);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run.out);

  const Json self = run_ok({"intersect", sample("torus_cat.json"), sample("torus_cat.json"), "--window", "0:30"})["results"];
  CHECK(self["offset_bound"]["C"] == 1);
}

TEST_CASE("common-iterate and dml commands") {
  const Json c = run_ok({"common-iterate", sample("torus_cat.json"), sample("torus_other_field.json"), "--bound", "12"})["results"];
  CHECK(c["certificate"] == nullptr);
  CHECK(c["spectral_compatibility"] == nullptr);
  const Json h = run_ok({"common-iterate", sample("henon_square.json"), sample("henon_square.json"), "--bound", "3"})["results"];
  CHECK(h["certificate"]["N"] == 1);

  const Json d = run_ok({"dml", sample("torus_cat.json"), sample("torus_cat.json"), "--variety",
                         sample("varieties/diagonal.json"), "--start", "1,1;1,1", "--window", "0:500"})["results"];
  CHECK(d["count"] == 501);
  CHECK(d["decomposition"]["progressions"][0]["step"] == 1);
  const Json g = run_ok({"dml", sample("torus_cat.json"), sample("torus_cat_squared.json"), "--variety",
                         sample("varieties/graph_of_cat.json"), "--start", "1,1;1,1", "--window", "0:60"})["results"];
  CHECK(g["decomposition"]["sporadic"] == Json::array({1}));
}

TEST_CASE("exit codes") {
  CHECK(run_command({"analyze", sample("missing.json")}).exit_code == 2);
  CHECK(run_command({"analyze", temp_file("det0.json", R"({"type":"torus","matrix":[[2,1],[2,1]],"translation":["2","3"]})")})
            .exit_code == 2);
  CHECK(run_command({"frobnicate"}).exit_code == 2);
  CHECK(run_command({"height"}).exit_code == 2);
  CHECK(run_command({"height", "--point", "0,0"}).exit_code == 0);
  CHECK(run_command({"intersect", sample("torus_cat.json"), sample("henon_square.json")}).exit_code == 2);
  CHECK(run_command({"intersect", sample("torus_cat.json"), sample("torus_f3.json")}).exit_code == 2);
  CHECK(run_command({"--max-window", "100", "intersect", sample("torus_cat.json"), sample("torus_cat.json"), "--window",
                     "0:20"})
            .exit_code == 3);
  CHECK(run_command({"analyze", "--help"}).exit_code == 0);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args{"intersect", sample("torus_cat.json"), sample("torus_cat.json"), "--window", "-30:30"};
  const auto a = run_command(args), b = run_command(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["inputs_digest"] == Json::parse(b.out)["inputs_digest"]);
  const auto other = run_command({"intersect", sample("torus_cat.json"), sample("torus_cat.json"), "--window", "-30:29"});
  CHECK(Json::parse(other.out)["inputs_digest"] != Json::parse(a.out)["inputs_digest"]);
}
