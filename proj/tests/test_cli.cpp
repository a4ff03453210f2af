#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gridhfl/cli.hpp"
#include "support.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gridhfl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gridhfl_test_" + name)).string();
}

}  // namespace

TEST_CASE("info") {
  const auto r = run({"info", testing::data_path("hopf.grid")});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["generators"] == 24);
  CHECK(j["empty_rectangles"] == 16);
  CHECK(j["components"].size() == 2);
  CHECK(j["n"] == 4);

  const auto text = run({"info", testing::data_path("unlink2.grid"), "--format", "text"});
  CHECK(text.code == 0);
  CHECK(text.out.find("generators\t2") != std::string::npos);
}

TEST_CASE("unlink homology over the integers") {
  const auto r = run({"homology", testing::data_path("unlink2.grid"), "--class", "all", "--ring", "z", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["classes"].size() == 2);
  int torsion_blocks = 0, free_blocks = 0;
  for (const auto& c : j["classes"]) {
    const auto& groups = c["groups"];
    if (groups.size() == 1 && groups[0]["free"] == 0 && groups[0]["torsion"] == nlohmann::json({2})) ++torsion_blocks;
    if (groups.size() == 2 && groups[0]["free"] == 1 && groups[1]["free"] == 1 && groups[0]["torsion"].empty() &&
        groups[1]["torsion"].empty()) {
      ++free_blocks;
    }
  }
  CHECK(torsion_blocks == 1);
  CHECK(free_blocks == 1);
}

TEST_CASE("JSON output is byte stable") {
  const std::vector<std::string> args{"homology", testing::data_path("hopf.grid"), "--divide-q", "--jobs", "3"};
  const auto a = run(args);
  const auto b = run({"homology", testing::data_path("hopf.grid"), "--divide-q", "--jobs", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run({"info", testing::data_path("trefoil.grid")}).out == run({"info", testing::data_path("trefoil.grid")}).out);
}

TEST_CASE("TSV and collapsed output") {
  const auto r = run({"homology", testing::data_path("trefoil.grid"), "--ring", "f2", "--divide-q", "--format", "tsv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("class\tmaslov\talexander2\tfree\ttorsion\n", 0) == 0);
  CHECK(r.out.find("# quotient") != std::string::npos);

  const auto c = run({"homology", testing::data_path("hopf.grid"), "--collapse-alexander"});
  REQUIRE(c.code == 0);
  const auto j = nlohmann::json::parse(c.out);
  for (const auto& cls : j["classes"]) {
    for (const auto& g : cls["groups"]) CHECK(g["a2"].size() == 1);
  }
}

TEST_CASE("validation errors exit with 2") {
  const auto r = run({"signs", testing::data_path("unlink2.grid"), "--class", "r=+,-"});
  CHECK(r.code == 2);
  CHECK(r.err.find("product of component signs must be +1") != std::string::npos);

  CHECK(run({"signs", testing::data_path("unlink2.grid"), "--class", "r=+"}).code == 2);
  CHECK(run({"signs", testing::data_path("unlink2.grid"), "--class", "r=+,x"}).code == 2);
  CHECK(run({"info", temp_path("does_not_exist.grid")}).code == 2);
  CHECK(run({"homology", testing::data_path("hopf.grid"), "--ring", "q"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);

  const auto bad = temp_path("bad.grid");
  std::ofstream(bad) << "N = 2\nX = 1 1\nO = 2 2\n";
  const auto b = run({"info", bad});
  CHECK(b.code == 2);
  CHECK(b.err.find("NotAPermutation") != std::string::npos);
  std::remove(bad.c_str());
}

TEST_CASE("signs round trip through verify") {
  const auto out = temp_path("hopf.signs");
  const auto r = run({"signs", testing::data_path("hopf.grid"), "--class", "r=-,-", "-o", out});
  REQUIRE(r.code == 0);
  const auto v = run({"verify", testing::data_path("hopf.grid"), "--signs", out});
  CHECK(v.code == 0);
  CHECK(v.out.find("supplied sign assignment satisfies") != std::string::npos);

  // Flip one sign in the file: verify must now fail with an internal-violation code.
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  const auto pos = text.find("\t+1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 3, "\t-1");
  std::ofstream(out) << text;
  const auto broken = run({"verify", testing::data_path("hopf.grid"), "--signs", out});
  CHECK(broken.code == 3);
  CHECK(broken.out.find("FAIL") != std::string::npos);

  // Signs for another grid are rejected as input errors.
  CHECK(run({"verify", testing::data_path("trefoil.grid"), "--signs", out}).code == 2);
  std::remove(out.c_str());

  const auto multi = temp_path("both.signs");
  CHECK(run({"signs", testing::data_path("hopf.grid"), "--class", "all", "-o", multi}).code == 0);
  CHECK(std::filesystem::exists(multi + ".1"));
  CHECK(std::filesystem::exists(multi + ".2"));
  std::remove((multi + ".1").c_str());
  std::remove((multi + ".2").c_str());
}

TEST_CASE("verify suites") {
  const auto hopf = run({"verify", testing::data_path("hopf.grid"), "--suite", "full"});
  CHECK(hopf.code == 0);
  CHECK(hopf.out.find("homology identical across 2 weak classes") != std::string::npos);
  CHECK(hopf.out.find("FAIL") == std::string::npos);

  const auto unlink = run({"verify", testing::data_path("unlink2.grid"), "--suite", "full"});
  CHECK(unlink.code == 0);
  CHECK(unlink.out.find("homology differs across 2 weak classes") != std::string::npos);

  for (const char* name : {"g1.grid", "unknot2.grid", "trefoil.grid", "figure8.grid", "link6.grid"}) {
    CHECK(run({"verify", testing::data_path(name)}).code == 0);
  }
}
