#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = locfin::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("gallery listing") {
  const Run r = call({"gallery", "list"});
  REQUIRE(r.code == locfin::cli::kOk);
  const json j = json::parse(r.out);
  CHECK(j.at("schema_version").is_number());
  CHECK(j.at("categories").size() >= 5);
  CHECK(j.at("modules").size() >= 5);
}

TEST_CASE("verdict exit codes") {
  CHECK(call({"validate", "--category", "gallery:chainA", "--window", "4"}).code == locfin::cli::kOk);
  const Run f = call({"frontier", "--category", "gallery:zneg", "--window", "-8..-1", "--object", "-1"});
  CHECK(f.code == locfin::cli::kRefuted);
  CHECK(json::parse(f.out).at("verdict").at("status") == "Refuted");
  const Run z = call({"frontier", "--category", "gallery:zchain", "--window", "-4..4", "--object", "0"});
  CHECK(z.code == locfin::cli::kOk);
  CHECK(json::parse(z.out).at("frontier").at("members") == json::array({"-001"}));
  CHECK(call({"lift", "--to", "comodule", "--module", "gallery:zchain/N", "--window", "-3..3"}).code ==
        locfin::cli::kRefuted);
  CHECK(call({"coalgebra", "--category", "gallery:chainA", "--window", "3", "--part", "long"}).code ==
        locfin::cli::kOk);
}

TEST_CASE("a module file whose support leaves the window") {
  const Run r = call({"lift", "--to", "comodule", "--module", std::string(LOCFIN_DATA_DIR) + "/n-chain-module.json"});
  CHECK(r.code == locfin::cli::kInconclusive);
  CHECK(json::parse(r.out).at("decision") == "WindowLeak");
}

TEST_CASE("module files round trip through the command line") {
  const Run g = call({"gallery", "module", "zneg/const", "--window", "-4..-1"});
  REQUIRE(g.code == locfin::cli::kOk);
  const auto path = std::filesystem::temp_directory_path() / "locfin-cli-const.json";
  std::ofstream(path) << g.out;
  CHECK(call({"validate", "--module", path.string()}).code == locfin::cli::kOk);
  const Run d = call({"dualize", "--module", path.string()});
  REQUIRE(d.code == locfin::cli::kOk);
  std::ofstream(path) << d.out;
  const Run dd = call({"dualize", "--module", path.string()});
  // Dualizing forgets the declared support tag.
  json orig = json::parse(g.out);
  orig.erase("declared");
  CHECK(json::parse(dd.out) == orig);
  std::filesystem::remove(path);
}

TEST_CASE("input and usage errors") {
  CHECK(call({"frobnicate"}).code == locfin::cli::kUsage);
  CHECK(call({}).code == locfin::cli::kUsage);
  CHECK(call({"lift", "--to", "sideways", "--module", "gallery:zchain/N", "--window", "-3..3"}).code ==
        locfin::cli::kUsage);
  const Run g = call({"gallery", "show", "nosuchcategory"});
  CHECK(g.code == locfin::cli::kInputError);
  CHECK(json::parse(g.err).contains("error"));
  CHECK(call({"validate", "--module", "/nonexistent/file.json"}).code == locfin::cli::kInputError);
}

TEST_CASE("seeded output is deterministic") {
  const std::vector<std::string> args = {"exttest", "--kind", "contrafinite-left", "--trials", "6", "--seed", "11"};
  const Run a = call(args);
  const Run b = call(args);
  CHECK(a.code == locfin::cli::kOk);
  CHECK(a.out == b.out);
  ::setenv("LOCFIN_SEED", "11", 1);
  const Run c = call({"exttest", "--kind", "contrafinite-left", "--trials", "6", "--seed", "999"});
  ::unsetenv("LOCFIN_SEED");
  CHECK(json::parse(c.out).at("seed") == 11);
  CHECK(json::parse(c.out).at("passed") == json::parse(a.out).at("passed"));
}

TEST_CASE("claims report") {
  const Run r = call({"report"});
  CHECK(r.code == locfin::cli::kOk);
  CHECK(json::parse(r.out).at("all_ok") == true);
}
