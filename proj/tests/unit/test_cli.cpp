#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ahlab/cli.hpp"
#include "ahlab/manifold.hpp"
#include "ahlab/report.hpp"

using namespace ah;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* json_out = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (json_out) *json_out = out.str();
  return code;
}

}  // namespace

TEST_CASE("exit codes: pass, usage error, unknown manifold") {
  CHECK(run_cli({"catalog"}) == 0);
  CHECK(run_cli({"verify", "axioms", "--manifold", "flat_c1", "--points", "3",
                 "--seed", "7"}) == 0);
  CHECK(run_cli({"verify", "axioms", "--manifold", "no_such_thing"}) == 2);
  CHECK(run_cli({"bogus_subcommand"}) == 2);
  CHECK(run_cli({"wu", "--samples", "5"}) == 2);           // missing --g/--h
  CHECK(run_cli({"frames", "--order", "11"}) == 2);        // invalid order
  CHECK(run_cli({"product", "--a", "2.0", "--samples", "2"}) == 2);  // positivity
  CHECK(run_cli({"augment", "--manifold", "twisted_torus"}) == 2);   // no standard J
}

TEST_CASE("manifold config files load through --manifold") {
  const auto tt = find_manifold("twisted_torus");
  const std::string path = (std::filesystem::temp_directory_path() /
                            "ahlab_test_manifold.json").string();
  {
    std::ofstream f(path);
    f << tt.config_text();
  }
  CHECK(run_cli({"frames", "--manifold", path, "--points", "2", "--seed", "7"}) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("--out writes the report file") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "ahlab_report.json").string();
  CHECK(run_cli({"forms", "--manifold", "flat_c1", "--points", "2", "--seed", "3",
                 "--out", path}) == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  nlohmann::json j;
  f >> j;
  CHECK(j["status"] == "pass");
  std::filesystem::remove(path);
}

TEST_CASE("determinism: identical reports modulo timing") {
  const std::vector<std::vector<std::string>> invocations = {
      {"verify", "axioms", "--manifold", "kahler_exp", "--points", "4", "--seed", "11"},
      {"curvature", "compare", "--manifold", "twisted_torus", "--points", "3",
       "--seed", "11"},
      {"wu", "--g", "flat_cn", "--h", "kahler_exp", "--samples", "20", "--seed", "11"},
  };
  for (const auto& args : invocations) {
    std::string a, b;
    CHECK(run_cli(args, &a) == 0);
    CHECK(run_cli(args, &b) == 0);
    const auto ja = strip_timing(nlohmann::json::parse(a));
    const auto jb = strip_timing(nlohmann::json::parse(b));
    CHECK(ja.dump() == jb.dump());
  }
}

TEST_CASE("report schema carries the required fields") {
  std::string text;
  CHECK(run_cli({"frames", "--manifold", "flat_c1", "--points", "2", "--seed", "5"},
                &text) == 0);
  const auto j = nlohmann::json::parse(text);
  CHECK(j["tool"] == "ahlab");
  CHECK(j["manifold"] == "flat_c1");
  CHECK(j["seed"] == 5);
  CHECK(j["jet_order"] == 3);
  REQUIRE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("samples"));
    CHECK(c.contains("pass"));
    CHECK(c.contains("elapsed_ms"));
  }
}
