#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "periodic_homology/cli.hpp"

using namespace periodic_homology;
using namespace periodic_homology::cli;

namespace {

std::string data(const std::string& name) { return std::string(PH_DATA_DIR) + "/" + name; }

nlohmann::json out_json(const CommandResult& r) { return nlohmann::json::parse(r.out); }
nlohmann::json err_json(const CommandResult& r) { return nlohmann::json::parse(r.err); }

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = std::string(CLI_TMP_DIR) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("validate") {
  auto r = cmd_validate(data("kagome.wqg.json"));
  CHECK(r.exit_code == 0);
  auto j = out_json(r);
  CHECK(j["kind"] == "wqg");
  CHECK(j["valid"] == true);
  CHECK(j["cells_per_dimension"] == nlohmann::json{3, 6});
  CHECK(j["offset_bound"] == 1);

  r = cmd_validate(data("planes.template.json"));
  CHECK(r.exit_code == 0);
  CHECK(out_json(r)["cells_per_dimension"] == nlohmann::json{1, 3, 2});

  r = cmd_validate(data("corrupted_torus.template.json"));
  CHECK(r.exit_code == 1);
  j = out_json(r);
  CHECK(j["valid"] == false);
  REQUIRE(j["violations"].size() >= 1);
  CHECK(j["violations"][0]["cell"] == "s");
  CHECK(j["violations"][0]["face"] == "v");
}

TEST_CASE("input errors map to exit codes") {
  auto r = cmd_validate(data("does_not_exist.json"));
  CHECK(r.exit_code == 2);
  CHECK(err_json(r)["error"] == "IOError");
  r = cmd_validate(temp_file("broken.json", "{ not json"));
  CHECK(r.exit_code == 2);
  CHECK(err_json(r)["error"] == "ParseError");
  r = cmd_homology(data("torus.template.json"), HomologyOptions{{2}, Flavor::periodic, "rational", 50});
  CHECK(r.exit_code == 1);
  CHECK(err_json(r)["error"] == "DimensionMismatch");
  r = cmd_homology(data("torus.template.json"), HomologyOptions{{2, 2}, Flavor::periodic, "4", 50});
  CHECK(r.exit_code == 2);
  r = cmd_homology(data("corrupted_torus.template.json"), HomologyOptions{{2, 2}, Flavor::periodic, "rational", 50});
  CHECK(r.exit_code == 1);
  CHECK(err_json(r)["error"] == "BoundarySquareNonzero");
  r = cmd_wqg_analyze(data("torus.template.json"));
  CHECK(r.exit_code == 2);
  MvssOptions bad;
  bad.n = {2, 2};
  bad.report = "everything";
  CHECK(cmd_mvss(data("torus.template.json"), bad).exit_code == 2);
}

TEST_CASE("wqg-analyze on Kagome") {
  WqgAnalyzeOptions opt;
  opt.window = ZVector{3, 3};
  opt.verify = true;
  const auto r = cmd_wqg_analyze(data("kagome.wqg.json"), opt);
  REQUIRE(r.exit_code == 0);
  const auto j = out_json(r);
  CHECK(j["beta0"] == 1);
  CHECK(j["h1_count"] == 3);
  CHECK(j["components"][0]["index"] == 1);
  CHECK(j["window"]["beta0"] == 1);
  CHECK(j["window"]["beta1"] == 28);
  CHECK(j["window"]["verify"]["matches"] == true);
}

TEST_CASE("wqg-analyze on the interwoven lattices") {
  WqgAnalyzeOptions opt;
  opt.window = ZVector{1, 1, 1};
  opt.verify = true;
  auto j = out_json(cmd_wqg_analyze(data("interwoven_B.wqg.json"), opt));
  CHECK(j["components"][0]["index"] == 2);
  CHECK(j["beta0"] == 2);
  CHECK(j["window"]["beta0"] == 1);
  CHECK(j["window"]["beta1"] == 3);
  opt.window = ZVector{2, 1, 3};
  j = out_json(cmd_wqg_analyze(data("interwoven_D.wqg.json"), opt));
  CHECK(j["beta0"] == 2);
  CHECK(j["window"]["beta1"] == 4 * 6 + 2);
  CHECK(j["window"]["verify"]["matches"] == true);
}

TEST_CASE("wqg-analyze with infinitely many components") {
  const auto r = cmd_wqg_analyze(data("lone_vertex.wqg.json"));
  CHECK(r.exit_code == 0);
  const auto j = out_json(r);
  CHECK(j["h1_count"].is_null());
  CHECK(j["h1_error"] == "InfiniteComponents");
}

TEST_CASE("homology") {
  auto r = cmd_homology(data("planes.template.json"), HomologyOptions{{3, 3, 3}, Flavor::periodic, "rational", 5});
  REQUIRE(r.exit_code == 0);
  auto j = out_json(r);
  CHECK(j["betti"] == nlohmann::json{1, 11, 10});
  CHECK(j["euler_characteristic"] == 0);
  CHECK(j["generators"].size() == 5);
  CHECK(j["truncated"]["omitted"] == 17);
  r = cmd_homology(data("planes.template.json"), HomologyOptions{{4, 4, 4}, Flavor::truncated, "2", 0});
  REQUIRE(r.exit_code == 0);
  j = out_json(r);
  CHECK(j["betti"][0] == 1);
  CHECK(j["field"] == "F_2");
}

TEST_CASE("mvss on the torus") {
  MvssOptions opt;
  opt.n = {3, 3};
  const auto r = cmd_mvss(data("torus.template.json"), opt);
  REQUIRE(r.exit_code == 0);
  const auto j = out_json(r);
  CHECK(j["godement"]["ok"] == true);
  CHECK(j["godement"]["betti"] == nlohmann::json{1, 2, 1});
  CHECK(j["total_complex"]["ok"] == true);
  CHECK(j["toroidal"]["candidates_per_degree"] == nlohmann::json{0, 2, 1});
  CHECK(j["pages"].size() == j["stabilization_page"].get<std::size_t>() + 1);
  CHECK(cmd_mvss(data("torus.template.json"), opt).out == r.out);
}

TEST_CASE("scaling") {
  ScalingOptions opt;
  opt.sizes = {5, 6, 7};
  auto r = cmd_scaling(data("torus.template.json"), opt);
  REQUIRE(r.exit_code == 0);
  auto j = out_json(r);
  CHECK(j["betti_exponent"].get<double>() == Catch::Approx(0.0).margin(1e-9));
  CHECK(j["warnings"].empty());
  opt.sizes = {4, 5};
  r = cmd_scaling(data("torus.template.json"), opt);
  CHECK(r.exit_code == 1);
  CHECK(err_json(r)["error"] == "InsufficientData");
  opt.sizes = {2, 3, 4};
  r = cmd_scaling(data("torus.template.json"), opt);
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
}
