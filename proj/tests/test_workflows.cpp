#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "antiplane/config.hpp"
#include "antiplane/io.hpp"
#include "antiplane/workflows.hpp"

using namespace antiplane;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("antiplane_unit_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

ExperimentConfig config(const std::string& name) {
  return load_config(std::string(ANTIPLANE_SOURCE_DIR) + "/configs/" + name);
}
}  // namespace

TEST_CASE("analyze writes the constitutive reports") {
  auto cfg = parse_config(nlohmann::json::parse(R"({"model": {"family": "mooney_rivlin", "params": {"c1": 1.0, "c2": 0.5}}})"));
  const fs::path out = scratch("analyze");
  CHECK(run_command("analyze", cfg, RunOptions{out, std::nullopt}) == kExitOk);
  const auto j = read_json(out / "analysis_report.json");
  CHECK(j["knowles"]["b_fit"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(j["ellipticity"]["elliptic_everywhere"].get<bool>());
  CHECK(fs::exists(out / "ellipticity.csv"));
  CHECK(fs::exists(out / "knowles.csv"));
  CHECK(fs::exists(out / "analysis_summary.md"));
}

TEST_CASE("solve, verify and sweep on the harmonic configuration") {
  auto cfg = config("harmonic_neo_hookean.json");
  const fs::path out = scratch("harmonic");
  const RunOptions opt{out, std::nullopt};
  REQUIRE(run_command("solve", cfg, opt) == kExitOk);
  const auto solve = read_json(out / "solve_report.json");
  CHECK(solve["exact_max_error"].get<double>() <= 1e-7);
  CHECK(solve["el_residual"]["certificate_holds"].get<bool>());
  // the embedded config reproduces the run
  CHECK(to_json(parse_config(solve["config"])) == to_json(cfg));
  const Field u = read_field_csv(out / "field.csv");
  CHECK(u.nx == 33);

  REQUIRE(run_command("verify", cfg, opt) == kExitOk);
  const auto verify = read_json(out / "equilibrium_report.json");
  CHECK(verify["compatibility"]["verdict"] == "consistent");
  CHECK(verify["compatibility"]["pbar_spread"].get<double>() <= 1e-8);

  REQUIRE(run_command("sweep", cfg, RunOptions{out, out / "field.csv"}) == kExitOk);
  CHECK(read_json(out / "sweep_report.json")["argmin_c"].get<double>() == 0.0);
}

TEST_CASE("restart report is sorted by energy") {
  auto cfg = config("double_well_restarts.json");
  cfg.adjudicator.refinement = false;
  const fs::path out = scratch("restarts");
  REQUIRE(run_command("solve", cfg, RunOptions{out, std::nullopt}) == kExitOk);
  const auto j = read_json(out / "solve_report.json");
  const auto& rs = j["restarts_by_energy"];
  REQUIRE(rs.size() == static_cast<std::size_t>(cfg.solver.restarts));
  for (std::size_t k = 1; k < rs.size(); ++k)
    CHECK(rs[k - 1]["final_energy"].get<double>() <= rs[k]["final_energy"].get<double>());
  CHECK(rs[0]["final_energy"].get<double>() == j["best"]["final_energy"].get<double>());
}

TEST_CASE("load path is reported per scale") {
  auto cfg = config("traction_path.json");
  const fs::path out = scratch("path");
  REQUIRE(run_command("solve", cfg, RunOptions{out, std::nullopt}) == kExitOk);
  const auto j = read_json(out / "solve_report.json");
  REQUIRE(j["path"].size() == cfg.load_scales.size());
}

TEST_CASE("exit codes") {
  auto cfg = config("harmonic_neo_hookean.json");
  const fs::path out = scratch("codes");
  SUBCASE("missing domain") {
    auto c = cfg;
    c.domain.reset();
    CHECK(run_command("solve", c, RunOptions{out, std::nullopt}) == kExitConfig);
  }
  SUBCASE("unknown command") { CHECK(run_command("explode", cfg, RunOptions{out, std::nullopt}) == kExitConfig); }
  SUBCASE("solution on the wrong grid") {
    write_field_csv(Field(5, 5, 0.25), out / "small.csv");
    CHECK(run_command("verify", cfg, RunOptions{out, out / "small.csv"}) == kExitConfig);
    CHECK(run_command("sweep", cfg, RunOptions{out, out / "small.csv"}) == kExitConfig);
  }
  SUBCASE("missing solution file") {
    CHECK(run_command("verify", cfg, RunOptions{out, out / "nothing.csv"}) == kExitConfig);
  }
  SUBCASE("iteration cap") {
    auto c = cfg;
    c.solver.max_iters = 2;
    c.solver.newton_polish = false;
    CHECK(run_command("solve", c, RunOptions{out, std::nullopt}) == kExitNumerical);
    CHECK(fs::exists(out / "field.csv"));
  }
}

TEST_CASE("repeated runs write identical reports") {
  auto cfg = config("double_well_restarts.json");
  cfg.adjudicator.refinement = false;
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  for (const auto& out : {a, b}) {
    REQUIRE(run_command("solve", cfg, RunOptions{out, std::nullopt}) == kExitOk);
    REQUIRE(run_command("verify", cfg, RunOptions{out, std::nullopt}) == kExitOk);
    REQUIRE(run_command("sweep", cfg, RunOptions{out, out / "field.csv"}) == kExitOk);
  }
  for (const char* f : {"field.csv", "solve_report.json", "equilibrium_report.json", "sweep_report.json", "pbar.csv"})
    CHECK_MESSAGE(slurp(a / f) == slurp(b / f), f);
}
