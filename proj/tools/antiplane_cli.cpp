// antiplane: analyze | solve | verify | sweep
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "antiplane/config.hpp"
#include "antiplane/workflows.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Anti-plane shear of incompressible hyperelastic bodies"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string solution;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--seed", seed, "restart seed (overrides solver.seed)");
  };

  auto* analyze = app.add_subcommand("analyze", "ellipticity scan and Knowles constraint fit");
  auto* solve = app.add_subcommand("solve", "minimize the total potential");
  auto* verify = app.add_subcommand("verify", "check a solution against the 3D equilibrium system");
  auto* sweep = app.add_subcommand("sweep", "residuals over the axial pressure gradient c");
  for (auto* sub : {analyze, solve, verify, sweep}) add_common(sub);
  verify->add_option("--solution", solution, "field CSV (default <out>/field.csv)");
  sweep->add_option("--solution", solution, "field CSV (solved in-process when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : antiplane::kExitConfig;
  }

  antiplane::ExperimentConfig cfg;
  try {
    cfg = antiplane::load_config(config_path);
  } catch (const antiplane::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return antiplane::kExitConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--seed")) cfg.solver.seed = seed;
  if (!out_dir.empty()) cfg.output_dir = out_dir;

  antiplane::RunOptions opt;
  opt.out_dir = cfg.output_dir;
  if (!solution.empty()) opt.solution = solution;
  return antiplane::run_command(chosen->get_name(), cfg, opt);
}
