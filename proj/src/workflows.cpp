#include "antiplane/workflows.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>

#include "antiplane/adjudicator.hpp"
#include "antiplane/discretization.hpp"
#include "antiplane/io.hpp"

namespace antiplane {

using nlohmann::json;

namespace {

json slope_json(const std::optional<double>& s) {
  if (!s) return nullptr;
  if (std::isinf(*s)) return "inf";
  return *s;
}

json solve_report_json(const SolveReport& r) {
  return json{{"converged", r.converged},
              {"iterations", r.iterations},
              {"newton_steps", r.newton_steps},
              {"final_energy", r.final_energy},
              {"final_grad_norm", r.final_grad_norm},
              {"restart_index", r.restart_index},
              {"el_interior_norm", r.el_interior_norm},
              {"el_traction_norm", r.el_traction_norm},
              {"certificate_bound", r.certificate_bound},
              {"energy_history", r.energy_history}};
}

json restart_summary(const SolveReport& r) {
  return json{{"restart_index", r.restart_index},
              {"final_energy", r.final_energy},
              {"converged", r.converged},
              {"iterations", r.iterations},
              {"final_grad_norm", r.final_grad_norm}};
}

const DomainConfig& require_domain(const ExperimentConfig& cfg) {
  if (!cfg.domain) throw ConfigError("this command needs a 'domain' section");
  return *cfg.domain;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string interval_text(const FailureInterval& f) { return "[" + fmt17(f.lo) + ", " + fmt17(f.hi) + "]"; }

json compatibility_json(const EquilibriumReport& r) {
  return json{{"c", r.c},
              {"curl_residual", r.curl_residual},
              {"curl_floor", r.curl_floor},
              {"pbar_closure_error", r.pbar_closure_error},
              {"pbar_spread", r.pbar_spread},
              {"res_x1", r.res_x1},
              {"res_x2", r.res_x2},
              {"res_x3", r.res_x3},
              {"area", r.area},
              {"verdict", to_string(r.verdict)},
              {"refinement_slope", slope_json(r.refinement_slope)}};
}

Field solve_or_throw(const ExperimentConfig& cfg, const Domain& d, const MaterialModel& model) {
  auto result = minimize(initial_field(d), d, model, cfg.solver);
  if (!result.report.converged) throw DivergedError("solver did not reach grad_tol", result.u);
  return std::move(result.u);
}

}  // namespace

int run_analyze(const ExperimentConfig& cfg, const RunOptions& opt) {
  const MaterialModel model = make_model(cfg.model);
  const auto& a = cfg.analysis;
  const auto ell = ellipticity_scan(model, a.gamma_max, a.n_points);
  const auto kn = knowles_fit(model, a.gamma_max, a.n_points, a.knowles_tol);

  std::vector<std::vector<double>> ell_rows;
  std::vector<std::vector<double>> kn_rows;
  for (std::size_t k = 0; k < ell.gamma_grid.size(); ++k) {
    const double g = ell.gamma_grid[k];
    const auto w = partials(model, 3.0 + g * g, 3.0 + g * g);
    ell_rows.push_back({g, shear_energy(model, g), shear_stress(model, g), ell.modulus[k]});
    kn_rows.push_back({g, w.w1, w.w2, kn.b_fit * w.w1 + (kn.b_fit - 1.0) * w.w2});
  }
  std::vector<std::vector<double>> b_rows;
  for (const auto& [g, b] : kn.b_pointwise) b_rows.push_back({g, b});

  write_text(opt.out_dir / "ellipticity.csv", table_csv({"gamma", "shear_energy", "tau", "dtau_dgamma"}, ell_rows));
  write_text(opt.out_dir / "knowles.csv", table_csv({"gamma", "W1", "W2", "constraint_residual"}, kn_rows));
  write_text(opt.out_dir / "b_pointwise.csv", table_csv({"gamma", "b"}, b_rows));

  json intervals = json::array();
  for (const auto& f : ell.failure_intervals) intervals.push_back({f.lo, f.hi});
  const std::string restricted_note =
      "Differentiating the restricted energy W(3 + gamma^2, 3 + gamma^2) by the chain rule yields W_1 = W_2 and "
      "b = 1/2 for every model; under that reading the constraint holds trivially. b_fit uses the partial "
      "derivatives of W(I1, I2).";
  write_json(opt.out_dir / "analysis_report.json",
             json{{"config", to_json(cfg)},
                  {"ellipticity", {{"elliptic_everywhere", ell.elliptic_everywhere}, {"failure_intervals", intervals}}},
                  {"knowles",
                   {{"b_fit", kn.b_fit},
                    {"residual_sup", kn.residual_sup},
                    {"tol", a.knowles_tol},
                    {"constraint_satisfied", kn.constraint_satisfied}}},
                  {"restricted_reading_note", restricted_note}});

  std::ostringstream line;
  if (ell.elliptic_everywhere) {
    line << "elliptic everywhere";
  } else {
    line << "ellipticity fails on ";
    for (std::size_t k = 0; k < ell.failure_intervals.size(); ++k) {
      line << (k ? ", " : "") << interval_text(ell.failure_intervals[k]);
    }
  }
  line << "; b = " << fmt17(kn.b_fit) << "; residual " << fmt17(kn.residual_sup) << "; constraint "
       << (kn.constraint_satisfied ? "satisfied" : "not satisfied");

  std::ostringstream md;
  md << "# Constitutive analysis: " << model.family_name() << "\n\n"
     << "Summary: " << line.str() << "\n\n"
     << "| quantity | value |\n|---|---|\n"
     << "| gamma grid | " << a.n_points << " points on [0, " << fmt17(a.gamma_max) << "] |\n"
     << "| elliptic everywhere | " << (ell.elliptic_everywhere ? "yes" : "no") << " |\n"
     << "| b_fit | " << fmt17(kn.b_fit) << " |\n"
     << "| residual_sup | " << fmt17(kn.residual_sup) << " |\n"
     << "| tolerance | " << fmt17(a.knowles_tol) << " |\n\n"
     << restricted_note << "\n\n"
     << "Tables: ellipticity.csv (tau and dtau/dgamma samples), knowles.csv, b_pointwise.csv.\n";
  write_text(opt.out_dir / "analysis_summary.md", md.str());
  std::cout << line.str() << "\n";
  return kExitOk;
}

int run_solve(const ExperimentConfig& cfg, const RunOptions& opt) {
  const Domain d = make_domain(require_domain(cfg));
  const MaterialModel model = make_model(cfg.model);

  json report{{"config", to_json(cfg)}};
  Field u;
  SolveReport best;
  std::vector<SolveReport> restarts;
  try {
    if (!cfg.load_scales.empty()) {
      const auto path = solve_path(d, model, cfg.load_scales, cfg.solver);
      json steps = json::array();
      for (const auto& s : path) steps.push_back({{"scale", s.scale}, {"report", restart_summary(s.report)}});
      report["path"] = steps;
      u = path.back().u;
      best = path.back().report;
      restarts = {best};
    } else {
      auto result = minimize(initial_field(d), d, model, cfg.solver);
      u = std::move(result.u);
      best = result.report;
      restarts = std::move(result.restarts);
    }
  } catch (const DivergedError& e) {
    write_field_csv(e.last_iterate, opt.out_dir / "field_partial.csv");
    write_json(opt.out_dir / "solve_report.json",
               json{{"config", to_json(cfg)}, {"diverged", true}, {"partial_field", "field_partial.csv"},
                    {"message", e.what()}});
    throw;
  }

  std::sort(restarts.begin(), restarts.end(), [](const SolveReport& a, const SolveReport& b) {
    return a.final_energy < b.final_energy || (a.final_energy == b.final_energy && a.restart_index < b.restart_index);
  });
  json by_energy = json::array();
  for (const auto& r : restarts) by_energy.push_back(restart_summary(r));

  report["diverged"] = false;
  report["best"] = solve_report_json(best);
  report["restarts_by_energy"] = by_energy;
  report["el_residual"] = {{"interior_norm", best.el_interior_norm},
                           {"traction_norm", best.el_traction_norm},
                           {"certificate_bound", best.certificate_bound},
                           {"certificate_holds", best.el_interior_norm <= best.certificate_bound}};

  std::ostringstream md;
  md << "# Solve: " << model.family_name() << " on " << d.nx() << "x" << d.ny() << " grid, h = " << fmt17(d.h())
     << "\n\n"
     << "- converged: " << (best.converged ? "yes" : "no") << " (" << best.iterations << " CG iterations, "
     << best.newton_steps << " Newton steps)\n"
     << "- final energy: " << fmt17(best.final_energy) << "\n"
     << "- gradient norm: " << fmt17(best.final_grad_norm) << "\n"
     << "- Euler-Lagrange residual: interior " << fmt17(best.el_interior_norm) << ", traction "
     << fmt17(best.el_traction_norm) << "\n";

  if (cfg.exact_solution) {
    const auto exact = Expression::parse(*cfg.exact_solution);
    double err = 0.0;
    for (int j = 0; j < d.ny(); ++j) {
      for (int i = 0; i < d.nx(); ++i) err = std::max(err, std::abs(u.at(i, j) - exact(d.x1(i), d.x2(j))));
    }
    report["exact_max_error"] = err;
    md << "- max-norm error vs exact solution: " << fmt17(err) << "\n";
    std::cout << "max-norm error vs exact solution: " << fmt17(err) << "\n";
  }
  md << "\nRestart energies (ascending):\n\n";
  for (const auto& r : restarts) md << "- restart " << r.restart_index << ": " << fmt17(r.final_energy) << "\n";

  write_field_csv(u, opt.out_dir / "field.csv");
  write_json(opt.out_dir / "solve_report.json", report);
  write_text(opt.out_dir / "solve_summary.md", md.str());
  std::cout << "energy " << fmt17(best.final_energy) << ", converged " << (best.converged ? "yes" : "no") << "\n";
  return best.converged ? kExitOk : kExitNumerical;
}

int run_verify(const ExperimentConfig& cfg, const RunOptions& opt) {
  const DomainConfig& dc = require_domain(cfg);
  const Domain d = make_domain(dc);
  const MaterialModel model = make_model(cfg.model);
  const auto path = opt.solution.value_or(opt.out_dir / "field.csv");
  Field u;
  try {
    u = read_field_csv(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  if (u.nx != d.nx() || u.ny != d.ny() || u.h != d.h()) throw ConfigError("solution grid does not match the domain");

  const double c = cfg.adjudicator.c;
  const auto full = full_residual(u, d, model, PressureAnsatz{c, std::nullopt});
  EquilibriumReport compat = pressure_compatibility(u, d, model, c);

  json report{{"config", to_json(cfg)},
              {"full_residual", {{"c", c}, {"res_x1", full.res_x1}, {"res_x2", full.res_x2}, {"res_x3", full.res_x3},
                                 {"area", full.area}}}};
  if (cfg.adjudicator.refinement) {
    auto make = [&dc](const GridShape& g) { return make_domain(dc, g); };
    const auto study = two_grid_study(make, u, model, c, cfg.solver);
    compat = study.coarse;
    report["refinement"] = {
        {"coarse", {{"nx", d.nx()}, {"ny", d.ny()}, {"h", d.h()}, {"curl_residual", study.coarse.curl_residual},
                    {"curl_floor", study.coarse.curl_floor}}},
        {"fine", {{"nx", study.fine_u.nx}, {"ny", study.fine_u.ny}, {"h", study.fine_u.h},
                  {"curl_residual", study.fine.curl_residual}, {"curl_floor", study.fine.curl_floor},
                  {"verdict", to_string(study.fine.verdict)}}},
        {"fine_solve", restart_summary(study.fine_solve)},
        {"slope", slope_json(study.coarse.refinement_slope)}};
  }
  report["compatibility"] = compatibility_json(compat);

  const double h = d.h();
  std::vector<std::vector<double>> res_rows;
  for (int l = 0; l < full.field_x3.ny; ++l) {
    for (int k = 0; k < full.field_x3.nx; ++k)
      res_rows.push_back({(k + 1) * h, (l + 1) * h, full.field_x1(k, l), full.field_x2(k, l), full.field_x3(k, l)});
  }
  std::vector<std::vector<double>> curl_rows;
  for (int l = 0; l < compat.curl_field.ny; ++l) {
    for (int k = 0; k < compat.curl_field.nx; ++k)
      curl_rows.push_back({(k + 1.5) * h, (l + 1.5) * h, compat.curl_field(k, l)});
  }
  std::vector<std::vector<double>> pbar_rows;
  for (int l = 0; l < compat.pbar.ny; ++l) {
    for (int k = 0; k < compat.pbar.nx; ++k) pbar_rows.push_back({(k + 1) * h, (l + 1) * h, compat.pbar(k, l)});
  }
  write_text(opt.out_dir / "residual_fields.csv", table_csv({"x1", "x2", "res_x1", "res_x2", "res_x3"}, res_rows));
  write_text(opt.out_dir / "curl_field.csv", table_csv({"x1", "x2", "curl"}, curl_rows));
  write_text(opt.out_dir / "pbar.csv", table_csv({"x1", "x2", "pbar"}, pbar_rows));
  write_json(opt.out_dir / "equilibrium_report.json", report);

  std::ostringstream md;
  md << "# Equilibrium check: " << model.family_name() << ", c = " << fmt17(c) << "\n\n"
     << "| quantity | value |\n|---|---|\n"
     << "| res_x1 (pbar = 0) | " << fmt17(full.res_x1) << " |\n"
     << "| res_x2 (pbar = 0) | " << fmt17(full.res_x2) << " |\n"
     << "| res_x3 | " << fmt17(full.res_x3) << " |\n"
     << "| curl residual | " << fmt17(compat.curl_residual) << " |\n"
     << "| curl rounding floor | " << fmt17(compat.curl_floor) << " |\n"
     << "| pbar closure error | " << fmt17(compat.pbar_closure_error) << " |\n"
     << "| pbar spread | " << fmt17(compat.pbar_spread) << " |\n"
     << "| refinement slope | " << slope_json(compat.refinement_slope).dump() << " |\n"
     << "| verdict | " << to_string(compat.verdict) << " |\n";
  write_text(opt.out_dir / "verify_summary.md", md.str());
  std::cout << "verdict " << to_string(compat.verdict) << ", res_x3 " << fmt17(full.res_x3) << ", curl "
            << fmt17(compat.curl_residual) << "\n";
  return kExitOk;
}

int run_sweep(const ExperimentConfig& cfg, const RunOptions& opt) {
  const Domain d = make_domain(require_domain(cfg));
  const MaterialModel model = make_model(cfg.model);
  if (cfg.adjudicator.c_values.empty()) throw ConfigError("adjudicator.c_values is empty");

  Field u;
  if (opt.solution) {
    try {
      u = read_field_csv(*opt.solution);
    } catch (const IoError& e) {
      throw ConfigError(e.what());
    }
    if (u.nx != d.nx() || u.ny != d.ny() || u.h != d.h()) throw ConfigError("solution grid does not match the domain");
  } else {
    u = solve_or_throw(cfg, d, model);
  }

  const auto rows = c_sweep(u, d, model, cfg.adjudicator.c_values);
  const std::size_t best = sweep_argmin(rows);
  std::vector<std::vector<double>> table;
  json jrows = json::array();
  for (const auto& r : rows) {
    table.push_back({r.c, r.res_x3, r.curl_residual});
    jrows.push_back({{"c", r.c}, {"res_x3", r.res_x3}, {"curl_residual", r.curl_residual}});
  }
  write_text(opt.out_dir / "c_sweep.csv", table_csv({"c", "res_x3", "curl_residual"}, table));
  write_json(opt.out_dir / "sweep_report.json",
             json{{"config", to_json(cfg)}, {"area", d.interior_area()}, {"rows", jrows}, {"argmin_c", rows[best].c}});
  const std::string line = "argmin over c of res_x3: c = " + fmt17(rows[best].c);
  write_text(opt.out_dir / "sweep_summary.md", "# c sweep\n\n" + line + "\n\nTable: c_sweep.csv\n");
  std::cout << line << "\n";
  return kExitOk;
}

int run_command(const std::string& command, const ExperimentConfig& cfg, const RunOptions& opt) {
  try {
    if (command == "analyze") return run_analyze(cfg, opt);
    if (command == "solve") return run_solve(cfg, opt);
    if (command == "verify") return run_verify(cfg, opt);
    if (command == "sweep") return run_sweep(cfg, opt);
    std::cerr << "unknown command '" << command << "'\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {  // ContractViolation, ExpressionError
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace antiplane
