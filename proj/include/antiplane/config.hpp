// Experiment configuration: one JSON document per experiment.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "antiplane/constitutive.hpp"
#include "antiplane/expression.hpp"
#include "antiplane/grid.hpp"
#include "antiplane/solver.hpp"

namespace antiplane {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelSpec {
  std::string family;
  std::map<std::string, double> params;
};

struct BoundarySpec {
  NodeKind kind = NodeKind::Dirichlet;
  std::string expr = "0";
};

struct DomainConfig {
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  BoundarySpec left, right, bottom, top;
};

struct AnalysisConfig {
  double gamma_max = kDefaultGammaMax;
  int n_points = kDefaultGammaPoints;
  double knowles_tol = kDefaultKnowlesTol;
};

struct AdjudicatorConfig {
  /// Axial pressure gradient injected by verify.
  double c = 0.0;
  std::vector<double> c_values{-1.0, -0.3, -0.1, 0.0, 0.1, 0.3, 1.0};
  bool refinement = true;
};

struct ExperimentConfig {
  ModelSpec model;
  std::optional<DomainConfig> domain;
  SolveConfig solver;
  AnalysisConfig analysis;
  AdjudicatorConfig adjudicator;
  /// Optional closed-form solution; solve reports the max-norm error against it.
  std::optional<std::string> exact_solution;
  /// Optional load continuation scales for solve.
  std::vector<double> load_scales;
  std::string output_dir = "out";
};

/// Parses and validates; unknown keys, missing required keys, wrong types and
/// out-of-range values raise ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// Fully resolved configuration, defaults included.
nlohmann::json to_json(const ExperimentConfig& cfg);

MaterialModel make_model(const ModelSpec& spec);

/// Builds the domain on the configured grid or on an explicit grid shape
/// (used for refinement).
Domain make_domain(const DomainConfig& cfg);
Domain make_domain(const DomainConfig& cfg, const GridShape& shape);

}  // namespace antiplane
