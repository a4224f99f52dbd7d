// Minimization of the discrete total potential over admissible fields.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "antiplane/constitutive.hpp"
#include "antiplane/grid.hpp"

namespace antiplane {

struct SolveConfig {
  double grad_tol = 1e-8;
  int max_iters = 20000;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  int restarts = 1;
  std::uint64_t seed = 0;
  bool newton_polish = true;
  std::size_t history_cap = 10000;

  /// Throws DomainError on out-of-range settings.
  void validate() const;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  int newton_steps = 0;
  double final_energy = 0.0;
  double final_grad_norm = 0.0;
  int restart_index = 0;
  /// Pi at accepted iterates, tracked as initial energy plus accurate
  /// increments. Capped at SolveConfig::history_cap entries.
  std::vector<double> energy_history;
  /// Accepted increments Pi(next) - Pi(current), each strictly negative. Late
  /// increments can be below one ulp of Pi, so energy_history may repeat.
  std::vector<double> energy_increments;
  double el_interior_norm = 0.0;
  double el_traction_norm = 0.0;
  /// 10 grad_tol / h^2, the bound el_interior_norm is checked against.
  double certificate_bound = 0.0;
};

struct SolveResult {
  Field u;
  SolveReport report;
  /// One report per restart, in restart order.
  std::vector<SolveReport> restarts;
};

class DivergedError : public std::runtime_error {
 public:
  DivergedError(const std::string& what, Field last) : std::runtime_error(what), last_iterate(std::move(last)) {}
  Field last_iterate;
};

/// Polak-Ribiere nonlinear CG with Armijo backtracking, then an optional
/// Newton polish. Restart 0 starts from u0; restart k >= 1 starts from u0
/// plus seeded uniform noise of amplitude 0.1 max(1, Dirichlet range) on free
/// nodes. Restarts run in parallel; the lowest final energy wins, ties
/// (within 1e-12) going to the lowest restart index.
SolveResult minimize(const Field& u0, const Domain& d, const MaterialModel& model, const SolveConfig& cfg);

struct PathStep {
  double scale = 0.0;
  SolveReport report;
  Field u;
};

class PathError : public std::runtime_error {
 public:
  PathError(const std::string& what, double s) : std::runtime_error(what), scale(s) {}
  double scale;
};

/// Load continuation: solves with tractions multiplied by each scale in turn,
/// warm-starting from the previous solution.
std::vector<PathStep> solve_path(const Domain& d, const MaterialModel& model, const std::vector<double>& scales,
                                 const SolveConfig& cfg);

/// Seeded restart field for restart k (k >= 1); exposed for tests.
Field perturbed_start(const Field& u0, const Domain& d, std::uint64_t seed, int k);

}  // namespace antiplane
