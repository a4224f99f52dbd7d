// Numerical test of the over-determined 3D equilibrium system div sigma = 0
// against a computed anti-plane field, with the pressure p = c x3 + pbar(x1, x2).
//
// sigma depends on x3 only through the explicit c x3 term, so d/dx3 is taken
// analytically and the problem stays two-dimensional:
//   x1:  d_b sigma_1b + c g1 = 0
//   x2:  d_b sigma_2b + c g2 = 0
//   x3:  div tau - c = 0
// The in-plane equations hold for some pbar iff the forcing
//   G_a = d_b s_ab + c g_a
// (s = pressure-free in-plane stress) is a gradient, i.e. curl G = 0.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "antiplane/constitutive.hpp"
#include "antiplane/grid.hpp"
#include "antiplane/solver.hpp"

namespace antiplane {

struct PressureAnsatz {
  double c = 0.0;
  /// In-plane pressure per cell, (nx-1) x (ny-1). Absent means pbar = 0.
  std::optional<Array2> pbar;
};

enum class Verdict { Consistent, Incompatible, Inconclusive };
std::string to_string(Verdict v);

struct EquilibriumReport {
  double c = 0.0;
  double res_x1 = 0.0;
  double res_x2 = 0.0;
  double res_x3 = 0.0;
  double curl_residual = 0.0;
  double pbar_closure_error = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  /// Observed order log2(curl_N / curl_2N-1); +inf when the refined residual
  /// is at the rounding floor.
  std::optional<double> refinement_slope;

  /// Rounding floor for curl_residual on this grid.
  double curl_floor = 0.0;
  /// Measure of the interior node set the residual norms integrate over.
  double area = 0.0;
  /// Reconstructed pbar on the (nx-2) x (ny-2) interior nodes, pinned to 0
  /// at the first interior node; empty unless reconstructed.
  Array2 pbar;
  double pbar_spread = 0.0;

  /// Pointwise residuals of the three equations at interior nodes.
  Array2 field_x1;
  Array2 field_x2;
  Array2 field_x3;
  /// Scalar curl of G on cells between interior nodes.
  Array2 curl_field;
};

/// Residual norms of the three equilibrium equations for the given ansatz.
EquilibriumReport full_residual(const Field& u, const Domain& d, const MaterialModel& model,
                                const PressureAnsatz& ansatz);

/// Curl test of the in-plane forcing, pbar reconstruction by trapezoidal
/// path integration (row first, then columns; closure against the
/// transposed path) and a single-grid verdict: Consistent when the curl is at
/// the rounding floor, Inconclusive otherwise. res_x1 and res_x2 are the
/// norms of the edge mismatches between the reconstructed pbar and G.
EquilibriumReport pressure_compatibility(const Field& u, const Domain& d, const MaterialModel& model, double c);

inline constexpr double kConsistentSlope = 0.9;
inline constexpr double kIncompatibleSlope = 0.2;

/// Sets coarse.refinement_slope and coarse.verdict from a second report on the
/// refined grid (2nx - 1, 2ny - 1, h/2).
void apply_refinement(EquilibriumReport& coarse, const EquilibriumReport& fine);

struct TwoGridStudy {
  EquilibriumReport coarse;
  EquilibriumReport fine;
  SolveReport coarse_solve;
  SolveReport fine_solve;
  Field coarse_u;
  Field fine_u;
};

/// Solves on the coarse grid and its refinement, then classifies.
TwoGridStudy two_grid_study(const std::function<Domain(const GridShape&)>& make_domain, const GridShape& coarse,
                            const MaterialModel& model, double c, const SolveConfig& cfg);

/// Same, reusing an existing coarse solution.
TwoGridStudy two_grid_study(const std::function<Domain(const GridShape&)>& make_domain, const Field& coarse_u,
                            const MaterialModel& model, double c, const SolveConfig& cfg);

struct SweepRow {
  double c = 0.0;
  double res_x3 = 0.0;
  double curl_residual = 0.0;
};

std::vector<SweepRow> c_sweep(const Field& u, const Domain& d, const MaterialModel& model,
                              const std::vector<double>& c_values);

/// Index of the row with the smallest res_x3 (first on ties).
std::size_t sweep_argmin(const std::vector<SweepRow>& rows);

}  // namespace antiplane
