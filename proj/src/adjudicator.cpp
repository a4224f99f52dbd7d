#include "antiplane/adjudicator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "antiplane/discretization.hpp"
#include "antiplane/kinematics.hpp"
#include "antiplane/stencils.hpp"

namespace antiplane {

namespace {

// Cell fields needed by the in-plane equations.
struct CellState {
  Array2 g1, g2;
  Array2 s11, s12, s22;  // pressure-free in-plane stress
  Array2 tau1, tau2;
};

CellState cell_state(const Field& u, const Domain& d, const MaterialModel& model) {
  const auto grads = gradient_field(u, d);
  const int cx = d.cells_x();
  const int cy = d.cells_y();
  CellState s{Array2(cx, cy), Array2(cx, cy), Array2(cx, cy), Array2(cx, cy),
              Array2(cx, cy), Array2(cx, cy), Array2(cx, cy)};
#pragma omp parallel for schedule(static)
  for (int j = 0; j < cy; ++j) {
    for (int i = 0; i < cx; ++i) {
      const Gamma2& g = grads[static_cast<std::size_t>(j) * cx + i];
      const auto sigma = piola_stress(model, g, 0.0);
      s.g1(i, j) = g.g1;
      s.g2(i, j) = g.g2;
      s.s11(i, j) = sigma(0, 0);
      s.s12(i, j) = sigma(0, 1);
      s.s22(i, j) = sigma(1, 1);
      s.tau1(i, j) = sigma(2, 0);
      s.tau2(i, j) = sigma(2, 1);
    }
  }
  return s;
}

Array2 sum(const Array2& a, const Array2& b, double cb = 1.0) {
  Array2 out = a;
  for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] += cb * b.data[k];
  return out;
}

Array2 shifted(const Array2& a, double c) {
  Array2 out = a;
  for (double& v : out.data) v += c;
  return out;
}

struct Forcing {
  Array2 g1, g2;  // G at interior nodes
  Array2 curl;    // at cells between interior nodes
  double scale = 0.0;
};

Forcing in_plane_forcing(const CellState& s, double h, double c) {
  Forcing f;
  f.g1 = sum(sum(stencil::d1(s.s11, h), stencil::d2(s.s12, h)), stencil::average(s.g1), c);
  f.g2 = sum(sum(stencil::d1(s.s12, h), stencil::d2(s.s22, h)), stencil::average(s.g2), c);
  f.curl = stencil::subtract(stencil::d1(f.g2, h), stencil::d2(f.g1, h));
  f.scale = std::max({stencil::max_abs(s.s11), stencil::max_abs(s.s12), stencil::max_abs(s.s22)}) +
            std::abs(c) * h * std::max(stencil::max_abs(s.g1), stencil::max_abs(s.g2));
  return f;
}

// Rounding floor of the curl: G ~ s/h, curl ~ s/h^2, integrated over the
// cell area.
double curl_floor(const Forcing& f, double h) {
  const double area = h * h * f.curl.nx * f.curl.ny;
  return 1e3 * std::numeric_limits<double>::epsilon() * f.scale / (h * h) * std::sqrt(area);
}

// Trapezoidal integration of G over the interior-node grid, row 0 first then
// up the columns, or column 0 first then along the rows.
Array2 integrate(const Array2& g1, const Array2& g2, double h, bool row_first) {
  const int mx = g1.nx;
  const int my = g1.ny;
  Array2 p(mx, my);
  if (row_first) {
    for (int i = 0; i + 1 < mx; ++i) p(i + 1, 0) = p(i, 0) + 0.5 * h * (g1(i, 0) + g1(i + 1, 0));
    for (int i = 0; i < mx; ++i) {
      for (int j = 0; j + 1 < my; ++j) p(i, j + 1) = p(i, j) + 0.5 * h * (g2(i, j) + g2(i, j + 1));
    }
  } else {
    for (int j = 0; j + 1 < my; ++j) p(0, j + 1) = p(0, j) + 0.5 * h * (g2(0, j) + g2(0, j + 1));
    for (int j = 0; j < my; ++j) {
      for (int i = 0; i + 1 < mx; ++i) p(i + 1, j) = p(i, j) + 0.5 * h * (g1(i, j) + g1(i + 1, j));
    }
  }
  return p;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Incompatible: return "incompatible";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

EquilibriumReport full_residual(const Field& u, const Domain& d, const MaterialModel& model,
                                const PressureAnsatz& ansatz) {
  require_conforming(u, d);
  const int cx = d.cells_x();
  const int cy = d.cells_y();
  if (ansatz.pbar && (ansatz.pbar->nx != cx || ansatz.pbar->ny != cy))
    throw ContractViolation("pbar must be cell-centred on the domain grid");

  const auto grads = gradient_field(u, d);
  Array2 sig[3][2];
  for (auto& row : sig) {
    for (auto& a : row) a = Array2(cx, cy);
  }
  Array2 g1(cx, cy), g2(cx, cy);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < cy; ++j) {
    for (int i = 0; i < cx; ++i) {
      const Gamma2& g = grads[static_cast<std::size_t>(j) * cx + i];
      const double p = ansatz.pbar ? (*ansatz.pbar)(i, j) : 0.0;
      const auto sigma = piola_stress(model, g, p);
      for (int r = 0; r < 3; ++r) {
        sig[r][0](i, j) = sigma(r, 0);
        sig[r][1](i, j) = sigma(r, 1);
      }
      g1(i, j) = g.g1;
      g2(i, j) = g.g2;
    }
  }

  const double h = d.h();
  const double c = ansatz.c;
  EquilibriumReport rep;
  rep.c = c;
  rep.area = d.interior_area();
  rep.field_x1 = sum(sum(stencil::d1(sig[0][0], h), stencil::d2(sig[0][1], h)), stencil::average(g1), c);
  rep.field_x2 = sum(sum(stencil::d1(sig[1][0], h), stencil::d2(sig[1][1], h)), stencil::average(g2), c);
  rep.field_x3 = shifted(sum(stencil::d1(sig[2][0], h), stencil::d2(sig[2][1], h)), -c);
  rep.res_x1 = stencil::l2_norm(rep.field_x1, h);
  rep.res_x2 = stencil::l2_norm(rep.field_x2, h);
  rep.res_x3 = stencil::l2_norm(rep.field_x3, h);
  return rep;
}

EquilibriumReport pressure_compatibility(const Field& u, const Domain& d, const MaterialModel& model, double c) {
  require_conforming(u, d);
  if (d.nx() < 4 || d.ny() < 4) throw ContractViolation("curl test needs at least 4 nodes per direction");
  const double h = d.h();
  const CellState s = cell_state(u, d, model);
  const Forcing f = in_plane_forcing(s, h, c);

  EquilibriumReport rep;
  rep.c = c;
  rep.area = d.interior_area();
  rep.field_x3 = shifted(sum(stencil::d1(s.tau1, h), stencil::d2(s.tau2, h)), -c);
  rep.res_x3 = stencil::l2_norm(rep.field_x3, h);
  rep.curl_field = f.curl;
  rep.curl_residual = stencil::l2_norm(f.curl, h);
  rep.curl_floor = curl_floor(f, h);

  rep.pbar = integrate(f.g1, f.g2, h, true);
  const Array2 transposed = integrate(f.g1, f.g2, h, false);
  rep.pbar_closure_error = stencil::max_abs(stencil::subtract(rep.pbar, transposed));
  const auto [lo, hi] = std::minmax_element(rep.pbar.data.begin(), rep.pbar.data.end());
  rep.pbar_spread = *hi - *lo;

  // Edge mismatches of the reconstructed pressure against G.
  const int mx = f.g1.nx;
  const int my = f.g1.ny;
  rep.field_x1 = Array2(mx - 1, my);
  rep.field_x2 = Array2(mx, my - 1);
  for (int j = 0; j < my; ++j) {
    for (int i = 0; i + 1 < mx; ++i)
      rep.field_x1(i, j) = (rep.pbar(i + 1, j) - rep.pbar(i, j)) / h - 0.5 * (f.g1(i, j) + f.g1(i + 1, j));
  }
  for (int j = 0; j + 1 < my; ++j) {
    for (int i = 0; i < mx; ++i)
      rep.field_x2(i, j) = (rep.pbar(i, j + 1) - rep.pbar(i, j)) / h - 0.5 * (f.g2(i, j) + f.g2(i, j + 1));
  }
  rep.res_x1 = stencil::l2_norm(rep.field_x1, h);
  rep.res_x2 = stencil::l2_norm(rep.field_x2, h);

  rep.verdict = rep.curl_residual <= rep.curl_floor ? Verdict::Consistent : Verdict::Inconclusive;
  return rep;
}

void apply_refinement(EquilibriumReport& coarse, const EquilibriumReport& fine) {
  const bool fine_at_floor = fine.curl_residual <= fine.curl_floor;
  if (fine_at_floor) {
    coarse.refinement_slope = std::numeric_limits<double>::infinity();
    coarse.verdict = Verdict::Consistent;
    return;
  }
  const double slope = std::log2(coarse.curl_residual / fine.curl_residual);
  coarse.refinement_slope = slope;
  if (slope >= kConsistentSlope) {
    coarse.verdict = Verdict::Consistent;
  } else if (slope <= kIncompatibleSlope) {
    coarse.verdict = Verdict::Incompatible;
  } else {
    coarse.verdict = Verdict::Inconclusive;
  }
}

TwoGridStudy two_grid_study(const std::function<Domain(const GridShape&)>& make_domain, const Field& coarse_u,
                            const MaterialModel& model, double c, const SolveConfig& cfg) {
  TwoGridStudy study;
  const GridShape coarse{coarse_u.nx, coarse_u.ny, coarse_u.h};
  const Domain dc = make_domain(coarse);
  const Domain df = make_domain(refined(coarse));
  study.coarse_u = coarse_u;
  auto fine = minimize(initial_field(df), df, model, cfg);
  study.fine_solve = fine.report;
  study.fine_u = std::move(fine.u);
  study.coarse = pressure_compatibility(study.coarse_u, dc, model, c);
  study.fine = pressure_compatibility(study.fine_u, df, model, c);
  apply_refinement(study.coarse, study.fine);
  return study;
}

TwoGridStudy two_grid_study(const std::function<Domain(const GridShape&)>& make_domain, const GridShape& coarse,
                            const MaterialModel& model, double c, const SolveConfig& cfg) {
  const Domain dc = make_domain(coarse);
  auto solved = minimize(initial_field(dc), dc, model, cfg);
  auto study = two_grid_study(make_domain, solved.u, model, c, cfg);
  study.coarse_solve = solved.report;
  return study;
}

std::vector<SweepRow> c_sweep(const Field& u, const Domain& d, const MaterialModel& model,
                              const std::vector<double>& c_values) {
  require_conforming(u, d);
  const double h = d.h();
  const CellState s = cell_state(u, d, model);
  const Array2 div = sum(stencil::d1(s.tau1, h), stencil::d2(s.tau2, h));
  std::vector<SweepRow> rows;
  rows.reserve(c_values.size());
  for (double c : c_values) {
    SweepRow row;
    row.c = c;
    row.res_x3 = stencil::l2_norm(shifted(div, -c), h);
    row.curl_residual = stencil::l2_norm(in_plane_forcing(s, h, c).curl, h);
    rows.push_back(row);
  }
  return rows;
}

std::size_t sweep_argmin(const std::vector<SweepRow>& rows) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].res_x3 < rows[best].res_x3) best = k;
  }
  return best;
}

}  // namespace antiplane
