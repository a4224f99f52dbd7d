#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "antiplane/adjudicator.hpp"
#include "antiplane/stencils.hpp"

using namespace antiplane;
using doctest::Approx;

namespace {
const auto harmonic = [](double x1, double x2) { return x1 * x1 - x2 * x2; };

Domain harmonic_domain(int n) { return oracle::dirichlet_box(n, n, 1.0 / (n - 1), harmonic); }

Domain gnh_domain(const GridShape& g) {
  return oracle::dirichlet_box(g.nx, g.ny, g.h, [](double x1, double x2) { return 0.6 * x1 * x1 + 0.3 * x1 * x2 - 0.4 * x2; });
}

Array2 cell_2w1(const Field& u, const Domain& d, const MaterialModel& m) {
  const auto g = gradient_field(u, d);
  Array2 p(d.cells_x(), d.cells_y());
  for (std::size_t k = 0; k < g.size(); ++k) p.data[k] = 2.0 * partials(m, 3.0 + g[k].squared_norm(), 3.0).w1;
  return p;
}
}  // namespace

TEST_CASE("verdict names") {
  CHECK(to_string(Verdict::Consistent) == "consistent");
  CHECK(to_string(Verdict::Incompatible) == "incompatible");
  CHECK(to_string(Verdict::Inconclusive) == "inconclusive");
}

TEST_CASE("full residual of the undeformed state") {
  const Domain d = oracle::dirichlet_box(9, 9, 0.125, [](double, double) { return 0.0; });
  const MaterialModel nh(NeoHookean{1.0});
  const auto r = full_residual(initial_field(d), d, nh, PressureAnsatz{0.0, Array2(8, 8, 4.0)});
  CHECK(r.res_x1 == 0.0);
  CHECK(r.res_x2 == 0.0);
  CHECK(r.res_x3 == 0.0);
  const auto rc = full_residual(initial_field(d), d, nh, PressureAnsatz{2.0, std::nullopt});
  CHECK(rc.res_x3 == Approx(2.0 * std::sqrt(d.interior_area())).epsilon(1e-14));
  CHECK(rc.area == d.interior_area());
  CHECK_THROWS_AS(full_residual(initial_field(d), d, nh, PressureAnsatz{0.0, Array2(9, 9)}), ContractViolation);
}

TEST_CASE("harmonic field under neo-Hookean") {
  const Domain d = harmonic_domain(17);
  const Field u = sample(d, harmonic);
  const MaterialModel nh(NeoHookean{1.0});
  const auto full = full_residual(u, d, nh, PressureAnsatz{0.3, std::nullopt});
  CHECK(full.res_x3 == Approx(0.3 * std::sqrt(d.interior_area())).epsilon(1e-10));
  const auto r = pressure_compatibility(u, d, nh, 0.0);
  CHECK(r.verdict == Verdict::Consistent);
  CHECK(r.curl_residual <= r.curl_floor);
  CHECK(r.pbar_spread <= 1e-12);
  CHECK(r.res_x3 <= 1e-10);
}

TEST_CASE("out-of-plane row does not see the pressure") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> pc(-3.0, 3.0);
  for (const auto& m : oracle::sample_models()) {
    const Domain d = oracle::cantilever(9, 7, 0.125, [](double, double x2) { return x2; });
    const Field u = oracle::random_admissible(d, rng);
    Array2 p(d.cells_x(), d.cells_y());
    for (double& v : p.data) v = pc(rng);
    const double c = pc(rng);
    const auto r = full_residual(u, d, m, PressureAnsatz{c, p});
    Array2 div = divergence_field(u, d, m);
    for (double& v : div.data) v -= c;
    const double direct = stencil::l2_norm(div, d.h());
    CHECK(std::abs(r.res_x3 - direct) <= 1e-12 * std::max(1.0, direct));
    CHECK(pressure_compatibility(u, d, m, c).res_x3 == Approx(r.res_x3).epsilon(1e-12));
  }
}

TEST_CASE("discrete gradients have zero discrete curl") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> v(-10.0, 10.0);
  for (int t = 0; t < 20; ++t) {
    const double h = 1.0 / 16;
    Array2 p(16, 12);
    for (double& x : p.data) x = v(rng);
    const Array2 g1 = stencil::d1(p, h);
    const Array2 g2 = stencil::d2(p, h);
    const Array2 curl = stencil::subtract(stencil::d1(g2, h), stencil::d2(g1, h));
    CHECK(stencil::max_abs(curl) <= 1e3 * 2.2e-16 * 10.0 / (h * h));
  }
}

TEST_CASE("I1-only models have compatible in-plane forcing for any field") {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> cd(-1.0, 1.0);
  for (const auto& m : {MaterialModel(NeoHookean{1.3}), MaterialModel(GeneralizedNeoHookean{1.1, 2.5}),
                        MaterialModel(GeneralizedNeoHookean{0.8, 0.6}), MaterialModel(DoubleWellShear{1.2, 0.9})}) {
    const Domain d = oracle::cantilever(17, 13, 1.0 / 16, [](double, double) { return 0.5; });
    const Field u = oracle::random_admissible(d, rng, 0.1);
    const double c = cd(rng);
    const auto r = pressure_compatibility(u, d, m, c);
    CHECK(r.curl_residual <= r.curl_floor);
    CHECK(r.verdict == Verdict::Consistent);
    CHECK(r.pbar_closure_error <= 1e-9 * std::max(1.0, r.pbar_spread));
    const double scale = std::max(1.0, r.pbar_spread) / d.h();
    CHECK(r.res_x1 <= 1e-12 * scale);
    CHECK(r.res_x2 <= 1e-12 * scale);
  }
}

TEST_CASE("reconstructed pressure of a generalized neo-Hookean field is 2 W1 up to a constant") {
  const MaterialModel gnh(GeneralizedNeoHookean{1.0, 2.0});
  const Domain d = gnh_domain(GridShape{17, 17, 1.0 / 16});
  std::mt19937_64 rng(91);
  const Field u = oracle::random_admissible(d, rng, 0.3);
  const auto r = pressure_compatibility(u, d, gnh, 0.0);
  const Array2 nodal = stencil::average(cell_2w1(u, d, gnh));
  REQUIRE(nodal.nx == r.pbar.nx);
  REQUIRE(nodal.ny == r.pbar.ny);
  const double shift = nodal(0, 0) - r.pbar(0, 0);
  for (std::size_t k = 0; k < nodal.data.size(); ++k) CHECK(std::abs(r.pbar.data[k] + shift - nodal.data[k]) <= 1e-10);
  // and that pressure balances the in-plane equations of the full system
  const auto full = full_residual(u, d, gnh, PressureAnsatz{0.0, cell_2w1(u, d, gnh)});
  CHECK(full.res_x1 <= 1e-12);
  CHECK(full.res_x2 <= 1e-12);
}

TEST_CASE("Mooney-Rivlin forcing of a generic field is not a gradient") {
  std::mt19937_64 rng(101);
  const MaterialModel mr(MooneyRivlin{0.7, 0.4});
  const Domain d = oracle::cantilever(17, 13, 1.0 / 16, [](double, double) { return 0.5; });
  const auto r = pressure_compatibility(oracle::random_admissible(d, rng), d, mr, 0.0);
  CHECK(r.curl_residual > 1e6 * r.curl_floor);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.pbar_closure_error > 0.0);
}

TEST_CASE("refinement classification") {
  EquilibriumReport fine;
  fine.curl_floor = 1e-14;
  EquilibriumReport coarse;
  coarse.curl_residual = 1e-2;

  fine.curl_residual = 2.5e-3;
  apply_refinement(coarse, fine);
  CHECK(*coarse.refinement_slope == Approx(2.0));
  CHECK(coarse.verdict == Verdict::Consistent);

  fine.curl_residual = 1e-2;
  apply_refinement(coarse, fine);
  CHECK(*coarse.refinement_slope == 0.0);
  CHECK(coarse.verdict == Verdict::Incompatible);

  fine.curl_residual = 1e-2 / std::sqrt(2.0);
  apply_refinement(coarse, fine);
  CHECK(*coarse.refinement_slope == Approx(0.5));
  CHECK(coarse.verdict == Verdict::Inconclusive);

  fine.curl_residual = 1e-15;
  apply_refinement(coarse, fine);
  CHECK(std::isinf(*coarse.refinement_slope));
  CHECK(coarse.verdict == Verdict::Consistent);
}

TEST_CASE("generalized neo-Hookean two-grid study is consistent") {
  const auto study = two_grid_study(gnh_domain, GridShape{9, 9, 0.125}, MaterialModel(GeneralizedNeoHookean{1.0, 2.0}),
                                    0.0, SolveConfig{});
  CHECK(study.coarse_solve.converged);
  CHECK(study.fine_solve.converged);
  CHECK(study.fine_u.nx == 17);
  REQUIRE(study.coarse.refinement_slope.has_value());
  CHECK(*study.coarse.refinement_slope >= kConsistentSlope);
  CHECK(study.coarse.verdict == Verdict::Consistent);
}

TEST_CASE("c sweep") {
  const MaterialModel mr(MooneyRivlin{0.7, 0.4});
  const Domain d = oracle::cantilever(17, 9, 0.125, [](double, double x2) { return 0.5 + 0.25 * x2; });
  SolveConfig cfg;
  cfg.grad_tol = 1e-10;
  const auto sol = minimize(initial_field(d), d, mr, cfg);
  REQUIRE(sol.report.converged);
  const std::vector<double> cs{-1.0, -0.3, -0.1, 0.0, 0.1, 0.3, 1.0};
  const auto rows = c_sweep(sol.u, d, mr, cs);
  REQUIRE(rows.size() == cs.size());
  CHECK(rows[sweep_argmin(rows)].c == 0.0);
  const double r0 = rows[3].res_x3;
  for (const auto& r : rows) {
    if (r.c == 0.0) continue;
    const double lhs = r.res_x3 * r.res_x3 - r0 * r0;
    CHECK(lhs == Approx(r.c * r.c * d.interior_area()).epsilon(1e-6));
  }
  // the sweep and the single-c adjudication agree
  const auto single = pressure_compatibility(sol.u, d, mr, 0.3);
  CHECK(single.res_x3 == Approx(rows[5].res_x3).epsilon(1e-14));
  CHECK(single.curl_residual == Approx(rows[5].curl_residual).epsilon(1e-14));
}

TEST_CASE("c sweep of the zero field") {
  const Domain d = oracle::dirichlet_box(9, 9, 0.125, [](double, double) { return 0.0; });
  const auto rows = c_sweep(initial_field(d), d, MaterialModel(NeoHookean{1.0}), {2.0, -0.5});
  CHECK(rows[0].res_x3 == Approx(2.0 * std::sqrt(d.interior_area())).epsilon(1e-14));
  CHECK(rows[1].res_x3 == Approx(0.5 * std::sqrt(d.interior_area())).epsilon(1e-14));
  CHECK(sweep_argmin(rows) == 1);
}
