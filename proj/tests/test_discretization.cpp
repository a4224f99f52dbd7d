#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "antiplane/stencils.hpp"

using namespace antiplane;
using doctest::Approx;

namespace {
Domain unit_box(int n, std::function<double(double, double)> f) {
  return oracle::dirichlet_box(n, n, 1.0 / (n - 1), std::move(f));
}
}  // namespace

TEST_CASE("cell gradients of simple fields") {
  const Domain d = unit_box(9, [](double, double) { return 0.0; });
  for (const auto& g : gradient_field(initial_field(d), d)) {
    CHECK(g.g1 == 0.0);
    CHECK(g.g2 == 0.0);
  }
  const Field lin = sample(d, [](double x1, double x2) { return 0.5 * x1 - 0.25 * x2; });
  for (const auto& g : gradient_field(lin, d)) {
    CHECK(g.g1 == 0.5);
    CHECK(g.g2 == -0.25);
  }
  // bilinear x1 x2: gradient at the cell centre is (x2c, x1c)
  const Field bil = sample(d, [](double x1, double x2) { return x1 * x2; });
  const auto g = gradient_field(bil, d);
  const double h = d.h();
  for (int j = 0; j < d.cells_y(); ++j)
    for (int i = 0; i < d.cells_x(); ++i) {
      CHECK(g[j * d.cells_x() + i].g1 == Approx((j + 0.5) * h).epsilon(1e-14));
      CHECK(g[j * d.cells_x() + i].g2 == Approx((i + 0.5) * h).epsilon(1e-14));
    }
}

TEST_CASE("random linear fields have exact constant gradients") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    const double a = c(rng), b = c(rng), e = c(rng);
    const Domain d = unit_box(7, [](double, double) { return 0.0; });
    const Field u = sample(d, [&](double x1, double x2) { return a * x1 + b * x2 + e; });
    for (const auto& g : gradient_field(u, d)) {
      CHECK(std::abs(g.g1 - a) <= 1e-13);
      CHECK(std::abs(g.g2 - b) <= 1e-13);
    }
  }
}

TEST_CASE("total potential at sample fields") {
  const MaterialModel nh(NeoHookean{1.0});
  SUBCASE("zero field with zero data") {
    const Domain d = unit_box(9, [](double, double) { return 0.0; });
    CHECK(total_potential(initial_field(d), d, nh) == 0.0);
  }
  SUBCASE("u = x1 on the unit square stores mu/2") {
    const Domain d = unit_box(9, [](double x1, double) { return x1; });
    const Field u = sample(d, [](double x1, double) { return x1; });
    CHECK(total_potential(u, d, nh) == Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("traction work is linear in the load") {
    const Domain d1 = oracle::cantilever(9, 5, 0.125, [](double, double x2) { return 1.0 + x2; });
    const Domain d2 = d1.with_traction_scale(2.0);
    std::mt19937_64 rng(2);
    const Field u = oracle::random_admissible(d1, rng);
    const double stored = total_potential(u, d1.with_traction_scale(0.0), nh);
    const double w1 = stored - total_potential(u, d1, nh);
    const double w2 = stored - total_potential(u, d2, nh);
    CHECK(w2 == Approx(2.0 * w1).epsilon(1e-12));
  }
}

TEST_CASE("parallel kernels agree with the serial reference") {
  std::mt19937_64 rng(4);
  for (const auto& m : oracle::sample_models()) {
    for (auto [nx, ny] : {std::pair{5, 5}, std::pair{17, 9}, std::pair{33, 65}}) {
      const Domain d = oracle::cantilever(nx, ny, 1.0 / (nx - 1), [](double, double x2) { return 0.3 - x2; });
      const Field u = oracle::random_admissible(d, rng);
      const auto gp = gradient_field(u, d);
      const auto gs = serial::gradient_field(u, d);
      REQUIRE(gp.size() == gs.size());
      for (std::size_t k = 0; k < gp.size(); ++k) {
        CHECK(gp[k].g1 == Approx(gs[k].g1).epsilon(1e-14));
        CHECK(gp[k].g2 == Approx(gs[k].g2).epsilon(1e-14));
      }
      CHECK(total_potential(u, d, m) == Approx(serial::total_potential(u, d, m)).epsilon(1e-12));
      const Field fp = potential_gradient(u, d, m);
      const Field fs = serial::potential_gradient(u, d, m);
      double scale = 0.0;
      for (double v : fs.values) scale = std::max(scale, std::abs(v));
      for (std::size_t k = 0; k < fp.size(); ++k) CHECK(std::abs(fp.values[k] - fs.values[k]) <= 1e-12 * scale);
      const Array2 dp = divergence_field(u, d, m);
      const Array2 ds = serial::divergence_field(u, d, m);
      const double dscale = std::max(1.0, stencil::max_abs(ds));
      CHECK(stencil::max_abs(stencil::subtract(dp, ds)) <= 1e-12 * dscale);
    }
  }
}

TEST_CASE("gradient vanishes at Dirichlet nodes") {
  std::mt19937_64 rng(12);
  const Domain d = oracle::cantilever(9, 9, 0.125, [](double, double) { return 1.0; });
  const Field g = potential_gradient(oracle::random_admissible(d, rng), d, MaterialModel(MooneyRivlin{1.0, 1.0}));
  for (int j = 0; j < 9; ++j) CHECK(g.at(0, j) == 0.0);
}

TEST_CASE("neo-Hookean gradient reduces to the diagonal Laplacian stencil") {
  const double mu = 1.7;
  const MaterialModel nh(NeoHookean{mu});
  const Domain d = oracle::cantilever(5, 5, 0.25, [](double, double x2) { return 2.0 * x2 - 0.5; });
  std::mt19937_64 rng(21);
  const Field u = oracle::random_admissible(d, rng);
  const Field g = potential_gradient(u, d, nh);
  for (int j = 1; j < 4; ++j)
    for (int i = 1; i < 4; ++i) {
      const double expect =
          0.5 * mu * (4 * u.at(i, j) - u.at(i - 1, j - 1) - u.at(i + 1, j - 1) - u.at(i - 1, j + 1) - u.at(i + 1, j + 1));
      CHECK(g.at(i, j) == Approx(expect).epsilon(1e-12));
    }
  // right edge: two cells plus the traction load h * t
  for (int j = 1; j < 4; ++j) {
    const double t = 2.0 * d.x2(j) - 0.5;
    const double expect = 0.5 * mu * (2 * u.at(4, j) - u.at(3, j - 1) - u.at(3, j + 1)) - d.h() * t;
    CHECK(g.at(4, j) == Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("Taylor test of the gradient") {
  std::mt19937_64 rng(31);
  for (const auto& m : oracle::sample_models()) {
    for (int t = 0; t < 20; ++t) {
      const Domain d = oracle::cantilever(9, 7, 0.125, [](double, double x2) { return x2; });
      const Field u = oracle::random_admissible(d, rng, 0.5);
      const Field v = oracle::random_direction(d, rng);
      CHECK(oracle::taylor_order(u, v, d, m) >= 1.9);
    }
  }
}

TEST_CASE("potential increment matches the direct difference") {
  std::mt19937_64 rng(41);
  for (const auto& m : oracle::sample_models()) {
    const Domain d = oracle::cantilever(9, 9, 0.125, [](double, double) { return 0.4; });
    const Field u = oracle::random_admissible(d, rng);
    const Field v = oracle::random_direction(d, rng);
    for (double a : {1.0, 0.1, 1e-3}) {
      const double direct = total_potential(oracle::axpy(u, a, v), d, m) - total_potential(u, d, m);
      CHECK(potential_increment(u, v, a, d, m) == Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("adding a constant shifts the potential by the traction work") {
  // dyadic data so every operation is exact
  const Domain d = oracle::cantilever(9, 9, 0.125, [](double, double) { return 0.5; });
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> k(-512, 512);
  Field u = initial_field(d);
  for (std::size_t n = 0; n < u.size(); ++n)
    if (d.is_free(n)) u.values[n] = k(rng) / 1024.0;
  Field shifted = u;
  for (auto& v : shifted.values) v += 0.25;
  double load = 0.0;
  for (double l : d.load_vector()) load += l;
  const auto gu = gradient_field(u, d);
  const auto gs = gradient_field(shifted, d);
  for (std::size_t n = 0; n < gu.size(); ++n) {
    CHECK(gu[n].g1 == gs[n].g1);
    CHECK(gu[n].g2 == gs[n].g2);
  }
  for (const auto& m : oracle::sample_models()) {
    const double du = total_potential(shifted, d, m) - total_potential(u, d, m);
    CHECK(du == Approx(-0.25 * load).epsilon(1e-12));
  }
}

TEST_CASE("Euler-Lagrange residual") {
  const MaterialModel nh(NeoHookean{1.0});
  SUBCASE("zero field") {
    const Domain d = unit_box(9, [](double, double) { return 0.0; });
    const auto r = el_residual(initial_field(d), d, nh);
    CHECK(r.interior_norm == 0.0);
    CHECK(r.traction_norm == 0.0);
  }
  SUBCASE("harmonic quadratic is discretely divergence free") {
    const Domain d = unit_box(17, [](double x1, double x2) { return x1 * x1 - x2 * x2; });
    const Field u = sample(d, [](double x1, double x2) { return x1 * x1 - x2 * x2; });
    CHECK(el_residual(u, d, nh).interior_norm <= 1e-10);
  }
  SUBCASE("u = x1^2 has divergence 2 mu") {
    for (int n : {9, 17, 33}) {
      const Domain d = unit_box(n, [](double x1, double) { return x1 * x1; });
      const Field u = sample(d, [](double x1, double) { return x1 * x1; });
      const Array2 div = divergence_field(u, d, MaterialModel(NeoHookean{1.5}));
      for (double v : div.data) CHECK(v == Approx(3.0).epsilon(1e-10));
      const auto r = el_residual(u, d, MaterialModel(NeoHookean{1.5}));
      CHECK(r.interior_norm == Approx(3.0 * std::sqrt(d.interior_area())).epsilon(1e-10));
    }
  }
}
