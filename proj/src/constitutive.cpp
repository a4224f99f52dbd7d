#include "antiplane/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace antiplane {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void validate(const ModelParams& params) {
  std::visit(overloaded{
                 [](const NeoHookean& m) {
                   if (!finite_all({m.mu}) || m.mu <= 0.0) throw DomainError("neo-Hookean: mu must be > 0");
                 },
                 [](const MooneyRivlin& m) {
                   if (!finite_all({m.c1, m.c2}) || m.c1 < 0.0 || m.c2 < 0.0 || m.c1 + m.c2 <= 0.0)
                     throw DomainError("Mooney-Rivlin: need c1 >= 0, c2 >= 0, c1 + c2 > 0");
                 },
                 [](const GeneralizedNeoHookean& m) {
                   if (!finite_all({m.mu, m.n}) || m.mu <= 0.0 || m.n <= 0.0)
                     throw DomainError("generalized neo-Hookean: need mu > 0, n > 0");
                 },
                 [](const DoubleWellShear& m) {
                   if (!finite_all({m.a, m.gstar}) || m.a <= 0.0 || m.gstar <= 0.0)
                     throw DomainError("double-well: need a > 0, gstar > 0");
                 },
             },
             params);
}

void check_invariants(double i1, double i2) {
  if (!(i1 >= 3.0) || !(i2 >= 3.0)) throw DomainError("invariants must satisfy I1 >= 3 and I2 >= 3");
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("shear strain magnitude must be >= 0");
}

}  // namespace

MaterialModel::MaterialModel(ModelParams params) : params_(std::move(params)) { validate(params_); }

std::string MaterialModel::family_name() const {
  return std::visit(overloaded{
                        [](const NeoHookean&) { return std::string("neo_hookean"); },
                        [](const MooneyRivlin&) { return std::string("mooney_rivlin"); },
                        [](const GeneralizedNeoHookean&) { return std::string("generalized_neo_hookean"); },
                        [](const DoubleWellShear&) { return std::string("double_well_shear"); },
                    },
                    params_);
}

bool MaterialModel::depends_on_i1_only() const {
  return !std::holds_alternative<MooneyRivlin>(params_) || std::get<MooneyRivlin>(params_).c2 == 0.0;
}

MaterialModel MaterialModel::scaled(double k) const {
  if (!(k > 0.0)) throw DomainError("energy scale factor must be > 0");
  return MaterialModel(std::visit(overloaded{
                                      [k](NeoHookean m) -> ModelParams { m.mu *= k; return m; },
                                      [k](MooneyRivlin m) -> ModelParams { m.c1 *= k; m.c2 *= k; return m; },
                                      [k](GeneralizedNeoHookean m) -> ModelParams { m.mu *= k; return m; },
                                      [k](DoubleWellShear m) -> ModelParams { m.a *= k; return m; },
                                  },
                                  params_));
}

double energy(const MaterialModel& model, double i1, double i2) {
  check_invariants(i1, i2);
  return std::visit(overloaded{
                        [&](const NeoHookean& m) { return 0.5 * m.mu * (i1 - 3.0); },
                        [&](const MooneyRivlin& m) { return m.c1 * (i1 - 3.0) + m.c2 * (i2 - 3.0); },
                        [&](const GeneralizedNeoHookean& m) {
                          return m.mu / (2.0 * m.n) * (std::pow(i1 - 2.0, m.n) - 1.0);
                        },
                        [&](const DoubleWellShear& m) {
                          const double d = (i1 - 3.0) - m.gstar * m.gstar;
                          return 0.25 * m.a * d * d;
                        },
                    },
                    model.params());
}

Partials partials(const MaterialModel& model, double i1, double i2) {
  check_invariants(i1, i2);
  return std::visit(overloaded{
                        [&](const NeoHookean& m) { return Partials{0.5 * m.mu, 0.0}; },
                        [&](const MooneyRivlin& m) { return Partials{m.c1, m.c2}; },
                        [&](const GeneralizedNeoHookean& m) {
                          return Partials{0.5 * m.mu * std::pow(i1 - 2.0, m.n - 1.0), 0.0};
                        },
                        [&](const DoubleWellShear& m) {
                          return Partials{0.5 * m.a * ((i1 - 3.0) - m.gstar * m.gstar), 0.0};
                        },
                    },
                    model.params());
}

SecondPartials second_partials(const MaterialModel& model, double i1, double i2) {
  check_invariants(i1, i2);
  return std::visit(overloaded{
                        [&](const NeoHookean&) { return SecondPartials{}; },
                        [&](const MooneyRivlin&) { return SecondPartials{}; },
                        [&](const GeneralizedNeoHookean& m) {
                          return SecondPartials{0.5 * m.mu * (m.n - 1.0) * std::pow(i1 - 2.0, m.n - 2.0), 0.0, 0.0};
                        },
                        [&](const DoubleWellShear& m) { return SecondPartials{0.5 * m.a, 0.0, 0.0}; },
                    },
                    model.params());
}

double locus_energy(const MaterialModel& model, double q) {
  return std::visit(overloaded{
                        [&](const NeoHookean& m) { return 0.5 * m.mu * q; },
                        [&](const MooneyRivlin& m) { return (m.c1 + m.c2) * q; },
                        [&](const GeneralizedNeoHookean& m) {
                          return m.mu / (2.0 * m.n) * std::expm1(m.n * std::log1p(q));
                        },
                        [&](const DoubleWellShear& m) {
                          const double d = q - m.gstar * m.gstar;
                          return 0.25 * m.a * d * d;
                        },
                    },
                    model.params());
}

double locus_stiffness(const MaterialModel& model, double q) {
  return std::visit(overloaded{
                        [&](const NeoHookean& m) { return 0.5 * m.mu; },
                        [&](const MooneyRivlin& m) { return m.c1 + m.c2; },
                        [&](const GeneralizedNeoHookean& m) { return 0.5 * m.mu * std::pow(1.0 + q, m.n - 1.0); },
                        [&](const DoubleWellShear& m) { return 0.5 * m.a * (q - m.gstar * m.gstar); },
                    },
                    model.params());
}

double locus_curvature(const MaterialModel& model, double q) {
  return std::visit(overloaded{
                        [&](const NeoHookean&) { return 0.0; },
                        [&](const MooneyRivlin&) { return 0.0; },
                        [&](const GeneralizedNeoHookean& m) {
                          return 0.5 * m.mu * (m.n - 1.0) * std::pow(1.0 + q, m.n - 2.0);
                        },
                        [&](const DoubleWellShear& m) { return 0.5 * m.a; },
                    },
                    model.params());
}

double locus_energy_increment(const MaterialModel& model, double q, double dq) {
  return std::visit(overloaded{
                        [&](const NeoHookean& m) { return 0.5 * m.mu * dq; },
                        [&](const MooneyRivlin& m) { return (m.c1 + m.c2) * dq; },
                        [&](const GeneralizedNeoHookean& m) {
                          const double base = 1.0 + q;
                          return m.mu / (2.0 * m.n) * std::pow(base, m.n) * std::expm1(m.n * std::log1p(dq / base));
                        },
                        [&](const DoubleWellShear& m) {
                          return 0.25 * m.a * dq * (2.0 * (q - m.gstar * m.gstar) + dq);
                        },
                    },
                    model.params());
}

double shear_energy(const MaterialModel& model, double gamma) {
  check_gamma(gamma);
  return locus_energy(model, gamma * gamma);
}

double shear_stress(const MaterialModel& model, double gamma) {
  check_gamma(gamma);
  return 2.0 * gamma * locus_stiffness(model, gamma * gamma);
}

double shear_modulus(const MaterialModel& model, double gamma) {
  check_gamma(gamma);
  const double q = gamma * gamma;
  return 2.0 * locus_stiffness(model, q) + 4.0 * q * locus_curvature(model, q);
}

std::vector<double> gamma_grid(double gamma_max, int n_points) {
  if (!(gamma_max > 0.0) || n_points < 2) throw DomainError("gamma grid needs gamma_max > 0 and n_points >= 2");
  std::vector<double> grid(static_cast<std::size_t>(n_points));
  const double step = gamma_max / (n_points - 1);
  for (int i = 0; i < n_points; ++i) grid[i] = step * i;
  grid.back() = gamma_max;
  return grid;
}

EllipticityReport ellipticity_scan(const MaterialModel& model, double gamma_max, int n_points) {
  EllipticityReport report;
  report.gamma_grid = gamma_grid(gamma_max, n_points);
  report.modulus.reserve(report.gamma_grid.size());
  for (double g : report.gamma_grid) report.modulus.push_back(shear_modulus(model, g));

  auto fails = [&](double g) { return shear_modulus(model, g) <= 0.0; };
  // good and bad straddle the boundary; returns the midpoint of the final bracket.
  auto bisect = [&](double good, double bad) {
    while (std::abs(bad - good) > 1e-8) {
      const double mid = 0.5 * (good + bad);
      (fails(mid) ? bad : good) = mid;
    }
    return 0.5 * (good + bad);
  };

  const auto& grid = report.gamma_grid;
  const std::size_t n = grid.size();
  std::size_t i = 0;
  while (i < n) {
    if (report.modulus[i] > 0.0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && report.modulus[j + 1] <= 0.0) ++j;
    FailureInterval interval;
    interval.lo = (i == 0) ? grid.front() : bisect(grid[i - 1], grid[i]);
    interval.hi = (j == n - 1) ? grid.back() : bisect(grid[j + 1], grid[j]);
    report.failure_intervals.push_back(interval);
    i = j + 1;
  }
  report.elliptic_everywhere = report.failure_intervals.empty();
  return report;
}

KnowlesReport knowles_fit(const MaterialModel& model, double gamma_max, int n_points, double tol) {
  if (!(tol > 0.0)) throw DomainError("knowles tolerance must be > 0");
  const auto grid = gamma_grid(gamma_max, n_points);

  std::vector<Partials> w;
  w.reserve(grid.size());
  for (double g : grid) w.push_back(partials(model, 3.0 + g * g, 3.0 + g * g));

  KnowlesReport report;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double s = w[k].w1 + w[k].w2;
    if (s == 0.0) continue;
    report.b_pointwise.emplace_back(grid[k], w[k].w2 / s);
    num += s * w[k].w2;
    den += s * s;
  }
  if (report.b_pointwise.empty())
    throw DegenerateModelError("W_1 + W_2 vanishes at every grid point; b is undetermined");

  report.b_fit = num / den;
  for (const auto& p : w) {
    report.residual_sup = std::max(report.residual_sup, std::abs(report.b_fit * p.w1 + (report.b_fit - 1.0) * p.w2));
  }
  report.constraint_satisfied = report.residual_sup <= tol;
  return report;
}

}  // namespace antiplane
