#include "antiplane/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <random>

#include "antiplane/discretization.hpp"

namespace antiplane {

namespace {

double dot(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) s += a.values[k] * b.values[k];
  return s;
}

void axpy(Field& y, double alpha, const Field& x) {
  for (std::size_t k = 0; k < y.values.size(); ++k) y.values[k] += alpha * x.values[k];
}

Field negated(const Field& g) {
  Field d = g;
  for (double& v : d.values) v = -v;
  return d;
}

class Run {
 public:
  Run(const Domain& d, const MaterialModel& model, const SolveConfig& cfg, int index)
      : d_(d), model_(model), cfg_(cfg) {
    report_.restart_index = index;
  }

  std::pair<Field, SolveReport> operator()(Field u) {
    energy_ = total_potential(u, d_, model_);
    Field g = potential_gradient(u, d_, model_);
    double gn = free_norm(g, d_);
    if (!std::isfinite(energy_) || !std::isfinite(gn)) throw DivergedError("non-finite energy at start", u);
    record(energy_);

    conjugate_gradient(u, g, gn);
    if (report_.converged && cfg_.newton_polish) newton_polish(u, g, gn);

    report_.final_energy = total_potential(u, d_, model_);
    report_.final_grad_norm = gn;
    const auto el = el_residual(u, d_, model_);
    report_.el_interior_norm = el.interior_norm;
    report_.el_traction_norm = el.traction_norm;
    report_.certificate_bound = 10.0 * cfg_.grad_tol / (d_.h() * d_.h());
    return {std::move(u), std::move(report_)};
  }

 private:
  void record(double e) {
    if (report_.energy_history.size() < cfg_.history_cap) report_.energy_history.push_back(e);
  }

  void record_step(double inc) {
    energy_ += inc;
    record(energy_);
    if (report_.energy_increments.size() < cfg_.history_cap) report_.energy_increments.push_back(inc);
  }

  // Backtracks from alpha until the Armijo condition holds with a strict
  // decrease. Returns the accepted step and increment.
  std::optional<std::pair<double, double>> armijo(const Field& u, const Field& dir, double alpha, double gd,
                                                  std::optional<double> known_increment = std::nullopt) {
    for (int bt = 0; bt < 80; ++bt) {
      const double inc = (bt == 0 && known_increment) ? *known_increment : potential_increment(u, dir, alpha, d_, model_);
      if (std::isfinite(inc) && inc < 0.0 && inc <= cfg_.armijo_c * alpha * gd) return std::make_pair(alpha, inc);
      alpha *= cfg_.backtrack;
    }
    return std::nullopt;
  }

  void accept(Field& u, const Field& dir, double alpha, double inc) {
    axpy(u, alpha, dir);
    record_step(inc);
  }

  void conjugate_gradient(Field& u, Field& g, double& gn) {
    Field dir = negated(g);
    bool steepest = true;
    double trial = 1.0 / std::max(1.0, gn);

    while (report_.iterations < cfg_.max_iters) {
      if (gn <= cfg_.grad_tol) {
        report_.converged = true;
        return;
      }
      ++report_.iterations;

      double gd = dot(g, dir);
      if (!(gd < 0.0)) {
        dir = negated(g);
        gd = -gn * gn;
        steepest = true;
      }

      // Quadratic model of phi(alpha) = Pi(u + alpha dir) - Pi(u) through
      // phi(0), phi'(0) and phi(trial).
      double alpha = trial;
      std::optional<double> known;
      const double phi_t = potential_increment(u, dir, trial, d_, model_);
      if (std::isfinite(phi_t)) {
        const double curvature = 2.0 * (phi_t - gd * trial) / (trial * trial);
        if (curvature > 0.0) {
          alpha = -gd / curvature;
        } else {
          alpha = 2.0 * trial;
        }
        if (alpha == trial) known = phi_t;
      } else {
        alpha = trial * cfg_.backtrack;
      }

      const auto step = armijo(u, dir, alpha, gd, known);
      if (!step) {
        if (steepest) return;  // no descent possible at this precision
        dir = negated(g);
        steepest = true;
        continue;
      }
      accept(u, dir, step->first, step->second);

      Field g_new = potential_gradient(u, d_, model_);
      const double gn_new = free_norm(g_new, d_);
      if (!std::isfinite(gn_new)) {
        axpy(u, -step->first, dir);
        throw DivergedError("non-finite gradient", u);
      }

      double y_dot = 0.0;
      for (std::size_t k = 0; k < g.values.size(); ++k) y_dot += g_new.values[k] * (g_new.values[k] - g.values[k]);
      const double beta = std::max(0.0, y_dot / (gn * gn));
      for (std::size_t k = 0; k < dir.values.size(); ++k) dir.values[k] = -g_new.values[k] + beta * dir.values[k];
      steepest = beta == 0.0;

      g = std::move(g_new);
      gn = gn_new;
      trial = step->first;
    }
    report_.converged = gn <= cfg_.grad_tol;
  }

  void newton_polish(Field& u, Field& g, double& gn) {
    std::vector<int> free_index(d_.num_nodes(), -1);
    int n_free = 0;
    for (std::size_t k = 0; k < d_.num_nodes(); ++k) {
      if (d_.is_free(k)) free_index[k] = n_free++;
    }
    if (n_free == 0) return;

    for (int step = 0; step < 5 && gn > 0.0; ++step) {
      const auto hess = hessian(u, free_index, n_free);
      Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
      lu.compute(hess);
      if (lu.info() != Eigen::Success) return;

      Eigen::VectorXd rhs(n_free);
      for (std::size_t k = 0; k < d_.num_nodes(); ++k) {
        if (free_index[k] >= 0) rhs[free_index[k]] = -g.values[k];
      }
      const Eigen::VectorXd s = lu.solve(rhs);
      if (lu.info() != Eigen::Success || !s.allFinite()) return;

      Field dir(d_.nx(), d_.ny(), d_.h());
      for (std::size_t k = 0; k < d_.num_nodes(); ++k) {
        if (free_index[k] >= 0) dir.values[k] = s[free_index[k]];
      }
      const double gd = dot(g, dir);
      if (!(gd < 0.0)) return;

      const auto accepted = armijo(u, dir, 1.0, gd);
      if (!accepted) return;
      Field trial_u = u;
      axpy(trial_u, accepted->first, dir);
      Field g_new = potential_gradient(trial_u, d_, model_);
      const double gn_new = free_norm(g_new, d_);
      if (!(gn_new < gn)) return;

      u = std::move(trial_u);
      record_step(accepted->second);
      g = std::move(g_new);
      gn = gn_new;
      ++report_.newton_steps;
    }
  }

  // Hessian of Pi on free nodes. Per cell, d^2 W / dg^2 = 2 S I + 4 C g g^T
  // with S = W_1 + W_2 and C = W_11 + 2 W_12 + W_22 on the locus.
  Eigen::SparseMatrix<double> hessian(const Field& u, const std::vector<int>& free_index, int n_free) const {
    const auto grads = gradient_field(u, d_);
    const int cx = d_.cells_x();
    const double b1[4] = {-1.0, 1.0, -1.0, 1.0};  // SW, SE, NW, NE
    const double b2[4] = {-1.0, -1.0, 1.0, 1.0};

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(grads.size() * 16);
    for (int j = 0; j < d_.cells_y(); ++j) {
      for (int i = 0; i < cx; ++i) {
        const Gamma2& g = grads[static_cast<std::size_t>(j) * cx + i];
        const double q = g.squared_norm();
        const double s = 2.0 * locus_stiffness(model_, q);
        const double c = 4.0 * locus_curvature(model_, q);
        const double h11 = s + c * g.g1 * g.g1;
        const double h12 = c * g.g1 * g.g2;
        const double h22 = s + c * g.g2 * g.g2;
        const std::size_t corner[4] = {d_.node(i, j), d_.node(i + 1, j), d_.node(i, j + 1), d_.node(i + 1, j + 1)};
        // h^2 B^T H B with B = [b1; b2] / 2h.
        for (int a = 0; a < 4; ++a) {
          const int ra = free_index[corner[a]];
          if (ra < 0) continue;
          for (int b = 0; b < 4; ++b) {
            const int rb = free_index[corner[b]];
            if (rb < 0) continue;
            const double v = 0.25 * (b1[a] * (h11 * b1[b] + h12 * b2[b]) + b2[a] * (h12 * b1[b] + h22 * b2[b]));
            triplets.emplace_back(ra, rb, v);
          }
        }
      }
    }
    Eigen::SparseMatrix<double> m(n_free, n_free);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
  }

  const Domain& d_;
  const MaterialModel& model_;
  const SolveConfig& cfg_;
  SolveReport report_;
  double energy_ = 0.0;
};

}  // namespace

void SolveConfig::validate() const {
  if (!(grad_tol > 0.0)) throw DomainError("grad_tol must be > 0");
  if (max_iters < 0) throw DomainError("max_iters must be >= 0");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw DomainError("armijo_c must lie in (0, 1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw DomainError("backtrack must lie in (0, 1)");
  if (restarts < 1) throw DomainError("restarts must be >= 1");
}

Field perturbed_start(const Field& u0, const Domain& d, std::uint64_t seed, int k) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& c : d.conditions()) {
    if (c.kind != NodeKind::Dirichlet) continue;
    lo = std::min(lo, c.value);
    hi = std::max(hi, c.value);
  }
  const double amplitude = 0.1 * std::max(1.0, hi - lo);

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  Field u = u0;
  for (std::size_t n = 0; n < u.values.size(); ++n) {
    const double r = noise(rng);
    if (d.is_free(n)) u.values[n] += r;
  }
  return u;
}

SolveResult minimize(const Field& u0, const Domain& d, const MaterialModel& model, const SolveConfig& cfg) {
  cfg.validate();
  require_conforming(u0, d);
  for (std::size_t k = 0; k < d.num_nodes(); ++k) {
    const auto& c = d.conditions()[k];
    if (c.kind == NodeKind::Dirichlet && u0.values[k] != c.value)
      throw ContractViolation("initial field violates Dirichlet data");
  }

  const int n = cfg.restarts;
  std::vector<std::optional<std::pair<Field, SolveReport>>> runs(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(static, 1)
  for (int k = 0; k < n; ++k) {
    try {
      Field start = (k == 0) ? u0 : perturbed_start(u0, d, cfg.seed, k);
      runs[k] = Run(d, model, cfg, k)(std::move(start));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  int best = 0;
  for (int k = 1; k < n; ++k) {
    const double eb = runs[best]->second.final_energy;
    const double ek = runs[k]->second.final_energy;
    if (ek < eb - 1e-12 * std::max(1.0, std::abs(eb))) best = k;
  }

  SolveResult result;
  result.restarts.reserve(n);
  for (const auto& r : runs) result.restarts.push_back(r->second);
  result.report = runs[best]->second;
  result.u = std::move(runs[best]->first);
  return result;
}

std::vector<PathStep> solve_path(const Domain& d, const MaterialModel& model, const std::vector<double>& scales,
                                 const SolveConfig& cfg) {
  std::vector<PathStep> path;
  Field u = initial_field(d);
  for (double s : scales) {
    if (!std::isfinite(s)) throw PathError("non-finite load scale", s);
    const Domain scaled = d.with_traction_scale(s);
    try {
      auto result = minimize(u, scaled, model, cfg);
      u = result.u;
      path.push_back(PathStep{s, std::move(result.report), std::move(result.u)});
    } catch (const DivergedError& e) {
      throw PathError(std::string("solve diverged at load scale: ") + e.what(), s);
    }
  }
  return path;
}

}  // namespace antiplane
