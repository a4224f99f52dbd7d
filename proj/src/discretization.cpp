#include "antiplane/discretization.hpp"

#include <cmath>

#include "antiplane/stencils.hpp"

namespace antiplane {

namespace {

// Cell gradient of a nodal vector at cell (i, j).
inline Gamma2 cell_gradient(const std::vector<double>& u, int nx, double inv2h, int i, int j) {
  const std::size_t sw = static_cast<std::size_t>(j) * nx + i;
  const std::size_t nw = sw + nx;
  const double a = u[sw + 1] + u[nw + 1];  // east side
  const double b = u[sw] + u[nw];          // west side
  const double c = u[nw] + u[nw + 1];      // north side
  const double e = u[sw] + u[sw + 1];      // south side
  return Gamma2{(a - b) * inv2h, (c - e) * inv2h};
}

double load_work(const std::vector<double>& load, const std::vector<double>& u) {
  double w = 0.0;
  for (std::size_t k = 0; k < load.size(); ++k) {
    if (load[k] != 0.0) w += load[k] * u[k];
  }
  return w;
}

}  // namespace

std::vector<Gamma2> gradient_field(const Field& u, const Domain& d) {
  require_conforming(u, d);
  const int cx = d.cells_x();
  const int cy = d.cells_y();
  const double inv2h = 0.5 / d.h();
  std::vector<Gamma2> g(static_cast<std::size_t>(cx) * cy);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < cy; ++j) {
    for (int i = 0; i < cx; ++i) g[static_cast<std::size_t>(j) * cx + i] = cell_gradient(u.values, d.nx(), inv2h, i, j);
  }
  return g;
}

double total_potential(const Field& u, const Domain& d, const MaterialModel& model) {
  require_conforming(u, d);
  const int cx = d.cells_x();
  const int cy = d.cells_y();
  const double inv2h = 0.5 / d.h();
  std::vector<double> rows(static_cast<std::size_t>(cy), 0.0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < cy; ++j) {
    double acc = 0.0;
    for (int i = 0; i < cx; ++i) acc += locus_energy(model, cell_gradient(u.values, d.nx(), inv2h, i, j).squared_norm());
    rows[j] = acc;
  }
  double stored = 0.0;
  for (double r : rows) stored += r;
  return stored * d.h() * d.h() - load_work(d.load_vector(), u.values);
}

CellStress cell_shear_stress(const Field& u, const Domain& d, const MaterialModel& model) {
  require_conforming(u, d);
  const int cx = d.cells_x();
  const int cy = d.cells_y();
  const double inv2h = 0.5 / d.h();
  CellStress s{Array2(cx, cy), Array2(cx, cy)};
#pragma omp parallel for schedule(static)
  for (int j = 0; j < cy; ++j) {
    for (int i = 0; i < cx; ++i) {
      const Gamma2 g = cell_gradient(u.values, d.nx(), inv2h, i, j);
      const double k = 2.0 * locus_stiffness(model, g.squared_norm());
      s.tau1(i, j) = k * g.g1;
      s.tau2(i, j) = k * g.g2;
    }
  }
  return s;
}

Field potential_gradient(const Field& u, const Domain& d, const MaterialModel& model) {
  const CellStress s = cell_shear_stress(u, d, model);
  const auto load = d.load_vector();
  const int nx = d.nx();
  const int ny = d.ny();
  const int cx = d.cells_x();
  const int cy = d.cells_y();
  const double half_h = 0.5 * d.h();
  Field grad(nx, ny, d.h());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = d.node(i, j);
      if (!d.is_free(k)) continue;
      double acc = 0.0;
      // Node is the SW, SE, NW or NE corner of the neighbouring cells.
      if (i < cx && j < cy) acc += -s.tau1(i, j) - s.tau2(i, j);
      if (i > 0 && j < cy) acc += s.tau1(i - 1, j) - s.tau2(i - 1, j);
      if (i < cx && j > 0) acc += -s.tau1(i, j - 1) + s.tau2(i, j - 1);
      if (i > 0 && j > 0) acc += s.tau1(i - 1, j - 1) + s.tau2(i - 1, j - 1);
      grad.values[k] = half_h * acc - load[k];
    }
  }
  return grad;
}

double potential_increment(const Field& u, const Field& v, double alpha, const Domain& d,
                           const MaterialModel& model) {
  require_conforming(u, d);
  require_conforming(v, d);
  const int cx = d.cells_x();
  const int cy = d.cells_y();
  const double inv2h = 0.5 / d.h();
  std::vector<double> rows(static_cast<std::size_t>(cy), 0.0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < cy; ++j) {
    double acc = 0.0;
    for (int i = 0; i < cx; ++i) {
      const Gamma2 g = cell_gradient(u.values, d.nx(), inv2h, i, j);
      const Gamma2 e = cell_gradient(v.values, d.nx(), inv2h, i, j);
      const double q = g.squared_norm();
      double dq = alpha * (2.0 * (g.g1 * e.g1 + g.g2 * e.g2) + alpha * e.squared_norm());
      if (q + dq < 0.0) dq = -q;
      acc += locus_energy_increment(model, q, dq);
    }
    rows[j] = acc;
  }
  double stored = 0.0;
  for (double r : rows) stored += r;
  return stored * d.h() * d.h() - alpha * load_work(d.load_vector(), v.values);
}

double free_norm(const Field& g, const Domain& d) {
  require_conforming(g, d);
  double acc = 0.0;
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    if (d.is_free(k)) acc += g.values[k] * g.values[k];
  }
  return std::sqrt(acc);
}

Array2 divergence_field(const Field& u, const Domain& d, const MaterialModel& model) {
  const CellStress s = cell_shear_stress(u, d, model);
  Array2 div = stencil::d1(s.tau1, d.h());
  const Array2 b = stencil::d2(s.tau2, d.h());
  for (std::size_t k = 0; k < div.data.size(); ++k) div.data[k] += b.data[k];
  return div;
}

ElResidual el_residual(const Field& u, const Domain& d, const MaterialModel& model) {
  const CellStress s = cell_shear_stress(u, d, model);
  Array2 div = stencil::d1(s.tau1, d.h());
  const Array2 b = stencil::d2(s.tau2, d.h());
  for (std::size_t k = 0; k < div.data.size(); ++k) div.data[k] += b.data[k];

  ElResidual r;
  r.interior_norm = stencil::l2_norm(div, d.h());

  const int cx = d.cells_x();
  const int cy = d.cells_y();
  double acc = 0.0;
  for (int j = 0; j < d.ny(); ++j) {
    for (int i = 0; i < d.nx(); ++i) {
      const auto& c = d.condition(i, j);
      if (c.kind != NodeKind::Traction) continue;
      double t1 = 0.0, t2 = 0.0;
      int n = 0;
      for (int cj = j - 1; cj <= j; ++cj) {
        for (int ci = i - 1; ci <= i; ++ci) {
          if (ci < 0 || cj < 0 || ci >= cx || cj >= cy) continue;
          t1 += s.tau1(ci, cj);
          t2 += s.tau2(ci, cj);
          ++n;
        }
      }
      const double mismatch = (c.n1 * t1 + c.n2 * t2) / n - c.value;
      acc += c.weight * mismatch * mismatch;
    }
  }
  r.traction_norm = std::sqrt(acc);
  return r;
}

namespace serial {

std::vector<Gamma2> gradient_field(const Field& u, const Domain& d) {
  require_conforming(u, d);
  const int cx = d.cells_x();
  const double h = d.h();
  std::vector<Gamma2> g;
  g.reserve(static_cast<std::size_t>(cx) * d.cells_y());
  for (int j = 0; j < d.cells_y(); ++j) {
    for (int i = 0; i < cx; ++i) {
      const double sw = u.at(i, j), se = u.at(i + 1, j), nw = u.at(i, j + 1), ne = u.at(i + 1, j + 1);
      g.push_back(Gamma2{(ne + se - nw - sw) / (2.0 * h), (ne + nw - se - sw) / (2.0 * h)});
    }
  }
  return g;
}

double total_potential(const Field& u, const Domain& d, const MaterialModel& model) {
  double pi = 0.0;
  for (const Gamma2& g : serial::gradient_field(u, d)) pi += shear_energy(model, g.norm()) * d.h() * d.h();
  for (std::size_t k = 0; k < d.num_nodes(); ++k) {
    const auto& c = d.conditions()[k];
    if (c.kind == NodeKind::Traction) pi -= c.value * c.weight * u.values[k];
  }
  return pi;
}

Field potential_gradient(const Field& u, const Domain& d, const MaterialModel& model) {
  const auto g = serial::gradient_field(u, d);
  const int cx = d.cells_x();
  const double h = d.h();
  Field grad(d.nx(), d.ny(), h);
  for (int j = 0; j < d.cells_y(); ++j) {
    for (int i = 0; i < cx; ++i) {
      const Gamma2& gc = g[static_cast<std::size_t>(j) * cx + i];
      const double gamma = gc.norm();
      // tau = tau(gamma) g / gamma, with the gamma -> 0 limit 2 (W_1 + W_2) g.
      const double k = gamma > 0.0 ? shear_stress(model, gamma) / gamma : 2.0 * locus_stiffness(model, 0.0);
      const double t1 = k * gc.g1;
      const double t2 = k * gc.g2;
      // d g1 / d u_corner and d g2 / d u_corner, times h^2.
      grad.at(i, j) += h * h * (-t1 - t2) / (2.0 * h);
      grad.at(i + 1, j) += h * h * (t1 - t2) / (2.0 * h);
      grad.at(i, j + 1) += h * h * (-t1 + t2) / (2.0 * h);
      grad.at(i + 1, j + 1) += h * h * (t1 + t2) / (2.0 * h);
    }
  }
  for (std::size_t k = 0; k < d.num_nodes(); ++k) {
    const auto& c = d.conditions()[k];
    if (c.kind == NodeKind::Dirichlet) grad.values[k] = 0.0;
    if (c.kind == NodeKind::Traction) grad.values[k] -= c.value * c.weight;
  }
  return grad;
}

Array2 divergence_field(const Field& u, const Domain& d, const MaterialModel& model) {
  const auto g = serial::gradient_field(u, d);
  const int cx = d.cells_x();
  const double h = d.h();
  auto tau = [&](int i, int j) {
    const Gamma2& gc = g[static_cast<std::size_t>(j) * cx + i];
    const double k = 2.0 * locus_stiffness(model, gc.squared_norm());
    return Gamma2{k * gc.g1, k * gc.g2};
  };
  Array2 div(d.nx() - 2, d.ny() - 2);
  for (int j = 1; j < d.ny() - 1; ++j) {
    for (int i = 1; i < d.nx() - 1; ++i) {
      const Gamma2 ne = tau(i, j), nw = tau(i - 1, j), se = tau(i, j - 1), sw = tau(i - 1, j - 1);
      div(i - 1, j - 1) = (ne.g1 + se.g1 - nw.g1 - sw.g1) / (2.0 * h) + (ne.g2 + nw.g2 - se.g2 - sw.g2) / (2.0 * h);
    }
  }
  return div;
}

}  // namespace serial

}  // namespace antiplane
