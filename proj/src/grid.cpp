#include "antiplane/grid.hpp"

#include <cmath>
#include <string>

namespace antiplane {

Array2 Field::as_array() const {
  Array2 a(nx, ny);
  a.data = values;
  return a;
}

Domain::Domain(int nx, int ny, double h, std::vector<NodeCondition> nodes)
    : nx_(nx), ny_(ny), h_(h), nodes_(std::move(nodes)) {
  if (nx < 3 || ny < 3) throw ContractViolation("domain needs at least 3 nodes per direction");
  if (!(h > 0.0) || !std::isfinite(h)) throw ContractViolation("grid spacing must be positive and finite");
  if (nodes_.size() != static_cast<std::size_t>(nx) * ny) throw ContractViolation("node condition count mismatch");

  bool pinned[2] = {false, false};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const auto& c = nodes_[node(i, j)];
      if (!std::isfinite(c.value)) throw ContractViolation("non-finite boundary value");
      if (!is_boundary(i, j)) {
        if (c.kind != NodeKind::Interior) throw ContractViolation("interior node carries a boundary condition");
        continue;
      }
      if (c.kind == NodeKind::Interior) throw ContractViolation("boundary node without a condition");
      if (std::abs(std::hypot(c.n1, c.n2) - 1.0) > 1e-12) throw ContractViolation("boundary normal is not a unit vector");
      if (c.kind == NodeKind::Dirichlet) pinned[(i + j) % 2] = true;
    }
  }
  if (!pinned[0] || !pinned[1])
    throw ContractViolation("Dirichlet nodes are required on both checkerboard sublattices");
}

Domain Domain::with_traction_scale(double s) const {
  auto nodes = nodes_;
  for (auto& c : nodes) {
    if (c.kind == NodeKind::Traction) c.value *= s;
  }
  return Domain(nx_, ny_, h_, std::move(nodes));
}

std::vector<double> Domain::load_vector() const {
  std::vector<double> load(nodes_.size(), 0.0);
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (nodes_[k].kind == NodeKind::Traction) load[k] = nodes_[k].value * nodes_[k].weight;
  }
  return load;
}

Domain make_rectangle(int nx, int ny, double h, const EdgeSpec& edges) {
  if (nx < 3 || ny < 3) throw ContractViolation("domain needs at least 3 nodes per direction");
  std::vector<NodeCondition> nodes(static_cast<std::size_t>(nx) * ny);

  struct Hit {
    const EdgeCondition* edge;
    double n1, n2;
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Hit hits[2];
      int count = 0;
      if (i == 0) hits[count++] = {&edges.left, -1.0, 0.0};
      if (i == nx - 1) hits[count++] = {&edges.right, 1.0, 0.0};
      if (j == 0) hits[count++] = {&edges.bottom, 0.0, -1.0};
      if (j == ny - 1) hits[count++] = {&edges.top, 0.0, 1.0};
      if (count == 0) continue;

      const double x1 = h * i;
      const double x2 = h * j;
      auto& c = nodes[static_cast<std::size_t>(j) * nx + i];
      if (count == 1) {
        c.kind = hits[0].edge->kind;
        c.value = hits[0].edge->value(x1, x2);
        c.weight = c.kind == NodeKind::Traction ? h : 0.0;
        c.n1 = hits[0].n1;
        c.n2 = hits[0].n2;
        continue;
      }

      const double s = 1.0 / std::sqrt(2.0);
      c.n1 = (hits[0].n1 + hits[1].n1) * s;
      c.n2 = (hits[0].n2 + hits[1].n2) * s;
      const bool d0 = hits[0].edge->kind == NodeKind::Dirichlet;
      const bool d1 = hits[1].edge->kind == NodeKind::Dirichlet;
      if (d0 && d1) {
        c.kind = NodeKind::Dirichlet;
        c.value = 0.5 * (hits[0].edge->value(x1, x2) + hits[1].edge->value(x1, x2));
      } else if (d0 || d1) {
        c.kind = NodeKind::Dirichlet;
        c.value = (d0 ? hits[0] : hits[1]).edge->value(x1, x2);
      } else {
        c.kind = NodeKind::Traction;
        c.value = 0.5 * (hits[0].edge->value(x1, x2) + hits[1].edge->value(x1, x2));
        c.weight = h;
      }
    }
  }
  return Domain(nx, ny, h, std::move(nodes));
}

Field initial_field(const Domain& d) {
  Field u(d.nx(), d.ny(), d.h());
  for (std::size_t k = 0; k < d.num_nodes(); ++k) {
    const auto& c = d.conditions()[k];
    if (c.kind == NodeKind::Dirichlet) u.values[k] = c.value;
  }
  return u;
}

void require_conforming(const Field& u, const Domain& d) {
  if (u.nx != d.nx() || u.ny != d.ny() || u.values.size() != d.num_nodes())
    throw ContractViolation("field shape " + std::to_string(u.nx) + "x" + std::to_string(u.ny) +
                            " does not match domain " + std::to_string(d.nx()) + "x" + std::to_string(d.ny()));
  if (u.h != d.h()) throw ContractViolation("field spacing does not match domain spacing");
}

Field sample(const Domain& d, const std::function<double(double, double)>& f) {
  Field u(d.nx(), d.ny(), d.h());
  for (int j = 0; j < d.ny(); ++j) {
    for (int i = 0; i < d.nx(); ++i) u.at(i, j) = f(d.x1(i), d.x2(j));
  }
  return u;
}

GridShape refined(const GridShape& g) { return GridShape{2 * g.nx - 1, 2 * g.ny - 1, 0.5 * g.h}; }

}  // namespace antiplane
