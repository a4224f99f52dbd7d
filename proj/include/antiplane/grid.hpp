// Rectangular grids, nodal fields and the boundary partition of the domain.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace antiplane {

/// Raised when a field or array does not conform to the grid it is used with.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major 2D array; index (i, j) with i along x1 and j along x2.
struct Array2 {
  int nx = 0;
  int ny = 0;
  std::vector<double> data;

  Array2() = default;
  Array2(int nx_, int ny_, double fill = 0.0)
      : nx(nx_), ny(ny_), data(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), fill) {}

  double& operator()(int i, int j) { return data[static_cast<std::size_t>(j) * nx + i]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(j) * nx + i]; }
  std::size_t size() const { return data.size(); }
};

/// Nodal scalar displacement u on an nx-by-ny grid of spacing h.
struct Field {
  int nx = 0;
  int ny = 0;
  double h = 1.0;
  std::vector<double> values;

  Field() = default;
  Field(int nx_, int ny_, double h_, double fill = 0.0)
      : nx(nx_), ny(ny_), h(h_), values(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), fill) {}

  double& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
  std::size_t size() const { return values.size(); }

  Array2 as_array() const;
};

enum class NodeKind : std::uint8_t { Interior, Dirichlet, Traction };

struct NodeCondition {
  NodeKind kind = NodeKind::Interior;
  /// Prescribed u for Dirichlet nodes, boundary shear force t for traction nodes.
  double value = 0.0;
  /// Trapezoidal boundary weight for traction nodes.
  double weight = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
};

/// Boundary condition for one edge of the rectangle; value is evaluated at
/// node coordinates (x1, x2).
struct EdgeCondition {
  NodeKind kind = NodeKind::Dirichlet;
  std::function<double(double, double)> value = [](double, double) { return 0.0; };
};

struct EdgeSpec {
  EdgeCondition left;
  EdgeCondition right;
  EdgeCondition bottom;
  EdgeCondition top;
};

/// Rectangle [0, (nx-1)h] x [0, (ny-1)h] with one condition per boundary node.
///
/// Invariants checked at construction: nx, ny >= 3; h > 0; interior nodes are
/// Interior and boundary nodes are Dirichlet or Traction; boundary normals
/// are unit vectors; and Dirichlet nodes exist on both checkerboard
/// sublattices. The last condition is needed because the one-point cell
/// gradient does not see the checkerboard mode, so each sublattice must be
/// pinned separately.
class Domain {
 public:
  Domain(int nx, int ny, double h, std::vector<NodeCondition> nodes);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }
  double x1(int i) const { return h_ * i; }
  double x2(int j) const { return h_ * j; }
  std::size_t node(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
  std::size_t num_nodes() const { return nodes_.size(); }
  int cells_x() const { return nx_ - 1; }
  int cells_y() const { return ny_ - 1; }

  const NodeCondition& condition(int i, int j) const { return nodes_[node(i, j)]; }
  const std::vector<NodeCondition>& conditions() const { return nodes_; }
  bool is_boundary(int i, int j) const { return i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1; }
  bool is_free(std::size_t k) const { return nodes_[k].kind != NodeKind::Dirichlet; }

  /// Measure of the interior node set, (nx-2)(ny-2) h^2. This is the area
  /// seen by the interior residual norms.
  double interior_area() const { return h_ * h_ * (nx_ - 2) * (ny_ - 2); }

  /// Copy with every traction value multiplied by s.
  Domain with_traction_scale(double s) const;

  /// Traction work coefficients t * weight per node (zero for non-traction nodes).
  std::vector<double> load_vector() const;

 private:
  int nx_;
  int ny_;
  double h_;
  std::vector<NodeCondition> nodes_;
};

/// Builds a rectangle from per-edge conditions. Corners adjacent to a
/// Dirichlet edge are Dirichlet (two Dirichlet edges are averaged); a corner
/// between two traction edges takes h/2 from each edge, the averaged
/// traction and the normalized diagonal normal.
Domain make_rectangle(int nx, int ny, double h, const EdgeSpec& edges);

/// Dirichlet values on Dirichlet nodes, zero elsewhere.
Field initial_field(const Domain& d);

/// Throws ContractViolation unless u has the grid shape of d.
void require_conforming(const Field& u, const Domain& d);

/// Nodal samples of f(x1, x2) on the grid of d.
Field sample(const Domain& d, const std::function<double(double, double)>& f);

struct GridShape {
  int nx = 0;
  int ny = 0;
  double h = 1.0;
};
/// (2nx - 1) x (2ny - 1) nodes at spacing h/2.
GridShape refined(const GridShape& g);

}  // namespace antiplane
