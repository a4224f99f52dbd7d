// Discrete total potential of the anti-plane problem on bilinear cells with
// one-point (cell-centre) quadrature:
//   Pi(u) = sum_cells W(|g_cell|) h^2 - sum_traction t u w,
// its exact gradient, and the Euler-Lagrange residual div tau(grad u).
#pragma once

#include <vector>

#include "antiplane/constitutive.hpp"
#include "antiplane/grid.hpp"
#include "antiplane/kinematics.hpp"

namespace antiplane {

/// Cell-centred gradients of the bilinear interpolant, row-major over the
/// (nx-1) x (ny-1) cells.
std::vector<Gamma2> gradient_field(const Field& u, const Domain& d);

double total_potential(const Field& u, const Domain& d, const MaterialModel& model);

/// dPi/du at free nodes; zero at Dirichlet nodes.
Field potential_gradient(const Field& u, const Domain& d, const MaterialModel& model);

/// Pi(u + alpha v) - Pi(u), accumulated from per-cell energy increments so it
/// stays accurate when the change is far below the rounding level of Pi.
double potential_increment(const Field& u, const Field& v, double alpha, const Domain& d,
                           const MaterialModel& model);

/// Euclidean norm of a nodal vector restricted to free nodes.
double free_norm(const Field& g, const Domain& d);

/// Cell shear stress tau = 2 (W_1 + W_2) g, split into components.
struct CellStress {
  Array2 tau1;
  Array2 tau2;
};
CellStress cell_shear_stress(const Field& u, const Domain& d, const MaterialModel& model);

/// div tau at the (nx-2) x (ny-2) interior nodes.
Array2 divergence_field(const Field& u, const Domain& d, const MaterialModel& model);

struct ElResidual {
  double interior_norm = 0.0;
  double traction_norm = 0.0;
};

/// Discrete L2 norms of div tau on interior nodes and of n . tau - t on
/// traction nodes (tau averaged from the adjacent cells).
ElResidual el_residual(const Field& u, const Domain& d, const MaterialModel& model);

/// Single-threaded scatter-based implementations of the same kernels. Kept
/// as the reference the parallel kernels are tested and benchmarked against.
namespace serial {
std::vector<Gamma2> gradient_field(const Field& u, const Domain& d);
double total_potential(const Field& u, const Domain& d, const MaterialModel& model);
Field potential_gradient(const Field& u, const Domain& d, const MaterialModel& model);
Array2 divergence_field(const Field& u, const Domain& d, const MaterialModel& model);
}  // namespace serial

}  // namespace antiplane
