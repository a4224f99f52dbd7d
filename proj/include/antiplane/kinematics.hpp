// Anti-plane shear kinematics: chi = (x1, x2, x3 + u(x1, x2)).
#pragma once

#include <Eigen/Core>

#include "antiplane/constitutive.hpp"

namespace antiplane {

/// Shear strain (u_,1, u_,2).
struct Gamma2 {
  double g1 = 0.0;
  double g2 = 0.0;

  double squared_norm() const { return g1 * g1 + g2 * g2; }
  double norm() const;
};

using DefGrad = Eigen::Matrix3d;
using PiolaStress = Eigen::Matrix3d;

struct Invariants {
  double i1 = 3.0;
  double i2 = 3.0;
  double i3 = 1.0;
};

/// F with identity rows 1-2 and row 3 = (g1, g2, 1).
DefGrad deformation_gradient(const Gamma2& g);

/// Principal invariants of B = F F^T, I2 via the trace identity.
Invariants invariants(const DefGrad& f);

/// First Piola-Kirchhoff stress
///   sigma = 2 W_1 F + 2 W_2 (I1 F - B F) - p F^{-T}
/// using the closed-form anti-plane expressions for B F and F^{-T}.
PiolaStress piola_stress(const MaterialModel& model, const Gamma2& g, double p);

/// In-plane block s_ab of sigma without the pressure term:
///   s_ab = [2 W_1 + 2 W_2 (2 + gamma^2)] delta_ab - 2 W_2 g_a g_b.
struct InPlaneStress {
  double s11 = 0.0;
  double s12 = 0.0;
  double s22 = 0.0;
};

InPlaneStress in_plane_stress(const MaterialModel& model, const Gamma2& g);

}  // namespace antiplane
