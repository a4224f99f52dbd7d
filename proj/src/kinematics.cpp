#include "antiplane/kinematics.hpp"

#include <Eigen/LU>
#include <cmath>

namespace antiplane {

double Gamma2::norm() const { return std::hypot(g1, g2); }

DefGrad deformation_gradient(const Gamma2& g) {
  DefGrad f;
  f << 1.0, 0.0, 0.0,
       0.0, 1.0, 0.0,
       g.g1, g.g2, 1.0;
  return f;
}

Invariants invariants(const DefGrad& f) {
  const Eigen::Matrix3d b = f * f.transpose();
  const double tr = b.trace();
  const double tr_sq = (b * b).trace();
  return Invariants{tr, 0.5 * (tr * tr - tr_sq), b.determinant()};
}

PiolaStress piola_stress(const MaterialModel& model, const Gamma2& g, double p) {
  const double q = g.squared_norm();
  const auto w = partials(model, 3.0 + q, 3.0 + q);
  const double g1 = g.g1;
  const double g2 = g.g2;

  // I1 F - B F for F = [[1,0,0],[0,1,0],[g1,g2,1]]
  Eigen::Matrix3d i1f_minus_bf;
  i1f_minus_bf << 2.0 + g2 * g2, -g1 * g2, -g1,
                  -g1 * g2, 2.0 + g1 * g1, -g2,
                  g1, g2, 2.0;
  Eigen::Matrix3d f_inv_t;
  f_inv_t << 1.0, 0.0, -g1,
             0.0, 1.0, -g2,
             0.0, 0.0, 1.0;

  return 2.0 * w.w1 * deformation_gradient(g) + 2.0 * w.w2 * i1f_minus_bf - p * f_inv_t;
}

InPlaneStress in_plane_stress(const MaterialModel& model, const Gamma2& g) {
  const double q = g.squared_norm();
  const auto w = partials(model, 3.0 + q, 3.0 + q);
  const double diag = 2.0 * w.w1 + 2.0 * w.w2 * (2.0 + q);
  return InPlaneStress{diag - 2.0 * w.w2 * g.g1 * g.g1, -2.0 * w.w2 * g.g1 * g.g2, diag - 2.0 * w.w2 * g.g2 * g.g2};
}

}  // namespace antiplane
