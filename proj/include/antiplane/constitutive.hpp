// Strain-energy families W(I1, I2) for incompressible isotropic materials and
// their analysis on the anti-plane shear locus I1 = I2 = 3 + gamma^2.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace antiplane {

/// Raised for arguments outside an operation's domain (I < 3, gamma < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// W = (mu/2)(I1 - 3)
struct NeoHookean {
  double mu = 1.0;
};

/// W = c1(I1 - 3) + c2(I2 - 3)
struct MooneyRivlin {
  double c1 = 0.5;
  double c2 = 0.0;
};

/// W = mu/(2n) [ (1 + (I1 - 3))^n - 1 ]; depends on I1 only.
struct GeneralizedNeoHookean {
  double mu = 1.0;
  double n = 1.0;
};

/// W = (a/4) ((I1 - 3) - gstar^2)^2; nonconvex in the shear strain, I1 only.
struct DoubleWellShear {
  double a = 1.0;
  double gstar = 1.0;
};

using ModelParams = std::variant<NeoHookean, MooneyRivlin, GeneralizedNeoHookean, DoubleWellShear>;

/// A validated strain-energy model. Construction rejects parameters outside
/// the family's admissible range.
class MaterialModel {
 public:
  explicit MaterialModel(ModelParams params);

  const ModelParams& params() const { return params_; }
  std::string family_name() const;
  /// True when W does not depend on I2 (W_2 identically zero).
  bool depends_on_i1_only() const;
  /// Same family with the energy multiplied by k > 0.
  MaterialModel scaled(double k) const;

 private:
  ModelParams params_;
};

struct Partials {
  double w1 = 0.0;
  double w2 = 0.0;
};

struct SecondPartials {
  double w11 = 0.0;
  double w12 = 0.0;
  double w22 = 0.0;
};

double energy(const MaterialModel& model, double i1, double i2);
Partials partials(const MaterialModel& model, double i1, double i2);
SecondPartials second_partials(const MaterialModel& model, double i1, double i2);

/// W restricted to the locus: W(3 + gamma^2, 3 + gamma^2).
double shear_energy(const MaterialModel& model, double gamma);

/// tau(gamma) = 2 gamma (W_1 + W_2) on the locus.
double shear_stress(const MaterialModel& model, double gamma);

/// d tau / d gamma = 2(W_1 + W_2) + 4 gamma^2 (W_11 + 2 W_12 + W_22).
double shear_modulus(const MaterialModel& model, double gamma);

// Locus quantities parameterized by q = gamma^2 (= I1 - 3). These avoid the
// square root in inner loops.
double locus_energy(const MaterialModel& model, double q);
/// W_1 + W_2 on the locus, so that tau = 2 (W_1 + W_2) g componentwise.
double locus_stiffness(const MaterialModel& model, double q);
/// W_11 + 2 W_12 + W_22 on the locus.
double locus_curvature(const MaterialModel& model, double q);
/// W(q + dq) - W(q) without the cancellation of subtracting two energies.
/// Requires q >= 0 and q + dq >= 0.
double locus_energy_increment(const MaterialModel& model, double q, double dq);

struct FailureInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct EllipticityReport {
  std::vector<double> gamma_grid;
  std::vector<double> modulus;
  bool elliptic_everywhere = true;
  std::vector<FailureInterval> failure_intervals;
};

/// Scans d tau / d gamma on a uniform grid over [0, gamma_max]. Boundaries
/// of each failure interval are refined by bisection to width <= 1e-8.
EllipticityReport ellipticity_scan(const MaterialModel& model, double gamma_max, int n_points);

struct KnowlesReport {
  double b_fit = 0.0;
  double residual_sup = 0.0;
  /// (gamma, b(gamma)) at grid points with W_1 + W_2 != 0.
  std::vector<std::pair<double, double>> b_pointwise;
  bool constraint_satisfied = false;
};

class DegenerateModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultKnowlesTol = 1e-10;
inline constexpr double kDefaultGammaMax = 2.0;
inline constexpr int kDefaultGammaPoints = 1001;

/// Least-squares constant b for b W_1 + (b - 1) W_2 = 0 over the locus grid.
KnowlesReport knowles_fit(const MaterialModel& model, double gamma_max, int n_points,
                          double tol = kDefaultKnowlesTol);

/// Uniform grid of n points on [0, gamma_max], endpoints included exactly.
std::vector<double> gamma_grid(double gamma_max, int n_points);

}  // namespace antiplane
