#pragma once

#include "matching/fixtures/catalog.hpp"
#include "matching/matching.hpp"
#include "matching/target.hpp"

#include <string>
#include <vector>

namespace matching {

/// Inverted pendulum with a base actuated horizontally and vertically (rescaled units).
///   g = [[1, −a cos x¹, −a sin x¹], [−a cos x¹, 1, 0], [−a sin x¹, 0, 1]],  V = b x³ + cos x¹.
struct PendulumParams {
  double a = 0.9;
  double b = 1.0;
  double sigma0 = -1.0;
  double mu0 = -2.0;
  ScalarFunction ghat22 = ScalarFunction::constant(2.0);  ///< of (y², y³)
  ScalarFunction ghat23 = ScalarFunction::constant(0.0);
  ScalarFunction ghat33 = ScalarFunction::constant(1.0);
  ScalarFunction w = ScalarFunction::quadratic_form(0.0, Vec::Zero(2), Mat::Identity(2, 2));
  ScalarFunction r = ScalarFunction::constant(1.0);  ///< of x

  /// Parameters meeting the stability conditions: a = 1, μ₀ = −2, σ₀ = −1, ĝ₂₂ = 2, ĝ₂₃ = 0, ĝ₃₃ = 1.
  static PendulumParams stability_set();
};

struct PendulumFixture {
  MechanicalSystem system;
  LambdaField lambda;
  TargetSystem target;
  PendulumParams params;
};

MechanicalSystem pendulum_system(double a, double b);

/// λ = (σ₀, μ₀ cos x¹, 0) with the target built along its characteristics. Throws DomainError if σ₀ = 0.
PendulumFixture pendulum_fixture(const PendulumParams& p);

/// Coordinates constant along λ: y² = x² − (μ₀/σ₀) sin x¹, y³ = x³.
template <class T>
VecT<T> pendulum_invariants(const PendulumParams& p, const VecT<T>& x) {
  using std::sin;
  VecT<T> y(2);
  y(0) = x(1) - (p.mu0 / p.sigma0) * sin(x(0));
  y(1) = x(2);
  return y;
}

/// The general solution of the λ-equations for arbitrary ν(x¹) and λ³(x).
/// Refuses |sin x¹| < 1e-6.
Vec pendulum_general_lambda(double a, const Profile1D& nu, const ScalarFunction& lambda3, const Vec& x);
LambdaField pendulum_general_lambda_field(double a, const Profile1D& nu, const ScalarFunction& lambda3);

struct StabilityCondition {
  std::string name;
  double value = 0.0;
  double margin = 0.0;  ///< positive when the condition holds with room; equalities use −|value − target|
  bool holds = false;
};

struct StabilityVerdict {
  std::vector<StabilityCondition> conditions;
  bool pass = false;
};

/// Sign conditions on ĝ-block, w, R, σ₀, μ₀ at the origin that give local asymptotic stability.
StabilityVerdict stability_conditions(const PendulumParams& p, double eq_tol = 1e-12);

}  // namespace matching
