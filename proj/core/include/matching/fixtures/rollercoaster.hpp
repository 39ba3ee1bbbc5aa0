#pragma once

#include "matching/fixtures/catalog.hpp"
#include "matching/matching.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace matching {

/// Track given through α(s) (angle between tangent and vertical), curvature k(s) and the vertical
/// component n₃(s) of the principal normal, plus the height x³(s).
struct RollerCoasterCurve {
  enum class Kind { VerticalCircle, Incline, Helix };
  enum class Case { Planar, ConstantIncline };

  Kind kind = Kind::VerticalCircle;
  Case case_tag = Case::Planar;
  double radius = 1.0;     ///< vertical circle
  double alpha0 = 0.7;     ///< incline, helix
  double curvature = 0.5;  ///< helix

  static RollerCoasterCurve vertical_circle(double radius);
  static RollerCoasterCurve incline(double alpha0, Case tag = Case::Planar);
  static RollerCoasterCurve helix(double alpha0, double curvature);

  std::string kind_name() const;

  template <class T>
  T alpha(const T& s) const {
    if (kind == Kind::VerticalCircle) return std::numbers::pi / 2.0 - s / radius;
    return constant_like(s, alpha0);
  }
  template <class T>
  T k(const T& s) const {
    switch (kind) {
      case Kind::VerticalCircle:
        return constant_like(s, 1.0 / radius);
      case Kind::Incline:
        return constant_like(s, 0.0);
      case Kind::Helix:
        return constant_like(s, curvature);
    }
    return constant_like(s, 0.0);
  }
  template <class T>
  T n3(const T& s) const {
    using std::cos;
    switch (kind) {
      case Kind::VerticalCircle:
        return cos(s / radius);
      case Kind::Incline:
        return constant_like(s, std::sin(alpha0));
      case Kind::Helix:
        return constant_like(s, 0.0);
    }
    return constant_like(s, 0.0);
  }
  template <class T>
  T height(const T& s) const {
    using std::cos;
    if (kind == Kind::VerticalCircle) return -radius * cos(s / radius);
    return std::cos(alpha0) * s;
  }

  /// Checks dα/ds = −k n₃/sin α and the invariants of the case tag on samples of [s_lo, s_hi].
  /// Throws DomainError on a case mismatch.
  void validate(double s_lo = -3.0, double s_hi = 3.0, int samples = 61) const;
};

/// Cart with pendulum on the track; coordinates (φ, s), φ unactuated.
MechanicalSystem rollercoaster_system(const RollerCoasterCurve& curve, double a, double b);

/// Planar tracks: λ₁² = −ν′/(2b cos(α − φ)), λ₁¹ = ν + ½ tan(α − φ) ν′ for ν = ν(φ).
LambdaField rollercoaster_case1_lambda(const RollerCoasterCurve& curve, double b, const Profile1D& nu);

/// β(s) = ∫₀ˢ k²(p)/(b sin²α₀) dp by adaptive Gauss-Kronrod quadrature.
double rollercoaster_beta(const RollerCoasterCurve& curve, double b, double s);

/// z² = β(s) + cos α₀ ln|csc φ + cot φ| − sin α₀ ln|sec φ + tan φ|, constant along the characteristic field of the orthogonality equation.
template <class T>
T rollercoaster_z2(const RollerCoasterCurve& curve, double b, const T& phi, const T& s) {
  using std::cos;
  using std::log;
  using std::sin;
  auto log_abs = [](const T& v) -> T { return scalar_value(v) < 0.0 ? T(log(-v)) : T(log(v)); };
  const double sv = scalar_value(s);
  const double beta = rollercoaster_beta(curve, b, sv);
  const double k = curve.k(sv);
  const double dbeta = k * k / (b * std::sin(curve.alpha0) * std::sin(curve.alpha0));
  const T lifted = beta + dbeta * (s - sv);
  const T sp = sin(phi);
  const T cp = cos(phi);
  return lifted + std::cos(curve.alpha0) * log_abs((1.0 + cp) / sp) -
         std::sin(curve.alpha0) * log_abs((1.0 + sp) / cp);
}

/// Constant-incline tracks: λ₁² = ν′(z²)/(b sin 2φ), λ₁¹ = ν(z²) − sin(α₀ − φ) ν′(z²)/sin 2φ.
/// Refuses sin α₀ = 0 and points within 1e-6 of sin 2φ = 0.
LambdaField rollercoaster_case2_lambda(const RollerCoasterCurve& curve, double b, const Profile1D& nu);

/// ν and its gradient in (φ, s) for the two cases, for the orthogonality check.
ScalarEval rollercoaster_case1_nu(const Profile1D& nu, const Vec& x);
ScalarEval rollercoaster_case2_nu(const RollerCoasterCurve& curve, double b, const Profile1D& nu, const Vec& x);

/// Left side of the orthogonality equation
/// k² sin 2φ Q ∂_φν + 2b cos(α − φ) ∂_sν with Q = (sin²α − n₃²)/sin⁴α.
double rollercoaster_orthogonality(const RollerCoasterCurve& curve, double b, const ScalarEval& nu, const Vec& x);

}  // namespace matching
