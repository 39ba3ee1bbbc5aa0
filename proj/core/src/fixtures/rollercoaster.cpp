#include "matching/fixtures/rollercoaster.hpp"

#include "matching/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace matching {

RollerCoasterCurve RollerCoasterCurve::vertical_circle(double radius) {
  if (!(radius > 0.0)) throw DomainError("rollercoaster: radius must be positive");
  RollerCoasterCurve c;
  c.kind = Kind::VerticalCircle;
  c.case_tag = Case::Planar;
  c.radius = radius;
  return c;
}

RollerCoasterCurve RollerCoasterCurve::incline(double alpha0, Case tag) {
  RollerCoasterCurve c;
  c.kind = Kind::Incline;
  c.case_tag = tag;
  c.alpha0 = alpha0;
  c.curvature = 0.0;
  return c;
}

RollerCoasterCurve RollerCoasterCurve::helix(double alpha0, double curvature) {
  RollerCoasterCurve c;
  c.kind = Kind::Helix;
  c.case_tag = Case::ConstantIncline;
  c.alpha0 = alpha0;
  c.curvature = curvature;
  return c;
}

std::string RollerCoasterCurve::kind_name() const {
  switch (kind) {
    case Kind::VerticalCircle:
      return "vertical-circle";
    case Kind::Incline:
      return "incline";
    case Kind::Helix:
      return "helix";
  }
  return "vertical-circle";
}

void RollerCoasterCurve::validate(double s_lo, double s_hi, int samples) const {
  for (int i = 0; i < samples; ++i) {
    const double s = samples == 1 ? s_lo : s_lo + (s_hi - s_lo) * i / (samples - 1);
    const Dual sd(s, 1, 0);
    const Dual al = alpha(sd);
    const double dalpha = al.derivatives().size() == 1 ? al.derivatives()(0) : 0.0;
    const double a = al.value();
    const double kk = k(s);
    const double nn = n3(s);
    if (std::abs(dalpha * std::sin(a) + kk * nn) > 1e-10) {
      throw DomainError("rollercoaster: curve violates d alpha/ds = -k n3 / sin alpha at s = " + std::to_string(s));
    }
    if (case_tag == Case::Planar) {
      if (std::abs(std::sin(a) * std::sin(a) - nn * nn) > 1e-12) {
        throw DomainError("rollercoaster: case mismatch, planar tag requires sin^2 alpha = n3^2 (s = " +
                          std::to_string(s) + ")");
      }
    } else {
      if (std::abs(kk * nn) > 1e-12 || std::abs(dalpha) > 1e-12) {
        throw DomainError("rollercoaster: case mismatch, constant-incline tag requires k n3 = 0 (s = " +
                          std::to_string(s) + ")");
      }
    }
  }
}

MechanicalSystem rollercoaster_system(const RollerCoasterCurve& curve, double a, double b) {
  if (!(b > 0.0 && b < 1.0)) throw DomainError("rollercoaster: b must lie in (0, 1)");
  if (!(a > 0.0)) throw DomainError("rollercoaster: a must be positive");
  curve.validate();
  MechanicalSystem sys;
  sys.name = "rollercoaster";
  sys.n = 2;
  sys.m = 1;
  sys.metric = make_matrix_field_with_jet(2, 2, [curve, b](const auto& x) {
    using std::sin;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const T phi = x(0);
    const T s = x(1);
    const T al = curve.alpha(s);
    const T kk = curve.k(s);
    const T nn = curve.n3(s);
    const T sa = sin(al);
    const T sa2 = sa * sa;
    const T sp = sin(phi);
    MatT<T> g(2, 2);
    g(0, 0) = T(1.0);
    g(0, 1) = b * sin(al - phi);
    g(1, 0) = g(0, 1);
    g(1, 1) = 1.0 + kk * kk * sp * sp * ((sa2 - nn * nn) / (sa2 * sa2));
    return g;
  });
  sys.potential = make_scalar_field([curve, a](const auto& x) {
    using std::cos;
    return a * curve.height(x(1)) + cos(x(0));
  });
  sys.dissipation = zero_dissipation();
  sys.params = {{"a", a}, {"b", b}};
  return sys;
}

LambdaField rollercoaster_case1_lambda(const RollerCoasterCurve& curve, double b, const Profile1D& nu) {
  if (curve.case_tag != RollerCoasterCurve::Case::Planar) {
    throw DomainError("rollercoaster: case mismatch, planar formulas need a planar curve");
  }
  return LambdaField(make_matrix_field(1, 2, [curve, b, nu](const auto& x) {
    using std::cos;
    using std::tan;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const T phi = x(0);
    const T d = curve.alpha(x(1)) - phi;
    if (std::abs(std::cos(scalar_value(d))) < 1e-6) throw DomainError("rollercoaster: cos(alpha - phi) = 0");
    const T dnu = nu.derivative(phi);
    MatT<T> l(1, 2);
    l(0, 0) = nu.value(phi) + 0.5 * tan(d) * dnu;
    l(0, 1) = -dnu / (2.0 * b * cos(d));
    return l;
  }));
}

double rollercoaster_beta(const RollerCoasterCurve& curve, double b, double s) {
  const double sa = std::sin(curve.alpha0);
  if (std::abs(sa) < 1e-12) throw DomainError("rollercoaster: sin(alpha0) = 0");
  auto f = [&](double p) {
    const double k = curve.k(p);
    return k * k / (b * sa * sa);
  };
  using boost::math::quadrature::gauss_kronrod;
  if (s == 0.0) return 0.0;
  if (s < 0.0) return -gauss_kronrod<double, 15>::integrate(f, s, 0.0, 10, 1e-14);
  return gauss_kronrod<double, 15>::integrate(f, 0.0, s, 10, 1e-14);
}

namespace {

void check_case2(const RollerCoasterCurve& curve) {
  if (curve.case_tag != RollerCoasterCurve::Case::ConstantIncline) {
    throw DomainError("rollercoaster: case mismatch, constant-incline formulas need a constant-incline curve");
  }
  if (std::abs(std::sin(curve.alpha0)) < 1e-12) throw DomainError("rollercoaster: sin(alpha0) = 0");
}

void check_phi(double phi) {
  if (std::abs(std::sin(2.0 * phi)) < 1e-6) throw DomainError("rollercoaster: sin(2 phi) = 0");
}

}  // namespace

LambdaField rollercoaster_case2_lambda(const RollerCoasterCurve& curve, double b, const Profile1D& nu) {
  check_case2(curve);
  return LambdaField(make_matrix_field(1, 2, [curve, b, nu](const auto& x) {
    using std::sin;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const T phi = x(0);
    check_phi(scalar_value(phi));
    const T z = rollercoaster_z2(curve, b, phi, T(x(1)));
    const T dnu = nu.derivative(z);
    const T s2 = sin(2.0 * phi);
    MatT<T> l(1, 2);
    l(0, 0) = nu.value(z) - sin(curve.alpha0 - phi) * dnu / s2;
    l(0, 1) = dnu / (b * s2);
    return l;
  }));
}

ScalarEval rollercoaster_case1_nu(const Profile1D& nu, const Vec& x) {
  ScalarEval e;
  e.value = nu.value(x(0));
  e.grad = Vec::Zero(2);
  e.grad(0) = nu.derivative(x(0));
  return e;
}

ScalarEval rollercoaster_case2_nu(const RollerCoasterCurve& curve, double b, const Profile1D& nu, const Vec& x) {
  check_case2(curve);
  check_phi(x(0));
  const Dual phi(x(0), 2, 0);
  const Dual s(x(1), 2, 1);
  const Dual z = rollercoaster_z2(curve, b, phi, s);
  ScalarEval e;
  e.value = nu.value(z.value());
  e.grad = nu.derivative(z.value()) * gradient_of(z, 2);
  return e;
}

double rollercoaster_orthogonality(const RollerCoasterCurve& curve, double b, const ScalarEval& nu, const Vec& x) {
  const double phi = x(0);
  const double s = x(1);
  const double al = curve.alpha(s);
  const double k = curve.k(s);
  const double n3 = curve.n3(s);
  const double sa2 = std::sin(al) * std::sin(al);
  const double q = (sa2 - n3 * n3) / (sa2 * sa2);
  return k * k * std::sin(2.0 * phi) * q * nu.grad(0) + 2.0 * b * std::cos(al - phi) * nu.grad(1);
}

}  // namespace matching
