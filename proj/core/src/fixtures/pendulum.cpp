#include "matching/fixtures/pendulum.hpp"

#include "matching/errors.hpp"

#include <cmath>

namespace matching {

PendulumParams PendulumParams::stability_set() {
  PendulumParams p;
  p.a = 1.0;
  return p;
}

MechanicalSystem pendulum_system(double a, double b) {
  if (!(a > 0.0)) throw DomainError("pendulum: a must be positive");
  MechanicalSystem sys;
  sys.name = "pendulum";
  sys.n = 3;
  sys.m = 1;
  sys.metric = make_matrix_field_with_jet(3, 3, [a](const auto& x) {
    using std::cos;
    using std::sin;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    MatT<T> g(3, 3);
    const T c = cos(x(0));
    const T s = sin(x(0));
    g(0, 0) = T(1.0);
    g(0, 1) = -a * c;
    g(0, 2) = -a * s;
    g(1, 0) = g(0, 1);
    g(1, 1) = T(1.0);
    g(1, 2) = T(0.0);
    g(2, 0) = g(0, 2);
    g(2, 1) = T(0.0);
    g(2, 2) = T(1.0);
    return g;
  });
  sys.potential = make_scalar_field([b](const auto& x) {
    using std::cos;
    return b * x(2) + cos(x(0));
  });
  sys.dissipation = zero_dissipation();
  sys.params = {{"a", a}, {"b", b}};
  return sys;
}

PendulumFixture pendulum_fixture(const PendulumParams& p) {
  if (p.sigma0 == 0.0) throw DomainError("pendulum: sigma0 must be nonzero");
  PendulumFixture fx;
  fx.params = p;
  fx.system = pendulum_system(p.a, p.b);

  const double s0 = p.sigma0;
  const double m0 = p.mu0;
  fx.lambda = LambdaField(make_matrix_field(1, 3, [s0, m0](const auto& x) {
    using std::cos;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    MatT<T> l(1, 3);
    l(0, 0) = T(s0);
    l(0, 1) = m0 * cos(x(0));
    l(0, 2) = T(0.0);
    return l;
  }));

  fx.target.ghat = make_matrix_field(3, 3, [p](const auto& x) {
    using std::cos;
    using std::sin;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const VecT<T> y = pendulum_invariants(p, x);
    const T g22 = p.ghat22(y);
    const T g23 = p.ghat23(y);
    const T g33 = p.ghat33(y);
    const T c = cos(x(0));
    const T s = sin(x(0));
    const double s0 = p.sigma0;
    const double m0 = p.mu0;
    MatT<T> g(3, 3);
    g(0, 0) = 1.0 / s0 + (p.a * m0 / (s0 * s0)) * c * c + (m0 * m0 / (s0 * s0)) * c * c * g22;
    g(0, 1) = -(p.a / s0) * c - (m0 / s0) * c * g22;
    g(0, 2) = -(p.a / s0) * s - (m0 / s0) * c * g23;
    g(1, 0) = g(0, 1);
    g(2, 0) = g(0, 2);
    g(1, 1) = g22;
    g(1, 2) = g23;
    g(2, 1) = g23;
    g(2, 2) = g33;
    return g;
  });

  fx.target.vhat = make_scalar_field([p](const auto& x) {
    using std::cos;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const VecT<T> y = pendulum_invariants(p, x);
    return cos(x(0)) / p.sigma0 + p.w(y);
  });

  fx.target.chat = make_dissipation_field([p](const auto& x, const auto& v) {
    using std::cos;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    VecT<T> dir(3);
    dir(0) = -(p.mu0 / p.sigma0) * cos(x(0));
    dir(1) = constant_like(x(0), 1.0);
    dir(2) = constant_like(x(0), 1.0);
    const T r = p.r(VecT<T>(x));
    const T proj = dir.dot(v);
    VecT<T> out = (-p.sigma0) * r * proj * dir;
    return out;
  });
  return fx;
}

Vec pendulum_general_lambda(double a, const Profile1D& nu, const ScalarFunction& lambda3, const Vec& x) {
  return pendulum_general_lambda_field(a, nu, lambda3)(x).row(0).transpose();
}

LambdaField pendulum_general_lambda_field(double a, const Profile1D& nu, const ScalarFunction& lambda3) {
  return LambdaField(make_matrix_field(1, 3, [a, nu, lambda3](const auto& x) {
    using std::cos;
    using std::sin;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const T s = sin(x(0));
    if (std::abs(scalar_value(s)) < 1e-6) throw DomainError("pendulum: general lambda family is singular at sin(x1) = 0");
    const T c = cos(x(0));
    const T l3 = lambda3(VecT<T>(x));
    const T dnu = nu.derivative(x(0));
    MatT<T> l(1, 3);
    l(0, 0) = nu.value(x(0)) + 0.5 * (c / s) * dnu + a * l3 / s;
    l(0, 1) = dnu / (2.0 * a * s) + (c / s) * l3;
    l(0, 2) = l3;
    return l;
  }));
}

StabilityVerdict stability_conditions(const PendulumParams& p, double eq_tol) {
  const Vec y0 = Vec::Zero(2);
  const Vec x0 = Vec::Zero(3);
  const double g22 = p.ghat22(y0);
  const double g23 = p.ghat23(y0);
  const double g33 = p.ghat33(y0);
  const Mat hw = p.w.hessian(y0);
  const double r0 = p.r(x0);
  const double a = p.a;
  const double m0 = p.mu0;
  const double s0 = p.sigma0;

  StabilityVerdict v;
  auto positive = [&](const std::string& name, double value) {
    v.conditions.push_back({name, value, value, value > 0.0});
  };
  auto equal = [&](const std::string& name, double value, double target) {
    const double dev = std::abs(value - target);
    v.conditions.push_back({name, value, -dev, dev <= eq_tol});
  };
  positive("ghat22(0) > 0", g22);
  equal("ghat23(0) = 0", g23, 0.0);
  equal("ghat33(0) = 1", g33, 1.0);
  positive("d2w/dy2dy2(0) > 0", hw(0, 0));
  equal("d2w/dy2dy3(0) = 0", hw(0, 1), 0.0);
  positive("d2w/dy3dy3(0) > 0", hw(1, 1));
  positive("R(0) > 0", r0);
  positive("sigma0 < 0", -s0);
  positive("ghat22(0) mu0^2 + a mu0 + sigma0 > 0", g22 * m0 * m0 + a * m0 + s0);
  positive("ghat22(0) (a mu0 - sigma0) + a^2 < 0", -(g22 * (a * m0 - s0) + a * a));

  v.pass = true;
  for (const auto& c : v.conditions) v.pass = v.pass && c.holds;
  return v;
}

}  // namespace matching
