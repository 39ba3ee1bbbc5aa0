#include "matching/fixtures/seesaw.hpp"

#include "matching/errors.hpp"

#include <cmath>

namespace matching {

MechanicalSystem seesaw_system(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("seesaw: a and b must be positive");
  MechanicalSystem sys;
  sys.name = "seesaw";
  sys.n = 3;
  sys.m = 1;
  sys.metric = make_matrix_field_with_jet(3, 3, [a, b](const auto& x) {
    using std::cos;
    using std::sin;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const T d = x(0) - x(1);
    const T z = x(2);
    MatT<T> g(3, 3);
    g(0, 0) = b + z * z;
    g(0, 1) = a * z * sin(d);
    g(0, 2) = T(0.0);
    g(1, 0) = g(0, 1);
    g(1, 1) = T(1.0);
    g(1, 2) = -a * cos(d);
    g(2, 0) = T(0.0);
    g(2, 1) = g(1, 2);
    g(2, 2) = T(1.0);
    return g;
  });
  sys.potential = make_scalar_field([a](const auto& x) {
    using std::cos;
    using std::sin;
    return x(2) * sin(x(1)) + a * cos(x(0));
  });
  sys.dissipation = zero_dissipation();
  sys.params = {{"a", a}, {"b", b}};
  return sys;
}

LambdaField seesaw_lambda_field(double a, double b, const ScalarFunction& nu) {
  return LambdaField(make_matrix_field(1, 3, [a, b, nu](const auto& x) {
    using std::cos;
    using std::sin;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const VecT<T> xv = x;
    const VecT<T> grad = nu.gradient(xv);
    if (std::abs(scalar_value(grad(1))) > 1e-12) {
      throw IncompatibleNuError("seesaw: nu must not depend on x2 (d nu/dx2 = " +
                                std::to_string(scalar_value(grad(1))) + ")");
    }
    const T d = x(0) - x(1);
    const T sd = sin(d);
    const T cd = cos(d);
    const T z = x(2);
    if (std::abs(scalar_value(sd)) < 1e-6) throw DomainError("seesaw: singular locus sin(x1 - x2) = 0");
    if (std::abs(scalar_value(z)) < 1e-6) throw DomainError("seesaw: singular locus x3 = 0");
    const T v = nu(xv);
    const T d1 = grad(0);
    const T d3 = grad(2);
    MatT<T> l(1, 3);
    l(0, 0) = (2.0 * v - z * d3) / (2.0 * b);
    l(0, 1) = (-2.0 * z * v + (b + z * z) * d3) / (2.0 * a * b * sd);
    l(0, 2) = (-2.0 * z * z * cd * v + z * (b + z * z) * cd * d3 - b * sd * d1) / (2.0 * b * z * sd);
    return l;
  }));
}

Vec seesaw_lambda(double a, double b, const ScalarFunction& nu, const Vec& x) {
  return seesaw_lambda_field(a, b, nu)(x).row(0).transpose();
}

}  // namespace matching
