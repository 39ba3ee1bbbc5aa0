#include "matching/fixtures/double_pendulum.hpp"

#include "matching/errors.hpp"
#include "matching/linalg.hpp"

#include <cmath>

namespace matching {

void DoublePendulumParams::validate() const {
  if (m.rows() != 3 || m.cols() != 3 || a.size() != 3) throw DomainError("double pendulum: m must be 3x3, a of length 3");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-14) throw DomainError("double pendulum: m must be symmetric");
  if (m.minCoeff() <= 0.0) throw DomainError("double pendulum: m entries must be positive");
  if (a.minCoeff() <= 0.0) throw DomainError("double pendulum: a entries must be positive");
  if (min_eigenvalue(m) <= 0.0) throw DomainError("double pendulum: m must be positive definite");
}

MechanicalSystem double_pendulum_system(const DoublePendulumParams& p) {
  p.validate();
  MechanicalSystem sys;
  sys.name = "double-pendulum";
  sys.n = 3;
  sys.m = 2;
  const Mat mm = p.m;
  sys.metric = make_matrix_field_with_jet(3, 3, [mm](const auto& x) {
    using std::cos;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    MatT<T> g(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) g(i, j) = i == j ? T(mm(i, i)) : T(mm(i, j) * cos(x(i) - x(j)));
    }
    return g;
  });
  const Vec aa = p.a;
  sys.potential = make_scalar_field([aa](const auto& x) {
    using std::cos;
    using T = typename std::decay_t<decltype(x)>::Scalar;
    T v = T(0.0);
    for (int i = 0; i < 3; ++i) v += aa(i) * cos(x(i));
    return v;
  });
  sys.dissipation = zero_dissipation();
  sys.params = {{"a1", aa(0)}, {"a2", aa(1)}, {"a3", aa(2)}};
  return sys;
}

LambdaField double_pendulum_basic_lambda(double kappa) {
  Mat l = Mat::Zero(2, 3);
  l(0, 0) = kappa;
  l(1, 1) = kappa;
  return LambdaField(constant_matrix_field(l));
}

DoublePendulumParams random_double_pendulum_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> off(0.2, 1.0);
  std::uniform_real_distribution<double> diag(2.5, 4.0);
  std::uniform_real_distribution<double> pot(0.5, 2.0);
  DoublePendulumParams p;
  for (int i = 0; i < 3; ++i) p.m(i, i) = diag(rng);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) p.m(i, j) = p.m(j, i) = off(rng);
  }
  for (int i = 0; i < 3; ++i) p.a(i) = pot(rng);
  return p;
}

}  // namespace matching
