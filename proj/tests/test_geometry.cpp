#include "matching/errors.hpp"
#include "matching/fixtures/pendulum.hpp"
#include "matching/fixtures/seesaw.hpp"
#include "matching/geometry.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace matching;
using testing_support::max_abs;

namespace {

/// Euler-Lagrange left side from finite differences of the metric values alone.
Vec lagrangian_oracle(const MechanicalSystem& sys, const State& s, const Vec& xddot) {
  const int n = sys.n;
  const auto dg = fd_matrix_derivative([&](const Vec& y) { return sys.metric(y); }, s.x, 1e-5);
  const Vec dv = fd_gradient([&](const Vec& y) { return sys.potential(y); }, s.x, 1e-6);
  Vec out = sys.metric(s.x) * xddot + dv;
  for (int r = 0; r < n; ++r) {
    double q = 0.0;
    for (int k = 0; k < n; ++k) {
      q += (dg[k].row(r) * s.xdot)(0) * s.xdot(k);
      q -= 0.5 * s.xdot(k) * (dg[r].row(k) * s.xdot)(0);
    }
    out(r) += q;
  }
  return out;
}

}  // namespace

TEST(Christoffel, MatchesFiniteDifferenceFormulaAndIsSymmetric) {
  const MechanicalSystem sys = seesaw_system(0.5, 1.0);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const Vec x = testing_support::uniform(rng, 3, -1.0, 1.0);
    const Christoffel c = christoffel_first(sys, x);
    const auto dg = fd_matrix_derivative([&](const Vec& y) { return sys.metric(y); }, x, 1e-5);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          const double fd = 0.5 * (dg[i](j, k) + dg[j](i, k) - dg[k](i, j));
          EXPECT_NEAR(c(i, j, k), fd, 1e-9);
          EXPECT_DOUBLE_EQ(c(i, j, k), c(j, i, k));
        }
      }
    }
  }
}

TEST(Christoffel, ConstantMetricVanishes) {
  MechanicalSystem sys;
  sys.n = 2;
  sys.m = 1;
  sys.metric = constant_matrix_field(Mat::Identity(2, 2));
  const Christoffel c = christoffel_first(sys, Vec::Zero(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) EXPECT_EQ(c(i, j, k), 0.0);
}

TEST(Acceleration, PendulumHandValue) {
  const MechanicalSystem sys = pendulum_system(0.5, 1.0);
  const State s((Vec(3) << std::numbers::pi / 2, 0.0, 0.0).finished(), (Vec(3) << 1.0, 0.0, 0.0).finished());
  const Vec a = acceleration(sys, s, Vec::Zero(3));
  EXPECT_NEAR(a(0), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(a(1), -0.5, 1e-12);
  EXPECT_NEAR(a(2), -2.0 / 3.0, 1e-12);
  EXPECT_LT(max_abs(lagrangian_oracle(sys, s, a)), 1e-7);
}

TEST(Acceleration, AgreesWithLagrangianOracle) {
  const MechanicalSystem sys = seesaw_system(0.7, 1.3);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 25; ++t) {
    const State s(testing_support::uniform(rng, 3, -1, 1), testing_support::uniform(rng, 3, -2, 2));
    const Vec u = testing_support::uniform(rng, 3, -1, 1);
    const Vec a = acceleration(sys, s, u);
    EXPECT_LT(max_abs(lagrangian_oracle(sys, s, a) - u), 1e-6);
    EXPECT_LT(max_abs(motion_residual(sys, s, a, u)), 1e-12);
  }
}

TEST(Acceleration, SingularMetricIsRejected) {
  const MechanicalSystem sys = pendulum_system(1.0, 1.0);
  const State s(Vec::Zero(3), Vec::Zero(3));
  EXPECT_THROW(acceleration(sys, s, Vec::Zero(3)), SingularMetricError);
}

TEST(Acceleration, StateValidation) {
  const MechanicalSystem sys = pendulum_system(0.5, 1.0);
  EXPECT_THROW(acceleration(sys, State(Vec::Zero(3), Vec::Zero(2)), Vec::Zero(3)), DomainError);
  EXPECT_THROW(acceleration(sys, State(Vec::Zero(3), Vec::Zero(3)), Vec::Zero(2)), DomainError);
  Vec bad = Vec::Zero(3);
  bad(1) = std::nan("");
  EXPECT_THROW(acceleration(sys, State(bad, Vec::Zero(3)), Vec::Zero(3)), DomainError);
  EXPECT_THROW(christoffel_first(sys, Vec::Zero(2)), DomainError);
}

TEST(Energy, KineticPlusPotential) {
  const MechanicalSystem sys = pendulum_system(0.5, 2.0);
  const State s((Vec(3) << 0.0, 0.0, 1.0).finished(), (Vec(3) << 0.0, 1.0, 0.0).finished());
  EXPECT_NEAR(energy(sys, s), 0.5 + 2.0 + 1.0, 1e-15);
}

TEST(Rescale, PullsBackMetricAndPotential) {
  const MechanicalSystem sys = seesaw_system(0.5, 1.0);
  const Vec scales = (Vec(3) << 2.0, 0.5, 3.0).finished();
  const MechanicalSystem r = rescale_coordinates(sys, scales);
  const Vec y = (Vec(3) << 0.1, -0.3, 0.2).finished();
  const Mat s = scales.asDiagonal();
  EXPECT_LT(max_abs(r.metric(y) - s * sys.metric(s * y) * s), 1e-14);
  EXPECT_NEAR(r.potential(y), sys.potential(s * y), 1e-15);
  const auto fd = fd_matrix_derivative([&](const Vec& z) { return r.metric(z); }, y);
  const MatrixEval e = r.metric.eval(y);
  for (int k = 0; k < 3; ++k) EXPECT_LT(max_abs(e.d[k] - fd[k]), 1e-8);
  EXPECT_THROW(rescale_coordinates(sys, Vec::Ones(2)), DomainError);
}

TEST(System, ValidateCatchesInconsistentDimensions) {
  MechanicalSystem sys = pendulum_system(0.5, 1.0);
  EXPECT_NO_THROW(sys.validate());
  sys.m = 4;
  EXPECT_THROW(sys.validate(), ConfigError);
}
