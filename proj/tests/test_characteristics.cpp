#include "matching/characteristics.hpp"
#include "matching/errors.hpp"
#include "matching/fixtures/double_pendulum.hpp"
#include "matching/fixtures/pendulum.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace matching;
using testing_support::max_abs;

namespace {

PendulumParams curved_params() {
  PendulumParams p;
  p.ghat22 = ScalarFunction::quadratic_form(2.0, Vec::Zero(2), 0.1 * Mat::Identity(2, 2));
  return p;
}

CharacteristicSpec default_spec(int count = 5) {
  CharacteristicSpec spec;
  spec.axis = 0;
  spec.anchor = Vec::Zero(3);
  spec.half_widths = {0.3, 0.3};
  spec.counts = {count, count};
  spec.t_min = -1.0;
  spec.t_max = 1.0;
  spec.dt = 1e-3;
  spec.stride = 10;
  return spec;
}

InitialData from_target(const TargetSystem& t) {
  return {[t](const Vec& x) { return t.ghat(x); }, [t](const Vec& x) { return t.vhat(x); }};
}

}  // namespace

TEST(FlowMap, PreservesPendulumInvariants) {
  const PendulumParams p;
  const PendulumFixture fx = pendulum_fixture(p);
  const VectorField f = fx.lambda.row(0);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const Vec x0 = testing_support::uniform(rng, 3, -0.5, 0.5);
    const double t = 0.8;
    const Vec x = flow_map(f, x0, t);
    EXPECT_NEAR(x(0), x0(0) + p.sigma0 * t, 1e-12);
    const Vec y0 = pendulum_invariants<double>(p, x0);
    const Vec y = pendulum_invariants<double>(p, x);
    EXPECT_LT((y - y0).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(FlowMap, ForwardThenBackward) {
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  const Vec x0 = (Vec(3) << 0.1, 0.2, -0.3).finished();
  const Vec x = flow_map(fx.lambda.row(0), flow_map(fx.lambda.row(0), x0, 0.7), -0.7);
  EXPECT_LT((x - x0).norm(), 1e-11);
  EXPECT_EQ(flow_map(fx.lambda.row(0), x0, 0.0), x0);
}

TEST(FlowMap, Errors) {
  const VectorField zero = make_vector_field([](const auto& x) { return (x * 0.0).eval(); });
  EXPECT_THROW(flow_map(zero, Vec::Ones(2), 1.0), SingularFieldError);
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  EXPECT_THROW(flow_map(fx.lambda.row(0), Vec::Zero(3), 1.0, 0.0), DomainError);
  EXPECT_THROW(flow_map(fx.lambda.row(0), Vec::Zero(3), 1e9, 1e-3), DomainError);
}

TEST(SolveGhatVhat, ReproducesClosedFormTarget) {
  const PendulumFixture fx = pendulum_fixture(curved_params());
  const CharacteristicGrid grid = solve_ghat_vhat(fx.system, fx.lambda, from_target(fx.target), default_spec());
  EXPECT_EQ(grid.seed_count(), 25);
  EXPECT_EQ(grid.time_count(), 201);
  double gdev = 0.0, vdev = 0.0;
  for (int s = 0; s < grid.seed_count(); ++s) {
    for (int q = 0; q < grid.time_count(); ++q) {
      const Vec x = grid.position(s, q);
      gdev = std::max(gdev, max_abs(grid.ghat(s, q) - fx.target.ghat(x)));
      vdev = std::max(vdev, std::abs(grid.vhat(s, q) - fx.target.vhat(x)));
    }
  }
  EXPECT_LE(gdev, 1e-5);
  EXPECT_LE(vdev, 1e-5);
  EXPECT_LE(grid.max_asymmetry(), 1e-12);
  const XiReport xi = xi_propagation_check(fx.system, fx.lambda, grid);
  EXPECT_TRUE(xi.pass) << xi.seed_max << " " << xi.max_abs;
  const TransportResidual tr = transport_residual(fx.system, fx.lambda, grid);
  EXPECT_LT(tr.ghat_max, 1e-2);
  EXPECT_LT(tr.vhat_max, 1e-2);
}

TEST(SolveGhatVhat, XiDetectsWrongMetric) {
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  const CharacteristicGrid grid = solve_ghat_vhat(fx.system, fx.lambda, from_target(fx.target), default_spec(3));
  const MatrixField wrong = constant_matrix_field(Mat::Identity(3, 3));
  EXPECT_FALSE(xi_propagation_check(fx.system, fx.lambda, wrong, grid).pass);
  EXPECT_TRUE(xi_propagation_check(fx.system, fx.lambda, fx.target.ghat, grid).pass);
}

TEST(SolveGhatVhat, QueryInterpolates) {
  const PendulumFixture fx = pendulum_fixture(curved_params());
  const CharacteristicGrid grid = solve_ghat_vhat(fx.system, fx.lambda, from_target(fx.target), default_spec(9));
  const Vec node = grid.position(30, 40);
  const auto at_node = grid.query(node);
  EXPECT_LT(max_abs(at_node.ghat - grid.ghat(30, 40)), 1e-8);
  EXPECT_NEAR(at_node.vhat, grid.vhat(30, 40), 1e-8);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 10; ++i) {
    // Multilinear interpolation of a quadratic over seed spacing 0.075: error below 2 · 0.075²/8 · |w''| per axis.
    Vec x = testing_support::uniform(rng, 3, -0.15, 0.15);
    x(0) *= 0.3;
    const auto smp = grid.query(x);
    EXPECT_LT(max_abs(smp.ghat - fx.target.ghat(x)), 5e-3);
    EXPECT_NEAR(smp.vhat, fx.target.vhat(x), 5e-3);
  }
  EXPECT_THROW(grid.query(Vec::Zero(2)), DomainError);
  EXPECT_THROW(grid.query((Vec(3) << 0.0, 3.0, 0.0).finished()), DomainError);
  EXPECT_THROW(grid.query((Vec(3) << 4.0, 0.0, 0.0).finished()), DomainError);
}

TEST(SolveGhatVhat, RejectsTangentHyperplane) {
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  CharacteristicSpec spec = default_spec(3);
  spec.axis = 2;  // λ³ ≡ 0
  EXPECT_THROW(solve_ghat_vhat(fx.system, fx.lambda, from_target(fx.target), spec), TransversalityError);
}

TEST(SolveGhatVhat, RejectsBadSpecs) {
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  CharacteristicSpec spec = default_spec(3);
  spec.counts = {1, 3};
  EXPECT_THROW(solve_ghat_vhat(fx.system, fx.lambda, from_target(fx.target), spec), DomainError);
  spec = default_spec(3);
  spec.t_min = 0.5;
  EXPECT_THROW(solve_ghat_vhat(fx.system, fx.lambda, from_target(fx.target), spec), DomainError);
  spec = default_spec(3);
  spec.half_widths = {0.3};
  EXPECT_THROW(solve_ghat_vhat(fx.system, fx.lambda, from_target(fx.target), spec), DomainError);
}

TEST(SolveGhatVhat, CsvLayout) {
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  CharacteristicSpec spec = default_spec(2);
  spec.t_min = -0.1;
  spec.t_max = 0.1;
  const CharacteristicGrid grid = solve_ghat_vhat(fx.system, fx.lambda, from_target(fx.target), spec);
  std::ostringstream os;
  grid.write_csv(os);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "seedIndex,t,x1,x2,x3,ghat11,ghat12,ghat13,ghat22,ghat23,ghat33,vhat");
  int rows = 0;
  for (std::string line; std::getline(is, line);) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11);
  }
  EXPECT_EQ(rows, grid.seed_count() * grid.time_count());
}

TEST(ReconstructGhatRow, MatchesPendulumTarget) {
  const PendulumFixture fx = pendulum_fixture(curved_params());
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const Vec x = testing_support::uniform(rng, 3, -0.5, 0.5);
    const Mat gh = fx.target.ghat(x);
    const Mat rec = reconstruct_ghat_row(fx.system, fx.lambda, gh.bottomRightCorner(2, 2), x);
    EXPECT_LT(max_abs(rec - gh), 1e-12);
  }
}

TEST(ReconstructGhatRow, AtOriginAgreesWithHandFormula) {
  const PendulumParams p;
  const PendulumFixture fx = pendulum_fixture(p);
  const Mat block = (Mat(2, 2) << 2.0, 0.0, 0.0, 1.0).finished();
  const Mat rec = reconstruct_ghat_row(fx.system, fx.lambda, block, Vec::Zero(3));
  // ĝ₁₂ = −(a + μ₀ ĝ₂₂)/σ₀ and ĝ₁₃ = 0 at the origin.
  EXPECT_NEAR(rec(0, 1), -(p.a + p.mu0 * 2.0) / p.sigma0, 1e-14);
  EXPECT_NEAR(rec(0, 2), 0.0, 1e-14);
  EXPECT_NEAR(rec(0, 0), 1.0 / p.sigma0 + p.a * p.mu0 / (p.sigma0 * p.sigma0) + p.mu0 * p.mu0 * 2.0 / (p.sigma0 * p.sigma0),
              1e-14);
  EXPECT_THROW(reconstruct_ghat_row(fx.system, fx.lambda, Mat::Identity(3, 3), Vec::Zero(3)), DomainError);
}

TEST(ReconstructGhatRow, InconsistentLambdaIsAsymmetric) {
  const MechanicalSystem sys = double_pendulum_system(DoublePendulumParams{});
  const LambdaField lam(constant_matrix_field((Mat(2, 3) << 1.0, 0.0, 0.0, 0.0, 2.0, 0.0).finished()));
  EXPECT_THROW(reconstruct_ghat_row(sys, lam, Mat::Identity(1, 1), Vec::Zero(3)), AsymmetryError);
  EXPECT_NO_THROW(reconstruct_ghat_row(sys, double_pendulum_basic_lambda(1.0), Mat::Identity(1, 1), Vec::Zero(3)));
}
