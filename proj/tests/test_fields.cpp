#include "matching/fields.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace matching;
using testing_support::max_abs;

namespace {

auto sample_matrix = [](const auto& x) {
  using std::cos;
  using std::sin;
  using T = typename std::decay_t<decltype(x)>::Scalar;
  MatT<T> m(2, 2);
  m(0, 0) = 1.0 + x(0) * x(0);
  m(0, 1) = sin(x(0) * x(1));
  m(1, 0) = m(0, 1);
  m(1, 1) = 2.0 + cos(x(1));
  return m;
};

}  // namespace

TEST(Fields, DualDerivativesMatchFiniteDifferences) {
  const MatrixField f = make_matrix_field(2, 2, sample_matrix);
  const Vec x = (Vec(2) << 0.3, -0.8).finished();
  const MatrixEval e = f.eval(x);
  const auto fd = fd_matrix_derivative([&](const Vec& y) { return f(y); }, x);
  for (int k = 0; k < 2; ++k) EXPECT_LT(max_abs(e.d[k] - fd[k]), 1e-8);
  EXPECT_LT(max_abs(e.value - f(x)), 1e-15);
}

TEST(Fields, JetAgreesWithValue) {
  const MatrixField f = make_matrix_field_with_jet(2, 2, sample_matrix);
  ASSERT_TRUE(f.has_jet());
  const Vec x = (Vec(2) << 0.1, 0.2).finished();
  auto layout = std::make_shared<TaylorLayout>(2, 2);
  const TaylorMat j = f.jet(taylor_point(layout, x));
  const MatrixEval e = f.eval(x);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      EXPECT_NEAR(j(r, c).value(), e.value(r, c), 1e-15);
      EXPECT_NEAR(j(r, c).coeff({1, 0}), e.d[0](r, c), 1e-14);
      EXPECT_NEAR(j(r, c).coeff({0, 1}), e.d[1](r, c), 1e-14);
    }
  }
}

TEST(Fields, ScalarGradientAndHessian) {
  const ScalarField s = make_scalar_field([](const auto& x) {
    using std::cos;
    return x(0) * x(0) * x(1) + cos(x(1));
  });
  const Vec x = (Vec(2) << 0.5, 0.25).finished();
  const ScalarEval e = s.eval(x);
  EXPECT_NEAR(e.grad(0), 2 * 0.5 * 0.25, 1e-15);
  EXPECT_NEAR(e.grad(1), 0.25 - std::sin(0.25), 1e-15);
  const Mat h = s.hessian(x);
  EXPECT_NEAR(h(0, 0), 0.5, 1e-7);
  EXPECT_NEAR(h(0, 1), 1.0, 1e-7);
  EXPECT_NEAR(h(1, 1), -std::cos(0.25), 1e-7);
}

TEST(Fields, DissipationJacobians) {
  const DissipationField c = make_dissipation_field([](const auto& x, const auto& v) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    VecT<T> out(2);
    out(0) = x(0) * v(0) + v(1);
    out(1) = x(1) * x(1) * v(1);
    return out;
  });
  const Vec x = (Vec(2) << 2.0, 3.0).finished();
  const Vec v = (Vec(2) << 0.5, -1.0).finished();
  const DissipationEval e = c.eval(x, v);
  EXPECT_NEAR(e.value(0), 0.0, 1e-15);
  EXPECT_NEAR(e.dx(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(e.dx(1, 1), 2 * 3.0 * -1.0, 1e-15);
  EXPECT_NEAR(e.dv(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(e.dv(1, 1), 9.0, 1e-15);
  const DissipationEval lin = linear_dissipation(Mat::Identity(2, 2) * 3.0).eval(x, v);
  EXPECT_NEAR(lin.value(1), -3.0, 1e-15);
  EXPECT_EQ(zero_dissipation()(x, v).norm(), 0.0);
}

TEST(Fields, ConstantAndRowFields) {
  Mat m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const MatrixField c = constant_matrix_field(m);
  const Vec x = Vec::Zero(3);
  EXPECT_EQ(c(x), m);
  EXPECT_EQ(max_abs(c.eval(x).d[2]), 0.0);
  const VectorField r = row_field(c, 1);
  EXPECT_EQ(r(x), m.row(1).transpose());
  EXPECT_EQ(constant_scalar_field(4.0)(x), 4.0);
}

TEST(Fields, FiniteDifferenceFallbackBeyondDualCapacity) {
  const int n = kMaxDualVars + 1;
  const ScalarField s = make_scalar_field([](const auto& x) { return x.squaredNorm(); });
  const Vec x = Vec::LinSpaced(n, 0.1, 0.9);
  EXPECT_LT(max_abs(s.gradient(x) - 2.0 * x), 1e-8);
  const DissipationField c = make_dissipation_field([](const auto& x, const auto& v) { return (x + v).eval(); });
  EXPECT_THROW(c.eval(Vec::Zero(5), Vec::Zero(5)), ScopeError);
}
