#pragma once

#include "matching/errors.hpp"
#include "matching/taylor.hpp"
#include "matching/types.hpp"

#include <functional>
#include <vector>

namespace matching {

/// Default central-difference step.
inline constexpr double kFdStep = 1e-6;

struct MatrixEval {
  Mat value;
  std::vector<Mat> d;  ///< d[k] = ∂/∂x^k of value
};

struct ScalarEval {
  double value = 0.0;
  Vec grad;
};

struct VectorEval {
  Vec value;
  Mat jac;  ///< jac(i, k) = ∂v^i/∂x^k
};

struct DissipationEval {
  Vec value;
  Mat dx;  ///< ∂C_i/∂x^k
  Mat dv;  ///< ∂C_i/∂ẋ^k
};

// Central finite differences; used as fallback and as the test oracle.
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h = kFdStep);
Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h = kFdStep);
std::vector<Mat> fd_matrix_derivative(const std::function<Mat(const Vec&)>& f, const Vec& x,
                                      double h = kFdStep);

/// Smooth matrix-valued field x -> M(x) with first derivatives.
class MatrixField {
 public:
  using ValueFn = std::function<Mat(const Vec&)>;
  using EvalFn = std::function<MatrixEval(const Vec&)>;
  using JetFn = std::function<TaylorMat(const TaylorVec&)>;

  MatrixField() = default;
  MatrixField(int rows, int cols, ValueFn value, EvalFn eval, JetFn jet = {})
      : rows_(rows), cols_(cols), value_(std::move(value)), eval_(std::move(eval)), jet_(std::move(jet)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool valid() const { return static_cast<bool>(value_); }

  Mat operator()(const Vec& x) const { return value_(x); }
  MatrixEval eval(const Vec& x) const { return eval_(x); }
  bool has_jet() const { return static_cast<bool>(jet_); }
  TaylorMat jet(const TaylorVec& x) const { return jet_(x); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  ValueFn value_;
  EvalFn eval_;
  JetFn jet_;
};

class ScalarField {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using EvalFn = std::function<ScalarEval(const Vec&)>;

  ScalarField() = default;
  ScalarField(ValueFn value, EvalFn eval) : value_(std::move(value)), eval_(std::move(eval)) {}

  bool valid() const { return static_cast<bool>(value_); }
  double operator()(const Vec& x) const { return value_(x); }
  ScalarEval eval(const Vec& x) const { return eval_(x); }
  Vec gradient(const Vec& x) const { return eval_(x).grad; }
  /// Hessian by central differences of the exact gradient.
  Mat hessian(const Vec& x, double h = kFdStep) const;

 private:
  ValueFn value_;
  EvalFn eval_;
};

class VectorField {
 public:
  using ValueFn = std::function<Vec(const Vec&)>;
  using EvalFn = std::function<VectorEval(const Vec&)>;

  VectorField() = default;
  VectorField(ValueFn value, EvalFn eval) : value_(std::move(value)), eval_(std::move(eval)) {}

  bool valid() const { return static_cast<bool>(value_); }
  Vec operator()(const Vec& x) const { return value_(x); }
  VectorEval eval(const Vec& x) const { return eval_(x); }

 private:
  ValueFn value_;
  EvalFn eval_;
};

/// Dissipation C(x, ẋ) with Jacobians in both arguments.
class DissipationField {
 public:
  using ValueFn = std::function<Vec(const Vec&, const Vec&)>;
  using EvalFn = std::function<DissipationEval(const Vec&, const Vec&)>;

  DissipationField() = default;
  DissipationField(ValueFn value, EvalFn eval) : value_(std::move(value)), eval_(std::move(eval)) {}

  bool valid() const { return static_cast<bool>(value_); }
  Vec operator()(const Vec& x, const Vec& v) const { return value_(x, v); }
  DissipationEval eval(const Vec& x, const Vec& v) const { return eval_(x, v); }

 private:
  ValueFn value_;
  EvalFn eval_;
};

namespace detail {

template <class T>
VecT<T> cast_vec(const Vec& x) {
  return x.template cast<T>();
}

inline void check_dual_capacity(Eigen::Index vars) {
  if (vars > kMaxDualVars) throw ScopeError("dual-number capacity exceeded; use a finite-difference field");
}

}  // namespace detail

/// Builds a matrix field from a generic callable `f(const VecT<T>&) -> MatT<T>`.
/// Derivatives come from forward-mode dual numbers; beyond kMaxDualVars variables
/// central differences are used instead.
template <class F>
MatrixField make_matrix_field(int rows, int cols, F f) {
  auto value = [f](const Vec& x) -> Mat { return f(x); };
  auto eval = [f](const Vec& x) -> MatrixEval {
    const int n = static_cast<int>(x.size());
    MatrixEval out;
    if (n > kMaxDualVars) {
      out.value = f(x);
      out.d = fd_matrix_derivative([&](const Vec& y) -> Mat { return f(y); }, x);
      return out;
    }
    const DualMat m = f(seed_duals(x, n));
    out.value.resize(m.rows(), m.cols());
    out.d.assign(n, Mat::Zero(m.rows(), m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        out.value(i, j) = m(i, j).value();
        const Vec g = gradient_of(m(i, j), n);
        for (int k = 0; k < n; ++k) out.d[k](i, j) = g(k);
      }
    }
    return out;
  };
  return MatrixField(rows, cols, value, eval);
}

/// As make_matrix_field, additionally exposing Taylor jets (f must accept TaylorVec).
template <class F>
MatrixField make_matrix_field_with_jet(int rows, int cols, F f) {
  MatrixField base = make_matrix_field(rows, cols, f);
  auto value = [base](const Vec& x) { return base(x); };
  auto eval = [base](const Vec& x) { return base.eval(x); };
  auto jet = [f](const TaylorVec& x) -> TaylorMat { return f(x); };
  return MatrixField(rows, cols, value, eval, jet);
}

/// Matrix field whose derivatives are central differences of `f`.
MatrixField fd_matrix_field(int rows, int cols, MatrixField::ValueFn f, double h = kFdStep);
MatrixField constant_matrix_field(const Mat& m);

template <class F>
ScalarField make_scalar_field(F f) {
  auto value = [f](const Vec& x) -> double { return f(x); };
  auto eval = [f](const Vec& x) -> ScalarEval {
    const int n = static_cast<int>(x.size());
    ScalarEval out;
    if (n > kMaxDualVars) {
      out.value = f(x);
      out.grad = fd_gradient([&](const Vec& y) { return static_cast<double>(f(y)); }, x);
      return out;
    }
    const Dual r = f(seed_duals(x, n));
    out.value = r.value();
    out.grad = gradient_of(r, n);
    return out;
  };
  return ScalarField(value, eval);
}

ScalarField constant_scalar_field(double c);

template <class F>
VectorField make_vector_field(F f) {
  auto value = [f](const Vec& x) -> Vec { return f(x); };
  auto eval = [f](const Vec& x) -> VectorEval {
    const int n = static_cast<int>(x.size());
    VectorEval out;
    if (n > kMaxDualVars) {
      out.value = f(x);
      out.jac = fd_jacobian([&](const Vec& y) -> Vec { return f(y); }, x);
      return out;
    }
    const DualVec v = f(seed_duals(x, n));
    out.value.resize(v.size());
    out.jac.resize(v.size(), n);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      out.value(i) = v(i).value();
      out.jac.row(i) = gradient_of(v(i), n).transpose();
    }
    return out;
  };
  return VectorField(value, eval);
}

VectorField fd_vector_field(VectorField::ValueFn f, double h = kFdStep);

/// Row `row` of a matrix field viewed as a vector field.
VectorField row_field(const MatrixField& m, int row);

/// Builds a dissipation field from a generic callable `f(const VecT<T>& x, const VecT<T>& v) -> VecT<T>`.
template <class F>
DissipationField make_dissipation_field(F f) {
  auto value = [f](const Vec& x, const Vec& v) -> Vec { return f(x, v); };
  auto eval = [f](const Vec& x, const Vec& v) -> DissipationEval {
    const int n = static_cast<int>(x.size());
    detail::check_dual_capacity(2 * n);
    const DualVec c = f(seed_duals(x, 2 * n, 0), seed_duals(v, 2 * n, n));
    DissipationEval out;
    out.value.resize(c.size());
    out.dx.resize(c.size(), n);
    out.dv.resize(c.size(), n);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      out.value(i) = c(i).value();
      const Vec g = gradient_of(c(i), 2 * n);
      out.dx.row(i) = g.head(n).transpose();
      out.dv.row(i) = g.tail(n).transpose();
    }
    return out;
  };
  return DissipationField(value, eval);
}

DissipationField zero_dissipation();

/// C(x, ẋ) = R ẋ with a constant matrix R.
DissipationField linear_dissipation(const Mat& r);

}  // namespace matching
