#include "matching/fields.hpp"

namespace matching {

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  Vec g(x.size());
  Vec y = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    y(k) = x(k) + h;
    const double fp = f(y);
    y(k) = x(k) - h;
    const double fm = f(y);
    y(k) = x(k);
    g(k) = (fp - fm) / (2.0 * h);
  }
  return g;
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h) {
  Vec y = x;
  Mat j;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    y(k) = x(k) + h;
    const Vec fp = f(y);
    y(k) = x(k) - h;
    const Vec fm = f(y);
    y(k) = x(k);
    if (k == 0) j.resize(fp.size(), x.size());
    j.col(k) = (fp - fm) / (2.0 * h);
  }
  return j;
}

std::vector<Mat> fd_matrix_derivative(const std::function<Mat(const Vec&)>& f, const Vec& x, double h) {
  std::vector<Mat> d;
  Vec y = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    y(k) = x(k) + h;
    const Mat fp = f(y);
    y(k) = x(k) - h;
    const Mat fm = f(y);
    y(k) = x(k);
    d.push_back((fp - fm) / (2.0 * h));
  }
  return d;
}

Mat ScalarField::hessian(const Vec& x, double h) const {
  Mat hs = fd_jacobian([this](const Vec& y) { return gradient(y); }, x, h);
  return 0.5 * (hs + hs.transpose());
}

MatrixField fd_matrix_field(int rows, int cols, MatrixField::ValueFn f, double h) {
  auto eval = [f, h](const Vec& x) {
    MatrixEval out;
    out.value = f(x);
    out.d = fd_matrix_derivative(f, x, h);
    return out;
  };
  return MatrixField(rows, cols, f, eval);
}

MatrixField constant_matrix_field(const Mat& m) {
  auto value = [m](const Vec&) { return m; };
  auto eval = [m](const Vec& x) {
    MatrixEval out;
    out.value = m;
    out.d.assign(x.size(), Mat::Zero(m.rows(), m.cols()));
    return out;
  };
  auto jet = [m](const TaylorVec&) -> TaylorMat {
    TaylorMat t(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) t(i, j) = Taylor(m(i, j));
    return t;
  };
  return MatrixField(static_cast<int>(m.rows()), static_cast<int>(m.cols()), value, eval, jet);
}

ScalarField constant_scalar_field(double c) {
  auto value = [c](const Vec&) { return c; };
  auto eval = [c](const Vec& x) {
    ScalarEval out;
    out.value = c;
    out.grad = Vec::Zero(x.size());
    return out;
  };
  return ScalarField(value, eval);
}

VectorField fd_vector_field(VectorField::ValueFn f, double h) {
  auto eval = [f, h](const Vec& x) {
    VectorEval out;
    out.value = f(x);
    out.jac = fd_jacobian(f, x, h);
    return out;
  };
  return VectorField(f, eval);
}

VectorField row_field(const MatrixField& m, int row) {
  auto value = [m, row](const Vec& x) -> Vec { return m(x).row(row).transpose(); };
  auto eval = [m, row](const Vec& x) {
    const MatrixEval e = m.eval(x);
    VectorEval out;
    out.value = e.value.row(row).transpose();
    out.jac.resize(e.value.cols(), x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) out.jac.col(k) = e.d[k].row(row).transpose();
    return out;
  };
  return VectorField(value, eval);
}

DissipationField zero_dissipation() {
  auto value = [](const Vec& x, const Vec&) { return Vec::Zero(x.size()).eval(); };
  auto eval = [](const Vec& x, const Vec&) {
    const auto n = x.size();
    return DissipationEval{Vec::Zero(n), Mat::Zero(n, n), Mat::Zero(n, n)};
  };
  return DissipationField(value, eval);
}

DissipationField linear_dissipation(const Mat& r) {
  auto value = [r](const Vec&, const Vec& v) -> Vec { return r * v; };
  auto eval = [r](const Vec& x, const Vec& v) {
    const auto n = x.size();
    return DissipationEval{r * v, Mat::Zero(n, n), r};
  };
  return DissipationField(value, eval);
}

}  // namespace matching
