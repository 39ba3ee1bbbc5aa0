#include "matching/fixtures/catalog.hpp"

namespace matching {

ScalarFunction ScalarFunction::constant(double c) {
  ScalarFunction f;
  f.kind = Kind::Constant;
  f.c = c;
  return f;
}

ScalarFunction ScalarFunction::quadratic_form(double c, Vec l, Mat q) {
  ScalarFunction f;
  f.kind = Kind::Quadratic;
  f.c = c;
  f.linear = std::move(l);
  f.quadratic = std::move(q);
  return f;
}

ScalarFunction ScalarFunction::cosine(double c, double amp, Vec k, double phase) {
  ScalarFunction f;
  f.kind = Kind::Cosine;
  f.c = c;
  f.amp = amp;
  f.freq = std::move(k);
  f.phase = phase;
  return f;
}

std::string ScalarFunction::kind_name() const {
  switch (kind) {
    case Kind::Constant:
      return "constant";
    case Kind::Quadratic:
      return "quadratic";
    case Kind::Cosine:
      return "cosine";
  }
  return "constant";
}

namespace {

Mat padded(const Mat& q, Eigen::Index n) {
  Mat out = Mat::Zero(n, n);
  const Eigen::Index r = std::min(n, q.rows());
  const Eigen::Index c = std::min(n, q.cols());
  out.topLeftCorner(r, c) = q.topLeftCorner(r, c);
  return out;
}

}  // namespace

Mat ScalarFunction::hessian(const Vec& y) const {
  const auto n = y.size();
  switch (kind) {
    case Kind::Constant:
      return Mat::Zero(n, n);
    case Kind::Quadratic: {
      const Mat q = padded(quadratic, n);
      return q + q.transpose();
    }
    case Kind::Cosine: {
      const Vec k = padded(freq, n);
      return -amp * std::cos(k.dot(y) + phase) * k * k.transpose();
    }
  }
  return Mat::Zero(n, n);
}

Profile1D Profile1D::polynomial(Vec coeffs) {
  Profile1D p;
  p.kind = Kind::Polynomial;
  p.coeffs = std::move(coeffs);
  return p;
}

Profile1D Profile1D::cosine(double c, double amp, double freq, double phase) {
  Profile1D p;
  p.kind = Kind::Cosine;
  p.c = c;
  p.amp = amp;
  p.freq = freq;
  p.phase = phase;
  return p;
}

std::string Profile1D::kind_name() const { return kind == Kind::Cosine ? "cosine" : "polynomial"; }

}  // namespace matching
