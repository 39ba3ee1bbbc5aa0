#include "matching/linalg.hpp"

#include "matching/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <string>

namespace matching {

SvdSummary svd_summary(const Mat& a, double rel) {
  SvdSummary s;
  if (a.size() == 0) {
    s.tolerance = rel;
    return s;
  }
  Eigen::BDCSVD<Mat> svd(a);
  s.singular_values = svd.singularValues();
  const double top = s.singular_values.size() ? s.singular_values(0) : 0.0;
  s.tolerance = rel * std::max(top, 1.0);
  for (Eigen::Index i = 0; i < s.singular_values.size(); ++i) {
    if (s.singular_values(i) >= s.tolerance) ++s.rank;
  }
  return s;
}

int numeric_rank(const Mat& a, double rel) { return svd_summary(a, rel).rank; }

Mat null_space(const Mat& a, double rel) {
  if (a.rows() == 0) return Mat::Identity(a.cols(), a.cols());
  Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  const double tol = rel * std::max(sv.size() ? sv(0) : 0.0, 1.0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) >= tol) ++r;
  }
  return svd.matrixV().rightCols(a.cols() - r);
}

Vec min_norm_solve(const Mat& a, const Vec& b, double rel) {
  if (a.cols() == 0) return Vec(0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& sv = svd.singularValues();
  const double tol = rel * std::max(sv.size() ? sv(0) : 0.0, 1.0);
  Vec ub = svd.matrixU().transpose() * b;
  for (Eigen::Index i = 0; i < sv.size(); ++i) ub(i) = sv(i) >= tol ? ub(i) / sv(i) : 0.0;
  return svd.matrixV() * ub;
}

PivotChoice choose_pivots(const Mat& a, double rel) {
  PivotChoice c;
  const int r = numeric_rank(a, rel);
  Eigen::ColPivHouseholderQR<Mat> qr(a);
  const auto& perm = qr.colsPermutation().indices();
  for (int i = 0; i < a.cols(); ++i) {
    if (i < r) {
      c.pivots.push_back(perm(i));
    } else {
      c.free.push_back(perm(i));
    }
  }
  std::sort(c.pivots.begin(), c.pivots.end());
  std::sort(c.free.begin(), c.free.end());
  return c;
}

Mat pivoted_null_space(const Mat& a, const PivotChoice& choice) {
  const auto p = static_cast<Eigen::Index>(choice.pivots.size());
  Mat ap(a.rows(), p);
  for (Eigen::Index j = 0; j < p; ++j) ap.col(j) = a.col(choice.pivots[j]);
  Mat out = Mat::Zero(a.cols(), static_cast<Eigen::Index>(choice.free.size()));
  for (std::size_t f = 0; f < choice.free.size(); ++f) {
    out(choice.free[f], f) = 1.0;
    if (p > 0) {
      const Vec coef = ap.colPivHouseholderQr().solve(-a.col(choice.free[f]));
      for (Eigen::Index j = 0; j < p; ++j) out(choice.pivots[j], f) = coef(j);
    }
  }
  return out;
}

void require_invertible(const Mat& m, const char* what) {
  if (!m.allFinite()) throw DomainError(std::string(what) + ": non-finite entries");
  Eigen::PartialPivLU<Mat> lu(m);
  if (!(lu.rcond() > 1e-13)) throw SingularMetricError(std::string(what) + " is singular to working precision");
}

double min_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void require_positive_definite(const Mat& m, const char* what) {
  if (!m.allFinite()) throw DomainError(std::string(what) + ": non-finite entries");
  if (!(min_eigenvalue(m) > 0.0)) throw IndefiniteMetricError(std::string(what) + " is not positive definite");
}

}  // namespace matching
