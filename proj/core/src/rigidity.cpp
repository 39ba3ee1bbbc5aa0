#include "matching/rigidity.hpp"

#include "matching/errors.hpp"
#include "matching/linalg.hpp"
#include "matching/taylor.hpp"

#include <algorithm>
#include <cmath>

namespace matching {

namespace {

constexpr double kJetRankTol = 1e-9;

Taylor unit(const TaylorLayoutPtr& layout, int idx) {
  std::vector<double> c(layout->size(), 0.0);
  c[idx] = 1.0;
  return Taylor(layout, std::move(c));
}

/// Copies coefficients of `e` up to degree `maxdeg` into column `col` starting at row `row`.
int emit(Mat& m, int row, int col, const Taylor& e, const TaylorLayout& layout, int maxdeg) {
  int r = row;
  for (int idx = 0; idx < layout.size() && layout.degree(idx) <= maxdeg; ++idx) m(r++, col) += e.coeff(idx);
  return r;
}

int count_upto(const TaylorLayout& layout, int deg) {
  int c = 0;
  while (c < layout.size() && layout.degree(c) <= deg) ++c;
  return c;
}

}  // namespace

JetSystem assemble_jet_system(const MechanicalSystem& sys, const Vec& x0, int order, bool full) {
  if (!sys.metric.has_jet()) throw ScopeError("rigidity probe needs a metric with Taylor jets");
  if (order < 1) throw DomainError("jet order must be at least 1");
  const int n = sys.n;
  const int m = sys.m;
  const int p = order;
  auto layout = std::make_shared<const TaylorLayout>(n, p + 1);
  const TaylorMat g = sys.metric.jet(taylor_point(layout, x0));

  // dg[k](i, j) = ∂_k g_ij
  std::vector<TaylorMat> dg(n, TaylorMat(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg[k](i, j) = g(i, j).derivative(k);
  auto chr = [&](int i, int j, int k) { return (dg[i](j, k) + dg[j](i, k) - dg[k](i, j)) * 0.5; };

  const int nmon = count_upto(*layout, p);
  const int nlow = count_upto(*layout, p - 1);

  JetSystem js;
  js.order = p;
  js.full = full;
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i)
      for (int mo = 0; mo < nmon; ++mo)
        js.unknowns.push_back({JetUnknown::Kind::Lambda, a, i, mo, layout->degree(mo)});
  if (full) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int mo = 0; mo < nmon; ++mo)
          js.unknowns.push_back({JetUnknown::Kind::Ghat, i, j, mo, layout->degree(mo)});
  }

  // Row blocks.
  const int lam_eqs = n * m * (m + 1) / 2;
  const int sym_eqs = m * (m - 1) / 2;
  const int ghat_eqs = full ? m * n * (n + 1) / 2 : 0;
  const int rel_eqs = full ? m * n : 0;
  const int lam_base = 0;
  const int sym_base = lam_base + lam_eqs * nlow;
  const int ghat_base = sym_base + sym_eqs * nmon;
  const int rel_base = ghat_base + ghat_eqs * nlow;
  const int rows = rel_base + rel_eqs * nmon;

  auto lam_row = [&](int k, int a, int b) {
    int q = 0;
    for (int kk = 0; kk < n; ++kk)
      for (int aa = 0; aa < m; ++aa)
        for (int bb = aa; bb < m; ++bb) {
          if (kk == k && aa == a && bb == b) return lam_base + q * nlow;
          ++q;
        }
    return -1;
  };
  auto sym_row = [&](int a, int b) {
    int q = 0;
    for (int aa = 0; aa < m; ++aa)
      for (int bb = aa + 1; bb < m; ++bb) {
        if (aa == a && bb == b) return sym_base + q * nmon;
        ++q;
      }
    return -1;
  };
  auto ghat_row = [&](int a, int i, int j) {
    int q = 0;
    for (int aa = 0; aa < m; ++aa)
      for (int ii = 0; ii < n; ++ii)
        for (int jj = ii; jj < n; ++jj) {
          if (aa == a && ii == i && jj == j) return ghat_base + q * nlow;
          ++q;
        }
    return -1;
  };
  auto rel_row = [&](int a, int i) { return rel_base + (a * n + i) * nmon; };

  js.matrix = Mat::Zero(rows, static_cast<Eigen::Index>(js.unknowns.size()));
  Mat& mat = js.matrix;
  for (std::size_t c = 0; c < js.unknowns.size(); ++c) {
    const JetUnknown& u = js.unknowns[c];
    const int col = static_cast<int>(c);
    const Taylor mono = unit(layout, u.monomial);
    if (u.kind == JetUnknown::Kind::Lambda) {
      const int a0 = u.i;
      const int i0 = u.j;
      // λ-equations: ∂_k(g_ai λ_b^i) − [k a, i] λ_b^i − [k b, i] λ_a^i
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < m; ++a)
          for (int b = a; b < m; ++b) {
            Taylor e(0.0);
            if (b == a0) e += (g(a, i0) * mono).derivative(k) - chr(k, a, i0) * mono;
            if (a == a0) e -= chr(k, b, i0) * mono;
            if (!e.is_constant()) emit(mat, lam_row(k, a, b), col, e, *layout, p - 1);
          }
      // ν_ab − ν_ba
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
          Taylor e(0.0);
          if (b == a0) e += g(a, i0) * mono;
          if (a == a0) e -= g(b, i0) * mono;
          if (!e.is_constant()) emit(mat, sym_row(a, b), col, e, *layout, p);
        }
      if (full) {
        // δλ_a^ℓ ∂_ℓ g_ij + ∂_i δλ_a^ℓ g_ℓj + ∂_j δλ_a^ℓ g_ℓi + ∂_a δĝ_ij
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) {
            const Taylor e = mono * dg[i0](i, j) + mono.derivative(i) * g(i0, j) + mono.derivative(j) * g(i0, i);
            emit(mat, ghat_row(a0, i, j), col, e, *layout, p - 1);
          }
        // δλ_a^j g_ji + δĝ_ai
        for (int i = 0; i < n; ++i) emit(mat, rel_row(a0, i), col, mono * g(i0, i), *layout, p);
      }
    } else {
      const int i0 = u.i;
      const int j0 = u.j;
      for (int a = 0; a < m; ++a) emit(mat, ghat_row(a, i0, j0), col, mono.derivative(a), *layout, p - 1);
      for (int a = 0; a < m; ++a) {
        if (a == i0) emit(mat, rel_row(a, j0), col, mono, *layout, p);
        if (a == j0 && i0 != j0) emit(mat, rel_row(a, i0), col, mono, *layout, p);
      }
    }
  }
  return js;
}

namespace {

int jet_rank(const Mat& a) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(a);
  const Vec& s = svd.singularValues();
  const double tol = kJetRankTol * std::max(1.0, s.size() ? s(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol) ++r;
  }
  return r;
}

}  // namespace

int lambda_value_dimension(const JetSystem& js) {
  std::vector<int> rest;
  for (std::size_t c = 0; c < js.unknowns.size(); ++c) {
    const JetUnknown& u = js.unknowns[c];
    if (!(u.kind == JetUnknown::Kind::Lambda && u.degree == 0)) rest.push_back(static_cast<int>(c));
  }
  Mat sub(js.matrix.rows(), static_cast<Eigen::Index>(rest.size()));
  for (std::size_t q = 0; q < rest.size(); ++q) sub.col(static_cast<Eigen::Index>(q)) = js.matrix.col(rest[q]);
  const int null_all = static_cast<int>(js.matrix.cols()) - jet_rank(js.matrix);
  const int null_rest = static_cast<int>(sub.cols()) - jet_rank(sub);
  return null_all - null_rest;
}

Vec basic_direction(const MechanicalSystem& sys, const Vec& x0, const JetSystem& js) {
  const int n = sys.n;
  auto layout = std::make_shared<const TaylorLayout>(n, js.order + 1);
  const TaylorMat g = sys.metric.jet(taylor_point(layout, x0));
  Vec u = Vec::Zero(static_cast<Eigen::Index>(js.unknowns.size()));
  for (std::size_t c = 0; c < js.unknowns.size(); ++c) {
    const JetUnknown& k = js.unknowns[c];
    if (k.kind == JetUnknown::Kind::Lambda) {
      if (k.i == k.j && k.degree == 0) u(static_cast<Eigen::Index>(c)) = 1.0;
    } else {
      u(static_cast<Eigen::Index>(c)) = -g(k.i, k.j).coeff(k.monomial);
    }
  }
  return u;
}

std::vector<RigidityPoint> rigidity_probe(const MechanicalSystem& sys, const std::vector<Vec>& points, int order) {
  std::vector<RigidityPoint> out;
  for (const Vec& x : points) {
    validate_configuration(sys, x);
    RigidityPoint r;
    r.x = x;
    r.min_sine = 1.0;
    for (int i = 0; i < sys.n; ++i)
      for (int j = i + 1; j < sys.n; ++j) r.min_sine = std::min(r.min_sine, std::abs(std::sin(x(i) - x(j))));
    const JetSystem full = assemble_jet_system(sys, x, order, true);
    r.matching_dimension = lambda_value_dimension(full);
    r.basic_residual = (full.matrix * basic_direction(sys, x, full)).cwiseAbs().maxCoeff();
    r.lambda_only_dimension = lambda_value_dimension(assemble_jet_system(sys, x, order, false));
    out.push_back(r);
  }
  return out;
}

}  // namespace matching
