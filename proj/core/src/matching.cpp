#include "matching/matching.hpp"

#include "matching/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace matching {

std::vector<EquationIndex> equation_indices(int n, int m) {
  std::vector<EquationIndex> out;
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < m; ++a) {
      for (int b = a; b < m; ++b) out.push_back({k, a, b});
    }
  }
  return out;
}

namespace {

void check_lambda_shape(const MechanicalSystem& sys, const LambdaField& lam) {
  if (lam.m() != sys.m || lam.n() != sys.n) throw DomainError("lambda field has the wrong shape");
}

}  // namespace

MatrixEval nu_eval(const MechanicalSystem& sys, const LambdaField& lam, const Vec& x) {
  check_lambda_shape(sys, lam);
  const MatrixEval g = sys.metric.eval(x);
  const MatrixEval l = lam.eval(x);
  const int m = sys.m;
  MatrixEval out;
  out.value = g.value.topRows(m) * l.value.transpose();
  for (int k = 0; k < sys.n; ++k) {
    out.d.push_back(g.d[k].topRows(m) * l.value.transpose() + g.value.topRows(m) * l.d[k].transpose());
  }
  return out;
}

Mat nu_matrix(const MechanicalSystem& sys, const LambdaField& lam, const Vec& x) {
  check_lambda_shape(sys, lam);
  return sys.metric(x).topRows(sys.m) * lam(x).transpose();
}

LambdaResidual lambda_residual(const MechanicalSystem& sys, const LambdaField& lam, const Vec& x) {
  validate_configuration(sys, x);
  const MatrixEval g = sys.metric.eval(x);
  const Christoffel c = christoffel_first(g);
  const Mat l = lam(x);
  const MatrixEval nu = nu_eval(sys, lam, x);
  LambdaResidual r;
  r.index = equation_indices(sys.n, sys.m);
  r.values.resize(static_cast<Eigen::Index>(r.index.size()));
  for (std::size_t q = 0; q < r.index.size(); ++q) {
    const auto [k, a, b] = r.index[q];
    double v = nu.d[k](a, b);
    for (int i = 0; i < sys.n; ++i) v -= c(k, a, i) * l(b, i) + c(k, b, i) * l(a, i);
    r.values(static_cast<Eigen::Index>(q)) = v;
    if (!(std::abs(v) <= r.max_abs)) {
      r.max_abs = std::abs(v);
      r.worst = r.index[q];
    }
  }
  return r;
}

double MatchingResidual::max_abs() const {
  double m = relation;
  if (closed_loop.size()) m = std::max(m, closed_loop.cwiseAbs().maxCoeff());
  if (lambda_form.size()) m = std::max(m, lambda_form.cwiseAbs().maxCoeff());
  return m;
}

MatchingResidual matching_residual(const MechanicalSystem& sys, const LambdaField& lam, const TargetSystem& target,
                                   const State& s) {
  validate_state(s);
  check_lambda_shape(sys, lam);
  const MatrixEval g = sys.metric.eval(s.x);
  const MatrixEval gh = target.ghat.eval(s.x);
  require_invertible(gh.value, "target metric");
  const Vec q = christoffel_first(g).contract(s.xdot);
  const Vec qh = christoffel_first(gh).contract(s.xdot);
  const Vec c = sys.dissipation(s.x, s.xdot);
  const Vec ch = target.chat(s.x, s.xdot);
  const Vec dv = sys.potential.gradient(s.x);
  const Vec dvh = target.vhat.gradient(s.x);
  const Vec hat_forces = qh + ch + dvh;
  const Vec forces = q + c + dv;

  const int m = sys.m;
  // Rows a of g ĝ⁻¹, i.e. λ as implied by the target.
  const Mat implied = gh.value.transpose().partialPivLu().solve(g.value.topRows(m).transpose()).transpose();
  const Mat l = lam(s.x);

  MatchingResidual r;
  r.closed_loop = forces.head(m) - implied * hat_forces;
  r.lambda_form = forces.head(m) - l * hat_forces;
  r.relation = (l - implied).cwiseAbs().maxCoeff();
  return r;
}

CompatibilitySystem assemble_compatibility(const MechanicalSystem& sys, const Vec& x, double rel) {
  validate_configuration(sys, x);
  const int n = sys.n;
  const int m = sys.m;
  const MatrixEval g = sys.metric.eval(x);
  const Christoffel c = christoffel_first(g);
  const Mat block = g.value.topLeftCorner(m, m);
  require_invertible(block, "unactuated block of the mass matrix");
  const Mat h = block.inverse();
  // P_{k a ρ} = [k a, ρ] − [k a, β] h^{βd} g_dρ
  auto p = [&](int k, int a, int rho) {
    double v = c(k, a, rho);
    for (int beta = 0; beta < m; ++beta) {
      for (int d = 0; d < m; ++d) v -= c(k, a, beta) * h(beta, d) * g.value(d, rho);
    }
    return v;
  };

  CompatibilitySystem cs;
  cs.rows = equation_indices(n, m);
  for (int rho = m; rho < n; ++rho) {
    for (int cc = 0; cc < m; ++cc) cs.cols.emplace_back(rho, cc);
  }
  cs.a = Mat::Zero(static_cast<Eigen::Index>(cs.rows.size()), static_cast<Eigen::Index>(cs.cols.size()));
  for (std::size_t r = 0; r < cs.rows.size(); ++r) {
    const auto [k, a, b] = cs.rows[r];
    for (std::size_t col = 0; col < cs.cols.size(); ++col) {
      const auto [rho, cc] = cs.cols[col];
      double v = 0.0;
      if (b == cc) v += p(k, a, rho);
      if (a == cc) v += p(k, b, rho);
      cs.a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = v;
    }
  }
  const Mat astar = cs.a.transpose();
  const SvdSummary sv = svd_summary(cs.a, rel);
  cs.rank = sv.rank;
  cs.tolerance = sv.tolerance;
  cs.singular_values = sv.singular_values;
  cs.kernel = null_space(astar, rel);
  return cs;
}

Vec compatibility_rhs(const MechanicalSystem& sys, const MatrixEval& nu, const Vec& x) {
  const int m = sys.m;
  const MatrixEval g = sys.metric.eval(x);
  const Christoffel c = christoffel_first(g);
  const Mat block = g.value.topLeftCorner(m, m);
  require_invertible(block, "unactuated block of the mass matrix");
  const Mat h = block.inverse();
  const Mat hnu = h * nu.value;  // (h ν)_{β b} = h^{βd} ν_db
  const auto rows = equation_indices(sys.n, m);
  Vec f(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto [k, a, b] = rows[r];
    double v = nu.d[k](a, b);
    for (int beta = 0; beta < m; ++beta) v -= c(k, a, beta) * hnu(beta, b) + c(k, b, beta) * hnu(beta, a);
    f(static_cast<Eigen::Index>(r)) = v;
  }
  return f;
}

Vec nu_orthogonality_residual(const MechanicalSystem& sys, const MatrixEval& nu, const Vec& x) {
  const CompatibilitySystem cs = assemble_compatibility(sys, x);
  return cs.kernel.transpose() * compatibility_rhs(sys, nu, x);
}

Vec nu_orthogonality_residual(const MechanicalSystem& sys, const ScalarEval& nu, const Vec& x) {
  if (sys.m != 1) throw ScopeError("scalar nu requires one unactuated degree of freedom");
  MatrixEval e;
  e.value = Mat::Constant(1, 1, nu.value);
  for (Eigen::Index k = 0; k < nu.grad.size(); ++k) e.d.push_back(Mat::Constant(1, 1, nu.grad(k)));
  return nu_orthogonality_residual(sys, e, x);
}

RankVerdict rank_condition(const MechanicalSystem& sys, const Vec& x0, const std::vector<Vec>& samples) {
  if (samples.empty()) throw DomainError("rank_condition: no samples");
  RankVerdict v;
  v.rank_x0 = assemble_compatibility(sys, x0).rank;
  v.count = samples.size();
  for (const Vec& s : samples) {
    const int r = assemble_compatibility(sys, s).rank;
    v.sample_ranks.push_back(r);
    v.max_sample_rank = std::max(v.max_sample_rank, r);
    v.radius = std::max(v.radius, (s - x0).norm());
  }
  v.drop = v.rank_x0 < v.max_sample_rank;
  return v;
}

Vec recover_lambda_from_nu(const MechanicalSystem& sys, const ScalarEval& nu, const Vec& x,
                           const FreeComponents& free) {
  if (sys.m != 1) throw ScopeError("recover_lambda_from_nu handles one unactuated degree of freedom");
  const int n = sys.n;
  const CompatibilitySystem cs = assemble_compatibility(sys, x);
  MatrixEval e;
  e.value = Mat::Constant(1, 1, nu.value);
  for (int k = 0; k < n; ++k) e.d.push_back(Mat::Constant(1, 1, nu.grad(k)));
  const Vec f = compatibility_rhs(sys, e, x);

  Mat a = cs.a;
  Vec rhs = f;
  if (!free.pins.empty()) {
    const auto np = static_cast<Eigen::Index>(free.pins.size());
    a.conservativeResize(a.rows() + np, Eigen::NoChange);
    rhs.conservativeResize(rhs.size() + np);
    for (Eigen::Index q = 0; q < np; ++q) {
      const auto [i, val] = free.pins[static_cast<std::size_t>(q)];
      if (i < 1 || i >= n) throw DomainError("pinned component must be actuated");
      a.row(cs.a.rows() + q).setZero();
      a(cs.a.rows() + q, i - 1) = 1.0;
      rhs(cs.a.rows() + q) = val;
    }
  }
  Vec lrho = min_norm_solve(a, rhs);
  const double scale = std::max(1.0, f.norm());
  const double resid = (a * lrho - rhs).norm();
  if (resid > 1e-6 * scale) {
    throw IncompatibleNuError("nu is incompatible with the lambda-equations (least-squares residual " +
                              std::to_string(resid) + ")");
  }
  if (free.kernel_shift) {
    const Vec& shift = *free.kernel_shift;
    if (shift.size() != lrho.size()) throw DomainError("kernel shift has the wrong length");
    if ((cs.a * shift).norm() > 1e-9 * std::max(1.0, shift.norm())) throw DomainError("kernel shift is not in ker A");
    lrho += shift;
  }
  const Mat g = sys.metric(x);
  Vec lam(n);
  lam.tail(n - 1) = lrho;
  lam(0) = (nu.value - g.row(0).tail(n - 1).dot(lrho)) / g(0, 0);
  return lam;
}

BasicSolution basic_solution(const MechanicalSystem& sys, double kappa, const MatrixField& gcirc,
                             const ScalarField& vcirc, const std::vector<Vec>& domain_samples) {
  if (kappa == 0.0 || !std::isfinite(kappa)) throw DomainError("basic_solution: kappa must be nonzero");
  const int n = sys.n;
  const int m = sys.m;
  for (const Vec& x : domain_samples) {
    const MatrixEval gc = gcirc.eval(x);
    if (gc.value.topRows(m).cwiseAbs().maxCoeff() > 1e-12 || gc.value.leftCols(m).cwiseAbs().maxCoeff() > 1e-12) {
      throw DomainError("basic_solution: g° must vanish on unactuated rows and columns");
    }
    for (int a = 0; a < m; ++a) {
      if (gc.d[a].cwiseAbs().maxCoeff() > 1e-12) throw DomainError("basic_solution: g° depends on unactuated variables");
    }
    if (vcirc.gradient(x).head(m).cwiseAbs().maxCoeff() > 1e-12) {
      throw DomainError("basic_solution: V° depends on unactuated variables");
    }
  }

  Mat l = Mat::Zero(m, n);
  for (int a = 0; a < m; ++a) l(a, a) = kappa;

  const MatrixField metric = sys.metric;
  const ScalarField pot = sys.potential;
  const DissipationField dis = sys.dissipation;
  const double inv = 1.0 / kappa;

  TargetSystem t;
  t.ghat = MatrixField(
      n, n, [=](const Vec& x) -> Mat { return inv * metric(x) + gcirc(x); },
      [=](const Vec& x) {
        MatrixEval a = metric.eval(x);
        const MatrixEval b = gcirc.eval(x);
        a.value = inv * a.value + b.value;
        for (std::size_t k = 0; k < a.d.size(); ++k) a.d[k] = inv * a.d[k] + b.d[k];
        return a;
      });
  t.vhat = ScalarField([=](const Vec& x) { return inv * pot(x) + vcirc(x); },
                       [=](const Vec& x) {
                         ScalarEval a = pot.eval(x);
                         const ScalarEval b = vcirc.eval(x);
                         a.value = inv * a.value + b.value;
                         a.grad = inv * a.grad + b.grad;
                         return a;
                       });
  t.chat = DissipationField([=](const Vec& x, const Vec& v) -> Vec { return inv * dis(x, v); },
                            [=](const Vec& x, const Vec& v) {
                              DissipationEval e = dis.eval(x, v);
                              e.value *= inv;
                              e.dx *= inv;
                              e.dv *= inv;
                              return e;
                            });
  for (const Vec& x : domain_samples) require_positive_definite(t.ghat(x), "basic target metric");
  return BasicSolution{LambdaField(constant_matrix_field(l)), t};
}

}  // namespace matching
