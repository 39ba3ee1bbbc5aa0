#include "matching/synthesis.hpp"

#include "matching/csv.hpp"
#include "matching/errors.hpp"
#include "matching/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace matching {

ControlTerms control_terms(const MechanicalSystem& sys, const TargetSystem& target, const State& s) {
  validate_state(s);
  const MatrixEval g = sys.metric.eval(s.x);
  const MatrixEval gh = target.ghat.eval(s.x);
  require_invertible(gh.value, "target metric");
  // g ĝ⁻¹ (ĝ symmetric)
  const Mat w = gh.value.partialPivLu().solve(g.value.transpose()).transpose();
  ControlTerms t;
  t.velocity = christoffel_first(g).contract(s.xdot) - w * christoffel_first(gh).contract(s.xdot);
  t.dissipative = sys.dissipation(s.x, s.xdot) - w * target.chat(s.x, s.xdot);
  t.potential = sys.potential.gradient(s.x) - w * target.vhat.gradient(s.x);
  return t;
}

Vec control_law(const MechanicalSystem& sys, const TargetSystem& target, const State& s) {
  return control_terms(sys, target, s).total();
}

namespace {

using Accel = std::function<Vec(const State&)>;

Trajectory integrate(const Accel& accel, const Controller& record, const State& s0, const SimulationOptions& opt) {
  validate_state(s0);
  if (!(opt.dt > 0.0)) throw DomainError("simulate: dt must be positive");
  if (!(opt.horizon >= 0.0)) throw DomainError("simulate: horizon must be non-negative");
  if (opt.stride < 1) throw DomainError("simulate: stride must be positive");
  const int n = s0.dof();
  const long steps = std::lround(opt.horizon / opt.dt);
  auto f = [&](const Vec& y) {
    const State s(y.head(n), y.tail(n));
    Vec out(2 * n);
    out.head(n) = s.xdot;
    out.tail(n) = accel(s);
    return out;
  };
  Trajectory tr;
  auto push = [&](double t, const Vec& y) {
    State s(y.head(n), y.tail(n));
    tr.times.push_back(t);
    tr.controls.push_back(record ? record(s) : Vec::Zero(n));
    tr.states.push_back(std::move(s));
  };
  Vec y(2 * n);
  y << s0.x, s0.xdot;
  push(0.0, y);
  const double h = opt.dt;
  for (long i = 1; i <= steps; ++i) {
    const Vec k1 = f(y);
    const Vec k2 = f(y + 0.5 * h * k1);
    const Vec k3 = f(y + 0.5 * h * k2);
    const Vec k4 = f(y + h * k3);
    const Vec next = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite() || next.norm() > opt.bound) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "blow-up guard tripped at t = " << i * h << "; last good state (t = " << (i - 1) * h << "): ["
          << y.transpose() << "]";
      throw BlowUpError(msg.str());
    }
    y = next;
    if (i % opt.stride == 0 || i == steps) push(static_cast<double>(i) * h, y);
  }
  return tr;
}

}  // namespace

Trajectory simulate(const MechanicalSystem& sys, const Controller& controller, const State& s0,
                    const SimulationOptions& opt) {
  const Vec zero = Vec::Zero(sys.n);
  auto accel = [&](const State& s) { return acceleration(sys, s, controller ? controller(s) : zero); };
  return integrate(accel, controller, s0, opt);
}

Trajectory simulate_closed_loop(const MechanicalSystem& sys, const TargetSystem& target, const State& s0,
                                const SimulationOptions& opt) {
  Controller law = [&](const State& s) { return control_law(sys, target, s); };
  return simulate(sys, law, s0, opt);
}

Trajectory simulate_target(const TargetSystem& target, const State& s0, const SimulationOptions& opt,
                           const MechanicalSystem* plant) {
  auto accel = [&](const State& s) { return target_acceleration(target, s); };
  Controller record;
  if (plant) record = [&](const State& s) { return control_law(*plant, target, s); };
  return integrate(accel, record, s0, opt);
}

double max_state_deviation(const Trajectory& a, const Trajectory& b) {
  const std::size_t n = std::min(a.size(), b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = (a.states[i].x - b.states[i].x).cwiseAbs().maxCoeff();
    const double dv = (a.states[i].xdot - b.states[i].xdot).cwiseAbs().maxCoeff();
    d = std::max({d, dx, dv});
  }
  return d;
}

LyapunovAudit lyapunov_audit(const TargetSystem& target, const Trajectory& traj, double reference) {
  LyapunovAudit a;
  const std::size_t n = traj.size();
  a.hhat.reserve(n);
  a.min_power = n ? 1e300 : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a.hhat.push_back(target_energy(target, traj.states[i]) - reference);
    const State& s = traj.states[i];
    a.min_power = std::min(a.min_power, s.xdot.dot(target.chat(s.x, s.xdot)));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) a.max_increase = std::max(a.max_increase, a.hhat[i + 1] - a.hhat[i]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const State& s = traj.states[i];
    const double dh = (a.hhat[i + 1] - a.hhat[i - 1]) / (traj.times[i + 1] - traj.times[i - 1]);
    const double d = dh + s.xdot.dot(target.chat(s.x, s.xdot));
    a.defect.push_back(d);
    a.max_defect = std::max(a.max_defect, std::abs(d));
  }
  return a;
}

namespace {

Linearization finish(Mat j) {
  Linearization l;
  Eigen::EigenSolver<Mat> es(j, false);
  l.eigenvalues = es.eigenvalues();
  std::vector<double> re;
  for (Eigen::Index i = 0; i < l.eigenvalues.size(); ++i) re.push_back(l.eigenvalues(i).real());
  std::sort(re.begin(), re.end(), std::greater<>());
  l.real_parts = Eigen::Map<Vec>(re.data(), static_cast<Eigen::Index>(re.size()));
  l.jacobian = std::move(j);
  return l;
}

}  // namespace

Linearization linearize_closed_loop(const MechanicalSystem& sys, const TargetSystem& target, const Vec& xstar,
                                    double h) {
  const int n = sys.n;
  auto f = [&](const Vec& y) {
    const State s(y.head(n), y.tail(n));
    Vec out(2 * n);
    out.head(n) = s.xdot;
    out.tail(n) = acceleration(sys, s, control_law(sys, target, s));
    return out;
  };
  Vec y0 = Vec::Zero(2 * n);
  y0.head(n) = xstar;
  const Vec f0 = f(y0);
  if (f0.cwiseAbs().maxCoeff() > 1e-9) {
    throw NotEquilibriumError("closed loop is not at rest at the given point");
  }
  return finish(fd_jacobian(f, y0, h));
}

Linearization linearize_target(const TargetSystem& target, const Vec& xstar) {
  const auto n = xstar.size();
  const Vec zero = Vec::Zero(n);
  if (target.vhat.gradient(xstar).cwiseAbs().maxCoeff() > 1e-9 ||
      target.chat(xstar, zero).cwiseAbs().maxCoeff() > 1e-9) {
    throw NotEquilibriumError("target is not at rest at the given point");
  }
  const Mat gh = target.ghat(xstar);
  require_invertible(gh, "target metric");
  const DissipationEval c = target.chat.eval(xstar, zero);
  const auto lu = gh.partialPivLu();
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -lu.solve(target.vhat.hessian(xstar) + c.dx);
  j.bottomRightCorner(n, n) = -lu.solve(c.dv);
  return finish(j);
}

double GermDefect::max() const { return std::max({offset, k, d}); }

namespace {

void check_germ_scope(const MechanicalSystem& sys, const Vec& xstar) {
  if (sys.n != 2) throw ScopeError("germ identity is implemented for two degrees of freedom");
  if (xstar.size() != 2) throw DomainError("equilibrium has the wrong length");
  const DissipationEval c = sys.dissipation.eval(xstar, Vec::Zero(2));
  if (c.value.cwiseAbs().maxCoeff() > 1e-12 || c.dx.cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("dissipation must vanish to first order in x at the equilibrium");
  }
}

}  // namespace

GermDefect germ_check(const MechanicalSystem& sys, const TargetSystem& target, const Vec& xstar,
                      const LinearGains& gains, double h) {
  check_germ_scope(sys, xstar);
  const Vec zero = Vec::Zero(2);
  GermDefect out;
  out.germ.v = control_law(sys, target, State(xstar, zero));
  out.germ.k = fd_jacobian([&](const Vec& x) { return control_law(sys, target, State(x, zero)); }, xstar, h);
  out.germ.d = fd_jacobian([&](const Vec& v) { return control_law(sys, target, State(xstar, v)); }, zero, h);
  out.offset = (out.germ.v - gains.v).cwiseAbs().maxCoeff();
  out.k = (out.germ.k - gains.k).cwiseAbs().maxCoeff();
  out.d = (out.germ.d - gains.d).cwiseAbs().maxCoeff();
  return out;
}

TargetSystem germ_target(const MechanicalSystem& sys, const Vec& xstar, const LinearGains& gains) {
  check_germ_scope(sys, xstar);
  const Vec zero = Vec::Zero(2);
  const Vec dv = sys.potential.gradient(xstar);
  if (gains.v.size() != 2 || gains.k.rows() != 2 || gains.k.cols() != 2 || gains.d.rows() != 2 ||
      gains.d.cols() != 2) {
    throw DomainError("linear gains must be 2-vectors and 2x2 matrices");
  }
  if (std::abs(gains.v(0)) > 1e-12 || gains.k.row(0).cwiseAbs().maxCoeff() > 1e-12 ||
      gains.d.row(0).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("the linear law must not actuate the first coordinate");
  }
  if ((gains.v - dv).cwiseAbs().maxCoeff() > 1e-9) {
    throw NotEquilibriumError("the linear law does not hold the configuration at rest");
  }
  const Mat g = sys.metric(xstar);
  const Mat hess = sys.potential.hessian(xstar);
  const Mat m = g.partialPivLu().solve(hess - gains.k);

  // ĝ m symmetric: p m01 + q (m11 − m00) − r m10 = 0 for ĝ = [[p, q], [q, r]].
  Vec c(3);
  c << m(0, 1), m(1, 1) - m(0, 0), -m(1, 0);
  Mat ghat;
  if (c.norm() < 1e-14) {
    ghat = g;
  } else {
    const Mat basis = null_space(c.transpose());
    double best = -1e300;
    for (int i = 0; i < 3600; ++i) {
      const double th = M_PI * i / 3600.0;
      const Vec pqr = std::cos(th) * basis.col(0) + std::sin(th) * basis.col(1);
      for (double sgn : {1.0, -1.0}) {
        Mat cand(2, 2);
        cand << sgn * pqr(0), sgn * pqr(1), sgn * pqr(1), sgn * pqr(2);
        Eigen::SelfAdjointEigenSolver<Mat> es(cand, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues()(0);
        const double hi = std::max(std::abs(es.eigenvalues()(1)), 1e-300);
        const double score = lo > 0 ? lo / hi : lo / hi - 1.0;
        if (score > best) {
          best = score;
          ghat = cand;
        }
      }
    }
    // Normalize scale to the plant metric.
    ghat *= g.trace() / std::abs(ghat.trace());
  }
  const Mat w0 = ghat * m;
  const Mat w = 0.5 * (w0 + w0.transpose());
  const DissipationEval cd = sys.dissipation.eval(xstar, zero);
  const Mat chat = ghat * g.partialPivLu().solve(cd.dv - gains.d);

  TargetSystem t;
  t.ghat = constant_matrix_field(ghat);
  const Vec xs = xstar;
  t.vhat = make_scalar_field([xs, w](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const VecT<T> dx = x - xs.cast<T>();
    T acc = T(0.0);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) acc += 0.5 * w(i, j) * dx(i) * dx(j);
    }
    return acc;
  });
  t.chat = linear_dissipation(chat);
  return t;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const TargetSystem& target, double reference) {
  const int n = traj.size() ? traj.states.front().dof() : 0;
  os << 't';
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= n; ++i) os << ",xdot" << i;
  for (int i = 1; i <= n; ++i) os << ",u" << i;
  os << ",Hhat\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const State& s = traj.states[k];
    os << format_double(traj.times[k]);
    for (int i = 0; i < n; ++i) os << ',' << format_double(s.x(i));
    for (int i = 0; i < n; ++i) os << ',' << format_double(s.xdot(i));
    for (int i = 0; i < n; ++i) os << ',' << format_double(traj.controls[k](i));
    os << ',' << format_double(target_energy(target, s) - reference) << '\n';
  }
}

}  // namespace matching
