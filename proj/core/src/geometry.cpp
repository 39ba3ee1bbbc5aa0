#include "matching/geometry.hpp"

#include "matching/errors.hpp"
#include "matching/linalg.hpp"

#include <string>

namespace matching {

void validate_state(const State& s) {
  if (s.x.size() != s.xdot.size()) throw DomainError("state: x and xdot differ in length");
  if (s.x.size() < 2) throw DomainError("state: need at least two degrees of freedom");
  if (!s.x.allFinite() || !s.xdot.allFinite()) throw DomainError("state: non-finite entries");
}

void MechanicalSystem::validate() const {
  if (n < 2) throw ConfigError("system '" + name + "': n must be at least 2");
  if (m < 1 || m > n) throw ConfigError("system '" + name + "': need 1 <= m <= n");
  if (!metric.valid() || !potential.valid() || !dissipation.valid()) {
    throw ConfigError("system '" + name + "': missing field");
  }
}

void validate_configuration(const MechanicalSystem& sys, const Vec& x) {
  if (x.size() != sys.n) throw DomainError("configuration has length " + std::to_string(x.size()) +
                                           ", expected " + std::to_string(sys.n));
  if (!x.allFinite()) throw DomainError("configuration has non-finite entries");
}

Vec Christoffel::contract(const Vec& v) const {
  Vec q = Vec::Zero(n_);
  for (int r = 0; r < n_; ++r) {
    double acc = 0.0;
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) acc += (*this)(j, k, r) * v(j) * v(k);
    }
    q(r) = acc;
  }
  return q;
}

Christoffel christoffel_first(const MatrixEval& g) {
  const int n = static_cast<int>(g.value.rows());
  for (const Mat& d : g.d) {
    if (!d.allFinite()) throw DomainError("metric derivative is not finite");
  }
  Christoffel c(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double v = 0.5 * (g.d[i](j, k) + g.d[j](i, k) - g.d[k](i, j));
        c.at(i, j, k) = v;
        c.at(j, i, k) = v;
      }
    }
  }
  return c;
}

Christoffel christoffel_first(const MechanicalSystem& sys, const Vec& x) {
  validate_configuration(sys, x);
  return christoffel_first(sys.metric.eval(x));
}

namespace {

Vec force_terms(const MechanicalSystem& sys, const State& s, const MatrixEval& g) {
  const Christoffel c = christoffel_first(g);
  return c.contract(s.xdot) + sys.dissipation(s.x, s.xdot) + sys.potential.gradient(s.x);
}

}  // namespace

Vec acceleration(const MechanicalSystem& sys, const State& s, const Vec& u) {
  validate_state(s);
  if (u.size() != sys.n) throw DomainError("control vector has wrong length");
  const MatrixEval g = sys.metric.eval(s.x);
  require_invertible(g.value, "mass matrix");
  return g.value.partialPivLu().solve(u - force_terms(sys, s, g));
}

Vec motion_residual(const MechanicalSystem& sys, const State& s, const Vec& xddot, const Vec& u) {
  const MatrixEval g = sys.metric.eval(s.x);
  return g.value * xddot + force_terms(sys, s, g) - u;
}

double energy(const MechanicalSystem& sys, const State& s) {
  validate_state(s);
  return 0.5 * s.xdot.dot(sys.metric(s.x) * s.xdot) + sys.potential(s.x);
}

MechanicalSystem rescale_coordinates(const MechanicalSystem& sys, const Vec& scales) {
  if (scales.size() != sys.n || (scales.array() <= 0.0).any()) {
    throw DomainError("rescale_coordinates: need n positive scales");
  }
  MechanicalSystem out = sys;
  const Mat smat = scales.asDiagonal();
  const MatrixField metric = sys.metric;
  const ScalarField pot = sys.potential;
  const DissipationField dis = sys.dissipation;
  out.name = sys.name + "-rescaled";
  out.metric = MatrixField(
      sys.n, sys.n, [metric, smat](const Vec& y) -> Mat { return smat * metric(smat * y) * smat; },
      [metric, smat](const Vec& y) {
        MatrixEval e = metric.eval(smat * y);
        MatrixEval out;
        out.value = smat * e.value * smat;
        for (Eigen::Index k = 0; k < y.size(); ++k) out.d.push_back(smat * e.d[k] * smat * smat(k, k));
        return out;
      });
  out.potential = ScalarField([pot, smat](const Vec& y) { return pot(smat * y); },
                              [pot, smat](const Vec& y) {
                                ScalarEval e = pot.eval(smat * y);
                                e.grad = smat * e.grad;
                                return e;
                              });
  out.dissipation = DissipationField(
      [dis, smat](const Vec& y, const Vec& v) -> Vec { return smat * dis(smat * y, smat * v); },
      [dis, smat](const Vec& y, const Vec& v) {
        DissipationEval e = dis.eval(smat * y, smat * v);
        e.value = smat * e.value;
        e.dx = smat * e.dx * smat;
        e.dv = smat * e.dv * smat;
        return e;
      });
  return out;
}

}  // namespace matching
