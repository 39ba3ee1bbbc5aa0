#include "matching/target.hpp"

#include "matching/linalg.hpp"

namespace matching {

double target_energy(const TargetSystem& t, const State& s) {
  return 0.5 * s.xdot.dot(t.ghat(s.x) * s.xdot) + t.vhat(s.x);
}

Vec target_acceleration(const TargetSystem& t, const State& s) {
  validate_state(s);
  const MatrixEval g = t.ghat.eval(s.x);
  require_invertible(g.value, "target metric");
  const Vec rhs = christoffel_first(g).contract(s.xdot) + t.chat(s.x, s.xdot) + t.vhat.gradient(s.x);
  return g.value.partialPivLu().solve(-rhs);
}

MechanicalSystem as_mechanical_system(const TargetSystem& t, int n, int m) {
  MechanicalSystem sys;
  sys.name = "target";
  sys.n = n;
  sys.m = m;
  sys.metric = t.ghat;
  sys.potential = t.vhat;
  sys.dissipation = t.chat;
  return sys;
}

}  // namespace matching
