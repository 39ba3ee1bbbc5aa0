#pragma once

#include "matching/geometry.hpp"
#include "matching/target.hpp"

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace matching {

/// u_ℓ = ([jk, ℓ] − g_ℓi ĝ^ir [ĵk, r]) ẋ^j ẋ^k + (C_ℓ − g_ℓi ĝ^ij Ĉ_j) + (∂_ℓ V − g_ℓi ĝ^ij ∂_j V̂).
Vec control_law(const MechanicalSystem& sys, const TargetSystem& target, const State& s);

/// The three groups of the control law separately.
struct ControlTerms {
  Vec velocity;
  Vec dissipative;
  Vec potential;
  Vec total() const { return velocity + dissipative + potential; }
};
ControlTerms control_terms(const MechanicalSystem& sys, const TargetSystem& target, const State& s);

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<Vec> controls;

  std::size_t size() const { return times.size(); }
};

struct SimulationOptions {
  double horizon = 1.0;
  double dt = 1e-3;
  int stride = 1;           ///< record every stride-th step (the last step is always recorded)
  double bound = 1e6;       ///< blow-up guard on |(x, ẋ)|
};

using Controller = std::function<Vec(const State&)>;

/// Plant dynamics with an optional feedback (none means u = 0).
Trajectory simulate(const MechanicalSystem& sys, const Controller& controller, const State& s0,
                    const SimulationOptions& opt);
/// Plant under the matching law for `target`.
Trajectory simulate_closed_loop(const MechanicalSystem& sys, const TargetSystem& target, const State& s0,
                                const SimulationOptions& opt);
/// The free target system. Controls are recorded as zeros unless a plant is supplied, in which
/// case the matching law along the target path is recorded.
Trajectory simulate_target(const TargetSystem& target, const State& s0, const SimulationOptions& opt,
                           const MechanicalSystem* plant = nullptr);

/// Max over shared nodes of |(x, ẋ) − (x', ẋ')|.
double max_state_deviation(const Trajectory& a, const Trajectory& b);

struct LyapunovAudit {
  std::vector<double> hhat;    ///< Ĥ − Ĥ(x*, 0) per node
  std::vector<double> defect;  ///< dĤ/dt + Ĉ_j ẋ^j per interior node (central differences)
  double max_defect = 0.0;
  double max_increase = 0.0;   ///< largest Ĥ(t_{i+1}) − Ĥ(t_i)
  double min_power = 0.0;      ///< smallest ẋᵀĈ along the path
};

/// `reference` is subtracted from Ĥ (typically V̂ at the equilibrium).
LyapunovAudit lyapunov_audit(const TargetSystem& target, const Trajectory& traj, double reference = 0.0);

struct Linearization {
  Mat jacobian;  ///< 2n×2n, state ordering (x, ẋ)
  Eigen::VectorXcd eigenvalues;
  Vec real_parts;  ///< sorted descending
};

/// Central-difference Jacobian of the plant under the matching law at (x*, 0).
Linearization linearize_closed_loop(const MechanicalSystem& sys, const TargetSystem& target, const Vec& xstar,
                                    double h = 1e-6);
/// Linearization of the target at (x*, 0) from ĝ(x*), the Hessian of V̂ and ∂Ĉ/∂ẋ.
Linearization linearize_target(const TargetSystem& target, const Vec& xstar);

/// Linear law u = v + K (x − x*) + D ẋ; K(j, r) = ∂u_j/∂x^r, D(j, i) = ∂u_j/∂ẋ^i.
struct LinearGains {
  Vec v;
  Mat k;
  Mat d;
};

struct GermDefect {
  double offset = 0.0;  ///< max |u(x*, 0) − v|
  double k = 0.0;       ///< max |∂u/∂x − K|
  double d = 0.0;       ///< max |∂u/∂ẋ − D|
  double max() const;
  LinearGains germ;     ///< the measured germ
};

/// First-order germ of the matching law at (x*, 0) against the supplied gains (two degrees of freedom).
GermDefect germ_check(const MechanicalSystem& sys, const TargetSystem& target, const Vec& xstar,
                      const LinearGains& gains, double h = 1e-6);

/// Constructs a target with constant ĝ, quadratic V̂ and linear Ĉ whose matching law has the given germ.
/// ĝ(x*) is chosen so that V̂'s Hessian is symmetric, preferring a positive definite choice.
TargetSystem germ_target(const MechanicalSystem& sys, const Vec& xstar, const LinearGains& gains);

/// Columns t, x1..xn, xdot1..xdotn, u1..un, Hhat (17 significant digits).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const TargetSystem& target,
                          double reference = 0.0);

}  // namespace matching
