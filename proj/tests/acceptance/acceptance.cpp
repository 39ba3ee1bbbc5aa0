// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include "matching/characteristics.hpp"
#include "matching/errors.hpp"
#include "matching/fixtures/double_pendulum.hpp"
#include "matching/fixtures/pendulum.hpp"
#include "matching/fixtures/registry.hpp"
#include "matching/fixtures/rollercoaster.hpp"
#include "matching/involutive.hpp"
#include "matching/matching.hpp"
#include "matching/rigidity.hpp"
#include "matching/synthesis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace matching;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Vec uniform(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

/// Unit direction in (x, ẋ) space scaled to `radius`.
State perturbation(std::mt19937_64& rng, int n, double radius) {
  std::normal_distribution<double> g;
  Vec d(2 * n);
  for (int i = 0; i < 2 * n; ++i) d(i) = g(rng);
  d *= radius / d.norm();
  return State(d.head(n), d.tail(n));
}

PendulumParams curved_pendulum() {
  PendulumParams p;
  p.ghat22 = ScalarFunction::quadratic_form(2.0, (Vec(2) << 0.1, 0.0).finished(), 0.2 * Mat::Identity(2, 2));
  p.ghat23 = ScalarFunction::cosine(0.1, 0.05, (Vec(2) << 1.0, -0.5).finished(), 0.3);
  p.ghat33 = ScalarFunction::quadratic_form(1.0, Vec::Zero(2), (Mat(2, 2) << 0.1, 0.05, 0.05, 0.2).finished());
  p.r = ScalarFunction::quadratic_form(1.0, Vec::Zero(3), 0.1 * Mat::Identity(3, 3));
  return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Closed forms against expressions written out by hand.
Outcome closed_forms() {
  const auto t0 = std::chrono::steady_clock::now();
  const PendulumParams p = curved_pendulum();
  const PendulumFixture fx = pendulum_fixture(p);
  const double a = p.a, sg = p.sigma0, mu = p.mu0;
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec x = uniform(rng, 3, -1.0, 1.0);
    const Vec v = uniform(rng, 3, -1.0, 1.0);
    const double c = std::cos(x(0)), s = std::sin(x(0));
    const double y2 = x(1) - (mu / sg) * s, y3 = x(2);
    const double g22 = 2.0 + 0.1 * y2 + 0.2 * (y2 * y2 + y3 * y3);
    const double g23 = 0.1 + 0.05 * std::cos(y2 - 0.5 * y3 + 0.3);
    const double g33 = 1.0 + 0.1 * y2 * y2 + 0.1 * y2 * y3 + 0.2 * y3 * y3;
    const double w = y2 * y2 + y3 * y3;
    const double r = 1.0 + 0.1 * x.squaredNorm();

    Mat gh(3, 3);
    gh(0, 0) = 1.0 / sg + a * mu * c * c / (sg * sg) + mu * mu * c * c * g22 / (sg * sg);
    gh(0, 1) = -(a / sg) * c - (mu / sg) * c * g22;
    gh(0, 2) = -(a / sg) * s - (mu / sg) * c * g23;
    gh(1, 1) = g22;
    gh(1, 2) = g23;
    gh(2, 2) = g33;
    gh(1, 0) = gh(0, 1);
    gh(2, 0) = gh(0, 2);
    gh(2, 1) = gh(1, 2);
    const Vec lam = (Vec(3) << sg, mu * c, 0.0).finished();
    const double vhat = c / sg + w;
    const Vec dir = (Vec(3) << -mu * c / sg, 1.0, 1.0).finished();
    const Vec chat = -sg * r * dir * dir.dot(v);

    // ĝ₁ᵢ as the library completes it from the actuated block.
    const Mat rec = reconstruct_ghat_row(fx.system, fx.lambda, gh.bottomRightCorner(2, 2), x);

    worst = std::max({worst, max_abs(fx.lambda(x).row(0).transpose() - lam), max_abs(fx.target.ghat(x) - gh),
                      max_abs(rec - gh), std::abs(fx.target.vhat(x) - vhat), max_abs(fx.target.chat(x, v) - chat)});
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && secs < 5.0, "max deviation " + fmt(worst) + " at 1000 points, " + fmt(secs) + " s"};
}

LambdaField basic_lambda(const FixtureBundle& fx) {
  const Mat zero = Mat::Zero(fx.system.n, fx.system.n);
  return basic_solution(fx.system, fx.kappa, constant_matrix_field(zero), constant_scalar_field(0.0), {}).lambda;
}

// 2. λ and matching residuals on every fixture.
Outcome residual_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(202);
  double lam_worst = 0.0, match_worst = 0.0;
  std::string detail;
  for (const std::string& name : fixture_names()) {
    const FixtureBundle fx = make_fixture(name, "");
    const TargetSystem& target = fx.target ? *fx.target : fx.basic_target;
    const LambdaField target_lambda = fx.target ? fx.lambda : basic_lambda(fx);
    double lw = 0.0, mw = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec x = sample_domain(fx, rng);
      lw = std::max(lw, lambda_residual(fx.system, fx.lambda, x).max_abs);
      const State s(x, uniform(rng, fx.system.n, -1.0, 1.0));
      mw = std::max(mw, matching_residual(fx.system, target_lambda, target, s).max_abs());
    }
    lam_worst = std::max(lam_worst, lw);
    match_worst = std::max(match_worst, mw);
    detail += name + " " + fmt(lw) + "/" + fmt(mw) + "; ";
  }
  const double secs = seconds_since(t0);
  return {lam_worst <= 1e-9 && match_worst <= 1e-9 && secs < 10.0,
          "lambda/matching residuals: " + detail + fmt(secs) + " s"};
}

// Trajectories kept for the nullity check.
std::vector<Trajectory> g_pendulum_paths;

// 3. Plant under the matching law against the free target.
Outcome closed_loop_equivalence() {
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  std::mt19937_64 rng(303);
  const State s0 = perturbation(rng, 3, 0.05);
  const Trajectory plant = simulate_closed_loop(fx.system, fx.target, s0, {2.0, 1e-4, 100, 1e6});
  const Trajectory target = simulate_target(fx.target, s0, {2.0, 1e-4, 100, 1e6});
  const double dev = max_state_deviation(plant, target);
  g_pendulum_paths.push_back(plant);

  // Halving dt: the plant and target coincide, so the error is measured against a fine target path
  // sampled on the coarse grid.
  const Trajectory ref = simulate_target(fx.target, s0, {2.0, 1e-4, 400, 1e6});
  const Trajectory c1 = simulate_closed_loop(fx.system, fx.target, s0, {2.0, 0.04, 1, 1e6});
  const Trajectory c2 = simulate_closed_loop(fx.system, fx.target, s0, {2.0, 0.02, 2, 1e6});
  const double e1 = max_state_deviation(c1, ref);
  const double e2 = max_state_deviation(c2, ref);
  const double ratio = e1 / e2;
  g_pendulum_paths.push_back(c1);
  g_pendulum_paths.push_back(c2);
  const bool aligned = c1.size() == ref.size() && c2.size() == ref.size();
  return {dev <= 1e-6 && ratio >= 12.0 && aligned,
          "deviation " + fmt(dev) + " (T = 2, dt = 1e-4); error " + fmt(e1) + " -> " + fmt(e2) + " at dt 0.04 -> 0.02, ratio " +
              fmt(ratio)};
}

// 4. Unactuated inputs vanish.
Outcome nullity() {
  const PendulumFixture fx = pendulum_fixture(curved_pendulum());
  std::mt19937_64 rng(404);
  for (int i = 0; i < 5; ++i) {
    g_pendulum_paths.push_back(simulate_closed_loop(fx.system, fx.target, perturbation(rng, 3, 0.2), {5.0, 1e-3, 10, 1e6}));
  }
  double u1 = 0.0;
  std::size_t nodes = 0;
  for (const Trajectory& t : g_pendulum_paths) {
    for (const Vec& u : t.controls) u1 = std::max(u1, std::abs(u(0)));
    nodes += t.size();
  }
  double basic = 0.0;
  for (const std::string& name : fixture_names()) {
    const FixtureBundle b = make_fixture(name, "");
    for (int i = 0; i < 100; ++i) {
      const State s(sample_domain(b, rng), uniform(rng, b.system.n, -1.0, 1.0));
      basic = std::max(basic, control_law(b.system, b.basic_target, s).norm());
    }
  }
  return {u1 <= 1e-9 && basic <= 1e-12,
          "max |u1| " + fmt(u1) + " over " + std::to_string(nodes) + " pendulum nodes; basic-target max |u| " + fmt(basic)};
}

// 5. Local asymptotic stability with the stated parameter set.
Outcome stability() {
  const PendulumParams p = PendulumParams::stability_set();
  const StabilityVerdict v = stability_conditions(p);
  const PendulumFixture fx = pendulum_fixture(p);
  const Linearization lin = linearize_target(fx.target, Vec::Zero(3));
  const double slowest = lin.real_parts(0);

  // The plant metric is singular at a = 1; the matched closed loop equals the target system, which is
  // what is simulated here.
  const double ref = fx.target.vhat(Vec::Zero(3));
  double worst_ratio = 0.0, worst_increase = -1e300;
  for (int axis = 0; axis < 6; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Vec d = Vec::Zero(6);
      d(axis) = 0.1 * sign;
      const State s0(d.head(3), d.tail(3));
      const Trajectory tr = simulate_target(fx.target, s0, {60.0, 1e-3, 1, 1e6});
      const LyapunovAudit audit = lyapunov_audit(fx.target, tr, ref);
      double end = audit.hhat.back();
      for (double h : audit.hhat) end = std::min(end, h);
      worst_ratio = std::max(worst_ratio, end / audit.hhat.front());
      worst_increase = std::max(worst_increase, audit.max_increase);
    }
  }

  // Same parameters on a plant with a = 0.9, for reference.
  PendulumParams q = p;
  q.a = 0.9;
  const PendulumFixture plant = pendulum_fixture(q);
  const double plant_slowest = linearize_closed_loop(plant.system, plant.target, Vec::Zero(3)).real_parts(0);

  const bool spectrum_ok = slowest < -1e-4 && plant_slowest < -1e-4;
  const bool decay_ok = worst_ratio < 1e-3;
  const bool monotone_ok = worst_increase <= 1e-6;
  std::string detail = std::string("conditions ") + (v.pass ? "all hold" : "violated") + " (" +
                       std::to_string(v.conditions.size()) + "); slowest real part " + fmt(slowest) +
                       " (plant at a = 0.9: " + fmt(plant_slowest) + "); min Hhat(t)/Hhat(0) by T = 60 worst " +
                       fmt(worst_ratio) + " (need < 1e-3); max Hhat step increase " + fmt(worst_increase);
  if (!decay_ok) detail += "; decay clause not met: slowest mode too slow for T = 60";
  return {v.pass && spectrum_ok && decay_ok && monotone_ok, detail};
}

// 6. dĤ/dt = −Ĉ_j ẋ^j, and energy conservation when Ĉ = 0.
Outcome energy_identity() {
  const PendulumParams p = curved_pendulum();
  const PendulumFixture fx = pendulum_fixture(p);
  std::mt19937_64 rng(606);
  const State s0 = perturbation(rng, 3, 0.2);
  const Trajectory tr = simulate_closed_loop(fx.system, fx.target, s0, {2.0, 1e-4, 1, 1e6});
  const LyapunovAudit a = lyapunov_audit(fx.target, tr, fx.target.vhat(Vec::Zero(3)));

  PendulumParams c = p;
  c.r = ScalarFunction::constant(0.0);
  const PendulumFixture cons = pendulum_fixture(c);
  const State small(0.25 * s0.x, 0.25 * s0.xdot);
  const Trajectory tc = simulate_closed_loop(cons.system, cons.target, small, {10.0, 1e-3, 10, 1e6});
  const LyapunovAudit ac = lyapunov_audit(cons.target, tc);
  double drift = 0.0;
  for (double h : ac.hhat) drift = std::max(drift, std::abs(h - ac.hhat.front()));
  return {a.max_defect <= 1e-6 && drift <= 1e-8,
          "max |dHhat/dt + Chat.xdot| " + fmt(a.max_defect) + "; drift with Chat = 0 over T = 10: " + fmt(drift)};
}

// 7. Kernel dimensions and the rank drop.
Outcome kernel_facts() {
  std::mt19937_64 rng(707);
  const FixtureBundle pend = make_fixture("pendulum", "");
  const FixtureBundle see = make_fixture("seesaw", "");
  bool ok = true;
  int pend_min = 99, pend_max = -1, see_min = 99, see_max = -1;
  for (int i = 0; i < 20; ++i) {
    const int kp = static_cast<int>(assemble_compatibility(pend.system, sample_domain(pend, rng)).kernel.cols());
    const int ks = static_cast<int>(assemble_compatibility(see.system, sample_domain(see, rng)).kernel.cols());
    pend_min = std::min(pend_min, kp);
    pend_max = std::max(pend_max, kp);
    see_min = std::min(see_min, ks);
    see_max = std::max(see_max, ks);
  }
  ok = ok && pend_min == 2 && pend_max == 2 && see_min == 1 && see_max == 1;

  std::vector<Vec> ring;
  for (int i = 0; i < 12; ++i) {
    Vec d = uniform(rng, 3, -1.0, 1.0);
    ring.push_back(0.1 * d / d.norm());
  }
  const RankVerdict rv = rank_condition(see.system, Vec::Zero(3), ring);
  ok = ok && rv.rank_x0 == 0 && rv.max_sample_rank == 2 && rv.drop;

  MechanicalSystem flat;
  flat.n = 3;
  flat.m = 1;
  flat.metric = constant_matrix_field((Mat(3, 3) << 2, 0.5, 0, 0.5, 1, 0, 0, 0, 1).finished());
  const int flat_rank = assemble_compatibility(flat, uniform(rng, 3, -1.0, 1.0)).rank;
  ok = ok && flat_rank == 0;

  return {ok, "pendulum ker dim " + std::to_string(pend_min) + ".." + std::to_string(pend_max) + ", seesaw " +
                  std::to_string(see_min) + ".." + std::to_string(see_max) + "; seesaw rank at 0: " +
                  std::to_string(rv.rank_x0) + " vs " + std::to_string(rv.max_sample_rank) + " nearby (" +
                  (rv.drop ? "drop" : "no drop") + "); constant metric rank " + std::to_string(flat_rank)};
}

// 8. Transport along characteristics reproduces the closed form.
Outcome characteristics() {
  const PendulumFixture fx = pendulum_fixture(curved_pendulum());
  CharacteristicSpec spec;
  spec.axis = 0;
  spec.anchor = Vec::Zero(3);
  spec.half_widths = {0.4, 0.4};
  spec.counts = {7, 7};
  spec.t_min = -1.0;
  spec.t_max = 1.0;
  spec.dt = 1e-3;
  spec.stride = 10;
  const TargetSystem t = fx.target;
  const InitialData init{[t](const Vec& x) { return t.ghat(x); }, [t](const Vec& x) { return t.vhat(x); }};
  const CharacteristicGrid grid = solve_ghat_vhat(fx.system, fx.lambda, init, spec);
  double dev = 0.0, x1max = 0.0;
  for (int s = 0; s < grid.seed_count(); ++s) {
    for (int q = 0; q < grid.time_count(); ++q) {
      const Vec x = grid.position(s, q);
      x1max = std::max(x1max, std::abs(x(0)));
      const Mat d = grid.ghat(s, q) - t.ghat(x);
      dev = std::max({dev, std::abs(d(1, 1)), std::abs(d(1, 2)), std::abs(d(2, 2)),
                      std::abs(grid.vhat(s, q) - t.vhat(x))});
    }
  }
  const XiReport xi = xi_propagation_check(fx.system, fx.lambda, grid);
  return {dev <= 1e-5 && xi.max_abs <= 1e-7 && x1max >= 1.0 - 1e-12,
          "block and Vhat deviation " + fmt(dev) + " over |x1| <= " + fmt(x1max) + "; max |Xi| " + fmt(xi.max_abs)};
}

// 9. Orthogonality on both roller-coaster cases, closure on the pendulum kernel fields.
Outcome orthogonality() {
  std::mt19937_64 rng(909);
  const double b = 0.5;
  const RollerCoasterCurve circle = RollerCoasterCurve::vertical_circle(2.0);
  const Profile1D nu1 = Profile1D::polynomial((Vec(4) << 1.0, 0.3, 0.2, -0.1).finished());
  double r1 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec x = uniform(rng, 2, -0.5, 0.5);
    r1 = std::max(r1, std::abs(rollercoaster_orthogonality(circle, b, rollercoaster_case1_nu(nu1, x), x)));
  }
  double r2 = 0.0;
  const Profile1D nu2 = Profile1D::cosine(1.0, 0.3, 0.8, 0.2);
  for (const RollerCoasterCurve& c : {RollerCoasterCurve::helix(1.1, 0.7),
                                      RollerCoasterCurve::incline(1.1, RollerCoasterCurve::Case::ConstantIncline)}) {
    for (int i = 0; i < 100; ++i) {
      Vec x = uniform(rng, 2, -1.0, 1.0);
      x(0) = 0.2 + 0.55 * (x(0) + 1.0);
      r2 = std::max(r2, std::abs(rollercoaster_orthogonality(c, b, rollercoaster_case2_nu(c, b, nu2, x), x)));
    }
  }
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  const Vec ref = (Vec(3) << 0.2, 0.1, -0.1).finished();
  std::vector<Vec> samples;
  for (int i = 0; i < 8; ++i) samples.push_back(ref + uniform(rng, 3, -0.15, 0.15));
  const ClosureResult cr = involutive_closure(kernel_fields(fx.system, ref), samples, 4);
  return {r1 <= 1e-9 && r2 <= 1e-9 && cr.closed && cr.depth <= 2,
          "case 1 residual " + fmt(r1) + ", case 2 residual " + fmt(r2) + "; closure " +
              (cr.closed ? "closed" : "open") + " at depth " + std::to_string(cr.depth) + ", span " +
              std::to_string(cr.span_dimension)};
}

// 10. Only basic solutions for the double pendulum.
Outcome rigidity() {
  std::mt19937_64 rng(1010);
  int points = 0, bad = 0;
  double basic_worst = 0.0, lam_worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const DoublePendulumParams p = random_double_pendulum_params(rng);
    const MechanicalSystem sys = double_pendulum_system(p);
    std::vector<Vec> pts;
    while (pts.size() < 20) {
      const Vec x = uniform(rng, 3, -0.6, 0.6);
      bool generic = true;
      for (int i = 0; i < 3; ++i) {
        for (int k = i + 1; k < 3; ++k) generic = generic && std::abs(std::sin(x(i) - x(k))) > 0.05;
      }
      if (generic) pts.push_back(x);
    }
    for (const RigidityPoint& r : rigidity_probe(sys, pts)) {
      ++points;
      if (r.matching_dimension != 1) ++bad;
      basic_worst = std::max(basic_worst, r.basic_residual);
    }
    const LambdaField lam = double_pendulum_basic_lambda(1.0 / p.m(0, 0));
    for (const Vec& x : pts) lam_worst = std::max(lam_worst, lambda_residual(sys, lam, x).max_abs);
  }
  return {bad == 0 && lam_worst <= 1e-9 && basic_worst <= 1e-9,
          std::to_string(points - bad) + "/" + std::to_string(points) +
              " points with solution dimension 1 (3 matrices); basic family residual " + fmt(lam_worst) +
              ", basic jet residual " + fmt(basic_worst)};
}

// 11. Matching-law germ equals a prescribed linear law.
Outcome germ() {
  const FixtureBundle fx = make_fixture("rollercoaster", "");
  LinearGains g;
  g.v = fx.system.potential.gradient(fx.equilibrium);
  g.k = (Mat(2, 2) << 0.0, 0.0, 1.5, -2.0).finished();
  g.d = (Mat(2, 2) << 0.0, 0.0, 0.3, -1.0).finished();
  const TargetSystem t = germ_target(fx.system, fx.equilibrium, g);
  const GermDefect d = germ_check(fx.system, t, fx.equilibrium, g);
  return {d.max() <= 1e-6, "defect offset " + fmt(d.offset) + ", K " + fmt(d.k) + ", D " + fmt(d.d)};
}

int run_cli(const std::string& args) {
#ifdef MATCHCTL_PATH
  const std::string cmd = std::string(MATCHCTL_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
  (void)args;
  return -1;
#endif
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 12. Identical config and seed give identical bytes.
Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "matching-acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  struct Case {
    std::string command, config;
  };
  const std::vector<Case> cases = {
      {"simulate", R"({"fixture": "pendulum", "options": {"horizon": 2.0}})"},
      {"verify", R"({"fixture": "seesaw", "options": {"samples": 50}})"},
      {"synthesize", R"({"fixture": "pendulum", "options": {"target": "characteristics"}})"},
      {"rank-scan", R"({"fixture": "seesaw"})"},
  };
  int files = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const fs::path cfg = root / ("config" + std::to_string(i) + ".json");
    std::ofstream(cfg) << cases[i].config;
    for (const char* run : {"a", "b"}) {
      const fs::path out = root / (std::to_string(i) + run);
      const int code = run_cli(cases[i].command + " --config " + cfg.string() + " --out " + out.string() + " --seed 42");
      if (code != 0) return {false, cases[i].command + " exited with " + std::to_string(code)};
    }
    for (const auto& e : fs::directory_iterator(root / (std::to_string(i) + "a"))) {
      const fs::path other = root / (std::to_string(i) + "b") / e.path().filename();
      if (!fs::exists(other) || slurp(e.path()) != slurp(other)) {
        return {false, cases[i].command + ": " + e.path().filename().string() + " differs"};
      }
      ++files;
    }
  }
  return {files > 0, std::to_string(files) + " output files byte-identical across repeated runs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form reproduction", closed_forms},
      {"matching residual suite", residual_suite},
      {"closed-loop equivalence", closed_loop_equivalence},
      {"unactuated nullity", nullity},
      {"stability", stability},
      {"energy-dissipation identity", energy_identity},
      {"kernel and rank facts", kernel_facts},
      {"characteristics vs closed form", characteristics},
      {"orthogonality and involutivity", orthogonality},
      {"rigidity", rigidity},
      {"germ identity", germ},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
