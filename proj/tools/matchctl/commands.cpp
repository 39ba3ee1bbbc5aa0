#include "commands.hpp"

#include "matching/characteristics.hpp"
#include "matching/csv.hpp"
#include "matching/errors.hpp"
#include "matching/fixtures/registry.hpp"
#include "matching/report.hpp"
#include "matching/rigidity.hpp"
#include "matching/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

namespace matchctl {

using namespace matching;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string point(const Vec& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? ", " : "") + format_double(x(i));
  return s + ")";
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::ofstream f(fs::path(dir) / name, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + (fs::path(dir) / name).string());
  return f;
}

void write_report(const std::string& dir, const MatchingReport& r) { open_out(dir, "report.json") << r.to_json(); }

LambdaField perturbed(const LambdaField& lam, double eps) {
  const MatrixField& f = lam.field();
  auto value = [f, eps](const Vec& x) {
    Mat v = f(x);
    v(0, 1) += eps;
    return v;
  };
  auto eval = [f, eps](const Vec& x) {
    MatrixEval e = f.eval(x);
    e.value(0, 1) += eps;
    return e;
  };
  return LambdaField(MatrixField(f.rows(), f.cols(), value, eval));
}

Vec random_velocity(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

struct Context {
  FixtureBundle fx;
  MatchingReport report;
  std::mt19937_64 rng;
};

Context make_context(const RunConfig& cfg) {
  Context c{make_fixture(cfg.fixture, cfg.params, cfg.path.empty() ? "fixture" : cfg.path + ".fixture"), {}, {}};
  c.report.command = cfg.command;
  c.report.fixture = c.fx.name;
  c.report.params = c.fx.resolved;
  c.report.seed = cfg.seed;
  c.rng.seed(cfg.seed.value_or(0));
  return c;
}

const TargetSystem& pick_target(const Context& c, const std::string& kind, const std::string& where) {
  if (kind == "basic") return c.fx.basic_target;
  if (!c.fx.target) throw ConfigError(where + ": fixture '" + c.fx.name + "' has no closed-form target; use \"basic\"");
  return *c.fx.target;
}

int finish(Context& c, const std::string& dir, std::ostream& log) {
  write_report(dir, c.report);
  log << c.report.command << " " << c.report.fixture << ": " << (c.report.pass ? "PASS" : "FAIL");
  if (!c.report.pass) log << " (" << c.report.failure << ")";
  log << "\n";
  return c.report.pass ? kOk : kFailure;
}

int cmd_verify(const RunConfig& cfg, const std::string& dir, std::ostream& log) {
  Options o(cfg);
  const int samples = o.integer("samples", 100, 1);
  const double tol = o.positive("tolerance", 1e-9);
  const double basic_tol = o.positive("basic_tolerance", 1e-12);
  const double eps = o.number("perturb_lambda2", 0.0);
  o.finish();
  Context c = make_context(cfg);
  const MechanicalSystem& sys = c.fx.system;
  const LambdaField lam = eps != 0.0 ? perturbed(c.fx.lambda, eps) : c.fx.lambda;

  double lam_max = 0.0, match_max = 0.0, orth_max = 0.0, sym_max = 0.0, basic_max = 0.0;
  EquationIndex worst{};
  Vec worst_x;
  for (int i = 0; i < samples; ++i) {
    const Vec x = sample_domain(c.fx, c.rng);
    const Vec v = random_velocity(sys.n, c.rng);
    const LambdaResidual lr = lambda_residual(sys, lam, x);
    if (i == 0 || lr.max_abs > lam_max) {
      lam_max = lr.max_abs;
      worst = lr.worst;
      worst_x = x;
    }
    const MatrixEval nu = nu_eval(sys, lam, x);
    sym_max = std::max(sym_max, (nu.value - nu.value.transpose()).cwiseAbs().maxCoeff());
    const Vec orth = nu_orthogonality_residual(sys, nu, x);
    if (orth.size()) orth_max = std::max(orth_max, orth.cwiseAbs().maxCoeff());
    if (c.fx.target) match_max = std::max(match_max, matching_residual(sys, lam, *c.fx.target, State(x, v)).max_abs());
    basic_max = std::max(basic_max, control_law(sys, c.fx.basic_target, State(x, v)).norm());
  }
  c.report.metric("samples", samples);
  c.report.metric("lambda_residual", lam_max);
  c.report.metric("nu_asymmetry", sym_max);
  c.report.metric("orthogonality_residual", orth_max);
  if (c.fx.target) c.report.metric("matching_residual", match_max);
  c.report.metric("basic_control_norm", basic_max);
  c.report.verdict("lambda", lam_max <= tol);
  c.report.verdict("nu_symmetry", sym_max <= tol);
  c.report.verdict("orthogonality", orth_max <= tol);
  if (c.fx.target) c.report.verdict("matching", match_max <= tol);
  c.report.verdict("basic_nullity", basic_max <= basic_tol);
  c.report.note("worst_lambda_equation", "(k,a,b) = (" + std::to_string(worst.k + 1) + "," +
                                             std::to_string(worst.a + 1) + "," + std::to_string(worst.b + 1) +
                                             ") at x = " + point(worst_x));
  for (const auto& [k, v] : c.report.verdicts) c.report.pass = c.report.pass && v;
  if (!c.report.pass) {
    if (lam_max > tol) {
      c.report.failure = "lambda residual " + fmt(lam_max) + " at " + c.report.notes.back().second;
    } else {
      for (const auto& [k, v] : c.report.verdicts) {
        if (!v) {
          c.report.failure = k + " check failed";
          break;
        }
      }
    }
  }
  return finish(c, dir, log);
}

int cmd_synthesize(const RunConfig& cfg, const std::string& dir, std::ostream& log) {
  Options o(cfg);
  const std::string kind = o.choice("target", "", {"closed-form", "basic", "characteristics", "germ"});
  const int samples = o.integer("samples", 100, 1);
  const double tol = o.positive("tolerance", 1e-9);
  const double char_tol = o.positive("characteristics_tolerance", 1e-5);
  const double germ_tol = o.positive("germ_tolerance", 1e-6);
  const auto grid_opts = o.object("grid");
  const auto gains_opts = o.object("gains");
  o.finish();
  Context c = make_context(cfg);
  const MechanicalSystem& sys = c.fx.system;
  const std::string target_kind = kind.empty() ? (c.fx.target ? "closed-form" : "basic") : kind;
  c.report.note("target", target_kind);

  if (target_kind == "characteristics") {
    if (!c.fx.target || sys.m != 1) {
      throw ConfigError(o.where("target") + ": characteristics need a fixture with one unactuated coordinate and "
                                            "a closed-form target for the initial data");
    }
    const TargetSystem target = *c.fx.target;
    const std::string gpath = o.where("grid");
    json g = grid_opts.value_or(json::object());
    const std::set<std::string> keys = {"half_width", "count", "t_min", "t_max", "dt", "stride"};
    for (auto it = g.begin(); it != g.end(); ++it) {
      if (!keys.count(it.key())) throw ConfigError(gpath + "." + it.key() + ": unknown key");
    }
    auto num = [&](const char* k, double d) {
      if (!g.contains(k)) return d;
      if (!g.at(k).is_number()) throw ConfigError(gpath + "." + k + ": expected a number");
      return g.at(k).get<double>();
    };
    CharacteristicSpec spec;
    spec.axis = 0;
    spec.anchor = c.fx.equilibrium;
    const double hw = num("half_width", 0.3);
    const int count = static_cast<int>(num("count", 5));
    if (!(hw > 0.0) || count < 2) throw ConfigError(gpath + ": half_width must be positive and count at least 2");
    spec.half_widths.assign(sys.n - 1, hw);
    spec.counts.assign(sys.n - 1, count);
    spec.t_min = num("t_min", -1.0);
    spec.t_max = num("t_max", 1.0);
    spec.dt = num("dt", 1e-3);
    spec.stride = static_cast<int>(num("stride", 10));
    if (!(spec.dt > 0.0) || spec.stride < 1) throw ConfigError(gpath + ": dt must be positive and stride at least 1");
    InitialData init{[&](const Vec& x) { return target.ghat(x); }, [&](const Vec& x) { return target.vhat(x); }};
    const CharacteristicGrid grid = solve_ghat_vhat(sys, c.fx.lambda, init, spec);
    double gdev = 0.0, vdev = 0.0;
    for (int s = 0; s < grid.seed_count(); ++s) {
      for (int q = 0; q < grid.time_count(); ++q) {
        const Vec x = grid.position(s, q);
        gdev = std::max(gdev, (grid.ghat(s, q) - target.ghat(x)).cwiseAbs().maxCoeff());
        vdev = std::max(vdev, std::abs(grid.vhat(s, q) - target.vhat(x)));
      }
    }
    const TransportResidual tr = transport_residual(sys, c.fx.lambda, grid);
    const XiReport xi = xi_propagation_check(sys, c.fx.lambda, grid);
    auto csv = open_out(dir, "characteristics.csv");
    grid.write_csv(csv);
    c.report.metric("ghat_deviation", gdev);
    c.report.metric("vhat_deviation", vdev);
    c.report.metric("transport_ghat_residual", tr.ghat_max);
    c.report.metric("transport_vhat_residual", tr.vhat_max);
    c.report.metric("xi_max", xi.max_abs);
    c.report.metric("xi_seed_max", xi.seed_max);
    c.report.metric("max_asymmetry", grid.max_asymmetry());
    c.report.verdict("closed_form_agreement", gdev <= char_tol && vdev <= char_tol);
    c.report.verdict("xi_propagation", xi.pass);
    for (std::size_t i = 0; i < grid.warnings().size(); ++i) c.report.note("warning" + std::to_string(i), grid.warnings()[i]);
  } else if (target_kind == "germ") {
    if (sys.n != 2) throw ConfigError(o.where("target") + ": germ synthesis needs a two degree of freedom fixture");
    LinearGains gains;
    gains.v = sys.potential.gradient(c.fx.equilibrium);
    gains.k = Mat::Zero(2, 2);
    gains.k(1, 0) = 1.5;
    gains.k(1, 1) = -2.0;
    gains.d = Mat::Zero(2, 2);
    gains.d(1, 0) = 0.3;
    gains.d(1, 1) = -1.0;
    if (gains_opts) {
      const json& gj = *gains_opts;
      const std::string gpath = o.where("gains");
      for (auto it = gj.begin(); it != gj.end(); ++it) {
        if (it.key() != "k" && it.key() != "d") throw ConfigError(gpath + "." + it.key() + ": unknown key");
      }
      auto mat = [&](const char* key, Mat& out) {
        if (!gj.contains(key)) return;
        const json& m = gj.at(key);
        if (!m.is_array() || m.size() != 2) throw ConfigError(gpath + "." + key + ": expected a 2x2 matrix");
        for (int i = 0; i < 2; ++i) {
          if (!m[i].is_array() || m[i].size() != 2) throw ConfigError(gpath + "." + key + ": expected a 2x2 matrix");
          for (int k = 0; k < 2; ++k) {
            if (!m[i][k].is_number()) throw ConfigError(gpath + "." + key + ": expected numbers");
            out(i, k) = m[i][k].get<double>();
          }
        }
      };
      mat("k", gains.k);
      mat("d", gains.d);
    }
    TargetSystem target;
    try {
      target = germ_target(sys, c.fx.equilibrium, gains);
    } catch (const DomainError& e) {
      throw ConfigError(o.where("gains") + ": " + e.what());
    }
    const GermDefect gd = germ_check(sys, target, c.fx.equilibrium, gains);
    c.report.metric("germ_offset", gd.offset);
    c.report.metric("germ_k", gd.k);
    c.report.metric("germ_d", gd.d);
    c.report.metric("ghat_min_eigenvalue", min_eigenvalue(target.ghat(c.fx.equilibrium)));
    c.report.verdict("germ_identity", gd.max() <= germ_tol);
  } else {
    const TargetSystem& target = pick_target(c, target_kind, o.where("target"));
    double nullity = 0.0, match = 0.0, min_eig = 1e300;
    for (int i = 0; i < samples; ++i) {
      const Vec x = sample_domain(c.fx, c.rng);
      const Vec v = random_velocity(sys.n, c.rng);
      const Vec u = control_law(sys, target, State(x, v));
      nullity = std::max(nullity, u.head(sys.m).cwiseAbs().maxCoeff());
      if (target_kind == "closed-form") {
        match = std::max(match, matching_residual(sys, c.fx.lambda, target, State(x, v)).max_abs());
      }
      min_eig = std::min(min_eig, min_eigenvalue(target.ghat(x)));
    }
    c.report.metric("unactuated_control", nullity);
    if (target_kind == "closed-form") c.report.metric("matching_residual", match);
    c.report.metric("ghat_min_eigenvalue", min_eig);
    c.report.verdict("unactuated_nullity", nullity <= tol);
    if (target_kind == "closed-form") c.report.verdict("matching", match <= tol);
  }
  for (const auto& [k, v] : c.report.verdicts) {
    if (!v && c.report.pass) {
      c.report.pass = false;
      c.report.failure = k + " check failed";
    }
  }
  return finish(c, dir, log);
}

int cmd_simulate(const RunConfig& cfg, const std::string& dir, std::ostream& log) {
  Options o(cfg);
  const std::string kind = o.choice("target", "", {"closed-form", "basic"});
  SimulationOptions sim;
  sim.horizon = o.positive("horizon", 20.0);
  sim.dt = o.positive("dt", 1e-3);
  sim.stride = o.integer("stride", 10, 1);
  sim.bound = o.positive("bound", 1e6);
  const double radius = o.number("perturbation", 0.05);
  const double tol = o.positive("nullity_tolerance", 1e-9);
  o.finish();
  Context c = make_context(cfg);
  const MechanicalSystem& sys = c.fx.system;
  const std::string target_kind = kind.empty() ? (c.fx.target ? "closed-form" : "basic") : kind;
  const TargetSystem& target = pick_target(c, target_kind, o.where("target"));
  c.report.note("target", target_kind);

  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec dirv(sys.n);
  for (int i = 0; i < sys.n; ++i) dirv(i) = gauss(c.rng);
  dirv.normalize();
  const State s0(c.fx.equilibrium + radius * dirv, Vec::Zero(sys.n));
  const double ref = target.vhat(c.fx.equilibrium);

  Trajectory plant, model;
  try {
    plant = simulate_closed_loop(sys, target, s0, sim);
    model = simulate_target(target, s0, sim, &sys);
  } catch (const BlowUpError& e) {
    c.report.pass = false;
    c.report.failure = e.what();
    return finish(c, dir, log);
  }
  {
    auto f = open_out(dir, "closed_loop.csv");
    write_trajectory_csv(f, plant, target, ref);
  }
  {
    auto f = open_out(dir, "target.csv");
    write_trajectory_csv(f, model, target, ref);
  }
  const LyapunovAudit audit = lyapunov_audit(target, plant, ref);
  double nullity = 0.0, unorm = 0.0;
  for (const Vec& u : plant.controls) {
    nullity = std::max(nullity, u.head(sys.m).cwiseAbs().maxCoeff());
    unorm = std::max(unorm, u.norm());
  }
  c.report.metric("initial_hhat", audit.hhat.front());
  c.report.metric("final_hhat", audit.hhat.back());
  c.report.metric("hhat_ratio", audit.hhat.front() != 0.0 ? audit.hhat.back() / audit.hhat.front() : 0.0);
  c.report.metric("max_deviation", max_state_deviation(plant, model));
  c.report.metric("energy_defect", audit.max_defect);
  c.report.metric("max_hhat_increase", audit.max_increase);
  c.report.metric("unactuated_control", nullity);
  c.report.metric("max_control_norm", unorm);
  c.report.verdict("unactuated_nullity", nullity <= tol);
  c.report.pass = nullity <= tol;
  if (!c.report.pass) c.report.failure = "unactuated control " + fmt(nullity) + " exceeds tolerance";
  return finish(c, dir, log);
}

int cmd_rank_scan(const RunConfig& cfg, const std::string& dir, std::ostream& log) {
  Options o(cfg);
  const auto center_opt = o.vector("center");
  const double hw = o.positive("half_width", 0.2);
  const int points = o.integer("points", 5, 2);
  o.finish();
  Context c = make_context(cfg);
  const MechanicalSystem& sys = c.fx.system;
  const Vec center = center_opt.value_or(c.fx.equilibrium);
  if (center.size() != sys.n) throw ConfigError(o.where("center") + ": expected " + std::to_string(sys.n) + " entries");

  std::vector<Vec> grid;
  long total = 1;
  for (int i = 0; i < sys.n; ++i) total *= points;
  for (long idx = 0; idx < total; ++idx) {
    Vec x(sys.n);
    long r = idx;
    for (int i = 0; i < sys.n; ++i) {
      const int k = static_cast<int>(r % points);
      r /= points;
      x(i) = center(i) - hw + 2.0 * hw * k / (points - 1);
    }
    grid.push_back(x);
  }
  auto csv = open_out(dir, "rank_scan.csv");
  for (int i = 0; i < sys.n; ++i) csv << "x" << i + 1 << ",";
  csv << "rank,kernel_dim\n";
  std::vector<Vec> samples;
  int min_rank = 1 << 30, max_rank = 0;
  for (const Vec& x : grid) {
    const CompatibilitySystem cs = assemble_compatibility(sys, x);
    MatchingReport::RankRow row{x, cs.rank, static_cast<int>(cs.kernel.cols())};
    c.report.rank_table.push_back(row);
    for (int i = 0; i < sys.n; ++i) csv << format_double(x(i)) << ",";
    csv << row.rank << "," << row.kernel_dim << "\n";
    if ((x - center).norm() > 1e-12) samples.push_back(x);
    min_rank = std::min(min_rank, cs.rank);
    max_rank = std::max(max_rank, cs.rank);
  }
  const RankVerdict v = rank_condition(sys, center, samples);
  c.report.metric("rank_at_center", v.rank_x0);
  c.report.metric("max_sample_rank", v.max_sample_rank);
  c.report.metric("min_grid_rank", min_rank);
  c.report.metric("max_grid_rank", max_rank);
  c.report.metric("kernel_dim_at_center", assemble_compatibility(sys, center).kernel.cols());
  c.report.verdict("rank_drop", v.drop);
  c.report.note("verdict", v.drop ? "drop" : "no drop");
  log << "rank-scan " << c.fx.name << ": rank " << v.rank_x0 << " at center, " << v.max_sample_rank
      << " nearby -> " << (v.drop ? "drop" : "no drop") << "\n";
  write_report(dir, c.report);
  return kOk;
}

int cmd_rigidity(const RunConfig& cfg, const std::string& dir, std::ostream& log) {
  Options o(cfg);
  const int samples = o.integer("samples", 20, 1);
  const int order = o.integer("order", 4, 1);
  const auto expected = o.optional_integer("expected_dimension");
  o.finish();
  Context c = make_context(cfg);
  std::vector<Vec> pts;
  for (int i = 0; i < samples; ++i) pts.push_back(sample_domain(c.fx, c.rng));
  const std::vector<RigidityPoint> res = rigidity_probe(c.fx.system, pts, order);
  auto csv = open_out(dir, "rigidity.csv");
  for (int i = 0; i < c.fx.system.n; ++i) csv << "x" << i + 1 << ",";
  csv << "matching_dimension,lambda_only_dimension,basic_residual,min_sine\n";
  int lo = 1 << 30, hi = 0;
  double basic = 0.0;
  for (const auto& r : res) {
    for (Eigen::Index i = 0; i < r.x.size(); ++i) csv << format_double(r.x(i)) << ",";
    csv << r.matching_dimension << "," << r.lambda_only_dimension << "," << format_double(r.basic_residual) << ","
        << format_double(r.min_sine) << "\n";
    lo = std::min(lo, r.matching_dimension);
    hi = std::max(hi, r.matching_dimension);
    basic = std::max(basic, r.basic_residual);
    if (r.min_sine < 1e-3) c.report.note("warning", "sample near a singular locus: min |sin(x^i - x^j)| = " + fmt(r.min_sine));
  }
  c.report.metric("order", order);
  c.report.metric("min_dimension", lo);
  c.report.metric("max_dimension", hi);
  c.report.metric("basic_residual", basic);
  c.report.verdict("constant_dimension", lo == hi);
  if (expected) c.report.verdict("expected_dimension", lo == *expected && hi == *expected);
  for (const auto& [k, v] : c.report.verdicts) {
    if (!v && c.report.pass) {
      c.report.pass = false;
      c.report.failure = "dimension range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    }
  }
  return finish(c, dir, log);
}

}  // namespace

int run_command(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
  fs::create_directories(out_dir);
  if (cfg.command == "verify") return cmd_verify(cfg, out_dir, log);
  if (cfg.command == "synthesize") return cmd_synthesize(cfg, out_dir, log);
  if (cfg.command == "simulate") return cmd_simulate(cfg, out_dir, log);
  if (cfg.command == "rank-scan") return cmd_rank_scan(cfg, out_dir, log);
  if (cfg.command == "rigidity") return cmd_rigidity(cfg, out_dir, log);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

int run_sweep(const std::vector<RunConfig>& runs, const std::string& out_dir, std::ostream& log) {
  fs::create_directories(out_dir);
  struct Outcome {
    int code = 0;
    std::string log;
  };
  std::vector<std::future<Outcome>> jobs;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "run-%03zu", i);
    const std::string dir = (fs::path(out_dir) / name).string();
    jobs.push_back(std::async(std::launch::async, [&runs, i, dir] {
      std::ostringstream os;
      Outcome out;
      try {
        out.code = run_command(runs[i], dir, os);
      } catch (const ConfigError& e) {
        os << "config error: " << e.what() << "\n";
        out.code = kConfigError;
      } catch (const std::exception& e) {
        os << "error: " << e.what() << "\n";
        out.code = kFailure;
      }
      out.log = os.str();
      return out;
    }));
  }
  int worst = kOk;
  json summary = json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Outcome o = jobs[i].get();
    log << o.log;
    worst = std::max(worst, o.code);
    char name[32];
    std::snprintf(name, sizeof name, "run-%03zu", i);
    summary.push_back({{"run", name}, {"command", runs[i].command}, {"fixture", runs[i].fixture}, {"exit", o.code}});
  }
  open_out(out_dir, "sweep.json") << summary.dump(2) << "\n";
  return worst;
}

}  // namespace matchctl
