#include "matching/fixtures/registry.hpp"

#include "matching/errors.hpp"
#include "matching/fixtures/seesaw.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace matching {

using json = nlohmann::ordered_json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError(path + "." + it.key() + ": unknown key");
  }
}

double number(const json& j, const std::string& key, double def, const std::string& path) {
  if (!j.contains(key)) return def;
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path + "." + key + ": must be finite");
  return d;
}

Vec vector_of(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path + ": expected an array of numbers");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path + "[" + std::to_string(i) + "]: expected a number");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

Mat matrix_of(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path + ": expected a non-empty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array()) throw ConfigError(path + "[" + std::to_string(i) + "]: expected an array");
    if (i == 0) cols = v[i].size();
    if (v[i].size() != cols) throw ConfigError(path + "[" + std::to_string(i) + "]: ragged matrix");
  }
  Mat out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    out.row(static_cast<Eigen::Index>(i)) = vector_of(v[i], path + "[" + std::to_string(i) + "]").transpose();
  }
  return out;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json mat_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
  return a;
}

ScalarFunction scalar_function(const json& j, const std::string& path) {
  if (j.is_number()) return ScalarFunction::constant(j.get<double>());
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError(path + ": expected a number or an object with a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    check_keys(j, {"kind", "c"}, path);
    return ScalarFunction::constant(number(j, "c", 0.0, path));
  }
  if (kind == "quadratic") {
    check_keys(j, {"kind", "c", "linear", "quadratic"}, path);
    Vec l = j.contains("linear") ? vector_of(j.at("linear"), path + ".linear") : Vec();
    Mat q = j.contains("quadratic") ? matrix_of(j.at("quadratic"), path + ".quadratic") : Mat();
    return ScalarFunction::quadratic_form(number(j, "c", 0.0, path), l, q);
  }
  if (kind == "cosine") {
    check_keys(j, {"kind", "c", "amp", "freq", "phase"}, path);
    Vec k = j.contains("freq") ? vector_of(j.at("freq"), path + ".freq") : Vec();
    return ScalarFunction::cosine(number(j, "c", 0.0, path), number(j, "amp", 0.0, path), k,
                                  number(j, "phase", 0.0, path));
  }
  throw ConfigError(path + ".kind: unknown function kind '" + kind + "' (constant | quadratic | cosine)");
}

json scalar_function_json(const ScalarFunction& f) {
  json j;
  j["kind"] = f.kind_name();
  j["c"] = f.c;
  if (f.kind == ScalarFunction::Kind::Quadratic) {
    j["linear"] = vec_json(f.linear);
    j["quadratic"] = f.quadratic.size() ? mat_json(f.quadratic) : json::array();
  } else if (f.kind == ScalarFunction::Kind::Cosine) {
    j["amp"] = f.amp;
    j["freq"] = vec_json(f.freq);
    j["phase"] = f.phase;
  }
  return j;
}

Profile1D profile(const json& j, const std::string& path) {
  if (j.is_number()) return Profile1D::polynomial(Vec::Constant(1, j.get<double>()));
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError(path + ": expected a number or an object with a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "polynomial") {
    check_keys(j, {"kind", "coeffs"}, path);
    if (!j.contains("coeffs")) throw ConfigError(path + ".coeffs: missing");
    return Profile1D::polynomial(vector_of(j.at("coeffs"), path + ".coeffs"));
  }
  if (kind == "cosine") {
    check_keys(j, {"kind", "c", "amp", "freq", "phase"}, path);
    return Profile1D::cosine(number(j, "c", 0.0, path), number(j, "amp", 0.0, path), number(j, "freq", 1.0, path),
                             number(j, "phase", 0.0, path));
  }
  throw ConfigError(path + ".kind: unknown profile kind '" + kind + "' (polynomial | cosine)");
}

json profile_json(const Profile1D& p) {
  json j;
  j["kind"] = p.kind_name();
  if (p.kind == Profile1D::Kind::Polynomial) {
    j["coeffs"] = vec_json(p.coeffs);
  } else {
    j["c"] = p.c;
    j["amp"] = p.amp;
    j["freq"] = p.freq;
    j["phase"] = p.phase;
  }
  return j;
}

/// Reads an optional "domain": {"lo": [...], "hi": [...]} override.
void domain_override(const json& j, FixtureBundle& fx, const std::string& path) {
  if (!j.contains("domain")) return;
  const auto& d = j.at("domain");
  const std::string p = path + ".domain";
  check_keys(d, {"lo", "hi"}, p);
  if (d.contains("lo")) fx.domain_lo = vector_of(d.at("lo"), p + ".lo");
  if (d.contains("hi")) fx.domain_hi = vector_of(d.at("hi"), p + ".hi");
  const auto n = fx.system.n;
  if (fx.domain_lo.size() != n || fx.domain_hi.size() != n) {
    throw ConfigError(p + ": lo and hi must have " + std::to_string(n) + " entries");
  }
  for (int i = 0; i < n; ++i) {
    if (!(fx.domain_lo(i) < fx.domain_hi(i))) throw ConfigError(p + ": lo must be below hi");
  }
}

std::vector<Vec> box_corners_and_center(const FixtureBundle& fx) {
  std::vector<Vec> pts;
  const int n = fx.system.n;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = (mask >> i) & 1 ? fx.domain_hi(i) : fx.domain_lo(i);
    if (!fx.admissible || fx.admissible(x)) pts.push_back(x);
  }
  const Vec c = 0.5 * (fx.domain_lo + fx.domain_hi);
  if (!fx.admissible || fx.admissible(c)) pts.push_back(c);
  return pts;
}

void attach_basic(FixtureBundle& fx) {
  const Mat zero = Mat::Zero(fx.system.n, fx.system.n);
  fx.basic_target = basic_solution(fx.system, fx.kappa, constant_matrix_field(zero), constant_scalar_field(0.0),
                                   box_corners_and_center(fx))
                        .target;
}

FixtureBundle pendulum_bundle(const json& j, const std::string& path) {
  check_keys(j, {"a", "b", "sigma0", "mu0", "ghat22", "ghat23", "ghat33", "w", "R", "kappa", "domain"}, path);
  PendulumParams p;
  p.a = number(j, "a", p.a, path);
  p.b = number(j, "b", p.b, path);
  p.sigma0 = number(j, "sigma0", p.sigma0, path);
  p.mu0 = number(j, "mu0", p.mu0, path);
  if (!(p.a > 0.0)) throw ConfigError(path + ".a: must be positive");
  if (p.sigma0 == 0.0) throw ConfigError(path + ".sigma0: must be nonzero");
  if (j.contains("ghat22")) p.ghat22 = scalar_function(j.at("ghat22"), path + ".ghat22");
  if (j.contains("ghat23")) p.ghat23 = scalar_function(j.at("ghat23"), path + ".ghat23");
  if (j.contains("ghat33")) p.ghat33 = scalar_function(j.at("ghat33"), path + ".ghat33");
  if (j.contains("w")) p.w = scalar_function(j.at("w"), path + ".w");
  if (j.contains("R")) p.r = scalar_function(j.at("R"), path + ".R");

  FixtureBundle fx;
  fx.name = "pendulum";
  PendulumFixture pf = pendulum_fixture(p);
  fx.system = pf.system;
  fx.lambda = pf.lambda;
  fx.target = pf.target;
  fx.kappa = number(j, "kappa", 1.0, path);
  fx.equilibrium = Vec::Zero(3);
  fx.domain_lo = Vec::Constant(3, -0.4);
  fx.domain_hi = Vec::Constant(3, 0.4);
  domain_override(j, fx, path);
  attach_basic(fx);

  json r;
  r["a"] = p.a;
  r["b"] = p.b;
  r["sigma0"] = p.sigma0;
  r["mu0"] = p.mu0;
  r["ghat22"] = scalar_function_json(p.ghat22);
  r["ghat23"] = scalar_function_json(p.ghat23);
  r["ghat33"] = scalar_function_json(p.ghat33);
  r["w"] = scalar_function_json(p.w);
  r["R"] = scalar_function_json(p.r);
  r["kappa"] = fx.kappa;
  r["domain"] = {{"lo", vec_json(fx.domain_lo)}, {"hi", vec_json(fx.domain_hi)}};
  fx.resolved = r.dump();
  return fx;
}

FixtureBundle seesaw_bundle(const json& j, const std::string& path) {
  check_keys(j, {"a", "b", "nu", "kappa", "domain"}, path);
  const double a = number(j, "a", 0.5, path);
  const double b = number(j, "b", 1.0, path);
  if (!(a > 0.0)) throw ConfigError(path + ".a: must be positive");
  if (!(b > 0.0)) throw ConfigError(path + ".b: must be positive");
  Mat q = Mat::Zero(3, 3);
  q(2, 2) = 0.5;
  Vec l = Vec::Zero(3);
  l(0) = 0.2;
  ScalarFunction nu = ScalarFunction::quadratic_form(1.0, l, q);
  if (j.contains("nu")) nu = scalar_function(j.at("nu"), path + ".nu");
  {
    const Vec probe = (Vec(3) << 0.3, -0.2, 0.5).finished();
    if (std::abs(nu.gradient(probe)(1)) > 1e-12) {
      throw ConfigError(path + ".nu: must not depend on x2 (compatibility requires d nu/dx2 = 0)");
    }
  }

  FixtureBundle fx;
  fx.name = "seesaw";
  fx.system = seesaw_system(a, b);
  fx.lambda = seesaw_lambda_field(a, b, nu);
  fx.kappa = number(j, "kappa", 1.0, path);
  fx.equilibrium = Vec::Zero(3);
  fx.domain_lo = (Vec(3) << 0.3, -0.5, 0.3).finished();
  fx.domain_hi = (Vec(3) << 1.2, 0.0, 1.0).finished();
  domain_override(j, fx, path);
  fx.admissible = [](const Vec& x) { return std::abs(std::sin(x(0) - x(1))) > 0.05 && std::abs(x(2)) > 0.05; };
  attach_basic(fx);

  json r;
  r["a"] = a;
  r["b"] = b;
  r["nu"] = scalar_function_json(nu);
  r["kappa"] = fx.kappa;
  r["domain"] = {{"lo", vec_json(fx.domain_lo)}, {"hi", vec_json(fx.domain_hi)}};
  fx.resolved = r.dump();
  return fx;
}

RollerCoasterCurve curve_of(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError(path + ": expected an object with a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  RollerCoasterCurve::Case tag = RollerCoasterCurve::Case::Planar;
  bool has_tag = false;
  if (j.contains("case")) {
    if (!j.at("case").is_string()) throw ConfigError(path + ".case: expected a string");
    const std::string c = j.at("case").get<std::string>();
    if (c == "planar") {
      tag = RollerCoasterCurve::Case::Planar;
    } else if (c == "constantIncline") {
      tag = RollerCoasterCurve::Case::ConstantIncline;
    } else {
      throw ConfigError(path + ".case: unknown case '" + c + "' (planar | constantIncline)");
    }
    has_tag = true;
  }
  RollerCoasterCurve curve;
  if (kind == "vertical-circle") {
    check_keys(j, {"kind", "radius", "case"}, path);
    const double r = number(j, "radius", 2.0, path);
    if (!(r > 0.0)) throw ConfigError(path + ".radius: must be positive");
    curve = RollerCoasterCurve::vertical_circle(r);
  } else if (kind == "incline") {
    check_keys(j, {"kind", "alpha0", "case"}, path);
    curve = RollerCoasterCurve::incline(number(j, "alpha0", 1.2, path));
  } else if (kind == "helix") {
    check_keys(j, {"kind", "alpha0", "curvature", "case"}, path);
    curve = RollerCoasterCurve::helix(number(j, "alpha0", 1.2, path), number(j, "curvature", 0.5, path));
  } else {
    throw ConfigError(path + ".kind: unknown curve kind '" + kind + "' (vertical-circle | incline | helix)");
  }
  if (has_tag) curve.case_tag = tag;
  return curve;
}

FixtureBundle rollercoaster_bundle(const json& j, const std::string& path) {
  check_keys(j, {"a", "b", "curve", "nu", "kappa", "domain"}, path);
  const double a = number(j, "a", 1.0, path);
  const double b = number(j, "b", 0.5, path);
  if (!(a > 0.0)) throw ConfigError(path + ".a: must be positive");
  if (!(b > 0.0 && b < 1.0)) throw ConfigError(path + ".b: must lie in (0, 1)");
  RollerCoasterCurve curve = RollerCoasterCurve::vertical_circle(2.0);
  if (j.contains("curve")) curve = curve_of(j.at("curve"), path + ".curve");
  Profile1D nu = Profile1D::polynomial((Vec(3) << 1.0, 0.3, 0.2).finished());
  if (j.contains("nu")) nu = profile(j.at("nu"), path + ".nu");

  FixtureBundle fx;
  fx.name = "rollercoaster";
  try {
    fx.system = rollercoaster_system(curve, a, b);
  } catch (const DomainError& e) {
    throw ConfigError(path + ".curve: " + e.what());
  }
  fx.kappa = number(j, "kappa", 1.0, path);
  fx.equilibrium = Vec::Zero(2);
  const bool planar = curve.case_tag == RollerCoasterCurve::Case::Planar;
  if (planar) {
    fx.lambda = rollercoaster_case1_lambda(curve, b, nu);
    fx.domain_lo = (Vec(2) << -0.5, -1.0).finished();
    fx.domain_hi = (Vec(2) << 0.5, 1.0).finished();
    fx.admissible = [curve](const Vec& x) { return std::abs(std::cos(curve.alpha(x(1)) - x(0))) > 0.1; };
  } else {
    if (std::abs(std::sin(curve.alpha0)) < 1e-12) throw ConfigError(path + ".curve.alpha0: sin(alpha0) must be nonzero");
    fx.lambda = rollercoaster_case2_lambda(curve, b, nu);
    fx.domain_lo = (Vec(2) << 0.2, -1.0).finished();
    fx.domain_hi = (Vec(2) << 1.3, 1.0).finished();
    fx.admissible = [](const Vec& x) { return std::abs(std::sin(2.0 * x(0))) > 0.05; };
  }
  domain_override(j, fx, path);
  attach_basic(fx);

  json c;
  c["kind"] = curve.kind_name();
  if (curve.kind == RollerCoasterCurve::Kind::VerticalCircle) {
    c["radius"] = curve.radius;
  } else {
    c["alpha0"] = curve.alpha0;
    if (curve.kind == RollerCoasterCurve::Kind::Helix) c["curvature"] = curve.curvature;
  }
  c["case"] = planar ? "planar" : "constantIncline";
  json r;
  r["a"] = a;
  r["b"] = b;
  r["curve"] = c;
  r["nu"] = profile_json(nu);
  r["kappa"] = fx.kappa;
  r["domain"] = {{"lo", vec_json(fx.domain_lo)}, {"hi", vec_json(fx.domain_hi)}};
  fx.resolved = r.dump();
  return fx;
}

FixtureBundle double_pendulum_bundle(const json& j, const std::string& path) {
  check_keys(j, {"m", "a", "kappa", "domain"}, path);
  DoublePendulumParams p;
  if (j.contains("m")) p.m = matrix_of(j.at("m"), path + ".m");
  if (j.contains("a")) p.a = vector_of(j.at("a"), path + ".a");
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  FixtureBundle fx;
  fx.name = "double-pendulum";
  fx.system = double_pendulum_system(p);
  fx.kappa = number(j, "kappa", 1.0, path);
  fx.lambda = double_pendulum_basic_lambda(fx.kappa);
  fx.equilibrium = Vec::Zero(3);
  fx.domain_lo = Vec::Constant(3, -0.6);
  fx.domain_hi = Vec::Constant(3, 0.6);
  domain_override(j, fx, path);
  fx.admissible = [](const Vec& x) {
    for (int i = 0; i < 3; ++i) {
      for (int k = i + 1; k < 3; ++k) {
        if (std::abs(std::sin(x(i) - x(k))) < 0.05) return false;
      }
    }
    return true;
  };
  attach_basic(fx);

  json r;
  r["m"] = mat_json(p.m);
  r["a"] = vec_json(p.a);
  r["kappa"] = fx.kappa;
  r["domain"] = {{"lo", vec_json(fx.domain_lo)}, {"hi", vec_json(fx.domain_hi)}};
  fx.resolved = r.dump();
  return fx;
}

json parse_block(const std::string& text, const std::string& path) {
  if (text.empty()) return json::object();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> fixture_names() { return {"pendulum", "seesaw", "rollercoaster", "double-pendulum"}; }

FixtureBundle make_fixture(const std::string& name, const std::string& params_json, const std::string& path) {
  const std::string p = path + ".params";
  const json j = parse_block(params_json, p);
  if (!j.is_object()) throw ConfigError(p + ": expected an object");
  try {
    if (name == "pendulum") return pendulum_bundle(j, p);
    if (name == "seesaw") return seesaw_bundle(j, p);
    if (name == "rollercoaster") return rollercoaster_bundle(j, p);
    if (name == "double-pendulum") return double_pendulum_bundle(j, p);
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(p + ": " + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(p + ": " + e.what());
  }
  throw ConfigError(path + ".name: unknown fixture '" + name +
                    "' (pendulum | seesaw | rollercoaster | double-pendulum)");
}

Vec sample_domain(const FixtureBundle& fx, std::mt19937_64& rng) {
  const int n = fx.system.n;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Vec x(n);
    for (int i = 0; i < n; ++i) {
      std::uniform_real_distribution<double> u(fx.domain_lo(i), fx.domain_hi(i));
      x(i) = u(rng);
    }
    if (!fx.admissible || fx.admissible(x)) return x;
  }
  throw DomainError(fx.name + ": no admissible point found in the sampling box");
}

ScalarFunction parse_scalar_function(const std::string& text, const std::string& path) {
  return scalar_function(parse_block(text, path), path);
}

Profile1D parse_profile(const std::string& text, const std::string& path) {
  return profile(parse_block(text, path), path);
}

}  // namespace matching
