#include "config.hpp"

#include "matching/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace matchctl {

using matching::ConfigError;

bool needs_seed(const std::string& command) { return command != "rank-scan"; }

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError((path.empty() ? "" : path + ".") + it.key() + ": unknown key");
  }
}

RunConfig parse_run(const json& j, const std::string& command, const std::string& path,
                    std::optional<std::uint64_t> seed) {
  check_keys(j, {"command", "fixture", "options"}, path);
  RunConfig cfg;
  cfg.path = path;
  cfg.command = command;
  if (j.contains("command")) {
    if (!j.at("command").is_string()) throw ConfigError(path + ".command: expected a string");
    const std::string c = j.at("command").get<std::string>();
    if (std::find(kCommands.begin(), kCommands.end(), c) == kCommands.end() || c == "sweep") {
      throw ConfigError(path + ".command: unknown command '" + c + "'");
    }
    if (command != "sweep" && c != command) {
      throw ConfigError(path + ".command: config is for '" + c + "' but '" + command + "' was requested");
    }
    cfg.command = c;
  }
  if (cfg.command == "sweep") throw ConfigError(path + ".command: each sweep run needs a command");
  if (!j.contains("fixture")) throw ConfigError(path + ".fixture: missing");
  const json& fx = j.at("fixture");
  const std::string fpath = path.empty() ? "fixture" : path + ".fixture";
  if (fx.is_string()) {
    cfg.fixture = fx.get<std::string>();
  } else {
    check_keys(fx, {"name", "params"}, fpath);
    if (!fx.contains("name") || !fx.at("name").is_string()) throw ConfigError(fpath + ".name: expected a string");
    cfg.fixture = fx.at("name").get<std::string>();
    if (fx.contains("params")) {
      if (!fx.at("params").is_object()) throw ConfigError(fpath + ".params: expected an object");
      cfg.params = fx.at("params").dump();
    }
  }
  if (j.contains("options")) {
    if (!j.at("options").is_object()) throw ConfigError(path + ".options: expected an object");
    cfg.options = j.at("options");
  }
  if (cfg.options.contains("seed")) {
    const auto& s = cfg.options.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError(path + ".options.seed: expected a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (seed) cfg.seed = seed;
  if (needs_seed(cfg.command) && !cfg.seed) {
    throw ConfigError(path + ": command '" + cfg.command + "' samples randomly and needs --seed or options.seed");
  }
  return cfg;
}

}  // namespace

std::vector<RunConfig> load_config(const std::string& file, const std::string& command,
                                   std::optional<std::uint64_t> cli_seed) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(file + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(file + ": top level must be an object");

  if (command != "sweep") {
    if (j.contains("runs")) throw ConfigError("runs: only sweep configs list runs");
    return {parse_run(j, command, "", cli_seed)};
  }

  check_keys(j, {"command", "runs", "options"}, "");
  if (j.contains("command") && j.at("command") != "sweep") throw ConfigError("command: expected 'sweep'");
  std::optional<std::uint64_t> base = cli_seed;
  if (j.contains("options")) {
    check_keys(j.at("options"), {"seed"}, "options");
    if (j.at("options").contains("seed")) {
      if (!j.at("options").at("seed").is_number_unsigned()) throw ConfigError("options.seed: expected a non-negative integer");
      if (!base) base = j.at("options").at("seed").get<std::uint64_t>();
    }
  }
  if (!base) throw ConfigError("sweep needs --seed or options.seed");
  if (!j.contains("runs") || !j.at("runs").is_array() || j.at("runs").empty()) {
    throw ConfigError("runs: expected a non-empty array");
  }
  std::vector<RunConfig> runs;
  const auto& arr = j.at("runs");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "runs[" + std::to_string(i) + "]";
    if (!arr[i].is_object()) throw ConfigError(path + ": expected an object");
    if (!arr[i].contains("command")) throw ConfigError(path + ".command: missing");
    RunConfig cfg = parse_run(arr[i], "sweep", path, *base + i);
    if (arr[i].contains("options") && arr[i].at("options").contains("seed")) {
      cfg.seed = arr[i].at("options").at("seed").get<std::uint64_t>();
    }
    runs.push_back(std::move(cfg));
  }
  return runs;
}

Options::Options(const RunConfig& cfg) : opts_(cfg.options), path_(cfg.path.empty() ? "" : cfg.path) {
  seen_.insert("seed");
  if (path_.empty()) path_ = "config";
}

double Options::number(const std::string& key, double def) {
  seen_.insert(key);
  if (!opts_.contains(key)) return def;
  const auto& v = opts_.at(key);
  if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where(key) + ": must be finite");
  return d;
}

double Options::positive(const std::string& key, double def) {
  const double d = number(key, def);
  if (!(d > 0.0)) throw ConfigError(where(key) + ": must be positive");
  return d;
}

int Options::integer(const std::string& key, int def, int min_value) {
  seen_.insert(key);
  if (!opts_.contains(key)) return def;
  const auto& v = opts_.at(key);
  if (!v.is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
  const auto i = v.get<long long>();
  if (i < min_value || i > 1000000000) {
    throw ConfigError(where(key) + ": must be at least " + std::to_string(min_value));
  }
  return static_cast<int>(i);
}

std::optional<int> Options::optional_integer(const std::string& key) {
  if (!opts_.contains(key)) {
    seen_.insert(key);
    return std::nullopt;
  }
  return integer(key, 0, 0);
}

std::string Options::choice(const std::string& key, const std::string& def, const std::set<std::string>& allowed) {
  seen_.insert(key);
  if (!opts_.contains(key)) return def;
  const auto& v = opts_.at(key);
  if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
  const std::string s = v.get<std::string>();
  if (!allowed.count(s)) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : " | ") + a;
    throw ConfigError(where(key) + ": unknown value '" + s + "' (" + list + ")");
  }
  return s;
}

std::optional<matching::Vec> Options::vector(const std::string& key) {
  seen_.insert(key);
  if (!opts_.contains(key)) return std::nullopt;
  const auto& v = opts_.at(key);
  if (!v.is_array()) throw ConfigError(where(key) + ": expected an array of numbers");
  matching::Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(where(key) + "[" + std::to_string(i) + "]: expected a number");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

std::optional<matching::Mat> Options::matrix(const std::string& key) {
  seen_.insert(key);
  if (!opts_.contains(key)) return std::nullopt;
  const auto& v = opts_.at(key);
  if (!v.is_array() || v.empty() || !v[0].is_array()) throw ConfigError(where(key) + ": expected an array of rows");
  const std::size_t cols = v[0].size();
  matching::Mat out(v.size(), cols);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].size() != cols) throw ConfigError(where(key) + "[" + std::to_string(i) + "]: ragged row");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!v[i][k].is_number()) throw ConfigError(where(key) + "[" + std::to_string(i) + "]: expected numbers");
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v[i][k].get<double>();
    }
  }
  return out;
}

std::optional<json> Options::object(const std::string& key) {
  seen_.insert(key);
  if (!opts_.contains(key)) return std::nullopt;
  if (!opts_.at(key).is_object()) throw ConfigError(where(key) + ": expected an object");
  return opts_.at(key);
}

void Options::finish() const {
  for (auto it = opts_.begin(); it != opts_.end(); ++it) {
    if (!seen_.count(it.key())) throw ConfigError(where(it.key()) + ": unknown key");
  }
}

}  // namespace matchctl
