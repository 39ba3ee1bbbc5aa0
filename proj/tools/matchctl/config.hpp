#pragma once

#include "matching/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace matchctl {

using json = nlohmann::ordered_json;

inline const std::vector<std::string> kCommands = {"verify", "synthesize", "simulate", "rank-scan", "rigidity", "sweep"};

bool needs_seed(const std::string& command);

/// One run: a fixture with its parameter block, a command and its options.
struct RunConfig {
  std::string command;
  std::string fixture;
  std::string params;  ///< JSON text of the fixture parameter block
  json options = json::object();
  std::optional<std::uint64_t> seed;
  std::string path;  ///< location prefix for error messages
};

/// Reads and validates the config file for `command`. Sweep configs list their runs under "runs".
std::vector<RunConfig> load_config(const std::string& file, const std::string& command,
                                   std::optional<std::uint64_t> cli_seed);

/// Typed access to run options; every read key is recorded so leftovers can be rejected.
class Options {
 public:
  Options(const RunConfig& cfg);

  double number(const std::string& key, double def);
  double positive(const std::string& key, double def);
  int integer(const std::string& key, int def, int min_value);
  std::optional<int> optional_integer(const std::string& key);
  std::string choice(const std::string& key, const std::string& def, const std::set<std::string>& allowed);
  std::optional<matching::Vec> vector(const std::string& key);
  std::optional<matching::Mat> matrix(const std::string& key);
  std::optional<json> object(const std::string& key);
  std::string where(const std::string& key) const { return path_ + ".options." + key; }

  /// Throws ConfigError for any key not read so far.
  void finish() const;

 private:
  const json& opts_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace matchctl
