#pragma once

#include "matching/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace matching {

/// Result summary of one CLI run, serialized as JSON with keys in insertion order.
struct MatchingReport {
  struct RankRow {
    Vec x;
    int rank = 0;
    int kernel_dim = 0;
  };

  std::string command;
  std::string fixture;
  std::string params;  ///< canonical JSON of the resolved parameter block
  std::optional<std::uint64_t> seed;
  bool pass = true;
  std::string failure;  ///< worst offender when pass is false
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, bool>> verdicts;
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<RankRow> rank_table;

  void metric(const std::string& key, double v) { metrics.emplace_back(key, v); }
  void verdict(const std::string& key, bool v) { verdicts.emplace_back(key, v); }
  void note(const std::string& key, const std::string& v) { notes.emplace_back(key, v); }

  std::string to_json() const;
};

}  // namespace matching
