#include "matching/report.hpp"

#include "matching/csv.hpp"

#include <json.hpp>

#include <cmath>

namespace matching {

using json = nlohmann::ordered_json;

namespace {

// Non-finite values have no JSON number form.
json num(double v) {
  if (!std::isfinite(v)) return json(format_double(v));
  return json(v == 0.0 ? 0.0 : v);
}

}  // namespace

std::string MatchingReport::to_json() const {
  json j;
  j["command"] = command;
  j["fixture"] = fixture;
  j["params"] = params.empty() ? json::object() : json::parse(params);
  if (seed) {
    j["seed"] = *seed;
  } else {
    j["seed"] = nullptr;
  }
  j["pass"] = pass;
  if (!failure.empty()) j["failure"] = failure;
  json m = json::object();
  for (const auto& [k, v] : metrics) m[k] = num(v);
  j["metrics"] = m;
  json vd = json::object();
  for (const auto& [k, v] : verdicts) vd[k] = v;
  j["verdicts"] = vd;
  json nt = json::object();
  for (const auto& [k, v] : notes) nt[k] = v;
  j["notes"] = nt;
  if (!rank_table.empty()) {
    json rows = json::array();
    for (const auto& r : rank_table) {
      json x = json::array();
      for (Eigen::Index i = 0; i < r.x.size(); ++i) x.push_back(num(r.x(i)));
      rows.push_back({{"x", x}, {"rank", r.rank}, {"kernel_dim", r.kernel_dim}});
    }
    j["rank_table"] = rows;
  }
  return j.dump(2) + "\n";
}

}  // namespace matching
