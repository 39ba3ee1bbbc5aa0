#pragma once

#include "matching/fixtures/catalog.hpp"
#include "matching/fixtures/double_pendulum.hpp"
#include "matching/fixtures/pendulum.hpp"
#include "matching/fixtures/rollercoaster.hpp"
#include "matching/matching.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace matching {

/// A fixture resolved from a name and a parameter block.
struct FixtureBundle {
  std::string name;
  MechanicalSystem system;
  LambdaField lambda;                   ///< the stated closed-form λ
  std::optional<TargetSystem> target;   ///< closed-form target when the fixture has one
  TargetSystem basic_target;            ///< λ = κδ target (κ from the block, default 1)
  double kappa = 1.0;
  Vec equilibrium;
  Vec domain_lo;
  Vec domain_hi;
  std::function<bool(const Vec&)> admissible;  ///< excludes singular loci inside the box
  std::string resolved;                        ///< the effective parameter block, canonical JSON
};

std::vector<std::string> fixture_names();

/// Builds a fixture from `name` and a JSON parameter block (empty string means defaults).
/// Unknown keys, wrong types and unknown names raise ConfigError naming `path`.
FixtureBundle make_fixture(const std::string& name, const std::string& params_json,
                           const std::string& path = "fixture");

/// Rejection-samples an admissible point from the domain box.
Vec sample_domain(const FixtureBundle& fx, std::mt19937_64& rng);

/// Parses catalog entries: a bare number means a constant.
ScalarFunction parse_scalar_function(const std::string& json, const std::string& path);
Profile1D parse_profile(const std::string& json, const std::string& path);

}  // namespace matching
