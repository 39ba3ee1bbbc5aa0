#pragma once

#include "matching/fields.hpp"
#include "matching/geometry.hpp"

namespace matching {

/// Closed-loop Lagrangian data: ĝ_rj ẍ^j + [ĵk, r] ẋ^j ẋ^k + Ĉ_r + ∂_r V̂ = 0.
struct TargetSystem {
  MatrixField ghat;
  ScalarField vhat;
  DissipationField chat;
};

/// ½ ĝ_ij ẋ^i ẋ^j + V̂.
double target_energy(const TargetSystem& t, const State& s);

/// ẍ of the target system.
Vec target_acceleration(const TargetSystem& t, const State& s);

/// The target viewed as a free mechanical system (used for simulation bookkeeping).
MechanicalSystem as_mechanical_system(const TargetSystem& t, int n, int m);

}  // namespace matching
