#pragma once

#include "matching/matching.hpp"

#include <random>

namespace matching {

/// Double pendulum on a wheel: g_ij = m_ij cos(x^i − x^j), V = Σ a_i cos x^i.
/// Coordinates 1, 2 are the pendulum links (unactuated), 3 is the wheel.
struct DoublePendulumParams {
  Mat m = (Mat(3, 3) << 2.0, 1.0, 0.5, 1.0, 2.0, 1.0, 0.5, 1.0, 3.0).finished();
  Vec a = Vec::Ones(3);

  /// Throws DomainError unless m is symmetric with positive entries and positive definite, and a > 0.
  void validate() const;
};

MechanicalSystem double_pendulum_system(const DoublePendulumParams& p);

/// The terminal family λ₁¹ = λ₂² = κ, all other entries zero (κ = ν₁₁/m₁₁).
LambdaField double_pendulum_basic_lambda(double kappa);

/// Symmetric m with entries in [lo, hi], diagonally dominant so that g is positive definite near 0.
DoublePendulumParams random_double_pendulum_params(std::mt19937_64& rng);

}  // namespace matching
