#pragma once

#include "matching/fixtures/catalog.hpp"
#include "matching/matching.hpp"

namespace matching {

/// Pendulum cart on a seesaw; the seesaw angle x¹ is unactuated, cart x³ and pendulum x² are actuated.
///   g = [[b + (x³)², a x³ sin(x¹−x²), 0], [·, 1, −a cos(x¹−x²)], [0, ·, 1]],  V = x³ sin x² + a cos x¹.
MechanicalSystem seesaw_system(double a, double b);

/// λ from a ν(x¹, x³) given as a function of the full configuration. Throws IncompatibleNuError if
/// ∂₂ν ≠ 0 and DomainError within 1e-6 of sin(x¹ − x²) = 0 or x³ = 0.
LambdaField seesaw_lambda_field(double a, double b, const ScalarFunction& nu);
Vec seesaw_lambda(double a, double b, const ScalarFunction& nu, const Vec& x);

}  // namespace matching
