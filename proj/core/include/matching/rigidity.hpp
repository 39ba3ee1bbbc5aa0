#pragma once

#include "matching/geometry.hpp"

#include <vector>

namespace matching {

/// One unknown Taylor coefficient of the linearized matching system about λ = δ, ĝ = g.
struct JetUnknown {
  enum class Kind { Lambda, Ghat } kind;
  int i = 0;  ///< Lambda: row a; Ghat: row i
  int j = 0;  ///< Lambda: column i; Ghat: column j (i ≤ j)
  int monomial = 0;
  int degree = 0;
};

/// Linear constraints on the order-p jets of (δλ, δĝ) at a point.
struct JetSystem {
  Mat matrix;
  std::vector<JetUnknown> unknowns;
  int order = 0;
  bool full = true;
};

/// Prolongs, to order p, the λ-equations, ν symmetry and (if `full`) the linearized ĝ-equations
/// and the relation g_a = λ_a ĝ. The metric must expose Taylor jets.
JetSystem assemble_jet_system(const MechanicalSystem& sys, const Vec& x0, int order, bool full = true);

/// Dimension of the projection of the solution space onto the values λ(x0).
int lambda_value_dimension(const JetSystem& js);

/// The jet of the basic-family direction (δλ = δ, δĝ = −g) as a coefficient vector.
Vec basic_direction(const MechanicalSystem& sys, const Vec& x0, const JetSystem& js);

struct RigidityPoint {
  Vec x;
  int matching_dimension = 0;     ///< full linearized matching system
  int lambda_only_dimension = 0;  ///< λ-equations and ν symmetry alone
  double basic_residual = 0.0;    ///< |M u| for the basic direction u (full system)
  double min_sine = 0.0;          ///< min |sin(x^i − x^j)|, reported for locus proximity
};

std::vector<RigidityPoint> rigidity_probe(const MechanicalSystem& sys, const std::vector<Vec>& points,
                                          int order = 4);

}  // namespace matching
