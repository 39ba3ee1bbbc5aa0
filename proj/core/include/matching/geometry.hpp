#pragma once

#include "matching/fields.hpp"
#include "matching/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace matching {

/// Lagrangian system g_rj ẍ^j + [jk, r] ẋ^j ẋ^k + C_r + ∂_r V = u_r.
/// Coordinates 0 .. m-1 are the unactuated ones.
struct MechanicalSystem {
  std::string name;
  int n = 0;
  int m = 0;
  MatrixField metric;
  ScalarField potential;
  DissipationField dissipation;
  std::map<std::string, double> params;

  /// Throws ConfigError on inconsistent dimensions or missing fields.
  void validate() const;
};

/// Christoffel symbols of the first kind, [i j, k].
class Christoffel {
 public:
  Christoffel() = default;
  explicit Christoffel(int n) : n_(n), v_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int n() const { return n_; }
  double operator()(int i, int j, int k) const { return v_[(i * n_ + j) * n_ + k]; }
  double& at(int i, int j, int k) { return v_[(i * n_ + j) * n_ + k]; }

  /// q_r = [j k, r] v^j v^k.
  Vec contract(const Vec& v) const;

 private:
  int n_ = 0;
  std::vector<double> v_;
};

/// [i j, k] = ½(∂_i g_jk + ∂_j g_ik − ∂_k g_ij) from a metric evaluation.
Christoffel christoffel_first(const MatrixEval& g);
Christoffel christoffel_first(const MechanicalSystem& sys, const Vec& x);

/// Solves the equations of motion for ẍ.
Vec acceleration(const MechanicalSystem& sys, const State& s, const Vec& u);

/// Left side of the equations of motion minus u, for a given ẍ.
Vec motion_residual(const MechanicalSystem& sys, const State& s, const Vec& xddot, const Vec& u);

/// ½ ẋᵀ g(x) ẋ + V(x).
double energy(const MechanicalSystem& sys, const State& s);

/// Coordinates x = diag(scales) x̃. Returns the system expressed in x̃.
MechanicalSystem rescale_coordinates(const MechanicalSystem& sys, const Vec& scales);

/// Throws DomainError when `x` has the wrong length or non-finite entries.
void validate_configuration(const MechanicalSystem& sys, const Vec& x);

}  // namespace matching
