#pragma once

#include "matching/fields.hpp"
#include "matching/geometry.hpp"
#include "matching/linalg.hpp"
#include "matching/target.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace matching {

/// λ_a^i(x): the m unactuated rows of the transformation λ = g ĝ⁻¹.
class LambdaField {
 public:
  LambdaField() = default;
  explicit LambdaField(MatrixField field) : field_(std::move(field)) {}

  int m() const { return field_.rows(); }
  int n() const { return field_.cols(); }
  Mat operator()(const Vec& x) const { return field_(x); }
  MatrixEval eval(const Vec& x) const { return field_.eval(x); }
  const MatrixField& field() const { return field_; }
  VectorField row(int a) const { return row_field(field_, a); }

 private:
  MatrixField field_;
};

/// Index (k, a, b), a ≤ b, of one λ-equation.
struct EquationIndex {
  int k = 0;
  int a = 0;
  int b = 0;
};

/// Row ordering shared by residuals and the compatibility matrix: k outer, then (a, b) with a ≤ b.
std::vector<EquationIndex> equation_indices(int n, int m);

struct LambdaResidual {
  std::vector<EquationIndex> index;
  Vec values;
  double max_abs = 0.0;
  EquationIndex worst;
};

/// ∂_k(g_ai λ_b^i) − [k a, i] λ_b^i − [k b, i] λ_a^i for all (k, a ≤ b).
LambdaResidual lambda_residual(const MechanicalSystem& sys, const LambdaField& lam, const Vec& x);

/// ν_ab = g_ai λ_b^i (m×m; symmetric for a genuine solution).
Mat nu_matrix(const MechanicalSystem& sys, const LambdaField& lam, const Vec& x);

/// ν together with its first derivatives.
MatrixEval nu_eval(const MechanicalSystem& sys, const LambdaField& lam, const Vec& x);

struct MatchingResidual {
  /// Per unactuated a: left side of the unactuation condition written with g ĝ⁻¹.
  Vec closed_loop;
  /// Per unactuated a: the same condition written with λ (must agree for λ = g ĝ⁻¹).
  Vec lambda_form;
  /// max |λ_a^r − g_ai ĝ^ir|.
  double relation = 0.0;

  double max_abs() const;
};

MatchingResidual matching_residual(const MechanicalSystem& sys, const LambdaField& lam, const TargetSystem& target,
                                   const State& s);

/// The linear algebraic system for the free λ_c^ρ obtained by eliminating λ^β through ν.
struct CompatibilitySystem {
  Mat a;  ///< rows (k, a ≤ b), columns (ρ, c) with ρ actuated
  std::vector<EquationIndex> rows;
  std::vector<std::pair<int, int>> cols;  ///< (ρ, c)
  Mat kernel;                             ///< columns span ker Aᵀ
  int rank = 0;
  double tolerance = 0.0;
  Vec singular_values;
};

CompatibilitySystem assemble_compatibility(const MechanicalSystem& sys, const Vec& x, double rel = kRankRelTol);

/// Right side F_(kab) = ∂_k ν_ab − [k a, β] h^{βd} ν_db − [k b, β] h^{βd} ν_da for a given ν field value.
Vec compatibility_rhs(const MechanicalSystem& sys, const MatrixEval& nu, const Vec& x);

/// ν orthogonality: ξ_rᵀ F for every kernel generator ξ_r.
Vec nu_orthogonality_residual(const MechanicalSystem& sys, const MatrixEval& nu, const Vec& x);
/// m = 1 convenience overload.
Vec nu_orthogonality_residual(const MechanicalSystem& sys, const ScalarEval& nu, const Vec& x);

struct RankVerdict {
  int rank_x0 = 0;
  int max_sample_rank = 0;
  bool drop = false;
  double radius = 0.0;  ///< largest sample distance from x0
  std::size_t count = 0;
  std::vector<int> sample_ranks;
};

/// Compares rank A*(x0) with the largest rank over nearby samples (lim sup surrogate).
RankVerdict rank_condition(const MechanicalSystem& sys, const Vec& x0, const std::vector<Vec>& samples);

/// How to fix the components of λ^ρ left free by ker A.
struct FreeComponents {
  /// (full coordinate index i ≥ m, value) pairs pinning λ^i.
  std::vector<std::pair<int, double>> pins;
  /// Added to the min-norm λ^ρ; must lie in ker A.
  std::optional<Vec> kernel_shift;
};

/// Solves the λ-equations (m = 1) for λ given ν and ∇ν at x.
Vec recover_lambda_from_nu(const MechanicalSystem& sys, const ScalarEval& nu, const Vec& x,
                           const FreeComponents& free = {});

struct BasicSolution {
  LambdaField lambda;
  TargetSystem target;
};

/// λ = ϰδ, ĝ = g/ϰ + g°, V̂ = V/ϰ + V°, Ĉ = C/ϰ. `gcirc` is n×n with zero unactuated rows/columns.
/// Positivity of ĝ is checked at `domain_samples`.
BasicSolution basic_solution(const MechanicalSystem& sys, double kappa, const MatrixField& gcirc,
                             const ScalarField& vcirc, const std::vector<Vec>& domain_samples);

}  // namespace matching
