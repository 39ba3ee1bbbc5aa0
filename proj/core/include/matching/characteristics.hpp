#pragma once

#include "matching/fields.hpp"
#include "matching/geometry.hpp"
#include "matching/matching.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace matching {

/// Classical RK4 flow of a vector field for time t (negative t flows backwards).
Vec flow_map(const VectorField& field, const Vec& x0, double t, double dt = 1e-3);

/// Seeds on the hyperplane {x^axis = anchor(axis)}: a regular grid over the other coordinates.
struct CharacteristicSpec {
  int axis = 0;
  Vec anchor;
  std::vector<double> half_widths;  ///< one per non-axis coordinate, in increasing coordinate order
  std::vector<int> counts;          ///< seeds per non-axis coordinate, each ≥ 2
  double t_min = -1.0;
  double t_max = 1.0;
  double dt = 1e-3;
  int stride = 10;  ///< store every stride-th step
};

/// ĝ and V̂ prescribed on the initial hyperplane.
struct InitialData {
  std::function<Mat(const Vec&)> ghat;
  std::function<double(const Vec&)> vhat;
};

class CharacteristicGrid {
 public:
  struct Sample {
    Mat ghat;
    double vhat = 0.0;
  };

  int n() const { return n_; }
  const CharacteristicSpec& spec() const { return spec_; }
  int seed_count() const { return static_cast<int>(seeds_.size()); }
  int time_count() const { return static_cast<int>(times_.size()); }
  const std::vector<double>& times() const { return times_; }
  const Vec& seed(int s) const { return seeds_[s]; }

  Vec position(int s, int q) const;
  Mat ghat(int s, int q) const;
  double vhat(int s, int q) const;

  /// Back-traces x to the initial hyperplane and interpolates multilinearly in (seed coordinates, time).
  Sample query(const Vec& x) const;

  /// Largest |ĝ − ĝᵀ| seen while integrating.
  double max_asymmetry() const { return max_asymmetry_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Columns: seedIndex, t, x^1..x^n, ĝ upper triangle row-major, V̂.
  void write_csv(std::ostream& os) const;

 private:
  friend CharacteristicGrid solve_ghat_vhat(const MechanicalSystem&, const LambdaField&, const InitialData&,
                                            const CharacteristicSpec&);
  std::size_t offset(int s, int q) const;

  int n_ = 0;
  CharacteristicSpec spec_;
  VectorField field_;
  std::vector<Vec> seeds_;
  std::vector<double> times_;
  std::vector<int> other_axes_;
  std::vector<double> data_;  ///< per node: x (n), ĝ (n×n row-major), V̂
  double max_asymmetry_ = 0.0;
  std::vector<std::string> warnings_;
};

/// Integrates the ĝ- and V̂-equations along the flow of λ₁ (one unactuated degree of freedom).
CharacteristicGrid solve_ghat_vhat(const MechanicalSystem& sys, const LambdaField& lam, const InitialData& initial,
                                   const CharacteristicSpec& spec);

struct TransportResidual {
  double ghat_max = 0.0;  ///< max over interior nodes of the ĝ-equation residual
  double vhat_max = 0.0;  ///< max over interior nodes of λ₁^j ∂_j V̂ − ∂_1 V
};

/// PDE residuals at interior grid nodes; λ₁^j ∂_j is the time derivative along the stored characteristic,
/// taken by central differences between neighbouring nodes.
TransportResidual transport_residual(const MechanicalSystem& sys, const LambdaField& lam,
                                     const CharacteristicGrid& grid);

/// Completes ĝ from its actuated block through g_a = λ_a ĝ (rows a < m) and symmetry.
Mat reconstruct_ghat_row(const MechanicalSystem& sys, const LambdaField& lam, const Mat& actuated_block,
                         const Vec& x);

struct XiReport {
  double max_abs = 0.0;   ///< max |Ξ_i| over all nodes
  double seed_max = 0.0;  ///< max |Ξ_i| on the initial hyperplane
  bool pass = false;      ///< seed_max ≤ 1e-10 and max_abs ≤ 1e-7
};

/// Ξ_i = g_1i − λ₁^j ĝ_ji evaluated with a given ĝ field at every node of the grid.
XiReport xi_propagation_check(const MechanicalSystem& sys, const LambdaField& lam, const MatrixField& ghat,
                              const CharacteristicGrid& grid);
/// Same, using the transported ĝ stored in the grid.
XiReport xi_propagation_check(const MechanicalSystem& sys, const LambdaField& lam, const CharacteristicGrid& grid);

}  // namespace matching
