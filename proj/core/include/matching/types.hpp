#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/AutoDiff>

#include <vector>

namespace matching {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Upper bound on the number of independent variables a dual number tracks.
/// Covers (x, ẋ) for systems with up to four degrees of freedom.
inline constexpr int kMaxDualVars = 8;

using DualDerivative = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDualVars, 1>;
using Dual = Eigen::AutoDiffScalar<DualDerivative>;

template <class T>
using VecT = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using MatT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

using DualVec = VecT<Dual>;
using DualMat = MatT<Dual>;

/// Seeds `x` as independent variables `offset .. offset + x.size()` of a `total`-variable dual vector.
inline DualVec seed_duals(const Vec& x, int total, int offset = 0) {
  DualVec out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out(i) = Dual(x(i), total, static_cast<int>(offset + i));
  }
  return out;
}

/// Gradient of a dual with `total` variables; constants carry an empty derivative vector.
inline Vec gradient_of(const Dual& d, int total) {
  Vec g = Vec::Zero(total);
  if (d.derivatives().size() == total) g = d.derivatives();
  return g;
}

/// Configuration plus velocity of a mechanical system.
struct State {
  Vec x;
  Vec xdot;

  State() = default;
  State(Vec x_, Vec xdot_) : x(std::move(x_)), xdot(std::move(xdot_)) {}

  int dof() const { return static_cast<int>(x.size()); }
};

/// Throws DomainError unless both vectors have the same length n >= 2 and are finite.
void validate_state(const State& s);

}  // namespace matching
