#pragma once

#include "matching/taylor.hpp"
#include "matching/types.hpp"

#include <cmath>
#include <string>
#include <type_traits>

namespace matching {

inline double scalar_value(double v) { return v; }
inline double scalar_value(const Dual& v) { return v.value(); }
inline double scalar_value(const Taylor& v) { return v.value(); }

/// A constant with the derivative layout of `ref`. Products of two derivative-free duals
/// otherwise lose their size when combined with seeded variables.
template <class T>
T constant_like(const T& ref, double c) {
  if constexpr (std::is_same_v<T, Dual>) {
    return Dual(c, DualDerivative::Zero(ref.derivatives().size()));
  } else {
    (void)ref;
    return T(c);
  }
}

/// Built-in scalar functions of a vector argument, selectable by name from configs:
///   constant:  c
///   quadratic: c + lᵀy + yᵀQy
///   cosine:    c + amp·cos(kᵀy + phase)
struct ScalarFunction {
  enum class Kind { Constant, Quadratic, Cosine };

  Kind kind = Kind::Constant;
  double c = 0.0;
  Vec linear;     ///< quadratic: l
  Mat quadratic;  ///< quadratic: Q (symmetrized on use)
  double amp = 0.0;
  Vec freq;       ///< cosine: k
  double phase = 0.0;

  static ScalarFunction constant(double c);
  static ScalarFunction quadratic_form(double c, Vec l, Mat q);
  static ScalarFunction cosine(double c, double amp, Vec k, double phase);

  std::string kind_name() const;

  template <class T>
  T operator()(const VecT<T>& y) const {
    using std::cos;
    switch (kind) {
      case Kind::Constant:
        return y.size() ? constant_like(y(0), c) : T(c);
      case Kind::Quadratic: {
        T acc = y.size() ? constant_like(y(0), c) : T(c);
        for (Eigen::Index i = 0; i < y.size(); ++i) {
          if (i < linear.size()) acc += linear(i) * y(i);
          for (Eigen::Index j = 0; j < y.size(); ++j) {
            if (i < quadratic.rows() && j < quadratic.cols()) acc += quadratic(i, j) * y(i) * y(j);
          }
        }
        return acc;
      }
      case Kind::Cosine: {
        T arg = T(phase);
        for (Eigen::Index i = 0; i < y.size() && i < freq.size(); ++i) arg += freq(i) * y(i);
        return c + amp * cos(arg);
      }
    }
    return T(0.0);
  }

  template <class T>
  VecT<T> gradient(const VecT<T>& y) const {
    using std::sin;
    const auto n = y.size();
    VecT<T> g(n);
    for (Eigen::Index i = 0; i < n; ++i) g(i) = constant_like(y(0), 0.0);
    switch (kind) {
      case Kind::Constant:
        break;
      case Kind::Quadratic:
        for (Eigen::Index i = 0; i < n; ++i) {
          if (i < linear.size()) g(i) += T(linear(i));
          for (Eigen::Index j = 0; j < n; ++j) {
            double q = 0.0;
            if (i < quadratic.rows() && j < quadratic.cols()) q += quadratic(i, j);
            if (j < quadratic.rows() && i < quadratic.cols()) q += quadratic(j, i);
            if (q != 0.0) g(i) += q * y(j);
          }
        }
        break;
      case Kind::Cosine: {
        T arg = T(phase);
        for (Eigen::Index i = 0; i < n && i < freq.size(); ++i) arg += freq(i) * y(i);
        const T sn = sin(arg);
        for (Eigen::Index i = 0; i < n && i < freq.size(); ++i) g(i) = -amp * freq(i) * sn;
        break;
      }
    }
    return g;
  }

  Mat hessian(const Vec& y) const;
};

/// Built-in functions of one variable: polynomial Σ c_k s^k or c + amp·cos(freq·s + phase).
struct Profile1D {
  enum class Kind { Polynomial, Cosine };

  Kind kind = Kind::Polynomial;
  Vec coeffs;  ///< polynomial coefficients, constant first
  double c = 0.0;
  double amp = 0.0;
  double freq = 1.0;
  double phase = 0.0;

  static Profile1D polynomial(Vec coeffs);
  static Profile1D cosine(double c, double amp, double freq, double phase);

  std::string kind_name() const;

  template <class T>
  T value(const T& s) const {
    using std::cos;
    if (kind == Kind::Cosine) return c + amp * cos(freq * s + phase);
    T acc = T(0.0);
    for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * s + coeffs(k);
    return acc;
  }

  template <class T>
  T derivative(const T& s) const {
    using std::sin;
    if (kind == Kind::Cosine) return -amp * freq * sin(freq * s + phase);
    T acc = T(0.0);
    for (Eigen::Index k = coeffs.size() - 1; k >= 1; --k) acc = acc * s + static_cast<double>(k) * coeffs(k);
    return acc;
  }
};

}  // namespace matching
