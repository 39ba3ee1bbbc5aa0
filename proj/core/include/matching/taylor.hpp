#pragma once

#include <Eigen/Core>

#include <memory>
#include <vector>

namespace matching {

/// Monomial bookkeeping shared by all Taylor jets of one (variable count, order).
class TaylorLayout {
 public:
  TaylorLayout(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(monomials_.size()); }

  const std::vector<int>& exponents(int idx) const { return monomials_[idx]; }
  int degree(int idx) const { return degree_[idx]; }
  /// Index of a monomial, or -1 if its degree exceeds the order.
  int index(const std::vector<int>& exps) const;

  struct Product {
    int lhs;
    int rhs;
    int out;
  };
  const std::vector<Product>& products() const { return products_; }

  struct DerivTerm {
    int from;
    int to;
    double factor;
  };
  const std::vector<DerivTerm>& derivative_terms(int var) const { return deriv_[var]; }

 private:
  int key(const std::vector<int>& exps) const;

  int nvars_;
  int order_;
  std::vector<std::vector<int>> monomials_;
  std::vector<int> degree_;
  std::vector<int> lookup_;
  std::vector<Product> products_;
  std::vector<std::vector<DerivTerm>> deriv_;
};

using TaylorLayoutPtr = std::shared_ptr<const TaylorLayout>;

/// Truncated multivariate Taylor polynomial in the displacement t = x - x0.
/// Monomials are sorted by total degree, so index 0 is the value at x0.
/// A jet without a layout is a plain constant and adopts the layout of its partner.
class Taylor {
 public:
  Taylor() : coeffs_(1, 0.0) {}
  Taylor(double c) : coeffs_(1, c) {}  // NOLINT(google-explicit-constructor)
  Taylor(TaylorLayoutPtr layout, std::vector<double> coeffs);

  /// The jet of x0 + t_var.
  static Taylor variable(const TaylorLayoutPtr& layout, int var, double x0);

  const TaylorLayoutPtr& layout() const { return layout_; }
  bool is_constant() const { return !layout_; }
  double value() const { return coeffs_[0]; }
  double coeff(int idx) const;
  double coeff(const std::vector<int>& exps) const;
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// ∂/∂t_var. Coefficients of the top degree become zero.
  Taylor derivative(int var) const;

  Taylor& operator+=(const Taylor& o);
  Taylor& operator-=(const Taylor& o);
  Taylor& operator*=(const Taylor& o);
  Taylor& operator/=(const Taylor& o);

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator*(Taylor a, const Taylor& b) { return a *= b; }
  friend Taylor operator/(Taylor a, const Taylor& b) { return a /= b; }
  friend Taylor operator-(Taylor a) {
    for (double& c : a.coeffs_) c = -c;
    return a;
  }
  friend Taylor operator+(const Taylor& a) { return a; }

  // Found only through argument-dependent lookup, so plain doubles keep using std::.
  friend Taylor sin(const Taylor& x) { return x.apply_sin(); }
  friend Taylor cos(const Taylor& x) { return x.apply_cos(); }
  friend Taylor exp(const Taylor& x) { return x.apply_exp(); }
  friend Taylor log(const Taylor& x) { return x.apply_log(); }
  friend Taylor sqrt(const Taylor& x) { return x.apply_pow(0.5); }
  friend Taylor pow(const Taylor& x, double p) { return x.apply_pow(p); }
  friend Taylor tan(const Taylor& x) { return x.apply_sin() / x.apply_cos(); }

 private:
  void adopt(const TaylorLayoutPtr& layout);
  /// Evaluates Σ_k f[k] h^k with h the non-constant part of *this.
  Taylor compose(const std::vector<double>& f) const;
  Taylor apply_sin() const;
  Taylor apply_cos() const;
  Taylor apply_exp() const;
  Taylor apply_log() const;
  Taylor apply_pow(double p) const;

  TaylorLayoutPtr layout_;
  std::vector<double> coeffs_;
};

using TaylorVec = Eigen::Matrix<Taylor, Eigen::Dynamic, 1>;
using TaylorMat = Eigen::Matrix<Taylor, Eigen::Dynamic, Eigen::Dynamic>;

/// Jets x0 + t for every coordinate.
TaylorVec taylor_point(const TaylorLayoutPtr& layout, const Eigen::VectorXd& x0);

}  // namespace matching

namespace Eigen {
template <>
struct NumTraits<matching::Taylor> : GenericNumTraits<matching::Taylor> {
  using Real = matching::Taylor;
  using NonInteger = matching::Taylor;
  using Literal = matching::Taylor;
  using Nested = matching::Taylor;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 64
  };
  static inline int digits10() { return 15; }
};
}  // namespace Eigen
