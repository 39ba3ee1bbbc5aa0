#include "matching/taylor.hpp"

#include <cmath>
#include <stdexcept>

namespace matching {

TaylorLayout::TaylorLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || order < 0) throw std::invalid_argument("TaylorLayout: bad dimensions");
  // Enumerate exponent vectors degree by degree.
  for (int d = 0; d <= order; ++d) {
    std::vector<std::vector<int>> level;
    std::vector<int> cur(nvars, 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
      if (var == nvars - 1) {
        cur[var] = left;
        level.push_back(cur);
        return;
      }
      for (int k = left; k >= 0; --k) {
        cur[var] = k;
        self(self, var + 1, left - k);
      }
    };
    rec(rec, 0, d);
    for (auto& m : level) {
      monomials_.push_back(m);
      degree_.push_back(d);
    }
  }
  int span = 1;
  for (int v = 0; v < nvars; ++v) span *= (order + 1);
  lookup_.assign(span, -1);
  for (int i = 0; i < size(); ++i) lookup_[key(monomials_[i])] = i;

  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (degree_[i] + degree_[j] > order) continue;
      std::vector<int> s(nvars);
      for (int v = 0; v < nvars; ++v) s[v] = monomials_[i][v] + monomials_[j][v];
      products_.push_back({i, j, lookup_[key(s)]});
    }
  }
  deriv_.resize(nvars);
  for (int v = 0; v < nvars; ++v) {
    for (int i = 0; i < size(); ++i) {
      const int ev = monomials_[i][v];
      if (ev == 0) continue;
      std::vector<int> s = monomials_[i];
      s[v] -= 1;
      deriv_[v].push_back({i, lookup_[key(s)], static_cast<double>(ev)});
    }
  }
}

int TaylorLayout::key(const std::vector<int>& exps) const {
  int k = 0;
  for (int v = nvars_ - 1; v >= 0; --v) k = k * (order_ + 1) + exps[v];
  return k;
}

int TaylorLayout::index(const std::vector<int>& exps) const {
  int d = 0;
  for (int v : exps) {
    if (v < 0) return -1;
    d += v;
  }
  if (d > order_ || static_cast<int>(exps.size()) != nvars_) return -1;
  return lookup_[key(exps)];
}

Taylor::Taylor(TaylorLayoutPtr layout, std::vector<double> coeffs)
    : layout_(std::move(layout)), coeffs_(std::move(coeffs)) {
  if (layout_ && static_cast<int>(coeffs_.size()) != layout_->size()) {
    throw std::invalid_argument("Taylor: coefficient count does not match layout");
  }
}

Taylor Taylor::variable(const TaylorLayoutPtr& layout, int var, double x0) {
  std::vector<double> c(layout->size(), 0.0);
  c[0] = x0;
  if (layout->order() >= 1) {
    std::vector<int> e(layout->nvars(), 0);
    e[var] = 1;
    c[layout->index(e)] = 1.0;
  }
  return Taylor(layout, std::move(c));
}

double Taylor::coeff(int idx) const {
  if (!layout_) return idx == 0 ? coeffs_[0] : 0.0;
  return coeffs_[idx];
}

double Taylor::coeff(const std::vector<int>& exps) const {
  if (!layout_) {
    for (int v : exps) {
      if (v != 0) return 0.0;
    }
    return coeffs_[0];
  }
  const int idx = layout_->index(exps);
  return idx < 0 ? 0.0 : coeffs_[idx];
}

void Taylor::adopt(const TaylorLayoutPtr& layout) {
  if (!layout || layout_ == layout) return;
  if (layout_) {
    if (layout_->nvars() != layout->nvars() || layout_->order() != layout->order()) {
      throw std::invalid_argument("Taylor: mixing incompatible layouts");
    }
    layout_ = layout;
    return;
  }
  const double c = coeffs_[0];
  layout_ = layout;
  coeffs_.assign(layout->size(), 0.0);
  coeffs_[0] = c;
}

Taylor Taylor::derivative(int var) const {
  if (!layout_) return Taylor(0.0);
  std::vector<double> out(coeffs_.size(), 0.0);
  for (const auto& t : layout_->derivative_terms(var)) out[t.to] += t.factor * coeffs_[t.from];
  return Taylor(layout_, std::move(out));
}

Taylor& Taylor::operator+=(const Taylor& o) {
  if (o.layout_) adopt(o.layout_);
  if (!o.layout_) {
    coeffs_[0] += o.coeffs_[0];
  } else {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  }
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  if (o.layout_) adopt(o.layout_);
  if (!o.layout_) {
    coeffs_[0] -= o.coeffs_[0];
  } else {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  }
  return *this;
}

Taylor& Taylor::operator*=(const Taylor& o) {
  if (!o.layout_) {
    for (double& c : coeffs_) c *= o.coeffs_[0];
    return *this;
  }
  if (!layout_) {
    const double c = coeffs_[0];
    *this = o;
    for (double& v : coeffs_) v *= c;
    return *this;
  }
  adopt(o.layout_);
  std::vector<double> out(coeffs_.size(), 0.0);
  for (const auto& p : layout_->products()) out[p.out] += coeffs_[p.lhs] * o.coeffs_[p.rhs];
  coeffs_ = std::move(out);
  return *this;
}

Taylor& Taylor::operator/=(const Taylor& o) {
  if (!o.layout_) {
    for (double& c : coeffs_) c /= o.coeffs_[0];
    return *this;
  }
  return *this *= o.apply_pow(-1.0);
}

Taylor Taylor::compose(const std::vector<double>& f) const {
  if (!layout_) return Taylor(f[0]);
  Taylor h = *this;
  h.coeffs_[0] = 0.0;
  const int order = layout_->order();
  Taylor r(layout_, std::vector<double>(coeffs_.size(), 0.0));
  r.coeffs_[0] = f[order];
  for (int k = order - 1; k >= 0; --k) {
    r *= h;
    r.coeffs_[0] += f[k];
  }
  return r;
}

namespace {
int jet_order(const TaylorLayoutPtr& l) { return l ? l->order() : 0; }
}  // namespace

Taylor Taylor::apply_sin() const {
  const int p = jet_order(layout_);
  const double c = coeffs_[0];
  const double s = std::sin(c), co = std::cos(c);
  std::vector<double> f(p + 1);
  double fact = 1.0;
  for (int k = 0; k <= p; ++k) {
    if (k > 0) fact *= k;
    const double v[4] = {s, co, -s, -co};
    f[k] = v[k % 4] / fact;
  }
  return compose(f);
}

Taylor Taylor::apply_cos() const {
  const int p = jet_order(layout_);
  const double s = std::sin(coeffs_[0]), co = std::cos(coeffs_[0]);
  std::vector<double> f(p + 1);
  double fact = 1.0;
  for (int k = 0; k <= p; ++k) {
    if (k > 0) fact *= k;
    const double v[4] = {co, -s, -co, s};
    f[k] = v[k % 4] / fact;
  }
  return compose(f);
}

Taylor Taylor::apply_exp() const {
  const int p = jet_order(layout_);
  const double e = std::exp(coeffs_[0]);
  std::vector<double> f(p + 1);
  double fact = 1.0;
  for (int k = 0; k <= p; ++k) {
    if (k > 0) fact *= k;
    f[k] = e / fact;
  }
  return compose(f);
}

Taylor Taylor::apply_log() const {
  const int p = jet_order(layout_);
  const double c = coeffs_[0];
  std::vector<double> f(p + 1);
  f[0] = std::log(c);
  for (int k = 1; k <= p; ++k) f[k] = ((k % 2) ? 1.0 : -1.0) / (k * std::pow(c, k));
  return compose(f);
}

Taylor Taylor::apply_pow(double q) const {
  const int p = jet_order(layout_);
  const double c = coeffs_[0];
  std::vector<double> f(p + 1);
  // Generalized binomial series of (c + h)^q.
  double binom = 1.0;
  for (int k = 0; k <= p; ++k) {
    if (k > 0) binom *= (q - (k - 1)) / k;
    f[k] = binom * std::pow(c, q - k);
  }
  return compose(f);
}

TaylorVec taylor_point(const TaylorLayoutPtr& layout, const Eigen::VectorXd& x0) {
  TaylorVec out(x0.size());
  for (Eigen::Index i = 0; i < x0.size(); ++i) out(i) = Taylor::variable(layout, static_cast<int>(i), x0(i));
  return out;
}

}  // namespace matching
