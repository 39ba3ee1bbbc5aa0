#include "matching/characteristics.hpp"

#include "matching/csv.hpp"
#include "matching/errors.hpp"
#include "matching/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace matching {

namespace {

constexpr double kSingularField = 1e-12;

Vec checked(const VectorField& f, const Vec& x) {
  Vec v = f(x);
  if (!v.allFinite()) throw DomainError("characteristic field is not finite");
  if (v.norm() < kSingularField) throw SingularFieldError("characteristic field vanishes");
  return v;
}

Vec rk4_step(const VectorField& f, const Vec& x, double h) {
  const Vec k1 = checked(f, x);
  const Vec k2 = checked(f, x + 0.5 * h * k1);
  const Vec k3 = checked(f, x + 0.5 * h * k2);
  const Vec k4 = checked(f, x + h * k3);
  return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Vec flow_map(const VectorField& field, const Vec& x0, double t, double dt) {
  if (!(dt > 0.0)) throw DomainError("flow_map: dt must be positive");
  if (std::abs(t) / dt > 1e7) throw DomainError("flow_map: too many steps");
  const long steps = static_cast<long>(std::ceil(std::abs(t) / dt - 1e-9));
  if (steps == 0) return x0;
  const double h = t / static_cast<double>(steps);
  Vec x = x0;
  for (long i = 0; i < steps; ++i) x = rk4_step(field, x, h);
  return x;
}

std::size_t CharacteristicGrid::offset(int s, int q) const {
  const std::size_t stride = static_cast<std::size_t>(n_ + n_ * n_ + 1);
  return (static_cast<std::size_t>(s) * times_.size() + static_cast<std::size_t>(q)) * stride;
}

Vec CharacteristicGrid::position(int s, int q) const {
  return Eigen::Map<const Vec>(&data_[offset(s, q)], n_);
}

Mat CharacteristicGrid::ghat(int s, int q) const {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      &data_[offset(s, q) + n_], n_, n_);
}

double CharacteristicGrid::vhat(int s, int q) const { return data_[offset(s, q) + n_ + n_ * n_]; }

namespace {

struct Transport {
  const MechanicalSystem& sys;
  const LambdaField& lam;

  // State: x (n), ĝ (n×n row-major), V̂.
  Vec rhs(const Vec& y) const {
    const int n = sys.n;
    const Vec x = y.head(n);
    const MatrixEval l = lam.eval(x);
    const MatrixEval g = sys.metric.eval(x);
    const Vec lam1 = l.value.row(0).transpose();
    if (!lam1.allFinite()) throw DomainError("lambda is not finite along the characteristic");
    if (lam1.norm() < kSingularField) throw SingularFieldError("characteristic field vanishes");
    Mat j(n, n);  // j(ℓ, i) = ∂_i λ^ℓ
    for (int i = 0; i < n; ++i) j.col(i) = l.d[i].row(0).transpose();
    const Mat gh = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        y.data() + n, n, n);
    const Mat dg = g.d[0] - j.transpose() * gh - gh * j;
    Vec out(y.size());
    out.head(n) = lam1;
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(out.data() + n, n, n) = dg;
    out(n + n * n) = sys.potential.gradient(x)(0);
    return out;
  }

  Vec step(const Vec& y, double h) const {
    const Vec k1 = rhs(y);
    const Vec k2 = rhs(y + 0.5 * h * k1);
    const Vec k3 = rhs(y + 0.5 * h * k2);
    const Vec k4 = rhs(y + h * k3);
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
};

}  // namespace

CharacteristicGrid solve_ghat_vhat(const MechanicalSystem& sys, const LambdaField& lam, const InitialData& initial,
                                   const CharacteristicSpec& spec) {
  const int n = sys.n;
  if (sys.m != 1 || lam.m() != 1) throw ScopeError("solve_ghat_vhat handles one unactuated degree of freedom");
  if (spec.axis < 0 || spec.axis >= n || spec.anchor.size() != n) throw DomainError("bad characteristic spec");
  if (static_cast<int>(spec.half_widths.size()) != n - 1 || static_cast<int>(spec.counts.size()) != n - 1) {
    throw DomainError("characteristic spec needs n-1 seed widths and counts");
  }
  if (!(spec.dt > 0.0) || spec.stride < 1 || spec.t_min > 0.0 || spec.t_max < 0.0) {
    throw DomainError("characteristic spec has an invalid time grid");
  }
  for (int c : spec.counts) {
    if (c < 2) throw DomainError("need at least two seeds per direction");
  }

  CharacteristicGrid grid;
  grid.n_ = n;
  grid.spec_ = spec;
  grid.field_ = lam.row(0);
  for (int i = 0; i < n; ++i) {
    if (i != spec.axis) grid.other_axes_.push_back(i);
  }

  const double h = spec.dt * spec.stride;
  const int back = static_cast<int>(std::lround(-spec.t_min / h));
  const int fwd = static_cast<int>(std::lround(spec.t_max / h));
  for (int q = -back; q <= fwd; ++q) grid.times_.push_back(q * h);

  // Seeds in lexicographic order, last non-axis coordinate fastest.
  int total = 1;
  for (int c : spec.counts) total *= c;
  for (int s = 0; s < total; ++s) {
    Vec x = spec.anchor;
    int rem = s;
    for (int d = n - 2; d >= 0; --d) {
      const int c = spec.counts[d];
      const int idx = rem % c;
      rem /= c;
      const double w = spec.half_widths[d];
      x(grid.other_axes_[d]) = spec.anchor(grid.other_axes_[d]) - w + 2.0 * w * idx / (c - 1);
    }
    const Vec v = lam(x).row(0).transpose();
    if (!v.allFinite() || v.norm() < kSingularField) throw SingularFieldError("characteristic field vanishes at a seed");
    const double angle = std::asin(std::min(1.0, std::abs(v(spec.axis)) / v.norm()));
    if (angle < 1e-3) throw TransversalityError("initial hyperplane is not transverse to the characteristic field");
    grid.seeds_.push_back(x);
  }

  const std::size_t node = static_cast<std::size_t>(n + n * n + 1);
  grid.data_.assign(grid.seeds_.size() * grid.times_.size() * node, 0.0);
  const Transport tr{sys, lam};
  for (std::size_t s = 0; s < grid.seeds_.size(); ++s) {
    const Vec& x0 = grid.seeds_[s];
    Vec y0(static_cast<Eigen::Index>(node));
    y0.head(n) = x0;
    const Mat g0 = initial.ghat(x0);
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(y0.data() + n, n, n) = g0;
    y0(n + n * n) = initial.vhat(x0);
    auto store = [&](int q, const Vec& y) {
      std::copy(y.data(), y.data() + node, grid.data_.begin() + static_cast<long>(grid.offset(static_cast<int>(s), q)));
      const Mat gh = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          y.data() + n, n, n);
      grid.max_asymmetry_ = std::max(grid.max_asymmetry_, (gh - gh.transpose()).cwiseAbs().maxCoeff());
    };
    store(back, y0);
    for (int dir : {1, -1}) {
      Vec y = y0;
      const int nodes = dir > 0 ? fwd : back;
      for (int q = 1; q <= nodes; ++q) {
        for (int k = 0; k < spec.stride; ++k) y = tr.step(y, dir * spec.dt);
        store(back + dir * q, y);
      }
    }
  }

  // Neighbouring characteristics closing in on each other make interpolation unreliable.
  double min_ratio = 1e300;
  for (std::size_t s = 0; s + 1 < grid.seeds_.size(); ++s) {
    const double d0 = (grid.seeds_[s + 1] - grid.seeds_[s]).norm();
    for (int q = 0; q < grid.time_count(); ++q) {
      const double d = (grid.position(static_cast<int>(s + 1), q) - grid.position(static_cast<int>(s), q)).norm();
      min_ratio = std::min(min_ratio, d / d0);
    }
  }
  if (min_ratio < 0.1) {
    grid.warnings_.push_back("characteristics approach within a tenth of the seed spacing; interpolation unreliable");
  }
  return grid;
}

CharacteristicGrid::Sample CharacteristicGrid::query(const Vec& x) const {
  if (x.size() != n_) throw DomainError("query point has the wrong length");
  const int axis = spec_.axis;
  const double c = spec_.anchor(axis);
  const double dt = spec_.dt;

  // Walk along ±λ₁ until the hyperplane is crossed, then refine the last partial step by bisection.
  Vec v = checked(field_, x);
  double gap = x(axis) - c;
  double elapsed = 0.0;
  Vec y = x;
  const double dir = (gap * v(axis) > 0.0) ? -1.0 : 1.0;
  const double limit = std::max(-spec_.t_min, spec_.t_max) + 2.0 * dt;
  if (gap != 0.0) {
    while (true) {
      const Vec next = rk4_step(field_, y, dir * dt);
      if ((next(axis) - c) * gap <= 0.0) {
        double lo = 0.0, hi = dt;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
          const double mid = 0.5 * (lo + hi);
          const Vec trial = rk4_step(field_, y, dir * mid);
          if ((trial(axis) - c) * gap > 0.0) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        const double part = 0.5 * (lo + hi);
        y = rk4_step(field_, y, dir * part);
        elapsed += part;
        break;
      }
      y = next;
      elapsed += dt;
      if (elapsed > limit) throw DomainError("query point lies outside the characteristic grid (time)");
    }
  }
  // y is on the hyperplane; x = flow(y, tau).
  const double tau = -dir * elapsed;

  // Multilinear weights over (seed coordinates, time).
  const int dims = n_ - 1;
  std::vector<int> lo_idx(dims + 1);
  std::vector<double> frac(dims + 1);
  std::vector<int> stride_of(dims, 1);
  for (int d = dims - 2; d >= 0; --d) stride_of[d] = stride_of[d + 1] * spec_.counts[d + 1];
  for (int d = 0; d < dims; ++d) {
    const double w = spec_.half_widths[d];
    const int cnt = spec_.counts[d];
    const double u = (y(other_axes_[d]) - (spec_.anchor(other_axes_[d]) - w)) / (2.0 * w) * (cnt - 1);
    if (u < -1e-9 || u > cnt - 1 + 1e-9) throw DomainError("query point lies outside the characteristic grid (seed)");
    const int i0 = std::clamp(static_cast<int>(std::floor(u)), 0, cnt - 2);
    lo_idx[d] = i0;
    frac[d] = std::clamp(u - i0, 0.0, 1.0);
  }
  {
    const double h = times_.size() > 1 ? times_[1] - times_[0] : 1.0;
    const double u = (tau - times_.front()) / h;
    const int cnt = time_count();
    if (u < -1e-9 || u > cnt - 1 + 1e-9) throw DomainError("query point lies outside the characteristic grid (time)");
    const int i0 = std::clamp(static_cast<int>(std::floor(u)), 0, std::max(cnt - 2, 0));
    lo_idx[dims] = i0;
    frac[dims] = std::clamp(u - i0, 0.0, 1.0);
  }

  Sample out;
  out.ghat = Mat::Zero(n_, n_);
  for (int corner = 0; corner < (1 << (dims + 1)); ++corner) {
    double w = 1.0;
    int seed = 0;
    for (int d = 0; d < dims; ++d) {
      const int bit = (corner >> d) & 1;
      w *= bit ? frac[d] : 1.0 - frac[d];
      seed += (lo_idx[d] + bit) * stride_of[d];
    }
    const int tbit = (corner >> dims) & 1;
    w *= tbit ? frac[dims] : 1.0 - frac[dims];
    if (w == 0.0) continue;
    const int q = std::min(lo_idx[dims] + tbit, time_count() - 1);
    out.ghat += w * ghat(seed, q);
    out.vhat += w * vhat(seed, q);
  }
  return out;
}

void CharacteristicGrid::write_csv(std::ostream& os) const {
  os << "seedIndex,t";
  for (int i = 1; i <= n_; ++i) os << ",x" << i;
  for (int i = 1; i <= n_; ++i) {
    for (int j = i; j <= n_; ++j) os << ",ghat" << i << j;
  }
  os << ",vhat\n";
  for (int s = 0; s < seed_count(); ++s) {
    for (int q = 0; q < time_count(); ++q) {
      os << s << ',' << format_double(times_[q]);
      const Vec x = position(s, q);
      for (int i = 0; i < n_; ++i) os << ',' << format_double(x(i));
      const Mat g = ghat(s, q);
      for (int i = 0; i < n_; ++i) {
        for (int j = i; j < n_; ++j) os << ',' << format_double(g(i, j));
      }
      os << ',' << format_double(vhat(s, q)) << '\n';
    }
  }
}

TransportResidual transport_residual(const MechanicalSystem& sys, const LambdaField& lam,
                                     const CharacteristicGrid& grid) {
  TransportResidual r;
  const int n = grid.n();
  const auto& t = grid.times();
  for (int s = 0; s < grid.seed_count(); ++s) {
    for (int q = 1; q + 1 < grid.time_count(); ++q) {
      const double h2 = t[q + 1] - t[q - 1];
      const Vec x = grid.position(s, q);
      const Mat dgh = (grid.ghat(s, q + 1) - grid.ghat(s, q - 1)) / h2;
      const double dvh = (grid.vhat(s, q + 1) - grid.vhat(s, q - 1)) / h2;
      const MatrixEval l = lam.eval(x);
      const MatrixEval g = sys.metric.eval(x);
      Mat j(n, n);
      for (int i = 0; i < n; ++i) j.col(i) = l.d[i].row(0).transpose();
      const Mat gh = grid.ghat(s, q);
      const Mat res = dgh + j.transpose() * gh + gh * j - g.d[0];
      r.ghat_max = std::max(r.ghat_max, res.cwiseAbs().maxCoeff());
      r.vhat_max = std::max(r.vhat_max, std::abs(dvh - sys.potential.gradient(x)(0)));
    }
  }
  return r;
}

Mat reconstruct_ghat_row(const MechanicalSystem& sys, const LambdaField& lam, const Mat& actuated_block,
                         const Vec& x) {
  const int n = sys.n;
  const int m = sys.m;
  const int p = n - m;
  if (actuated_block.rows() != p || actuated_block.cols() != p) throw DomainError("actuated block has the wrong size");
  const Mat g = sys.metric(x);
  const Mat l = lam(x);
  const Mat lu = l.leftCols(m);    // λ_a^b
  const Mat la = l.rightCols(p);   // λ_a^σ
  require_invertible(lu, "unactuated block of lambda");
  const auto solver = lu.partialPivLu();

  Mat gh = Mat::Zero(n, n);
  gh.bottomRightCorner(p, p) = 0.5 * (actuated_block + actuated_block.transpose());
  // g_aρ = λ_a^b ĝ_bρ + λ_a^σ ĝ_σρ
  const Mat cross = solver.solve(g.topRightCorner(m, p) - la * gh.bottomRightCorner(p, p));
  gh.topRightCorner(m, p) = cross;
  gh.bottomLeftCorner(p, m) = cross.transpose();
  // g_ac = λ_a^b ĝ_bc + λ_a^σ ĝ_σc
  const Mat top = solver.solve(g.topLeftCorner(m, m) - la * cross.transpose());
  const double asym = (top - top.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * std::max(1.0, top.cwiseAbs().maxCoeff())) {
    throw AsymmetryError("row completion of the target metric is not symmetric");
  }
  gh.topLeftCorner(m, m) = 0.5 * (top + top.transpose());
  return gh;
}

namespace {

double xi_at(const MechanicalSystem& sys, const LambdaField& lam, const Vec& x, const Mat& gh) {
  const Vec lam1 = lam(x).row(0).transpose();
  const Vec xi = sys.metric(x).row(0).transpose() - gh * lam1;
  return xi.cwiseAbs().maxCoeff();
}

template <class GhatAt>
XiReport xi_scan(const MechanicalSystem& sys, const LambdaField& lam, const CharacteristicGrid& grid, GhatAt ghat_at) {
  XiReport r;
  int zero_q = 0;
  for (int q = 0; q < grid.time_count(); ++q) {
    if (std::abs(grid.times()[q]) < std::abs(grid.times()[zero_q])) zero_q = q;
  }
  for (int s = 0; s < grid.seed_count(); ++s) {
    for (int q = 0; q < grid.time_count(); ++q) {
      const Vec x = grid.position(s, q);
      const double v = xi_at(sys, lam, x, ghat_at(s, q, x));
      r.max_abs = std::max(r.max_abs, v);
      if (q == zero_q) r.seed_max = std::max(r.seed_max, v);
    }
  }
  r.pass = r.seed_max <= 1e-10 && r.max_abs <= 1e-7;
  return r;
}

}  // namespace

XiReport xi_propagation_check(const MechanicalSystem& sys, const LambdaField& lam, const MatrixField& ghat,
                              const CharacteristicGrid& grid) {
  return xi_scan(sys, lam, grid, [&](int, int, const Vec& x) { return ghat(x); });
}

XiReport xi_propagation_check(const MechanicalSystem& sys, const LambdaField& lam, const CharacteristicGrid& grid) {
  return xi_scan(sys, lam, grid, [&](int s, int q, const Vec&) { return grid.ghat(s, q); });
}

}  // namespace matching
