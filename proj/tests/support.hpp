#pragma once

#include "matching/types.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace testing_support {

using matching::Mat;
using matching::Vec;

inline Vec uniform(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Second-order-accurate central difference with Richardson extrapolation.
inline double richardson(const std::function<double(double)>& f, double x, double h = 1e-3) {
  auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
  return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

}  // namespace testing_support
