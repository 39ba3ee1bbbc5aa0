#pragma once

#include "matching/types.hpp"

#include <vector>

namespace matching {

/// Relative singular-value threshold: σ counts as zero when σ < rel · max(σ_max, 1).
inline constexpr double kRankRelTol = 1e-10;

struct SvdSummary {
  Vec singular_values;
  double tolerance = 0.0;
  int rank = 0;
};

SvdSummary svd_summary(const Mat& a, double rel = kRankRelTol);
int numeric_rank(const Mat& a, double rel = kRankRelTol);

/// Orthonormal basis (columns) of ker a.
Mat null_space(const Mat& a, double rel = kRankRelTol);

/// Minimum-norm least-squares solution of a·x = b.
Vec min_norm_solve(const Mat& a, const Vec& b, double rel = kRankRelTol);

/// Column split of a matrix into a maximal independent (pivot) set and the rest.
struct PivotChoice {
  std::vector<int> pivots;
  std::vector<int> free;
};

PivotChoice choose_pivots(const Mat& a, double rel = kRankRelTol);

/// Kernel basis with one vector per free column: e_f − (pivot part). Varies smoothly
/// with a as long as the frozen pivot columns stay independent.
Mat pivoted_null_space(const Mat& a, const PivotChoice& choice);

/// Throws SingularMetricError unless m is invertible to working precision.
void require_invertible(const Mat& m, const char* what);
/// Throws IndefiniteMetricError unless the symmetric part of m is positive definite.
void require_positive_definite(const Mat& m, const char* what);
double min_eigenvalue(const Mat& m);

}  // namespace matching
