#pragma once

#include "matching/fields.hpp"

#include <vector>

namespace matching {

/// [η, ζ]^k = η^i ∂_i ζ^k − ζ^i ∂_i η^k. The Jacobian of the result is taken by central differences.
VectorField bracket(const VectorField& eta, const VectorField& zeta, double h = 1e-5);

/// Whether v lies in the span of the columns of basis (least-squares residual ≤ 1e-8 · max(1, |v|)).
bool in_span(const Mat& basis, const Vec& v, double rel = 1e-8);

/// Kernel fields of Aᵀ for m = 1, with pivot columns frozen at `reference`.
std::vector<VectorField> kernel_fields(const struct MechanicalSystem& sys, const Vec& reference);

struct ClosureResult {
  std::vector<VectorField> fields;
  int depth = 0;      ///< bracket rounds that added fields
  bool closed = false;
  int span_dimension = 0;  ///< largest pointwise rank over the samples
};

/// Adds commutators until every bracket lies pointwise in the span of the current set
/// at all samples, or `max_depth` rounds have added fields without closing.
ClosureResult involutive_closure(const std::vector<VectorField>& fields, const std::vector<Vec>& samples,
                                 int max_depth);

}  // namespace matching
