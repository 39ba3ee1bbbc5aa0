#include "matching/involutive.hpp"

#include "matching/errors.hpp"
#include "matching/geometry.hpp"
#include "matching/linalg.hpp"
#include "matching/matching.hpp"

#include <algorithm>

namespace matching {

VectorField bracket(const VectorField& eta, const VectorField& zeta, double h) {
  auto value = [eta, zeta](const Vec& x) -> Vec {
    const VectorEval a = eta.eval(x);
    const VectorEval b = zeta.eval(x);
    return b.jac * a.value - a.jac * b.value;
  };
  return fd_vector_field(value, h);
}

bool in_span(const Mat& basis, const Vec& v, double rel) {
  const double scale = std::max(1.0, v.norm());
  if (basis.cols() == 0) return v.norm() <= rel * scale;
  const Vec c = min_norm_solve(basis, v);
  return (basis * c - v).norm() <= rel * scale;
}

std::vector<VectorField> kernel_fields(const MechanicalSystem& sys, const Vec& reference) {
  if (sys.m != 1) throw ScopeError("kernel_fields: one unactuated degree of freedom expected");
  const CompatibilitySystem ref = assemble_compatibility(sys, reference);
  const Mat astar = ref.a.transpose();
  const PivotChoice choice = choose_pivots(astar);
  std::vector<VectorField> out;
  for (std::size_t f = 0; f < choice.free.size(); ++f) {
    auto value = [sys, choice, f](const Vec& x) -> Vec {
      const Mat k = pivoted_null_space(assemble_compatibility(sys, x).a.transpose(), choice);
      return k.col(static_cast<Eigen::Index>(f));
    };
    out.push_back(fd_vector_field(value));
  }
  return out;
}

namespace {

Mat stack(const std::vector<VectorField>& fields, const Vec& x) {
  if (fields.empty()) return Mat(x.size(), 0);
  Mat b(x.size(), static_cast<Eigen::Index>(fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = fields[i](x);
  return b;
}

}  // namespace

ClosureResult involutive_closure(const std::vector<VectorField>& fields, const std::vector<Vec>& samples,
                                 int max_depth) {
  if (max_depth < 1) throw DomainError("involutive_closure: maxDepth must be at least 1");
  if (samples.empty()) throw DomainError("involutive_closure: no samples");
  ClosureResult res;
  res.fields = fields;
  std::size_t fresh_from = 0;  // brackets involving at least one field from here on are unchecked
  for (int depth = 0;; ++depth) {
    std::vector<VectorField> added;
    const std::size_t count = res.fields.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = std::max(i + 1, fresh_from); j < count; ++j) {
        const VectorField br = bracket(res.fields[i], res.fields[j]);
        bool inside = true;
        for (const Vec& x : samples) {
          std::vector<VectorField> current = res.fields;
          current.insert(current.end(), added.begin(), added.end());
          if (!in_span(stack(current, x), br(x))) {
            inside = false;
            break;
          }
        }
        if (!inside) added.push_back(br);
      }
    }
    if (added.empty()) {
      res.closed = true;
      res.depth = depth;
      break;
    }
    if (depth + 1 > max_depth) {
      res.depth = depth;
      res.closed = false;
      break;
    }
    fresh_from = count;
    res.fields.insert(res.fields.end(), added.begin(), added.end());
  }
  for (const Vec& x : samples) {
    res.span_dimension = std::max(res.span_dimension, numeric_rank(stack(res.fields, x), 1e-8));
  }
  return res;
}

}  // namespace matching
