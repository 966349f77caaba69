#pragma once

// Updates B' satisfying the secant equation dᵀB' = yᵀ, solved column by
// column as small ABS problems.

#include <vector>

#include "absolve/engine.hpp"
#include "absolve/linalg.hpp"

namespace absolve {

struct SecantData {
  RealVector d;  // x' − x
  RealVector y;  // g' − g
  RealMatrix B;
  RealVector s;  // free parameter, sᵀd ≠ 0
  RealMatrix Q;  // free parameter
};

/// B' = B − s(Bᵀd − y)ᵀ/dᵀs + (I − sdᵀ/dᵀs)Q. Throws ParameterError when
/// |sᵀd| ≤ tol‖s‖‖d‖ and ShapeError on mismatched sizes.
RealMatrix qn_general_update(const SecantData& data, double tol = kDefaultTol);

struct EntryConstraint {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;  // zero encodes sparsity
};

struct StructureSpec {
  std::vector<EntryConstraint> fixed;
  bool symmetric = false;
  /// Push each of the first n−1 diagonal entries up to the sum of the other
  /// absolute entries of its column in the leading block plus `margin`,
  /// whenever the column keeps a free direction for it.
  bool large_diagonal = false;
  double margin = 1.0;
};

/// Columns processed in order 0..n−1. Column j starts from B's column j and
/// takes, in this order, its fixed entries, the symmetry values from earlier
/// columns, and the secant row; Huang's method gives the least change.
/// Throws InfeasibleStructureError when a column's constraints conflict.
RealMatrix qn_structured_update(const SecantData& data, const StructureSpec& spec, double tol = kDefaultTol);

/// ‖dᵀB' − yᵀ‖∞.
double secant_residual(const RealMatrix& Bp, const RealVector& d, const RealVector& y);

}  // namespace absolve
