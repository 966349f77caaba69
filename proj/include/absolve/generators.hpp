#pragma once

// Seeded test problems: dense systems with prescribed conditioning, integer
// systems with small entries, and bounded standard-form LPs.

#include <cstdint>

#include "absolve/linalg.hpp"

namespace absolve {

struct ConditionedProblem {
  RealMatrix A;
  RealVector b;
  RealVector x_true;  // all ones
  RealVector singular_values;
};

/// A = U diag(σ) Vᵀ with σ log-spaced from 1 down to 1/cond and U, V the Q
/// factors of seeded Gaussian matrices. Entries are rounded to a common
/// power-of-two grid fine enough that b = A·1 is computed without rounding,
/// so x_true is the exact solution of the stored system.
ConditionedProblem generate_conditioned(std::size_t n, double cond, std::uint64_t seed);

struct IntegerProblem {
  IntMatrix A;
  IntVector b;
  IntVector x_true;
};

/// Entries of A and x_true uniform in [lo, hi]; b = A x_true.
IntegerProblem generate_integer(std::size_t m, std::size_t n, long lo, long hi, std::uint64_t seed);

struct LpProblem {
  RealMatrix A;
  RealVector b;
  RealVector c;
};

/// Row 0 strictly positive (bounded feasible set), b = A x0 for x0 > 0.
LpProblem generate_lp(std::size_t m, std::size_t n, std::uint64_t seed);

}  // namespace absolve
