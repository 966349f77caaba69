#pragma once

// Integer ABS solver for Ax = b, x ∈ Zⁿ (m ≤ n). Parameters: H_1 = I,
// v_i = e_i, and z_i = w_i a gcd certificate of s_i = H_i a_i, so every
// H_i and x_i stays integral and solvability reduces to δ_i | τ_i per step.

#include <functional>
#include <optional>
#include <vector>

#include "absolve/linalg.hpp"

namespace absolve {

struct GcdCertificate {
  Integer delta;  // gcd(s) > 0
  IntVector z;    // zᵀs = delta
};

/// δ = gcd(s) together with z satisfying zᵀs = δ. Nonzero entries are folded
/// by pairwise extended Euclid in increasing magnitude, so the largest entry
/// is combined last. Throws ValueError for s = 0.
GcdCertificate gcd_certificate(const IntVector& s);

/// (g, x, y) with g = gcd(a, b) ≥ 0 and x·a + y·b = g.
struct Bezout {
  Integer g;
  Integer x;
  Integer y;
};
Bezout extended_gcd(const Integer& a, const Integer& b);

enum class DioStatus { Solved, Incompatible, IntegerInconsistent };

struct DioStep {
  std::size_t index = 0;
  bool redundant = false;
  IntVector s;
  Integer delta;
  Integer tau;
  Integer alpha;
  IntVector z;
  IntVector p;
};

struct DioReport {
  DioStatus status = DioStatus::Solved;
  std::optional<std::size_t> failed_equation;
  IntVector x;
  IntMatrix H;  // final Abaffian
  std::vector<std::size_t> redundant;
  std::vector<DioStep> steps;
};

/// Observer called after every processed equation with the current H and x.
using DioObserver = std::function<void(std::size_t step, const IntMatrix& H, const IntVector& x)>;

DioReport dio_solve(const IntMatrix& A, const IntVector& b, const DioObserver& observer = {});

/// x_{m+1} + H_{m+1}ᵀ q; every integer q gives an integer solution and every
/// integer solution arises this way.
IntVector dio_general_solution(const DioReport& report, const IntVector& q);

}  // namespace absolve
