#pragma once

#include <optional>
#include <vector>

#include "absolve/engine.hpp"

namespace absolve {

/// Huang: H_1 = I (or a given SPD matrix), z_i = w_i = a_i, v_i = e_i.
/// With H_1 = B⁻¹ the iterates are least-norm in the B-weighted norm.
StrategySpec huang(std::optional<RealMatrix> initial_H = std::nullopt);

/// Modified Huang: p_i = H_i(H_i a_i), H_{i+1} = H_i − p_i p_iᵀ / p_iᵀp_i.
StrategySpec modified_huang();

enum class Pivoting {
  None,  ///< plain z_i = w_i = e_i; requires a strongly nonsingular matrix
  Auto,  ///< fall back to the largest |e_kᵀH_ia_i| over unchosen columns
};

/// Implicit LU: H_1 = I, z_i = w_i = v_i = e_i.
StrategySpec implicit_lu(Pivoting pivoting = Pivoting::Auto);

/// Implicit LX: H_1 = I, v_i = e_i, z_i = w_i = e_{k_i} with k_i maximizing
/// |e_kᵀH_ia_i| over unchosen columns (ties to the lowest index). When
/// `candidates` is given, k_i is restricted to that column set.
StrategySpec implicit_lx(std::optional<std::vector<std::size_t>> candidates = std::nullopt);

/// Conjugate direction subclass with z_i = w_i = e_i and v_i = p_i. Needs a
/// square matrix; SPD is sufficient for it to be well defined.
StrategySpec conjugate_direction();

/// Orthogonally scaled subclass with z_i = w_i = e_i and v_i = A p_i. Runs
/// min(m, n) steps, so it also covers m > n (least squares).
StrategySpec orthogonally_scaled();

/// Least-squares solution of an overdetermined full-column-rank system via
/// the orthogonally scaled subclass. Throws RankDeficiencyError when a step
/// finds s_i ≈ 0.
SolveReport solve_least_squares(const RealMatrix& A, const RealVector& b, double tol = kDefaultTol);

/// Number of non-redundant modified-Huang steps over the rows of A.
std::size_t numerical_rank(const RealMatrix& A, double tol = kDefaultTol);

}  // namespace absolve
