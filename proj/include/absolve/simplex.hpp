#pragma once

// Simplex method for min cᵀx s.t. Ax = b, x ≥ 0 carried out on the implicit
// LX Abaffian H = H_{m+1}. Rows of H indexed by basic columns vanish, columns
// indexed by nonbasic columns are unit vectors, and row N of H is the edge
// direction that raises x_N. A is only read by lp_init.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "absolve/linalg.hpp"

namespace absolve {

enum class LpStatus { Optimal, Unbounded, Infeasible, IterLimit };

struct LpState {
  RealMatrix H;
  std::vector<std::size_t> basic;     // sorted
  std::vector<std::size_t> nonbasic;  // sorted
  RealVector x;
  RealVector c;
  double objective = 0.0;
  double tol = 1e-11;
  // checksum row yᵀ = 1ᵀA and β = 1ᵀb, used to monitor Ax = b without A
  RealVector checksum;
  double checksum_rhs = 0.0;
  std::size_t degenerate_run = 0;
  std::uint64_t last_pivot_mults = 0;
  bool phase_one = false;  // true when the artificial auxiliary problem was needed
  std::size_t init_pivots = 0;
};

/// Feasible starting vertex, or nullopt when the constraints admit no x ≥ 0.
/// Throws ShapeError for m > n and RankDeficiencyError when A lacks full row rank.
std::optional<LpState> lp_init(const RealMatrix& A, const RealVector& b, const RealVector& c, double tol = 1e-11);

/// r = Hc; its entries over the nonbasic set are the reduced costs.
RealVector reduced_costs(const LpState& state);

/// Most negative reduced cost below −tol (Bland: lowest such index); nullopt at optimality.
std::optional<std::size_t> entering_index(const LpState& state, bool bland = false);

/// Edge displacement d with x' = x − ω d, that is d = −Hᵀe_{N*}.
RealVector edge_displacement(const LpState& state, std::size_t n_star);

struct RatioResult {
  std::optional<std::size_t> leaving;  // nullopt: unbounded edge
  double omega = 0.0;
};
RatioResult ratio_test(const LpState& state, std::size_t n_star);

/// Exchange B* (basic) with N* (nonbasic) through the rank-one correction
/// H' = H − (He_{B*} − e_{B*}) e_{N*}ᵀH / e_{N*}ᵀHe_{B*}; x moves along the
/// edge by ω = x_{B*}/d_{B*}. Throws NumericalError on a tiny pivot.
void pivot_inplace(LpState& state, std::size_t b_star, std::size_t n_star);
LpState pivot(const LpState& state, std::size_t b_star, std::size_t n_star);

/// |yᵀx − β| for the init-time checksum.
double feasibility_residual(const LpState& state);

struct LpReport {
  LpStatus status = LpStatus::Optimal;
  RealVector x;
  double objective = 0.0;
  std::size_t pivots = 0;
  bool phase_one = false;
  std::size_t phase_one_pivots = 0;
  std::vector<std::size_t> basic;
  RealVector reduced_costs;
};

/// Observer invoked after every main-phase pivot.
using LpObserver = std::function<void(const LpState&)>;

LpReport lp_solve(const RealMatrix& A, const RealVector& b, const RealVector& c, double tol = 1e-11,
                  std::size_t max_pivots = 10000, const LpObserver& observer = {});

}  // namespace absolve
