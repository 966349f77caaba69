#pragma once

// The scaled ABS iteration for Ax = b (m ≤ n, arbitrary rank):
//
//   s_i = H_i Aᵀv_i,  p_i = H_iᵀz_i,  x_{i+1} = x_i − α_i p_i,
//   α_i = v_iᵀ(Ax_i − b) / v_iᵀA p_i,
//   H_{i+1} = H_i − s_i (H_iᵀw_i)ᵀ / w_iᵀs_i.
//
// A particular method is a StrategySpec supplying H_1 and, per step, the
// scaling v_i followed by the pair (z_i, w_i).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absolve/linalg.hpp"

namespace absolve {

inline constexpr double kDefaultTol = 1e-11;
inline constexpr double kDefaultReportTol = 1e-8;

enum class StepOutcome { Advanced, Redundant, Incompatible };

/// How H is updated once p_i is known.
enum class UpdateForm {
  Oblique,      ///< H − s (Hᵀw)ᵀ / wᵀs
  Reprojected,  ///< H − p pᵀ / pᵀp (modified Huang)
};

/// Number of steps the procedure runs.
enum class StepBudget {
  Rows,         ///< one step per equation (m)
  MinRowsCols,  ///< min(m, n); used by the orthogonally scaled least-squares run
};

enum class StorageMode {
  Dense,     ///< H kept as an explicit n×n matrix
  Factored,  ///< H = H_1 − Σ_j u_j r_jᵀ / d_j kept as vector pairs
};

/// The Abaffian H_i behind a small interface so that both storage modes can
/// drive the same iteration.
class Abaffian {
 public:
  Abaffian() = default;
  explicit Abaffian(RealMatrix h1, StorageMode mode = StorageMode::Dense);

  std::size_t size() const noexcept { return h_.rows(); }
  StorageMode mode() const noexcept { return mode_; }

  RealVector apply(const RealVector& q) const;             // H q
  RealVector apply_transposed(const RealVector& q) const;  // Hᵀ q

  /// H ← H − u rᵀ / denom
  void subtract_outer(const RealVector& u, const RealVector& r, double denom);

  RealMatrix dense() const;
  /// Exact ‖H‖_F for dense storage; a triangle-inequality upper bound for
  /// factored storage.
  double frobenius_estimate() const;
  std::size_t term_count() const noexcept { return terms_.size(); }

 private:
  struct Term {
    RealVector u;
    RealVector r;
    double denom;
  };
  StorageMode mode_ = StorageMode::Dense;
  RealMatrix h_;  // the current H (dense) or H_1 (factored)
  std::vector<Term> terms_;
  double h1_frobenius_ = 0.0;
  double term_bound_ = 0.0;
};

struct StepRecord {
  StepOutcome outcome = StepOutcome::Advanced;
  std::size_t index = 0;  // step (equation) number, 0-based
  RealVector v;
  RealVector atv;  // Aᵀv
  RealVector s;
  RealVector z;
  RealVector w;
  RealVector p;
  double alpha = 0.0;
  double v_ap = 0.0;  // vᵀA p
  double w_s = 0.0;   // wᵀs (pᵀp for the reprojected form)
  std::optional<std::size_t> pivot;
};

/// Columns chosen through unit-vector parameters (z = w = e_k).
struct PivotRecord {
  std::vector<std::size_t> chosen;
  std::vector<double> magnitudes;

  bool contains(std::size_t k) const;
  /// Unchosen indices in {0..n-1}, ascending.
  std::vector<std::size_t> complement(std::size_t n) const;
};

struct AbaffianState {
  Abaffian H;
  RealVector x;
  std::size_t step = 0;
  std::size_t redundant_count = 0;
  std::vector<StepRecord> history;  // redundant steps appear as skip markers
  PivotRecord pivots;
};

struct StepContext {
  const RealMatrix& A;
  const RealVector& b;
  const AbaffianState& state;
  std::size_t step;
  double tol;
};

struct StepParams {
  RealVector z;
  RealVector w;
  std::optional<std::size_t> pivot;
};

struct StepTriple {
  RealVector v;
  RealVector z;
  RealVector w;
};

struct StrategySpec {
  std::string name;
  /// H_1 for a problem with n unknowns; identity when empty.
  std::function<RealMatrix(std::size_t n)> initial_H;
  /// v_i, chosen before s_i = H_i Aᵀv_i is formed.
  std::function<RealVector(const StepContext&)> scaling;
  /// (z_i, w_i), chosen once s_i is known and nonzero.
  std::function<StepParams(const StepContext&, const RealVector& v, const RealVector& s)> directions;
  UpdateForm update = UpdateForm::Oblique;
  StepBudget budget = StepBudget::Rows;
};

enum class SolveStatus { Solved, Inconsistent, MaxedSteps };

struct SolveReport {
  SolveStatus status = SolveStatus::MaxedSteps;
  std::string method;
  RealVector x;
  RealMatrix H;  // final Abaffian H_{k+1}
  std::vector<std::size_t> redundant;
  std::optional<std::size_t> inconsistent_equation;
  double residual_norm = 0.0;
  std::size_t steps = 0;  // steps taken, redundant skips included
  std::vector<StepRecord> history;
  PivotRecord pivots;
  bool least_squares = false;
};

struct SolveOptions {
  double tol = kDefaultTol;
  double report_tol = kDefaultReportTol;
  std::optional<RealVector> x1;
  StorageMode storage = StorageMode::Dense;
  std::function<void(const AbaffianState&, StepOutcome)> observer;
};

AbaffianState make_state(const StrategySpec& strategy, std::size_t n,
                         std::optional<RealVector> x1 = std::nullopt,
                         StorageMode storage = StorageMode::Dense);

/// One step with explicitly supplied (v, z, w). Mutates state only on
/// Advanced/Redundant. Throws StrategyViolation when zᵀs or wᵀs vanishes
/// while s does not.
StepOutcome abs_step(AbaffianState& state, const RealMatrix& A, const RealVector& b,
                     const StepTriple& params, double tol, UpdateForm form = UpdateForm::Oblique);

/// One step with parameters drawn from a strategy.
StepOutcome advance(AbaffianState& state, const RealMatrix& A, const RealVector& b,
                    const StrategySpec& strategy, double tol);

/// Full procedure for m ≤ n.
SolveReport solve(const RealMatrix& A, const RealVector& b, const StrategySpec& strategy,
                  const SolveOptions& options = {});

/// Runs the strategy for its step budget without the m ≤ n precondition.
SolveReport run(const RealMatrix& A, const RealVector& b, const StrategySpec& strategy,
                const SolveOptions& options = {});

/// x_{m+1} + H_{m+1}ᵀ q.
RealVector general_solution(const SolveReport& report, const RealVector& q);

/// H_1 − H_1AᵀV (WᵀH_1AᵀV)⁻¹ WᵀH_1 for the first i = cols(V) steps.
RealMatrix abaffian_closed_form(const RealMatrix& H1, const RealMatrix& A, const RealMatrix& V,
                                const RealMatrix& W, double tol = kDefaultTol);

/// Entries v_jᵀ A p_k over the advanced steps of a report (lower triangular).
RealMatrix implicit_factor(const SolveReport& report, const RealMatrix& A);

/// Residual-correction rounds that reuse the stored search vectors and
/// stepsize denominators of a solved report. Residuals are computed in
/// doubled precision; a round that does not reduce ‖Ax − b‖ is rejected and
/// ends the refinement.
SolveReport iterative_refinement(const RealMatrix& A, const RealVector& b, const SolveReport& base,
                                 std::size_t max_rounds);

}  // namespace absolve
