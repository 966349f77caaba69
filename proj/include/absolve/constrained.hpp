#pragma once

// Feasible-direction minimization under Ax = b through the null-space
// Abaffian H = H_{m+1} (A Hᵀq = 0 for every q), the standard-form iteration for
// x ≥ 0, and the A-free ABS minimizer for unconstrained problems.

#include <functional>
#include <optional>

#include "absolve/engine.hpp"
#include "absolve/linalg.hpp"

namespace absolve {

using Objective = std::function<double(const RealVector&)>;
using Gradient = std::function<RealVector(const RealVector&)>;

enum class Variant { ReducedGradient, RosenProjection, GoldfarbIdnani };

struct FeasibleProblem {
  Objective f;
  Gradient grad;
  RealMatrix A;
  RealVector b;
  RealMatrix Q;                     // SPD direction metric
  Variant variant = Variant::RosenProjection;
  std::optional<RealMatrix> H1;     // SPD inverse-Hessian estimate, GoldfarbIdnani only
};

struct KtCertificate {
  RealVector lambda;
  double residual = 0.0;  // ‖∇f − Aᵀλ‖
};

/// ReducedGradient: implicit LU; RosenProjection: modified Huang;
/// GoldfarbIdnani: Huang started from H1. Throws RankDeficiencyError when A
/// lacks full row rank and PreconditionError when H1 is not SPD.
RealMatrix null_space_operator(const RealMatrix& A, Variant variant, const std::optional<RealMatrix>& H1 = std::nullopt,
                               double tol = kDefaultTol);

/// Multipliers from the least-squares problem Aᵀλ ≈ g.
KtCertificate kt_certificate(const RealMatrix& A, const RealVector& g, double tol = kDefaultTol);

struct DescentOptions {
  double kt_tol = 1e-9;  // ‖H∇f‖ ≤ kt_tol·(1 + ‖∇f‖) declares a KT point
  double armijo_c1 = 1e-4;
  std::size_t max_backtracks = 60;
};

struct StepResult {
  RealVector x;
  std::optional<KtCertificate> kt;
  RealVector direction;  // d, with x_next = x − αd
  double alpha = 0.0;
};

/// One iteration x − αd with d = Hᵀq, q = QH∇f and α from Armijo backtracking.
/// Throws LineSearchError when no step is accepted.
StepResult descent_step(const FeasibleProblem& problem, const RealMatrix& H, const RealVector& x,
                        const DescentOptions& options = {});

enum class MinimizeStatus { KtPoint, MaxIterations };

struct MinimizeReport {
  MinimizeStatus status = MinimizeStatus::MaxIterations;
  RealVector x;
  std::optional<KtCertificate> kt;
  std::size_t iterations = 0;
  double max_infeasibility = 0.0;  // max over iterates of ‖Ax − b‖
  std::vector<double> objective;   // f at every iterate
};

/// Descent iteration from a feasible x1. Throws PreconditionError when x1 is
/// infeasible or Q is not SPD.
MinimizeReport minimize(const FeasibleProblem& problem, const RealVector& x1, std::size_t max_iterations = 10000,
                        const DescentOptions& options = {});

struct NonnegStep {
  RealVector x;
  std::optional<KtCertificate> kt;
  double alpha = 0.0;
  double beta = 1.0;
  bool blocked = false;  // a zero component stops the move (β = 0)
};

/// x − αβd with d = HᵀQH∇f: α by Armijo on the free step, then the largest
/// β ∈ (0, 1] keeping x ≥ 0. Components reaching zero are set to zero.
/// Throws NumericalError when d vanishes away from a KT point.
NonnegStep nonneg_step(const FeasibleProblem& problem, const RealMatrix& H, const RealVector& x,
                       const DescentOptions& options = {});

enum class UnconstrainedStatus { Converged, Unbounded, MaxIterations };

struct UnconstrainedReport {
  UnconstrainedStatus status = UnconstrainedStatus::MaxIterations;
  RealVector x;
  std::size_t steps = 0;
  std::size_t sweeps = 0;
};

struct UnconstrainedOptions {
  double gtol = 1e-10;  // ‖g‖ ≤ gtol·(1 + ‖g(x1)‖)
  std::size_t max_outer = 50;
};

/// ABS minimization without A: H_1 = I, z = w = ∇f, and Aᵀv replaced by a
/// gradient difference along the search direction; H is reset every n steps.
UnconstrainedReport abs_unconstrained_min(const Objective& f, const Gradient& g, const RealVector& x1,
                                          const UnconstrainedOptions& options = {});

}  // namespace absolve
