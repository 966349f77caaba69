#include "absolve/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace absolve {

namespace {

RealVector unit_scaling(const StepContext& ctx) { return RealVector::unit(ctx.A.rows(), ctx.step); }

// argmax |s_k| over unchosen k (restricted to `allowed` when non-null);
// returns nullopt when every admissible |s_k| is within tol·‖s‖∞ of zero.
std::optional<std::size_t> largest_unchosen(const StepContext& ctx, const RealVector& s,
                                            const std::vector<bool>* allowed) {
  const double scale = norm_inf(s);
  std::optional<std::size_t> best;
  double best_mag = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (allowed && !(*allowed)[k]) continue;
    if (ctx.state.pivots.contains(k)) continue;
    const double mag = std::abs(s[k]);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  if (!best || best_mag <= ctx.tol * scale) return std::nullopt;
  return best;
}

}  // namespace

StrategySpec huang(std::optional<RealMatrix> initial_H) {
  StrategySpec spec;
  spec.name = "huang";
  if (initial_H) {
    auto h1 = std::make_shared<const RealMatrix>(std::move(*initial_H));
    spec.initial_H = [h1](std::size_t n) {
      if (h1->rows() != n) throw ShapeError("huang: initial H has the wrong size");
      return *h1;
    };
  }
  spec.scaling = unit_scaling;
  spec.directions = [](const StepContext& ctx, const RealVector&, const RealVector&) {
    RealVector a = ctx.A.row(ctx.step);
    return StepParams{a, a, std::nullopt};
  };
  return spec;
}

StrategySpec modified_huang() {
  StrategySpec spec;
  spec.name = "mhuang";
  spec.scaling = unit_scaling;
  // z = H a; the engine forms p = Hᵀz = H(Ha) and the reprojected update.
  spec.directions = [](const StepContext&, const RealVector&, const RealVector& s) {
    return StepParams{s, s, std::nullopt};
  };
  spec.update = UpdateForm::Reprojected;
  return spec;
}

StrategySpec implicit_lu(Pivoting pivoting) {
  StrategySpec spec;
  spec.name = pivoting == Pivoting::None ? "ilu-nopivot" : "ilu";
  spec.scaling = unit_scaling;
  spec.directions = [pivoting](const StepContext& ctx, const RealVector&, const RealVector& s) {
    const std::size_t n = s.size();
    std::size_t k = ctx.step;
    const bool plain_ok = k < n && !ctx.state.pivots.contains(k) && std::abs(s[k]) > ctx.tol * norm_inf(s);
    if (pivoting == Pivoting::Auto && !plain_ok) {
      auto alt = largest_unchosen(ctx, s, nullptr);
      if (!alt) throw RankDeficiencyError("implicit LU: no admissible pivot", ctx.step);
      k = *alt;
    } else if (k >= n) {
      throw ShapeError("implicit LU: more equations than unknowns");
    }
    RealVector e = RealVector::unit(n, k);
    return StepParams{e, e, k};
  };
  return spec;
}

StrategySpec implicit_lx(std::optional<std::vector<std::size_t>> candidates) {
  StrategySpec spec;
  spec.name = "ilx";
  std::shared_ptr<const std::vector<std::size_t>> cand;
  if (candidates) cand = std::make_shared<const std::vector<std::size_t>>(std::move(*candidates));
  spec.scaling = unit_scaling;
  spec.directions = [cand](const StepContext& ctx, const RealVector&, const RealVector& s) {
    const std::size_t n = s.size();
    std::vector<bool> allowed;
    if (cand) {
      allowed.assign(n, false);
      for (std::size_t k : *cand) {
        if (k >= n) throw ShapeError("implicit LX: candidate column out of range");
        allowed[k] = true;
      }
    }
    auto k = largest_unchosen(ctx, s, cand ? &allowed : nullptr);
    if (!k) throw RankDeficiencyError("implicit LX: dependent row", ctx.step);
    RealVector e = RealVector::unit(n, *k);
    return StepParams{e, e, *k};
  };
  return spec;
}

StrategySpec conjugate_direction() {
  StrategySpec spec;
  spec.name = "cd";
  spec.scaling = [](const StepContext& ctx) {
    if (ctx.A.rows() != ctx.A.cols()) throw ShapeError("conjugate direction subclass needs a square matrix");
    return ctx.state.H.apply_transposed(RealVector::unit(ctx.A.cols(), ctx.step));
  };
  spec.directions = [](const StepContext& ctx, const RealVector&, const RealVector& s) {
    // s_i = e_iᵀH A p = pᵀA p; its vanishing is a breakdown of the subclass.
    if (std::abs(s[ctx.step]) <= ctx.tol * norm2(s))
      throw PreconditionError("conjugate direction breakdown: p'Ap = 0 (matrix not positive definite?)");
    RealVector e = RealVector::unit(s.size(), ctx.step);
    return StepParams{e, e, std::nullopt};
  };
  return spec;
}

StrategySpec orthogonally_scaled() {
  StrategySpec spec;
  spec.name = "os";
  spec.budget = StepBudget::MinRowsCols;
  spec.scaling = [](const StepContext& ctx) {
    return matvec(ctx.A, ctx.state.H.apply_transposed(RealVector::unit(ctx.A.cols(), ctx.step)));
  };
  spec.directions = [](const StepContext& ctx, const RealVector&, const RealVector& s) {
    if (std::abs(s[ctx.step]) <= ctx.tol * norm2(s))
      throw PreconditionError("orthogonally scaled breakdown: A p = 0 (matrix not of full column rank?)");
    RealVector e = RealVector::unit(s.size(), ctx.step);
    return StepParams{e, e, std::nullopt};
  };
  return spec;
}

SolveReport solve_least_squares(const RealMatrix& A, const RealVector& b, double tol) {
  if (A.rows() < A.cols()) throw ShapeError("least squares expects m >= n");
  SolveOptions opts;
  opts.tol = tol;
  SolveReport rep = run(A, b, orthogonally_scaled(), opts);
  if (rep.inconsistent_equation) throw RankDeficiencyError("least squares: rank deficient matrix", *rep.inconsistent_equation);
  if (!rep.redundant.empty()) throw RankDeficiencyError("least squares: rank deficient matrix", rep.redundant.front());
  rep.least_squares = true;
  rep.method = "ls";
  const RealVector r = residual(A, rep.x, b);
  const double normal = norm2(matvec_transposed(A, r));
  const double fa = frobenius(A);
  const bool stationary = normal <= opts.report_tol * fa * (fa * norm2(rep.x) + norm2(b));
  rep.status = stationary ? SolveStatus::Solved : SolveStatus::MaxedSteps;
  return rep;
}

std::size_t numerical_rank(const RealMatrix& A, double tol) {
  SolveOptions opts;
  opts.tol = tol;
  const SolveReport rep = run(A, RealVector(A.rows()), modified_huang(), opts);
  return rep.steps - rep.redundant.size();
}

}  // namespace absolve
