#include "absolve/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absolve/errors.hpp"
#include "absolve/strategies.hpp"

namespace absolve {

namespace {

bool is_spd(const RealMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) return false;
  const double scale = std::max(max_abs(m), std::numeric_limits<double>::min());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale) return false;
  RealMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (diag <= 1e-14 * scale) return false;
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = m(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  return true;
}

void check_problem(const FeasibleProblem& p) {
  const std::size_t n = p.A.cols();
  if (p.b.size() != p.A.rows()) throw ShapeError("constraints: b does not match A");
  if (p.Q.rows() != n || p.Q.cols() != n) throw ShapeError("direction metric Q has the wrong size");
  if (!p.f || !p.grad) throw ValueError("objective and gradient are required");
}

double infeasibility(const FeasibleProblem& p, const RealVector& x) { return norm2(residual(p.A, x, p.b)); }

// Backtracking from the curvature estimate along d: the first trial
// α0 = dᵀg / dᵀ(g − ∇f(x − d)) is the exact line minimizer on quadratics.
// Trials are halved until f(x − αd) ≤ f(x) − c1·α·dᵀg. When the change in f
// is at rounding level the directional derivative decides instead.
std::optional<double> armijo(const FeasibleProblem& p, const RealVector& x, const RealVector& g, const RealVector& d,
                             double slope, const DescentOptions& o) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double f0 = p.f(x);
  RealVector probe = x;
  axpy(-1.0, d, probe);
  const double curvature = dot(d, g - p.grad(probe));
  double alpha = curvature > 0.0 && std::isfinite(curvature) ? slope / curvature : 1.0;
  for (std::size_t k = 0; k <= o.max_backtracks; ++k) {
    RealVector trial = x;
    axpy(-alpha, d, trial);
    const double ft = p.f(trial);
    if (ft <= f0 - o.armijo_c1 * alpha * slope) return alpha;
    if (std::abs(ft - f0) <= 16.0 * eps * (1.0 + std::abs(f0)) &&
        std::abs(dot(d, p.grad(trial))) <= (1.0 - o.armijo_c1) * slope)
      return alpha;
    alpha *= 0.5;
  }
  return std::nullopt;
}

}  // namespace

RealMatrix null_space_operator(const RealMatrix& A, Variant variant, const std::optional<RealMatrix>& H1,
                               double tol) {
  StrategySpec spec;
  switch (variant) {
    case Variant::ReducedGradient:
      spec = implicit_lu(Pivoting::Auto);
      break;
    case Variant::RosenProjection:
      spec = modified_huang();
      break;
    case Variant::GoldfarbIdnani:
      if (!H1) throw PreconditionError("Goldfarb-Idnani variant needs an initial matrix H1");
      if (!is_spd(*H1)) throw PreconditionError("H1 must be symmetric positive definite");
      spec = huang(*H1);
      break;
  }
  SolveOptions opts;
  opts.tol = tol;
  const SolveReport rep = solve(A, RealVector(A.rows()), spec, opts);
  if (!rep.redundant.empty()) throw RankDeficiencyError("constraints are degenerate (dependent rows)", rep.redundant.front());
  return rep.H;
}

KtCertificate kt_certificate(const RealMatrix& A, const RealVector& g, double tol) {
  const RealMatrix at = transpose(A);
  const SolveReport ls = solve_least_squares(at, g, tol);
  return KtCertificate{ls.x, norm2(residual(at, ls.x, g))};
}

StepResult descent_step(const FeasibleProblem& p, const RealMatrix& H, const RealVector& x,
                        const DescentOptions& o) {
  check_problem(p);
  const RealVector g = p.grad(x);
  const RealVector hg = matvec(H, g);
  StepResult out;
  if (norm2(hg) <= o.kt_tol * (1.0 + norm2(g))) {
    out.x = x;
    out.kt = kt_certificate(p.A, g);
    out.direction = RealVector(x.size());
    return out;
  }
  out.direction = matvec_transposed(H, matvec(p.Q, hg));
  const double slope = dot(out.direction, g);
  const auto alpha = armijo(p, x, g, out.direction, slope, o);
  if (!alpha) throw LineSearchError("Armijo backtracking found no acceptable step");
  out.alpha = *alpha;
  out.x = x;
  axpy(-out.alpha, out.direction, out.x);
  return out;
}

MinimizeReport minimize(const FeasibleProblem& p, const RealVector& x1, std::size_t max_iterations,
                        const DescentOptions& o) {
  check_problem(p);
  if (!is_spd(p.Q)) throw PreconditionError("direction metric Q must be symmetric positive definite");
  if (infeasibility(p, x1) > 1e-8 * (1.0 + norm2(p.b))) throw PreconditionError("initial point is not feasible");
  const RealMatrix H = null_space_operator(p.A, p.variant, p.H1);

  MinimizeReport rep;
  rep.x = x1;
  rep.objective.push_back(p.f(x1));
  rep.max_infeasibility = infeasibility(p, x1);
  while (rep.iterations < max_iterations) {
    StepResult st = descent_step(p, H, rep.x, o);
    if (st.kt) {
      rep.status = MinimizeStatus::KtPoint;
      rep.kt = std::move(st.kt);
      return rep;
    }
    rep.x = std::move(st.x);
    ++rep.iterations;
    rep.objective.push_back(p.f(rep.x));
    rep.max_infeasibility = std::max(rep.max_infeasibility, infeasibility(p, rep.x));
  }
  rep.status = MinimizeStatus::MaxIterations;
  return rep;
}

NonnegStep nonneg_step(const FeasibleProblem& p, const RealMatrix& H, const RealVector& x,
                       const DescentOptions& o) {
  check_problem(p);
  for (double v : x)
    if (v < 0.0) throw PreconditionError("nonneg_step needs x >= 0");
  const RealVector g = p.grad(x);
  const RealVector hg = matvec(H, g);
  NonnegStep out;
  out.x = x;
  if (norm2(hg) <= o.kt_tol * (1.0 + norm2(g))) {
    out.kt = kt_certificate(p.A, g);
    out.beta = 0.0;
    return out;
  }
  const RealVector d = matvec_transposed(H, matvec(p.Q, hg));
  const double slope = dot(d, g);
  if (norm2(d) <= o.kt_tol * norm2(hg) || slope <= 0.0)
    throw NumericalError("null-space direction vanishes away from a KT point");
  const auto alpha = armijo(p, x, g, d, slope, o);
  if (!alpha) throw LineSearchError("Armijo backtracking found no acceptable step");
  out.alpha = *alpha;

  std::optional<std::size_t> blocking;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (d[i] <= 0.0) continue;
    const double limit = x[i] / (out.alpha * d[i]);
    if (limit < out.beta) {
      out.beta = limit;
      blocking = i;
    }
  }
  if (out.beta <= 0.0) {
    out.beta = 0.0;
    out.blocked = true;
    return out;
  }
  axpy(-out.alpha * out.beta, d, out.x);
  if (blocking) out.x[*blocking] = 0.0;
  for (auto& v : out.x)
    if (v < 0.0) v = 0.0;
  return out;
}

UnconstrainedReport abs_unconstrained_min(const Objective& f, const Gradient& g, const RealVector& x1,
                                          const UnconstrainedOptions& o) {
  const std::size_t n = x1.size();
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  UnconstrainedReport rep;
  rep.x = x1;
  RealVector grad = g(rep.x);
  const double gstop = o.gtol * (1.0 + norm2(grad));

  while (rep.sweeps < o.max_outer) {
    ++rep.sweeps;
    RealMatrix H = RealMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (norm2(grad) <= gstop) {
        rep.status = UnconstrainedStatus::Converged;
        return rep;
      }
      RealVector z = grad;
      RealVector p = matvec_transposed(H, z);
      if (dot(p, grad) < 0.0) {
        for (auto& v : z) v = -v;
        for (auto& v : p) v = -v;
      }
      const double pn = norm2(p);
      if (pn == 0.0) break;

      // gradient difference along the realized displacement Δ = x − x'
      const double beta = root_eps * (1.0 + norm2(rep.x));
      RealVector xp = rep.x;
      axpy(-beta, p, xp);
      const RealVector delta = rep.x - xp;
      const RealVector y = grad - g(xp);

      const double curvature = dot(delta, y);
      const double slope = dot(delta, grad);
      if (curvature <= std::numeric_limits<double>::epsilon() * norm2(delta) * norm2(y) || !std::isfinite(curvature)) {
        rep.status = UnconstrainedStatus::Unbounded;
        return rep;
      }
      const double alpha = slope / curvature;
      RealVector next = rep.x;
      axpy(-alpha, delta, next);
      const RealVector gnext = g(next);
      if (!std::isfinite(f(next))) {
        rep.status = UnconstrainedStatus::Unbounded;
        return rep;
      }
      rep.x = std::move(next);
      ++rep.steps;

      // H ← H − (Hy)(Hᵀw)ᵀ / wᵀHy with w = z
      const RealVector s = matvec(H, y);
      const double ws = dot(z, s);
      grad = gnext;
      if (std::abs(ws) <= root_eps * norm2(z) * norm2(s)) break;
      outer_update_inplace(H, s, matvec_transposed(H, z), ws);
    }
    if (norm2(grad) <= gstop) {
      rep.status = UnconstrainedStatus::Converged;
      return rep;
    }
  }
  rep.status = UnconstrainedStatus::MaxIterations;
  return rep;
}

}  // namespace absolve
