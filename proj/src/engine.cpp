#include "absolve/engine.hpp"

#include <algorithm>
#include <cmath>

namespace absolve {

// ---------------------------------------------------------------------------
// Abaffian

Abaffian::Abaffian(RealMatrix h1, StorageMode mode) : mode_(mode), h_(std::move(h1)) {
  if (h_.rows() != h_.cols() || h_.rows() == 0) throw ShapeError("initial Abaffian must be square and non-empty");
  h1_frobenius_ = frobenius(h_);
}

RealVector Abaffian::apply(const RealVector& q) const {
  RealVector out = matvec(h_, q);
  for (const Term& t : terms_) axpy(-dot(t.r, q) / t.denom, t.u, out);
  return out;
}

RealVector Abaffian::apply_transposed(const RealVector& q) const {
  RealVector out = matvec_transposed(h_, q);
  for (const Term& t : terms_) axpy(-dot(t.u, q) / t.denom, t.r, out);
  return out;
}

void Abaffian::subtract_outer(const RealVector& u, const RealVector& r, double denom) {
  if (mode_ == StorageMode::Dense) {
    outer_update_inplace(h_, u, r, denom);
    return;
  }
  if (u.size() != size() || r.size() != size()) throw ShapeError("Abaffian update: length mismatch");
  if (denom == 0.0) throw DivisionGuardError("Abaffian update: zero denominator");
  term_bound_ += norm2(u) * norm2(r) / std::abs(denom);
  terms_.push_back({u, r, denom});
}

RealMatrix Abaffian::dense() const {
  RealMatrix out = h_;
  for (const Term& t : terms_) outer_update_inplace(out, t.u, t.r, t.denom);
  return out;
}

double Abaffian::frobenius_estimate() const {
  if (mode_ == StorageMode::Dense) return frobenius(h_);
  return h1_frobenius_ + term_bound_;
}

// ---------------------------------------------------------------------------
// PivotRecord

bool PivotRecord::contains(std::size_t k) const {
  return std::find(chosen.begin(), chosen.end(), k) != chosen.end();
}

std::vector<std::size_t> PivotRecord::complement(std::size_t n) const {
  std::vector<bool> used(n, false);
  for (std::size_t k : chosen)
    if (k < n) used[k] = true;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k)
    if (!used[k]) out.push_back(k);
  return out;
}

// ---------------------------------------------------------------------------
// Iteration

AbaffianState make_state(const StrategySpec& strategy, std::size_t n, std::optional<RealVector> x1,
                         StorageMode storage) {
  RealMatrix h1 = strategy.initial_H ? strategy.initial_H(n) : RealMatrix::identity(n);
  if (h1.rows() != n || h1.cols() != n) throw ShapeError("strategy produced an initial H of the wrong size");
  AbaffianState state;
  state.H = Abaffian(std::move(h1), storage);
  if (x1) {
    if (x1->size() != n) throw ShapeError("x1 length does not match the number of unknowns");
    state.x = *x1;
  } else {
    state.x = RealVector(n);
  }
  return state;
}

namespace {

struct Probe {
  RealVector atv;
  RealVector s;
  double tau = 0.0;
  bool s_zero = false;
  bool tau_zero = false;
};

Probe probe(const AbaffianState& state, const RealMatrix& A, const RealVector& b, const RealVector& v,
            double tol) {
  if (v.size() != A.rows()) throw ShapeError("scaling vector length must equal the number of equations");
  Probe pr;
  pr.atv = matvec_transposed(A, v);
  pr.s = state.H.apply(pr.atv);
  pr.tau = dot(pr.atv, state.x) - dot(v, b);
  pr.s_zero = norm2(pr.s) <= tol * norm2(pr.atv) * state.H.frobenius_estimate();
  pr.tau_zero = std::abs(pr.tau) <= tol * (frobenius(A) * norm2(state.x) + norm2(b)) * norm2(v);
  return pr;
}

StepOutcome classify_zero_s(AbaffianState& state, const Probe& pr, const RealVector& v) {
  if (!pr.tau_zero) return StepOutcome::Incompatible;
  StepRecord rec;
  rec.outcome = StepOutcome::Redundant;
  rec.index = state.step;
  rec.v = v;
  rec.atv = pr.atv;
  rec.s = pr.s;
  state.history.push_back(std::move(rec));
  ++state.redundant_count;
  ++state.step;
  return StepOutcome::Redundant;
}

StepOutcome finish_step(AbaffianState& state, Probe pr, const RealVector& v, const StepParams& params,
                        UpdateForm form, double tol) {
  const std::size_t n = state.H.size();
  if (params.z.size() != n || params.w.size() != n) throw ShapeError("z and w must have length n");
  const double s_norm = norm2(pr.s);
  const double sz = dot(pr.s, params.z);
  if (std::abs(sz) <= tol * s_norm * norm2(params.z))
    throw StrategyViolation("z is orthogonal to H A' v at step " + std::to_string(state.step));
  double ws = dot(pr.s, params.w);
  if (form == UpdateForm::Oblique && std::abs(ws) <= tol * s_norm * norm2(params.w))
    throw StrategyViolation("w is orthogonal to H A' v at step " + std::to_string(state.step));

  RealVector p = state.H.apply_transposed(params.z);
  const double v_ap = dot(pr.atv, p);
  if (v_ap == 0.0) throw StrategyViolation("zero stepsize denominator at step " + std::to_string(state.step));
  const double alpha = pr.tau / v_ap;
  axpy(-alpha, p, state.x);

  if (form == UpdateForm::Oblique) {
    RealVector r = state.H.apply_transposed(params.w);
    state.H.subtract_outer(pr.s, r, ws);
  } else {
    ws = dot(p, p);
    state.H.subtract_outer(p, p, ws);
  }

  StepRecord rec;
  rec.outcome = StepOutcome::Advanced;
  rec.index = state.step;
  rec.v = v;
  rec.atv = std::move(pr.atv);
  rec.s = std::move(pr.s);
  rec.z = params.z;
  rec.w = params.w;
  rec.p = std::move(p);
  rec.alpha = alpha;
  rec.v_ap = v_ap;
  rec.w_s = ws;
  rec.pivot = params.pivot;
  if (params.pivot) {
    state.pivots.chosen.push_back(*params.pivot);
    state.pivots.magnitudes.push_back(std::abs(rec.s[*params.pivot]));
  }
  state.history.push_back(std::move(rec));
  ++state.step;
  return StepOutcome::Advanced;
}

std::size_t step_count(const StrategySpec& strategy, const RealMatrix& A) {
  switch (strategy.budget) {
    case StepBudget::Rows: return A.rows();
    case StepBudget::MinRowsCols: return std::min(A.rows(), A.cols());
  }
  return A.rows();
}

void check_system(const RealMatrix& A, const RealVector& b) {
  if (A.rows() == 0 || A.cols() == 0) throw ShapeError("empty system");
  if (b.size() != A.rows()) throw ShapeError("rhs length must equal the number of equations");
}

}  // namespace

StepOutcome abs_step(AbaffianState& state, const RealMatrix& A, const RealVector& b, const StepTriple& params,
                     double tol, UpdateForm form) {
  check_system(A, b);
  Probe pr = probe(state, A, b, params.v, tol);
  if (pr.s_zero) return classify_zero_s(state, pr, params.v);
  return finish_step(state, std::move(pr), params.v, {params.z, params.w, std::nullopt}, form, tol);
}

StepOutcome advance(AbaffianState& state, const RealMatrix& A, const RealVector& b, const StrategySpec& strategy,
                    double tol) {
  check_system(A, b);
  const StepContext ctx{A, b, state, state.step, tol};
  RealVector v = strategy.scaling(ctx);
  Probe pr = probe(state, A, b, v, tol);
  if (pr.s_zero) return classify_zero_s(state, pr, v);
  StepParams params = strategy.directions(ctx, v, pr.s);
  return finish_step(state, std::move(pr), v, params, strategy.update, tol);
}

SolveReport run(const RealMatrix& A, const RealVector& b, const StrategySpec& strategy,
                const SolveOptions& options) {
  check_system(A, b);
  AbaffianState state = make_state(strategy, A.cols(), options.x1, options.storage);
  const std::size_t steps = step_count(strategy, A);

  SolveReport report;
  report.method = strategy.name;
  report.status = SolveStatus::MaxedSteps;
  bool incompatible = false;
  while (state.step < steps) {
    const std::size_t i = state.step;
    const StepOutcome out = advance(state, A, b, strategy, options.tol);
    if (options.observer) options.observer(state, out);
    if (out == StepOutcome::Incompatible) {
      incompatible = true;
      report.inconsistent_equation = i;
      break;
    }
  }

  report.x = state.x;
  report.H = state.H.dense();
  report.steps = state.step;
  for (const StepRecord& rec : state.history)
    if (rec.outcome == StepOutcome::Redundant) report.redundant.push_back(rec.index);
  report.residual_norm = norm2(residual(A, report.x, b));
  report.history = std::move(state.history);
  report.pivots = std::move(state.pivots);
  if (incompatible) {
    report.status = SolveStatus::Inconsistent;
  } else {
    const double scale = frobenius(A) * norm2(report.x) + norm2(b);
    report.status = report.residual_norm <= options.report_tol * scale ? SolveStatus::Solved : SolveStatus::MaxedSteps;
  }
  return report;
}

SolveReport solve(const RealMatrix& A, const RealVector& b, const StrategySpec& strategy,
                  const SolveOptions& options) {
  if (A.rows() > A.cols()) throw ShapeError("solve expects m <= n; use solve_least_squares for m > n");
  return run(A, b, strategy, options);
}

RealVector general_solution(const SolveReport& report, const RealVector& q) {
  if (report.status != SolveStatus::Solved) throw StateError("general_solution needs a solved report");
  if (q.size() != report.x.size()) throw ShapeError("q must have length n");
  return report.x + matvec_transposed(report.H, q);
}

RealMatrix abaffian_closed_form(const RealMatrix& H1, const RealMatrix& A, const RealMatrix& V, const RealMatrix& W,
                                double tol) {
  const std::size_t n = H1.rows();
  if (H1.cols() != n || A.cols() != n) throw ShapeError("closed form: H1 must be n×n with n = cols(A)");
  if (V.rows() != A.rows() || W.rows() != n || V.cols() != W.cols())
    throw ShapeError("closed form: V must be m×i and W n×i");
  if (V.cols() == 0) return H1;
  const RealMatrix left = matmul(H1, matmul(transpose(A), V));  // n×i
  const RealMatrix right = matmul(transpose(W), H1);             // i×n
  const RealMatrix inner = matmul(transpose(W), left);           // i×i
  RealMatrix solved;
  try {
    solved = lu_solve(inner, right, tol);
  } catch (const NumericalError&) {
    throw AdmissibilityError("W'H1 A'V is singular: parameters are not admissible");
  }
  return H1 - matmul(left, solved);
}

RealMatrix implicit_factor(const SolveReport& report, const RealMatrix& A) {
  std::vector<const StepRecord*> adv;
  for (const StepRecord& rec : report.history)
    if (rec.outcome == StepOutcome::Advanced) adv.push_back(&rec);
  RealMatrix L(adv.size(), adv.size());
  for (std::size_t k = 0; k < adv.size(); ++k) {
    const RealVector ap = matvec(A, adv[k]->p);
    for (std::size_t j = 0; j < adv.size(); ++j) L(j, k) = dot(adv[j]->v, ap);
  }
  return L;
}

SolveReport iterative_refinement(const RealMatrix& A, const RealVector& b, const SolveReport& base,
                                 std::size_t max_rounds) {
  if (max_rounds == 0) return base;
  if (base.status != SolveStatus::Solved) throw StateError("iterative refinement needs a solved base report");
  SolveReport out = base;
  RealVector r = residual(A, out.x, b);
  double rnorm = norm2(r);
  for (std::size_t round = 0; round < max_rounds && rnorm > 0.0; ++round) {
    // Solve A δ = r with the stored steps: δ ← δ − α_k p_k,
    // α_k = v_kᵀ(Aδ − r)/v_kᵀAp_k = ((Aᵀv_k)ᵀδ − v_kᵀr)/v_kᵀAp_k.
    RealVector delta(out.x.size());
    for (const StepRecord& rec : base.history) {
      if (rec.outcome != StepOutcome::Advanced) continue;
      const double tau = dot(rec.atv, delta) - dot(rec.v, r);
      axpy(-tau / rec.v_ap, rec.p, delta);
    }
    RealVector x_next = out.x - delta;
    RealVector r_next = residual(A, x_next, b);
    const double next_norm = norm2(r_next);
    if (!(next_norm < rnorm)) break;
    out.x = std::move(x_next);
    r = std::move(r_next);
    rnorm = next_norm;
  }
  out.residual_norm = rnorm;
  return out;
}

}  // namespace absolve
