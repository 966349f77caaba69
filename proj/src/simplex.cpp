#include "absolve/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "absolve/engine.hpp"
#include "absolve/errors.hpp"
#include "absolve/strategies.hpp"

namespace absolve {

namespace {

// relative level below which the phase-one optimum counts as zero
constexpr double kPhaseOneTol = 1e-9;

struct Vertex {
  RealMatrix H;
  RealVector x;
  std::vector<std::size_t> basic;
};

// One implicit LX pass, optionally restricted to candidate columns.
Vertex lx_vertex(const RealMatrix& A, const RealVector& b, std::optional<std::vector<std::size_t>> candidates,
                 double tol) {
  SolveOptions opts;
  opts.tol = tol;
  const SolveReport rep = solve(A, b, implicit_lx(std::move(candidates)), opts);
  if (rep.inconsistent_equation)
    throw RankDeficiencyError("lp_init: constraint rows are linearly dependent", *rep.inconsistent_equation);
  if (!rep.redundant.empty())
    throw RankDeficiencyError("lp_init: constraint rows are linearly dependent", rep.redundant.front());
  Vertex v{rep.H, rep.x, rep.pivots.chosen};
  std::sort(v.basic.begin(), v.basic.end());
  return v;
}

bool nonnegative(const RealVector& x, double tol) {
  const double scale = std::max(1.0, norm_inf(x));
  return std::all_of(x.begin(), x.end(), [&](double v) { return v >= -tol * scale; });
}

LpState make_lp_state(Vertex v, const RealVector& c, const RealVector& checksum, double checksum_rhs,
                      double tol) {
  LpState st;
  const std::size_t n = v.x.size();
  st.H = std::move(v.H);
  st.basic = std::move(v.basic);
  std::vector<bool> is_basic(n, false);
  for (std::size_t k : st.basic) is_basic[k] = true;
  for (std::size_t k = 0; k < n; ++k)
    if (!is_basic[k]) st.nonbasic.push_back(k);
  st.x = std::move(v.x);
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_basic[k] || st.x[k] < 0.0) st.x[k] = 0.0;
  }
  st.c = c;
  st.objective = dot(c, st.x);
  st.checksum = checksum;
  st.checksum_rhs = checksum_rhs;
  st.tol = tol;
  return st;
}

// Columns a·e_r with a > 0, one per row, when every row has one.
std::optional<std::vector<std::size_t>> slack_columns(const RealMatrix& A, const RealVector& b) {
  const std::size_t m = A.rows(), n = A.cols();
  std::vector<std::size_t> chosen;
  for (std::size_t r = 0; r < m; ++r) {
    if (b[r] < 0.0) return std::nullopt;
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < n && !found; ++j) {
      if (A(r, j) <= 0.0) continue;
      bool unit = true;
      for (std::size_t i = 0; i < m && unit; ++i)
        if (i != r && A(i, j) != 0.0) unit = false;
      if (unit) found = j;
    }
    if (!found) return std::nullopt;
    chosen.push_back(*found);
  }
  return chosen;
}

double cost_scale(const LpState& st) { return std::max(1.0, norm_inf(st.c)); }

LpStatus run_simplex(LpState& st, std::size_t max_pivots, std::size_t& pivots, const LpObserver& observer) {
  const std::size_t n = st.x.size();
  while (true) {
    const bool bland = st.degenerate_run >= 3 * n;
    const auto entering = entering_index(st, bland);
    if (!entering) return LpStatus::Optimal;
    const RatioResult ratio = ratio_test(st, *entering);
    if (!ratio.leaving) return LpStatus::Unbounded;
    if (pivots >= max_pivots) return LpStatus::IterLimit;
    pivot_inplace(st, *ratio.leaving, *entering);
    ++pivots;
    if (observer) observer(st);
  }
}

}  // namespace

RealVector reduced_costs(const LpState& state) { return matvec(state.H, state.c); }

std::optional<std::size_t> entering_index(const LpState& state, bool bland) {
  const double thresh = -state.tol * cost_scale(state);
  std::optional<std::size_t> best;
  double best_eta = thresh;
  for (std::size_t k : state.nonbasic) {
    const double eta = dot_compensated(state.H.row_span(k), state.c.view());
    if (eta < best_eta) {
      best = k;
      best_eta = eta;
      if (bland) break;
    }
  }
  return best;
}

RealVector edge_displacement(const LpState& state, std::size_t n_star) {
  RealVector d = state.H.row(n_star);
  for (auto& v : d) v = -v;
  return d;
}

RatioResult ratio_test(const LpState& state, std::size_t n_star) {
  const auto row = state.H.row_span(n_star);
  double scale = 0.0;
  for (double v : row) scale = std::max(scale, std::abs(v));
  const double thresh = state.tol * std::max(1.0, scale);
  RatioResult out;
  for (std::size_t i : state.basic) {
    const double d = -row[i];
    if (d <= thresh) continue;
    const double omega = state.x[i] / d;
    if (!out.leaving || omega < out.omega) {
      out.leaving = i;
      out.omega = omega;
    }
  }
  return out;
}

void pivot_inplace(LpState& st, std::size_t b_star, std::size_t n_star) {
  const std::size_t n = st.x.size();
  auto bpos = std::lower_bound(st.basic.begin(), st.basic.end(), b_star);
  auto npos = std::lower_bound(st.nonbasic.begin(), st.nonbasic.end(), n_star);
  if (bpos == st.basic.end() || *bpos != b_star || npos == st.nonbasic.end() || *npos != n_star)
    throw ValueError("pivot: index sets do not contain the requested exchange");
  const double piv = st.H(n_star, b_star);
  if (std::abs(piv) <= st.tol) throw NumericalError("pivot: denominator too small");

  // move along the edge: x' = x − ω d with d = −Hᵀe_{N*}
  const double omega = st.x[b_star] / (-piv);
  const std::vector<double> edge(st.H.row_span(n_star).begin(), st.H.row_span(n_star).end());
  for (std::size_t i : st.basic) st.x[i] += omega * edge[i];
  st.x[n_star] = omega;
  st.x[b_star] = 0.0;
  for (std::size_t i : st.basic)
    if (st.x[i] < 0.0 && st.x[i] > -st.tol * std::max(1.0, std::abs(omega))) st.x[i] = 0.0;

  std::uint64_t mults = 0;
  // scaled pivot row e_{N*}ᵀH / piv on B ∪ {N*}; entries at B* and N* are known
  std::vector<double> prow(n, 0.0);
  for (std::size_t c : st.basic) {
    if (c == b_star) continue;
    prow[c] = edge[c] / piv;
    ++mults;
  }
  prow[b_star] = 1.0;
  prow[n_star] = 1.0 / piv;
  ++mults;

  for (std::size_t r : st.nonbasic) {
    if (r == n_star) continue;
    const double f = st.H(r, b_star);
    if (f == 0.0) continue;
    for (std::size_t c : st.basic) {
      if (c == b_star) continue;
      st.H(r, c) -= f * prow[c];
      ++mults;
    }
    st.H(r, n_star) = -f * prow[n_star];
    st.H(r, b_star) = 0.0;
    ++mults;
  }
  for (std::size_t c = 0; c < n; ++c) {
    st.H(b_star, c) = prow[c];
    st.H(n_star, c) = 0.0;
  }
  st.last_pivot_mults = mults;

  st.basic.erase(bpos);
  st.basic.insert(std::lower_bound(st.basic.begin(), st.basic.end(), n_star), n_star);
  npos = std::lower_bound(st.nonbasic.begin(), st.nonbasic.end(), n_star);
  st.nonbasic.erase(npos);
  st.nonbasic.insert(std::lower_bound(st.nonbasic.begin(), st.nonbasic.end(), b_star), b_star);

  st.objective = dot(st.c, st.x);
  st.degenerate_run = omega <= st.tol ? st.degenerate_run + 1 : 0;
}

LpState pivot(const LpState& state, std::size_t b_star, std::size_t n_star) {
  LpState out = state;
  pivot_inplace(out, b_star, n_star);
  return out;
}

double feasibility_residual(const LpState& state) { return std::abs(dot(state.checksum, state.x) - state.checksum_rhs); }

std::optional<LpState> lp_init(const RealMatrix& A, const RealVector& b, const RealVector& c, double tol) {
  const std::size_t m = A.rows(), n = A.cols();
  if (b.size() != m || c.size() != n) throw ShapeError("lp_init: dimensions of A, b, c do not conform");
  if (m > n) throw ShapeError("lp_init expects m <= n");

  const RealVector checksum = matvec_transposed(A, RealVector(m, 1.0));
  double beta = 0.0;
  for (double v : b) beta += v;

  // the unrestricted pass doubles as the full-row-rank check
  Vertex plain = lx_vertex(A, b, std::nullopt, tol);

  if (auto slacks = slack_columns(A, b)) {
    LpState st = make_lp_state(lx_vertex(A, b, *slacks, tol), c, checksum, beta, tol);
    return st;
  }
  if (nonnegative(plain.x, tol)) return make_lp_state(std::move(plain), c, checksum, beta, tol);

  // auxiliary problem [A' I] with rows signed so that b' ≥ 0
  RealMatrix aux(m, n + m);
  RealVector baux(m);
  for (std::size_t r = 0; r < m; ++r) {
    const double sgn = b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) aux(r, j) = sgn * A(r, j);
    aux(r, n + r) = 1.0;
    baux[r] = sgn * b[r];
  }
  RealVector caux(n + m);
  for (std::size_t r = 0; r < m; ++r) caux[n + r] = 1.0;
  std::vector<std::size_t> artificial(m);
  for (std::size_t r = 0; r < m; ++r) artificial[r] = n + r;
  double beta_aux = 0.0;
  for (double v : baux) beta_aux += v;
  LpState st = make_lp_state(lx_vertex(aux, baux, artificial, tol), caux,
                             matvec_transposed(aux, RealVector(m, 1.0)), beta_aux, tol);
  std::size_t pivots = 0;
  const LpStatus status = run_simplex(st, 50 * (n + m) + 1000, pivots, {});
  if (status == LpStatus::IterLimit) throw NumericalError("lp_init: phase one did not converge");
  if (st.objective > kPhaseOneTol * std::max(1.0, norm_inf(baux))) return std::nullopt;

  // drive the remaining (zero-valued) artificials out with degenerate pivots
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t art = n + r;
    if (!std::binary_search(st.basic.begin(), st.basic.end(), art)) continue;
    st.x[art] = 0.0;
    std::optional<std::size_t> enter;
    double best = tol;
    for (std::size_t j : st.nonbasic) {
      if (j >= n) continue;
      if (std::abs(st.H(j, art)) > best) {
        best = std::abs(st.H(j, art));
        enter = j;
      }
    }
    if (!enter) throw RankDeficiencyError("lp_init: constraint rows are linearly dependent", r);
    pivot_inplace(st, art, *enter);
  }

  Vertex v;
  v.H = RealMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v.H(i, j) = st.H(i, j);
  v.x = RealVector(n);
  for (std::size_t j = 0; j < n; ++j) v.x[j] = st.x[j];
  v.basic = st.basic;
  LpState out = make_lp_state(std::move(v), c, checksum, beta, tol);
  out.phase_one = true;
  out.init_pivots = pivots;
  return out;
}

LpReport lp_solve(const RealMatrix& A, const RealVector& b, const RealVector& c, double tol,
                  std::size_t max_pivots, const LpObserver& observer) {
  LpReport rep;
  auto init = lp_init(A, b, c, tol);
  if (!init) {
    rep.status = LpStatus::Infeasible;
    rep.x = RealVector(A.cols());
    return rep;
  }
  LpState& st = *init;
  rep.status = run_simplex(st, max_pivots, rep.pivots, observer);
  rep.x = st.x;
  rep.objective = st.objective;
  rep.basic = st.basic;
  rep.phase_one = st.phase_one;
  rep.phase_one_pivots = st.init_pivots;
  rep.reduced_costs = reduced_costs(st);
  return rep;
}

}  // namespace absolve
