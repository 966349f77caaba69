// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "absolve/constrained.hpp"
#include "absolve/diophantine.hpp"
#include "absolve/engine.hpp"
#include "absolve/generators.hpp"
#include "absolve/quasi_newton.hpp"
#include "absolve/simplex.hpp"
#include "absolve/strategies.hpp"
#include "lp_oracles.hpp"
#include "oracles.hpp"
#include "qn_oracles.hpp"

using namespace absolve;

namespace {

const double kEps = std::numeric_limits<double>::epsilon();

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> run;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Trace {
  std::vector<RealMatrix> H;
  std::vector<RealVector> x;
  std::vector<std::vector<StepRecord>> history;
  SolveReport report;
};

Trace trace(const RealMatrix& a, const RealVector& b, const StrategySpec& spec, bool keep_history = false) {
  Trace t;
  SolveOptions opts;
  opts.observer = [&](const AbaffianState& st, StepOutcome) {
    t.H.push_back(st.H.dense());
    t.x.push_back(st.x);
    if (keep_history) t.history.push_back(st.history);
  };
  t.report = run(a, b, spec, opts);
  return t;
}

std::vector<RealVector> directions(const SolveReport& rep) {
  std::vector<RealVector> out;
  for (const auto& h : rep.history)
    if (h.outcome == StepOutcome::Advanced) out.push_back(h.p);
  return out;
}

std::size_t advanced_steps(const SolveReport& rep) {
  return static_cast<std::size_t>(std::count_if(rep.history.begin(), rep.history.end(),
                                                [](const StepRecord& h) { return h.outcome == StepOutcome::Advanced; }));
}

double rel_residual(const RealMatrix& a, const RealVector& x, const RealVector& b) {
  return norm2(residual(a, x, b)) / std::max(norm2(b), 1e-300);
}

// ---------------------------------------------------------------------------

bool finite_termination(std::string& detail) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  std::size_t bad = 0, runs = 0;
  for (int seed = 0; seed < 200; ++seed) {
    const std::size_t n = 5 + static_cast<std::size_t>(seed) % 36;
    const RealMatrix a = oracle::well_conditioned(n, rng);
    const RealMatrix spd = oracle::spd_matrix(n, rng);
    const RealVector b = oracle::gaussian_vector(n, rng);
    const std::pair<StrategySpec, const RealMatrix*> cases[] = {
        {huang(), &a}, {modified_huang(), &a}, {implicit_lu(), &a},          {implicit_lx(), &a},
        {orthogonally_scaled(), &a}, {conjugate_direction(), &spd}};
    for (const auto& [spec, mat] : cases) {
      const SolveReport r = solve(*mat, b, spec);
      const double rr = rel_residual(*mat, r.x, b);
      worst = std::max(worst, rr);
      ++runs;
      if (r.status != SolveStatus::Solved || advanced_steps(r) != n || !r.redundant.empty() || rr > 1e-9) ++bad;
    }
  }
  const double secs = since(t0);
  detail = std::to_string(runs) + " runs, " + std::to_string(bad) + " failures" +
           fmt(", max relative residual %.2e, %.2f s", worst, secs);
  return bad == 0 && secs < 5.0;
}

bool petrov_galerkin(std::string& detail) {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  std::size_t checks = 0;
  for (int seed = 0; seed < 40; ++seed) {
    const std::size_t n = 3 + static_cast<std::size_t>(seed) % 14;
    const RealMatrix a = oracle::well_conditioned(n, rng);
    const RealMatrix spd = oracle::spd_matrix(n, rng);
    const RealVector b = oracle::gaussian_vector(n, rng);
    const std::pair<StrategySpec, const RealMatrix*> cases[] = {
        {huang(), &a}, {modified_huang(), &a}, {implicit_lu(), &a},          {implicit_lx(), &a},
        {orthogonally_scaled(), &a}, {conjugate_direction(), &spd}};
    for (const auto& [spec, mat] : cases) {
      SolveOptions opts;
      opts.observer = [&](const AbaffianState& st, StepOutcome) {
        const RealVector r = residual(*mat, st.x, b);
        const double bound = frobenius(*mat) * (1.0 + norm2(st.x));
        for (const StepRecord& rec : st.history) {
          worst = std::max(worst, std::abs(dot(rec.v, r)) / bound);
          ++checks;
        }
      };
      solve(*mat, b, spec, opts);
    }
  }
  detail = std::to_string(checks) + fmt(" checks, max |v_j'r|/(|A|_F(1+|x|)) = %.2e", worst);
  return checks > 0 && worst <= 1e-10;
}

bool huang_least_norm(std::string& detail) {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  std::size_t monotone_breaks = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const std::size_t n = 2 + static_cast<std::size_t>(seed) % 11;
    const std::size_t m = 1 + static_cast<std::size_t>(seed / 11) % (n - 1);
    const RealMatrix a = oracle::gaussian_matrix(m, n, rng);
    const RealVector b = oracle::gaussian_vector(m, rng);
    const Trace t = trace(a, b, huang());
    double prev = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const RealVector ref = oracle::min_norm_solution(oracle::first_rows(a, i + 1), oracle::head(b, i + 1));
      worst = std::max(worst, oracle::rel_diff(t.x[i], ref));
      if (norm2(t.x[i]) < prev * (1.0 - 1e-14)) ++monotone_breaks;
      prev = norm2(t.x[i]);
    }
  }
  detail = fmt("max relative deviation from normal-equations oracle %.2e, %g norm decreases", worst,
               static_cast<double>(monotone_breaks));
  return worst <= 1e-7 && monotone_breaks == 0;
}

bool implicit_structure(std::string& detail) {
  std::mt19937_64 rng(404);
  double worst = 0.0;
  std::size_t violations = 0;
  auto track = [&](double v) {
    worst = std::max(worst, v);
    if (v > 1e-12) ++violations;
  };
  for (int seed = 0; seed < 100; ++seed) {
    // implicit LU zero pattern: rows ≤ i vanish, trailing block is the identity
    const std::size_t n = 3 + static_cast<std::size_t>(seed) % 14;
    const RealMatrix a = oracle::well_conditioned(n, rng);
    const RealVector b = oracle::gaussian_vector(n, rng);
    const Trace lu = trace(a, b, implicit_lu(Pivoting::None));
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t k_entries = 0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          if (r <= i)
            track(std::abs(lu.H[i](r, c)));
          else if (c > i)
            track(std::abs(lu.H[i](r, c) - (r == c ? 1.0 : 0.0)));
          else
            ++k_entries;
        }
      if (k_entries > ((n + 1) / 2) * ((n + 1) / 2)) ++violations;
    }

    // implicit LX on a rectangular system
    const std::size_t nx = 4 + static_cast<std::size_t>(seed) % 8, m = 1 + static_cast<std::size_t>(seed) % nx;
    const RealMatrix g = oracle::gaussian_matrix(m, nx, rng);
    const RealVector gb = oracle::gaussian_vector(m, rng);
    const Trace lx = trace(g, gb, implicit_lx());
    const auto& chosen = lx.report.pivots.chosen;
    for (std::size_t i = 0; i < m; ++i) {
      const StepRecord& rec = lx.report.history[i];
      if (!rec.pivot || *rec.pivot != chosen[i]) {
        ++violations;
        continue;
      }
      const std::vector<std::size_t> basic(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(i + 1));
      auto in_basic = [&](std::size_t k) { return std::find(basic.begin(), basic.end(), k) != basic.end(); };
      const double scale = norm_inf(rec.p);
      track(std::abs(rec.p[chosen[i]] - 1.0));
      for (std::size_t k = 0; k < nx; ++k) {
        if (in_basic(k)) continue;
        track(std::abs(rec.p[k]) / scale);
        if (lx.x[i][k] != 0.0) ++violations;
        for (std::size_t r = 0; r < nx; ++r) track(std::abs(lx.H[i](r, k) - (r == k ? 1.0 : 0.0)));
      }
    }
  }
  detail = fmt("max structural deviation %.2e, %g violations", worst, static_cast<double>(violations));
  return violations == 0;
}

bool conjugate_directions(std::string& detail) {
  std::mt19937_64 rng(505);
  double worst = 0.0;
  std::size_t energy_breaks = 0;
  for (int seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + static_cast<std::size_t>(seed) % 19;
    const RealMatrix spd = oracle::spd_matrix(n, rng);
    const RealVector b = oracle::gaussian_vector(n, rng);
    const Trace t = trace(spd, b, conjugate_direction());
    const RealVector xs = oracle::gaussian_elimination(spd, b);
    const double anorm = frobenius(spd);
    const auto dirs = directions(t.report);
    for (std::size_t i = 0; i < dirs.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const RealVector pi = (1.0 / norm2(dirs[i])) * dirs[i];
        const RealVector pj = (1.0 / norm2(dirs[j])) * dirs[j];
        worst = std::max(worst, std::abs(dot(pi, matvec(spd, pj))) / anorm);
      }
    double prev = std::sqrt(dot(xs, matvec(spd, xs)));
    for (const RealVector& x : t.x) {
      const RealVector e = x - xs;
      const double energy = std::sqrt(std::max(0.0, dot(e, matvec(spd, e))));
      if (energy > prev * (1.0 + 1e-12) + 1e-12 * anorm) ++energy_breaks;
      prev = energy;
    }
  }
  detail = fmt("max |p_i'Ap_j|/|A| over unit directions %.2e, %g energy increases", worst,
               static_cast<double>(energy_breaks));
  return worst <= 1e-8 && energy_breaks == 0;
}

bool least_squares(std::string& detail) {
  std::mt19937_64 rng(606);
  double worst = 0.0;
  std::size_t residual_breaks = 0;
  for (int seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + static_cast<std::size_t>(seed) % 10;
    const std::size_t m = n + 1 + static_cast<std::size_t>(seed) % 15;
    const RealMatrix a = oracle::gaussian_matrix(m, n, rng);
    const RealVector b = oracle::gaussian_vector(m, rng);
    const SolveReport ls = solve_least_squares(a, b);
    worst = std::max(worst, oracle::rel_diff(ls.x, oracle::normal_equations(a, b)));
    const Trace t = trace(a, b, orthogonally_scaled());
    double prev = norm2(b);
    for (const RealVector& x : t.x) {
      const double rn = norm2(residual(a, x, b));
      if (rn > prev * (1.0 + 1e-12)) ++residual_breaks;
      prev = rn;
    }
  }
  detail = fmt("max relative deviation from normal equations %.2e, %g residual increases", worst,
               static_cast<double>(residual_breaks));
  return worst <= 1e-7 && residual_breaks == 0;
}

long euclid(long a, long b) {
  a = std::labs(a);
  b = std::labs(b);
  while (b != 0) {
    const long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool diophantine(std::string& detail) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(707);
  std::size_t euclid_mismatch = 0, nonintegral = 0, invalid = 0, uncovered = 0, unreachable = 0, brute_total = 0;

  std::uniform_int_distribution<long> ent(-50, 50);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % 6;
    IntMatrix a(1, n);
    long g = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long v = ent(rng);
      a(0, j) = v;
      g = euclid(g, v);
    }
    const long rhs = ent(rng) * 3;
    const bool solvable = g == 0 ? rhs == 0 : rhs % g == 0;
    IntVector b(1);
    b[0] = rhs;
    const DioReport r = dio_solve(a, b);
    if ((r.status == DioStatus::Solved) != solvable || (solvable && matvec(a, r.x) != b)) ++euclid_mismatch;
  }

  // integrality: every update divides exactly, every intermediate H annihilates processed rows
  std::uniform_int_distribution<long> small(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 5, m = 1 + static_cast<std::size_t>(trial) % n;
    IntMatrix a(m, n);
    IntVector xs(n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = small(rng);
    for (auto& v : xs) v = small(rng);
    const IntVector b = matvec(a, xs);
    std::vector<IntMatrix> hs;
    const DioReport r = dio_solve(a, b, [&](std::size_t, const IntMatrix& H, const IntVector&) { hs.push_back(H); });
    if (r.status != DioStatus::Solved || matvec(a, r.x) != b) ++nonintegral;
    for (const DioStep& st : r.steps) {
      if (st.redundant) continue;
      for (const Integer& v : st.s)
        if (mpz_divisible_p(v.get_mpz_t(), st.delta.get_mpz_t()) == 0) ++nonintegral;
    }
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (matvec(hs[i], a.row(j)) != IntVector(n)) ++nonintegral;
  }

  // general solution coverage on 2×3 systems with small data
  std::uniform_int_distribution<long> tiny(-3, 3), sol(-2, 2);
  int systems = 0;
  while (systems < 50) {
    IntMatrix a(2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = tiny(rng);
    IntVector xs(3);
    for (auto& v : xs) v = sol(rng);
    const IntVector b = matvec(a, xs);
    const DioReport r = dio_solve(a, b);
    if (r.status != DioStatus::Solved || !r.redundant.empty()) continue;
    ++systems;
    std::set<std::vector<long>> image;
    for (long q1 = -3; q1 <= 3; ++q1)
      for (long q2 = -3; q2 <= 3; ++q2)
        for (long q3 = -3; q3 <= 3; ++q3) {
          IntVector q(3);
          q[0] = q1;
          q[1] = q2;
          q[2] = q3;
          const IntVector x = dio_general_solution(r, q);
          if (matvec(a, x) != b) ++invalid;
          if (abs(x[0]) <= 5 && abs(x[1]) <= 5 && abs(x[2]) <= 5) image.insert({x[0].get_si(), x[1].get_si(), x[2].get_si()});
        }
    for (long x1 = -5; x1 <= 5; ++x1)
      for (long x2 = -5; x2 <= 5; ++x2)
        for (long x3 = -5; x3 <= 5; ++x3) {
          IntVector x(3);
          x[0] = x1;
          x[1] = x2;
          x[2] = x3;
          if (matvec(a, x) != b) continue;
          ++brute_total;
          if (image.count({x1, x2, x3})) continue;
          ++uncovered;
          // outside the box image; look for any integer q with a wider search
          bool found = false;
          for (long q1 = -12; q1 <= 12 && !found; ++q1)
            for (long q2 = -12; q2 <= 12 && !found; ++q2)
              for (long q3 = -12; q3 <= 12 && !found; ++q3) {
                IntVector q(3);
                q[0] = q1;
                q[1] = q2;
                q[2] = q3;
                found = dio_general_solution(r, q) == x;
              }
          if (!found) ++unreachable;
        }
  }
  const double secs = since(t0);
  detail = std::to_string(euclid_mismatch) + " Euclid mismatches, " + std::to_string(nonintegral) +
           " integrality failures, " + std::to_string(invalid) + " invalid enumerated points, " +
           std::to_string(uncovered) + "/" + std::to_string(brute_total) + " brute-force solutions outside the q box image (" +
           std::to_string(unreachable) + " unreachable with |q| <= 12)" +
           fmt(", %.2f s", secs);
  return euclid_mismatch == 0 && nonintegral == 0 && invalid == 0 && uncovered == 0 && secs < 10.0;
}

bool simplex(std::string& detail) {
  std::mt19937_64 rng(808);
  double worst_obj = 0.0, worst_rebuild = 0.0;
  std::size_t failures = 0, over_budget = 0, pivots = 0, max_mults = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const std::size_t m = 1 + static_cast<std::size_t>(seed) % 4;
    const std::size_t n = std::max<std::size_t>(m + 1, 4 + static_cast<std::size_t>(seed / 4) % 5);
    const lp_oracle::Instance inst = lp_oracle::bounded_lp(m, n, rng);
    const auto best = lp_oracle::enumerate_optimum(inst.A, inst.b, inst.c);
    const LpReport rep = lp_solve(inst.A, inst.b, inst.c, 1e-11, 10000, [&](const LpState& st) {
      worst_rebuild = std::max(worst_rebuild, oracle::max_abs_diff(lp_oracle::rebuild_abaffian(inst.A, st.basic), st.H));
      max_mults = std::max(max_mults, st.last_pivot_mults);
      if (st.last_pivot_mults > m * (n - m) + m + n) ++over_budget;
      ++pivots;
    });
    if (!best || rep.status != LpStatus::Optimal) {
      ++failures;
      continue;
    }
    worst_obj = std::max(worst_obj, std::abs(rep.objective - *best) / std::max(1.0, std::abs(*best)));
  }
  detail = std::to_string(failures) + " non-optimal" + fmt(", max objective gap %.2e, max rebuild gap %.2e", worst_obj, worst_rebuild) +
           ", " + std::to_string(pivots) + " pivots, max multiplications " + std::to_string(max_mults) + ", " +
           std::to_string(over_budget) + " over m(n-m)+m+n";
  return failures == 0 && worst_obj <= 1e-8 && worst_rebuild <= 1e-9 && over_budget == 0 && pivots > 0;
}

bool quasi_newton(std::string& detail) {
  std::mt19937_64 rng(909);
  double worst_secant = 0.0, worst_oracle = 0.0, worst_constraint = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % 10;
    const SecantData sd{oracle::gaussian_vector(n, rng), oracle::gaussian_vector(n, rng), oracle::gaussian_matrix(n, n, rng),
                        oracle::gaussian_vector(n, rng), oracle::gaussian_matrix(n, n, rng)};
    const RealMatrix bp = qn_general_update(sd);
    const double scale = frobenius(bp) * norm2(sd.d) + norm2(sd.y);
    worst_secant = std::max(worst_secant, secant_residual(bp, sd.d, sd.y) / (kEps * scale));
  }
  std::uniform_int_distribution<int> coin(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 5;
    const SecantData sd{oracle::gaussian_vector(n, rng), oracle::gaussian_vector(n, rng), oracle::gaussian_matrix(n, n, rng),
                        oracle::gaussian_vector(n, rng), oracle::gaussian_matrix(n, n, rng)};
    StructureSpec spec;
    spec.symmetric = trial % 2 == 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || j == n - 1 || i == n - 1) continue;
        if (spec.symmetric && i < j) continue;
        if (coin(rng) == 0) spec.fixed.push_back({i, j, 0.0});
      }
    const RealMatrix bp = qn_structured_update(sd, spec);
    const RealMatrix ref = qn_oracle::structured_oracle(sd, spec);
    const double scale = 1.0 + frobenius(ref);
    worst_oracle = std::max(worst_oracle, oracle::max_abs_diff(bp, ref) / scale);
    for (const auto& c : spec.fixed) worst_constraint = std::max(worst_constraint, std::abs(bp(c.row, c.col) - c.value) / scale);
    if (spec.symmetric) worst_constraint = std::max(worst_constraint, oracle::max_abs_diff(bp, transpose(bp)) / scale);
    const double sscale = frobenius(bp) * norm2(sd.d) + norm2(sd.y);
    worst_secant = std::max(worst_secant, secant_residual(bp, sd.d, sd.y) / (kEps * sscale));
  }
  detail = fmt("max secant residual %.1f eps*scale, structured vs oracle %.2e, constraint deviation %.2e", worst_secant,
               worst_oracle, worst_constraint);
  return worst_secant <= 64.0 && worst_oracle <= 1e-9 && worst_constraint <= 1e-12;
}

struct Quadratic {
  RealMatrix G;
  RealVector h;
  double operator()(const RealVector& x) const { return 0.5 * dot(x, matvec(G, x)) - dot(h, x); }
  RealVector gradient(const RealVector& x) const { return matvec(G, x) - h; }
};

bool constrained(std::string& detail) {
  std::mt19937_64 rng(1010);
  double worst_x = 0.0, worst_lambda = 0.0, worst_free = 0.0;
  std::size_t failures = 0, over_steps = 0;
  const Variant variants[] = {Variant::ReducedGradient, Variant::RosenProjection, Variant::GoldfarbIdnani};
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 7;
    const std::size_t m = 1 + static_cast<std::size_t>(trial) % std::min<std::size_t>(4, n - 1);
    const Quadratic q{oracle::spd_matrix(n, rng), oracle::gaussian_vector(n, rng)};
    const RealMatrix a = oracle::gaussian_matrix(m, n, rng);
    const RealVector b = oracle::gaussian_vector(m, rng);
    const RealVector xstar = oracle::kkt_minimizer(q.G, q.h, a, b);
    const RealVector x1 = oracle::min_norm_solution(a, b);
    for (Variant v : variants) {
      FeasibleProblem p;
      p.f = [q](const RealVector& x) { return q(x); };
      p.grad = [q](const RealVector& x) { return q.gradient(x); };
      p.A = a;
      p.b = b;
      p.Q = RealMatrix::identity(n);
      p.variant = v;
      if (v == Variant::GoldfarbIdnani) p.H1 = oracle::spd_matrix(n, rng);
      const MinimizeReport rep = minimize(p, x1);
      if (rep.status != MinimizeStatus::KtPoint || !rep.kt) {
        ++failures;
        continue;
      }
      worst_x = std::max(worst_x, oracle::max_abs_diff(rep.x, xstar));
      const RealVector lam = oracle::least_squares_qr(transpose(a), q.gradient(rep.x));
      worst_lambda = std::max(worst_lambda, oracle::max_abs_diff(rep.kt->lambda, lam) / (1.0 + norm2(lam)));
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 9;
    const Quadratic q{oracle::spd_matrix(n, rng), oracle::gaussian_vector(n, rng)};
    const RealVector xstar = oracle::gaussian_elimination(q.G, q.h);
    UnconstrainedOptions opts;
    opts.max_outer = 1;
    opts.gtol = 0.0;
    const UnconstrainedReport rep = abs_unconstrained_min([&](const RealVector& x) { return q(x); },
                                                          [&](const RealVector& x) { return q.gradient(x); },
                                                          oracle::gaussian_vector(n, rng), opts);
    if (rep.steps > n) ++over_steps;
    worst_free = std::max(worst_free, oracle::max_abs_diff(rep.x, xstar) / (1.0 + norm2(xstar)));
  }
  detail = std::to_string(failures) + " without KT point" +
           fmt(", max |x - x*| %.2e, multiplier gap %.2e, unconstrained error %.2e", worst_x, worst_lambda, worst_free) +
           ", " + std::to_string(over_steps) + " runs over n steps";
  return failures == 0 && worst_x <= 1e-6 && worst_lambda <= 1e-7 && worst_free <= 1e-8 && over_steps == 0;
}

bool refinement(std::string& detail) {
  int refined_ok = 0;
  const int refine_seeds = 40;
  for (int seed = 0; seed < refine_seeds; ++seed) {
    const auto p = generate_conditioned(50, 1e8, 5000 + static_cast<std::uint64_t>(seed));
    const SolveReport base = solve(p.A, p.b, modified_huang());
    const SolveReport r = iterative_refinement(p.A, p.b, base, 2);
    if (oracle::rel_diff(r.x, p.x_true) < 1e-12) ++refined_ok;
  }
  int mhuang_wins = 0;
  const int compare_seeds = 40;
  for (int seed = 0; seed < compare_seeds; ++seed) {
    const auto p = generate_conditioned(50, 1e12, 9000 + static_cast<std::uint64_t>(seed));
    const double rh = norm2(residual(p.A, solve(p.A, p.b, huang()).x, p.b));
    const double rm = norm2(residual(p.A, solve(p.A, p.b, modified_huang()).x, p.b));
    if (rm < rh) ++mhuang_wins;
  }
  detail = std::to_string(refined_ok) + "/" + std::to_string(refine_seeds) + " refined below 1e-12 at cond 1e8, " +
           "modified Huang residual smaller in " + std::to_string(mhuang_wins) + "/" + std::to_string(compare_seeds) +
           " at cond 1e12";
  return refined_ok >= 0.95 * refine_seeds && mhuang_wins >= 0.9 * compare_seeds;
}

}  // namespace

int main(int argc, char** argv) {
  // --expect-fail=ID marks a criterion that is known not to hold; the run still
  // prints FAIL for it, and succeeds only if the failing set is exactly that list
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const std::string key = "--expect-fail=";
    if (arg.rfind(key, 0) != 0) {
      std::fprintf(stderr, "usage: acceptance [--expect-fail=ID]...\n");
      return 2;
    }
    expected.insert(std::stoi(arg.substr(key.size())));
  }

  const std::vector<Criterion> criteria = {
      {1, "finite termination", finite_termination},
      {2, "Petrov-Galerkin condition", petrov_galerkin},
      {3, "Huang least-norm iterates", huang_least_norm},
      {4, "implicit LU/LX structure", implicit_structure},
      {5, "conjugate directions", conjugate_directions},
      {6, "least squares", least_squares},
      {7, "Diophantine systems", diophantine},
      {8, "simplex on the Abaffian", simplex},
      {9, "quasi-Newton updates", quasi_newton},
      {10, "constrained optimization", constrained},
      {11, "refinement robustness", refinement},
  };
  std::set<int> failed;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) failed.insert(c.id);
    std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
  if (!expected.empty()) {
    std::string list;
    for (int id : expected) list += (list.empty() ? "" : " ") + std::to_string(id);
    std::printf("expected failures: %s; %s\n", list.c_str(), failed == expected ? "matched" : "NOT matched");
  }
  return failed == expected ? 0 : 1;
}
