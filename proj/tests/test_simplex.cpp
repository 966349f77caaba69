#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "absolve/errors.hpp"
#include "absolve/simplex.hpp"
#include "lp_oracles.hpp"
#include "oracles.hpp"

using namespace absolve;

TEST_CASE("lp_init on tiny instances") {
  const RealMatrix a{{1, 1}};
  auto st = lp_init(a, RealVector{1}, RealVector{0, 0});
  REQUIRE(st);
  CHECK(st->basic.size() == 1);
  const std::size_t k = st->basic[0];
  CHECK(st->x == RealVector::unit(2, k));

  CHECK_FALSE(lp_init(RealMatrix::identity(2), RealVector{1, -1}, RealVector{0, 0}));

  // identity columns present: the slack basis is used and no auxiliary problem is needed
  const RealMatrix slack{{1, 2, 1, 0}, {3, 1, 0, 1}};
  st = lp_init(slack, RealVector{4, 5}, RealVector{-1, -1, 0, 0});
  REQUIRE(st);
  CHECK_FALSE(st->phase_one);
  CHECK(st->basic == std::vector<std::size_t>{2, 3});

  CHECK_THROWS_AS(lp_init(RealMatrix{{1, 1}, {2, 2}}, RealVector{1, 2}, RealVector{0, 0}), RankDeficiencyError);
  CHECK_THROWS_AS(lp_init(RealMatrix{{1}, {1}}, RealVector{1, 1}, RealVector{0}), ShapeError);
}

TEST_CASE("entering, ratio test and pivot on the textbook 1x2 instance") {
  const RealMatrix a{{1, 1}};
  auto st0 = lp_init(a, RealVector{1}, RealVector{-1, 0});
  REQUIRE(st0);
  LpState st = *st0;
  if (st.basic[0] == 0) {
    // start from vertex e_2 for the example
    st = pivot(st, 0, 1);
  }
  REQUIRE(st.basic == std::vector<std::size_t>{1});
  CHECK(st.x == RealVector{0, 1});
  const auto enter = entering_index(st);
  REQUIRE(enter);
  CHECK(*enter == 0);
  const RatioResult ratio = ratio_test(st, 0);
  REQUIRE(ratio.leaving);
  CHECK(*ratio.leaving == 1);
  CHECK(ratio.omega == doctest::Approx(1.0));
  const LpState next = pivot(st, 1, 0);
  CHECK(next.x == RealVector{1, 0});
  CHECK(next.objective == -1.0);
  CHECK_FALSE(entering_index(next));

  const LpReport rep = lp_solve(a, RealVector{1}, RealVector{-1, 0});
  CHECK(rep.status == LpStatus::Optimal);
  CHECK(rep.objective == doctest::Approx(-1.0));
  CHECK(rep.x[0] == doctest::Approx(1.0));
}

TEST_CASE("degenerate vertex wins the ratio test with omega zero") {
  // x1 + x2 + x3 = 1, x1 − x2 = 0 starting at (0,0,1): x1 and x2 increase together
  const RealMatrix a{{1, 1, 1}, {1, -1, 0}};
  auto st = lp_init(a, RealVector{1, 0}, RealVector{-1, 0, 0});
  REQUIRE(st);
  const auto enter = entering_index(*st);
  if (enter) {
    const RatioResult r = ratio_test(*st, *enter);
    REQUIRE(r.leaving);
    if (st->x[*r.leaving] == 0.0) CHECK(r.omega == 0.0);
  }
  const LpReport rep = lp_solve(a, RealVector{1, 0}, RealVector{-1, 0, 0});
  CHECK(rep.status == LpStatus::Optimal);
  CHECK(rep.objective == doctest::Approx(-0.5));
}

TEST_CASE("unbounded and infeasible outcomes") {
  const LpReport unb = lp_solve(RealMatrix{{1, -1}}, RealVector{0}, RealVector{-1, 0});
  CHECK(unb.status == LpStatus::Unbounded);

  const LpReport inf = lp_solve(RealMatrix{{1, 1}}, RealVector{-1}, RealVector{1, 1});
  CHECK(inf.status == LpStatus::Infeasible);

  const LpReport zero = lp_solve(RealMatrix{{1, 1, 1}}, RealVector{2}, RealVector{0, 0, 0});
  CHECK(zero.status == LpStatus::Optimal);
  CHECK(zero.objective == 0.0);
  CHECK(zero.pivots == 0);

  const LpReport flat = lp_solve(RealMatrix{{1, 1}}, RealVector{1}, RealVector{-1, -1});
  CHECK(flat.status == LpStatus::Optimal);
  CHECK(flat.objective == doctest::Approx(-1.0));

  const RealMatrix a{{1, 2, 1, 0}, {3, 1, 0, 1}};
  const LpReport limited = lp_solve(a, RealVector{4, 5}, RealVector{-1, -1, 0, 0}, 1e-11, 0);
  CHECK(limited.status == LpStatus::IterLimit);
}

TEST_CASE("lp_solve matches basis enumeration on random bounded LPs") {
  std::mt19937_64 rng(8);
  for (int seed = 0; seed < 100; ++seed) {
    const lp_oracle::Instance inst = lp_oracle::bounded_lp(1 + seed % 4, 5 + seed % 4, rng);
    const auto best = lp_oracle::enumerate_optimum(inst.A, inst.b, inst.c);
    REQUIRE(best);
    const LpReport rep = lp_solve(inst.A, inst.b, inst.c);
    REQUIRE(rep.status == LpStatus::Optimal);
    CHECK(std::abs(rep.objective - *best) <= 1e-8 * std::max(1.0, std::abs(*best)));
    for (double v : rep.x) CHECK(v >= -1e-12);
    CHECK(oracle::max_abs_diff(matvec(inst.A, rep.x), inst.b) <= 1e-9 * (1.0 + norm_inf(inst.b)));
    const RealVector r = rep.reduced_costs;
    for (std::size_t k = 0; k < r.size(); ++k)
      if (!std::binary_search(rep.basic.begin(), rep.basic.end(), k)) CHECK(r[k] >= -1e-9);
  }
}

TEST_CASE("incremental Abaffian agrees with a rebuild after every pivot") {
  std::mt19937_64 rng(21);
  for (int seed = 0; seed < 40; ++seed) {
    const lp_oracle::Instance inst = lp_oracle::bounded_lp(2 + seed % 4, 10, rng);
    const std::size_t m = inst.A.rows(), n = inst.A.cols();
    std::size_t checked = 0;
    const LpReport rep = lp_solve(inst.A, inst.b, inst.c, 1e-11, 10000, [&](const LpState& st) {
      const RealMatrix h = lp_oracle::rebuild_abaffian(inst.A, st.basic);
      CHECK(oracle::max_abs_diff(h, st.H) <= 1e-9);
      CHECK(st.last_pivot_mults <= m * (n - m) + m + n);
      CHECK(feasibility_residual(st) <= 1e-10 * (1.0 + norm_inf(inst.b)) * static_cast<double>(m));
      for (double v : st.x) CHECK(v >= -1e-12);
      const RealVector r = reduced_costs(st);
      for (std::size_t k : st.nonbasic) CHECK(dot(st.c, st.H.row(k)) == doctest::Approx(r[k]).epsilon(1e-12));
      ++checked;
    });
    CHECK(rep.status == LpStatus::Optimal);
    CHECK(checked == rep.pivots);
  }
}

TEST_CASE("pivot followed by the reverse pivot restores H") {
  std::mt19937_64 rng(4);
  for (int seed = 0; seed < 20; ++seed) {
    const lp_oracle::Instance inst = lp_oracle::bounded_lp(3, 7, rng);
    auto st = lp_init(inst.A, inst.b, inst.c);
    REQUIRE(st);
    bool done = false;
    for (std::size_t bs : st->basic) {
      for (std::size_t ns : st->nonbasic) {
        if (std::abs(st->H(ns, bs)) < 1e-3) continue;
        const LpState there = pivot(*st, bs, ns);
        const LpState back = pivot(there, ns, bs);
        CHECK(oracle::max_abs_diff(back.H, st->H) <= 1e-10);
        CHECK(back.basic == st->basic);
        done = true;
        break;
      }
      if (done) break;
    }
    CHECK(done);
  }
}

TEST_CASE("phase one on instances without a slack basis") {
  std::mt19937_64 rng(31);
  std::size_t phase_one = 0;
  for (int seed = 0; seed < 40; ++seed) {
    lp_oracle::Instance inst = lp_oracle::bounded_lp(3, 7, rng);
    // negate a row so that the plain LX vertex is rarely feasible
    for (std::size_t j = 0; j < inst.A.cols(); ++j) inst.A(1, j) = -inst.A(1, j);
    inst.b[1] = -inst.b[1];
    auto st = lp_init(inst.A, inst.b, inst.c);
    REQUIRE(st);
    phase_one += st->phase_one ? 1 : 0;
    CHECK(oracle::max_abs_diff(st->H, lp_oracle::rebuild_abaffian(inst.A, st->basic)) <= 1e-9);
    for (double v : st->x) CHECK(v >= 0.0);
    const auto best = lp_oracle::enumerate_optimum(inst.A, inst.b, inst.c);
    const LpReport rep = lp_solve(inst.A, inst.b, inst.c);
    REQUIRE(rep.status == LpStatus::Optimal);
    CHECK(std::abs(rep.objective - *best) <= 1e-8 * std::max(1.0, std::abs(*best)));
  }
  CHECK(phase_one > 0);
}
