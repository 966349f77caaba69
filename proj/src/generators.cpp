#include "absolve/generators.hpp"

#include <cmath>
#include <random>

#include "absolve/errors.hpp"

namespace absolve {

namespace {

RealMatrix gaussian(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  RealMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = nd(rng);
  return a;
}

}  // namespace

ConditionedProblem generate_conditioned(std::size_t n, double cond, std::uint64_t seed) {
  if (n == 0) throw ParameterError("generator: n must be positive");
  if (!(cond >= 1.0) || !std::isfinite(cond)) throw ParameterError("generator: condition target must be >= 1");
  std::mt19937_64 rng(seed);
  const RealMatrix u = householder_q(gaussian(n, n, rng));
  const RealMatrix v = householder_q(gaussian(n, n, rng));

  ConditionedProblem p;
  p.singular_values = RealVector(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    p.singular_values[k] = std::pow(cond, -t);
  }
  RealMatrix us = u;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) us(i, k) *= p.singular_values[k];
  p.A = matmul(us, transpose(v));

  // grid 2^e with n·max|a| ≤ 2^51·2^e, so every partial row sum is exact
  const double bound = static_cast<double>(n) * max_abs(p.A);
  const double grid = std::ldexp(1.0, static_cast<int>(std::ceil(std::log2(bound))) - 51);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.A(i, j) = std::nearbyint(p.A(i, j) / grid) * grid;
  p.x_true = RealVector(n, 1.0);
  p.b = matvec(p.A, p.x_true);
  return p;
}

IntegerProblem generate_integer(std::size_t m, std::size_t n, long lo, long hi, std::uint64_t seed) {
  if (m == 0 || n == 0) throw ParameterError("generator: sizes must be positive");
  if (lo > hi) throw ParameterError("generator: empty entry range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> ud(lo, hi);
  IntegerProblem p{IntMatrix(m, n), IntVector(m), IntVector(n)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) p.A(i, j) = ud(rng);
  for (auto& x : p.x_true) x = ud(rng);
  p.b = matvec(p.A, p.x_true);
  return p;
}

LpProblem generate_lp(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0 || m > n) throw ParameterError("generator: LP needs 0 < m <= n");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.5, 2.0), any(-2.0, 2.0), xd(0.1, 1.0);
  LpProblem p{RealMatrix(m, n), RealVector(m), RealVector(n)};
  for (std::size_t j = 0; j < n; ++j) {
    p.A(0, j) = pos(rng);
    for (std::size_t i = 1; i < m; ++i) p.A(i, j) = any(rng);
    p.c[j] = any(rng);
  }
  RealVector x0(n);
  for (auto& v : x0) v = xd(rng);
  p.b = matvec(p.A, x0);
  return p;
}

}  // namespace absolve
