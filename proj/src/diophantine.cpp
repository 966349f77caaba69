#include "absolve/diophantine.hpp"

#include <algorithm>
#include <numeric>

#include "absolve/errors.hpp"

namespace absolve {

Bezout extended_gcd(const Integer& a, const Integer& b) {
  Bezout out;
  mpz_gcdext(out.g.get_mpz_t(), out.x.get_mpz_t(), out.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

GcdCertificate gcd_certificate(const IntVector& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < n; ++k)
    if (sgn(s[k]) != 0) order.push_back(k);
  if (order.empty()) throw ValueError("gcd of the zero vector is undefined");
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mpz_cmpabs(s[a].get_mpz_t(), s[b].get_mpz_t()) < 0; });

  GcdCertificate cert{abs(s[order.front()]), IntVector(n)};
  const std::size_t first = order.front();
  cert.z[first] = sgn(s[first]);
  bool divides_all = true;
  for (std::size_t k : order)
    if (!mpz_divisible_p(s[k].get_mpz_t(), cert.delta.get_mpz_t())) {
      divides_all = false;
      break;
    }
  if (divides_all) return cert;

  for (std::size_t t = 1; t < order.size(); ++t) {
    const std::size_t k = order[t];
    Bezout e = extended_gcd(cert.delta, s[k]);
    if (e.g == cert.delta) continue;
    for (std::size_t j = 0; j < t; ++j) cert.z[order[j]] *= e.x;
    cert.z[k] = e.y;
    cert.delta = e.g;
  }
  return cert;
}

DioReport dio_solve(const IntMatrix& A, const IntVector& b, const DioObserver& observer) {
  const std::size_t m = A.rows(), n = A.cols();
  if (b.size() != m) throw ShapeError("dio_solve: right-hand side length does not match A");
  if (m > n) throw ShapeError("dio_solve expects m <= n");

  DioReport rep;
  rep.H = IntMatrix::identity(n);
  rep.x = IntVector(n);
  for (std::size_t i = 0; i < m; ++i) {
    const IntVector a = A.row(i);
    DioStep st;
    st.index = i;
    st.s = matvec(rep.H, a);
    st.tau = dot(a, rep.x) - b[i];
    const bool zero_s = std::all_of(st.s.begin(), st.s.end(), [](const Integer& v) { return sgn(v) == 0; });
    if (zero_s) {
      if (sgn(st.tau) != 0) {
        rep.status = DioStatus::Incompatible;
        rep.failed_equation = i;
        rep.steps.push_back(std::move(st));
        return rep;
      }
      st.redundant = true;
      rep.redundant.push_back(i);
      rep.steps.push_back(std::move(st));
      if (observer) observer(i, rep.H, rep.x);
      continue;
    }

    GcdCertificate cert = gcd_certificate(st.s);
    st.delta = cert.delta;
    st.z = cert.z;
    if (!mpz_divisible_p(st.tau.get_mpz_t(), st.delta.get_mpz_t())) {
      rep.status = DioStatus::IntegerInconsistent;
      rep.failed_equation = i;
      rep.steps.push_back(std::move(st));
      return rep;
    }
    mpz_divexact(st.alpha.get_mpz_t(), st.tau.get_mpz_t(), st.delta.get_mpz_t());
    st.p = matvec_transposed(rep.H, st.z);
    for (std::size_t j = 0; j < n; ++j) rep.x[j] -= st.alpha * st.p[j];

    for (std::size_t r = 0; r < n; ++r) {
      if (sgn(st.s[r]) == 0) continue;
      Integer f;
      mpz_divexact(f.get_mpz_t(), st.s[r].get_mpz_t(), st.delta.get_mpz_t());
      for (std::size_t c = 0; c < n; ++c) rep.H(r, c) -= f * st.p[c];
    }
    rep.steps.push_back(std::move(st));
    if (observer) observer(i, rep.H, rep.x);
  }
  rep.status = DioStatus::Solved;
  return rep;
}

IntVector dio_general_solution(const DioReport& report, const IntVector& q) {
  if (report.status != DioStatus::Solved) throw StateError("general solution requires a solved report");
  if (q.size() != report.H.rows()) throw ShapeError("dio_general_solution: q has the wrong length");
  return report.x + matvec_transposed(report.H, q);
}

}  // namespace absolve
