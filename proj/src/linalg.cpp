#include "absolve/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace absolve {

double norm2(const RealVector& v) {
  // Scaled accumulation so that tiny and huge entries do not under/overflow.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : v) {
    const double t = x / scale;
    acc += t * t;
  }
  return scale * std::sqrt(acc);
}

double norm_inf(const RealVector& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

double frobenius(const RealMatrix& m) {
  double acc = 0.0;
  const std::size_t n = m.rows() * m.cols();
  for (std::size_t k = 0; k < n; ++k) acc += m.data()[k] * m.data()[k];
  return std::sqrt(acc);
}

double max_abs(const RealMatrix& m) {
  double out = 0.0;
  const std::size_t n = m.rows() * m.cols();
  for (std::size_t k = 0; k < n; ++k) out = std::max(out, std::abs(m.data()[k]));
  return out;
}

void outer_update_inplace(RealMatrix& h, const RealVector& u, const RealVector& v, double denom) {
  if (h.rows() != u.size() || h.cols() != v.size()) throw ShapeError("outer_update: shapes do not conform");
  if (denom == 0.0) throw DivisionGuardError("outer_update: zero denominator");
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (u[i] == 0.0) continue;
    const double ui = u[i] / denom;
    auto r = h.row_span(i);
    for (std::size_t j = 0; j < h.cols(); ++j) r[j] -= ui * v[j];
  }
}

RealMatrix outer_update(const RealMatrix& h, const RealVector& u, const RealVector& v, double denom) {
  RealMatrix out = h;
  outer_update_inplace(out, u, v, denom);
  return out;
}

namespace {

// Knuth's TwoSum and an FMA-based TwoProduct.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double z = s - a;
  e = (a - (s - z)) + (b - z);
}

}  // namespace

double dot_compensated(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("dot_compensated: length mismatch");
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = a[i] * b[i];
    const double pe = std::fma(a[i], b[i], -p);
    double t, te;
    two_sum(s, p, t, te);
    s = t;
    c += te + pe;
  }
  return s + c;
}

RealVector residual(const RealMatrix& a, const RealVector& x, const RealVector& b) {
  if (a.cols() != x.size() || a.rows() != b.size()) throw ShapeError("residual: shapes do not conform");
  RealVector r(a.rows());
  std::vector<double> xb(x.size() + 1);
  std::copy(x.begin(), x.end(), xb.begin());
  xb.back() = -1.0;
  std::vector<double> row(a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto ai = a.row_span(i);
    std::copy(ai.begin(), ai.end(), row.begin());
    row.back() = b[i];
    r[i] = dot_compensated(row, xb);
  }
  return r;
}

RealMatrix lu_solve(const RealMatrix& m, const RealMatrix& rhs, double tol) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw ShapeError("lu_solve: matrix not square");
  if (rhs.rows() != n) throw ShapeError("lu_solve: rhs rows mismatch");
  RealMatrix a = m;
  RealMatrix x = rhs;
  const std::size_t k = rhs.cols();
  const double scale = max_abs(m);
  if (scale == 0.0) throw NumericalError("lu_solve: zero matrix");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (std::abs(a(piv, c)) <= tol * scale) throw NumericalError("lu_solve: singular matrix");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      for (std::size_t j = 0; j < k; ++j) std::swap(x(c, j), x(piv, j));
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      if (f == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      for (std::size_t j = 0; j < k; ++j) x(r, j) -= f * x(c, j);
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t j = 0; j < k; ++j) {
      double acc = x(c, j);
      for (std::size_t t = c + 1; t < n; ++t) acc -= a(c, t) * x(t, j);
      x(c, j) = acc / a(c, c);
    }
  }
  return x;
}

RealVector lu_solve(const RealMatrix& m, const RealVector& rhs, double tol) {
  RealMatrix r(rhs.size(), 1);
  r.set_col(0, rhs);
  return lu_solve(m, r, tol).col(0);
}

RealMatrix householder_q(const RealMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw ShapeError("householder_q: matrix not square");
  RealMatrix a = m;
  std::vector<RealVector> reflectors;
  reflectors.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    RealVector v(n);
    double alpha = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = a(i, k);
      alpha += v[i] * v[i];
    }
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) {
      reflectors.push_back(RealVector(n));
      continue;
    }
    if (v[k] > 0) alpha = -alpha;
    v[k] -= alpha;
    const double vn = norm2(v);
    for (std::size_t i = k; i < n; ++i) v[i] /= vn;
    // A ← (I − 2vvᵀ)A on the trailing columns.
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += v[i] * a(i, j);
      for (std::size_t i = k; i < n; ++i) a(i, j) -= 2.0 * s * v[i];
    }
    reflectors.push_back(std::move(v));
  }
  // Q = H_0 H_1 ... H_{n-1}, accumulated backwards onto the identity.
  RealMatrix q = RealMatrix::identity(n);
  for (std::size_t k = n; k-- > 0;) {
    const RealVector& v = reflectors[k];
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += v[i] * q(i, j);
      if (s == 0.0) continue;
      for (std::size_t i = k; i < n; ++i) q(i, j) -= 2.0 * s * v[i];
    }
  }
  return q;
}

}  // namespace absolve
