#include "absolve/quasi_newton.hpp"

#include <algorithm>
#include <cmath>

#include "absolve/errors.hpp"
#include "absolve/strategies.hpp"

namespace absolve {

namespace {

void check_shapes(const SecantData& data, bool with_free) {
  const std::size_t n = data.d.size();
  if (data.y.size() != n || data.B.rows() != n || data.B.cols() != n)
    throw ShapeError("secant data: d, y and B do not conform");
  if (with_free && (data.s.size() != n || data.Q.rows() != n || data.Q.cols() != n))
    throw ShapeError("secant data: s and Q do not conform");
}

}  // namespace

RealMatrix qn_general_update(const SecantData& data, double tol) {
  check_shapes(data, true);
  const double ds = dot(data.d, data.s);
  if (std::abs(ds) <= tol * norm2(data.d) * norm2(data.s)) throw ParameterError("secant update: s'd vanishes");
  RealMatrix m = data.B + data.Q;
  const RealVector r = matvec_transposed(m, data.d) - data.y;
  outer_update_inplace(m, data.s, r, ds);
  return m;
}

RealMatrix qn_structured_update(const SecantData& data, const StructureSpec& spec, double tol) {
  check_shapes(data, false);
  const std::size_t n = data.d.size();
  for (const auto& c : spec.fixed)
    if (c.row >= n || c.col >= n) throw ShapeError("structure constraint out of range");

  RealMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<RealVector> rows;
    std::vector<double> rhs;
    std::vector<bool> bound(n, false);
    for (const auto& c : spec.fixed) {
      if (c.col != j) continue;
      rows.push_back(RealVector::unit(n, c.row));
      rhs.push_back(c.value);
      bound[c.row] = true;
    }
    if (spec.symmetric)
      for (std::size_t i = 0; i < j; ++i) {
        rows.push_back(RealVector::unit(n, i));
        rhs.push_back(out(j, i));
        bound[i] = true;
      }
    rows.push_back(data.d);
    rhs.push_back(data.y[j]);

    RealMatrix a(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) a.set_row(r, rows[r]);
    SolveOptions opts;
    opts.tol = tol;
    opts.x1 = data.B.col(j);
    const SolveReport rep = run(a, RealVector(std::move(rhs)), huang(), opts);
    if (rep.inconsistent_equation)
      throw InfeasibleStructureError("structured secant update: constraints of column " + std::to_string(j) +
                                     " are inconsistent");
    RealVector col = rep.x;

    const std::size_t last = n - 1;
    if (spec.large_diagonal && n >= 2 && j < last && !bound[j] && !bound[last] &&
        std::abs(data.d[last]) > tol * norm_inf(data.d)) {
      double off = 0.0;
      for (std::size_t k = 0; k < last; ++k)
        if (k != j) off += std::abs(col[k]);
      const double delta = off + spec.margin - col[j];
      if (delta > 0.0) {
        // moves along g = e_j − (d_j/d_{n−1}) e_{n−1}, which keeps dᵀcol fixed
        col[j] += delta;
        col[last] -= delta * data.d[j] / data.d[last];
      }
    }
    out.set_col(j, col);
  }
  return out;
}

double secant_residual(const RealMatrix& Bp, const RealVector& d, const RealVector& y) {
  return norm_inf(matvec_transposed(Bp, d) - y);
}

}  // namespace absolve
