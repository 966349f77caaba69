#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "absolve/constrained.hpp"
#include "absolve/diophantine.hpp"
#include "absolve/engine.hpp"
#include "absolve/errors.hpp"
#include "absolve/generators.hpp"
#include "absolve/quasi_newton.hpp"
#include "absolve/simplex.hpp"
#include "absolve/strategies.hpp"

namespace py = pybind11;
using namespace absolve;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

RealMatrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw ShapeError("expected a 2-d array");
  const auto m = static_cast<std::size_t>(a.shape(0)), n = static_cast<std::size_t>(a.shape(1));
  return RealMatrix(m, n, std::vector<double>(a.data(), a.data() + m * n));
}

RealVector to_vector(const Array& a) {
  if (a.ndim() != 1) throw ShapeError("expected a 1-d array");
  return RealVector(std::vector<double>(a.data(), a.data() + a.shape(0)));
}

py::array_t<double> from_matrix(const RealMatrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data(), m.data() + m.rows() * m.cols(), out.mutable_data());
  return out;
}

py::array_t<double> from_vector(const RealVector& v) {
  py::array_t<double> out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Integer to_integer(const py::handle& h) { return Integer(py::str(py::int_(py::reinterpret_borrow<py::object>(h))).cast<std::string>()); }

py::int_ from_integer(const Integer& v) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10))); }

IntMatrix to_int_matrix(const py::sequence& rows) {
  const std::size_t m = rows.size();
  if (m == 0) throw ShapeError("empty integer matrix");
  const std::size_t n = py::len(rows[0]);
  IntMatrix out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const py::sequence r = rows[i];
    if (r.size() != n) throw ShapeError("ragged integer matrix");
    for (std::size_t j = 0; j < n; ++j) out(i, j) = to_integer(r[j]);
  }
  return out;
}

IntVector to_int_vector(const py::sequence& vals) {
  IntVector out(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) out[i] = to_integer(vals[i]);
  return out;
}

py::list from_int_vector(const IntVector& v) {
  py::list out;
  for (const auto& x : v) out.append(from_integer(x));
  return out;
}

py::list from_int_matrix(const IntMatrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.append(from_int_vector(m.row(i)));
  return out;
}

StrategySpec strategy_for(const std::string& method) {
  if (method == "huang") return huang();
  if (method == "mhuang") return modified_huang();
  if (method == "ilu") return implicit_lu();
  if (method == "ilx") return implicit_lx();
  if (method == "cd") return conjugate_direction();
  if (method == "os") return orthogonally_scaled();
  throw ParameterError("unknown method '" + method + "'");
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::Inconsistent: return "inconsistent";
    case SolveStatus::MaxedSteps: return "maxed_steps";
  }
  return "?";
}

py::dict solve_py(const Array& a, const Array& b, const std::string& method, double tol, std::size_t refine) {
  const RealMatrix A = to_matrix(a);
  const RealVector B = to_vector(b);
  SolveReport r;
  if (method == "ls") {
    r = solve_least_squares(A, B, tol);
  } else {
    SolveOptions opts;
    opts.tol = tol;
    r = solve(A, B, strategy_for(method), opts);
  }
  if (refine > 0 && r.status == SolveStatus::Solved) r = iterative_refinement(A, B, r, refine);
  py::dict out;
  out["status"] = status_name(r.status);
  out["method"] = method;
  out["steps"] = r.steps;
  out["redundant"] = r.redundant;
  out["inconsistent_equation"] = r.inconsistent_equation ? py::cast(*r.inconsistent_equation) : py::none();
  if (r.status != SolveStatus::Inconsistent) {
    out["x"] = from_vector(r.x);
    out["H"] = from_matrix(r.H);
    out["residual"] = norm2(residual(A, r.x, B));
  }
  return out;
}

py::dict dio_py(const py::sequence& a, const py::sequence& b) {
  const DioReport r = dio_solve(to_int_matrix(a), to_int_vector(b));
  py::dict out;
  switch (r.status) {
    case DioStatus::Solved: out["status"] = "solved"; break;
    case DioStatus::Incompatible: out["status"] = "inconsistent"; break;
    case DioStatus::IntegerInconsistent: out["status"] = "integer_inconsistent"; break;
  }
  out["failed_equation"] = r.failed_equation ? py::cast(*r.failed_equation) : py::none();
  out["redundant"] = r.redundant;
  if (r.status == DioStatus::Solved) {
    out["x"] = from_int_vector(r.x);
    out["H"] = from_int_matrix(r.H);
  }
  return out;
}

py::dict lp_py(const Array& a, const Array& b, const Array& c, double tol, std::size_t max_pivots) {
  const LpReport r = lp_solve(to_matrix(a), to_vector(b), to_vector(c), tol, max_pivots);
  py::dict out;
  switch (r.status) {
    case LpStatus::Optimal: out["status"] = "optimal"; break;
    case LpStatus::Unbounded: out["status"] = "unbounded"; break;
    case LpStatus::Infeasible: out["status"] = "infeasible"; break;
    case LpStatus::IterLimit: out["status"] = "iteration_limit"; break;
  }
  out["pivots"] = r.pivots;
  out["phase_one"] = r.phase_one;
  if (r.status == LpStatus::Optimal) {
    out["x"] = from_vector(r.x);
    out["objective"] = r.objective;
    out["basic"] = r.basic;
  }
  return out;
}

SecantData secant(const Array& B, const Array& d, const Array& y, const std::optional<Array>& s,
                  const std::optional<Array>& Q) {
  SecantData sd;
  sd.B = to_matrix(B);
  sd.d = to_vector(d);
  sd.y = to_vector(y);
  sd.s = s ? to_vector(*s) : sd.d;
  sd.Q = Q ? to_matrix(*Q) : RealMatrix(sd.B.rows(), sd.B.cols());
  return sd;
}

Variant variant_for(const std::string& v) {
  if (v == "rg") return Variant::ReducedGradient;
  if (v == "rosen") return Variant::RosenProjection;
  if (v == "gi") return Variant::GoldfarbIdnani;
  throw ParameterError("unknown variant '" + v + "'");
}

Objective wrap_f(const py::function& f) {
  return [f](const RealVector& x) { return f(from_vector(x)).cast<double>(); };
}

Gradient wrap_g(const py::function& g) {
  return [g](const RealVector& x) { return to_vector(g(from_vector(x)).cast<Array>()); };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ABS-class solvers";

  auto base = py::register_exception<Error>(m, "AbsError", PyExc_RuntimeError);
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<StateError>(m, "StateError", base.ptr());
  py::register_exception<InfeasibleStructureError>(m, "InfeasibleStructureError", base.ptr());

  m.attr("DEFAULT_TOL") = kDefaultTol;

  m.def("solve", &solve_py, py::arg("A"), py::arg("b"), py::arg("method") = "huang", py::arg("tol") = kDefaultTol,
        py::arg("refine") = 0, "Solve A x = b; method is huang, mhuang, ilu, ilx, cd, os or ls.");

  m.def("dio_solve", &dio_py, py::arg("A"), py::arg("b"), "Integer solution of A x = b with integer data.");
  m.def(
      "dio_general_solution",
      [](const py::sequence& x, const py::sequence& H, const py::sequence& q) {
        DioReport r;
        r.status = DioStatus::Solved;
        r.x = to_int_vector(x);
        r.H = to_int_matrix(H);
        return from_int_vector(dio_general_solution(r, to_int_vector(q)));
      },
      py::arg("x"), py::arg("H"), py::arg("q"), "x + Hᵀq.");

  m.def("lp_solve", &lp_py, py::arg("A"), py::arg("b"), py::arg("c"), py::arg("tol") = kDefaultTol,
        py::arg("max_pivots") = 10000, "Minimize cᵀx subject to A x = b, x ≥ 0.");

  m.def(
      "qn_update",
      [](const Array& B, const Array& d, const Array& y, const std::optional<Array>& s, const std::optional<Array>& Q,
         double tol) { return from_matrix(qn_general_update(secant(B, d, y, s, Q), tol)); },
      py::arg("B"), py::arg("d"), py::arg("y"), py::arg("s") = py::none(), py::arg("Q") = py::none(),
      py::arg("tol") = kDefaultTol);
  m.def(
      "qn_structured_update",
      [](const Array& B, const Array& d, const Array& y, bool symmetric,
         const std::vector<std::tuple<std::size_t, std::size_t, double>>& fixed, bool large_diagonal, double tol) {
        StructureSpec spec;
        spec.symmetric = symmetric;
        spec.large_diagonal = large_diagonal;
        for (const auto& [r, c, v] : fixed) spec.fixed.push_back({r, c, v});
        return from_matrix(qn_structured_update(secant(B, d, y, std::nullopt, std::nullopt), spec, tol));
      },
      py::arg("B"), py::arg("d"), py::arg("y"), py::arg("symmetric") = false,
      py::arg("fixed") = std::vector<std::tuple<std::size_t, std::size_t, double>>{}, py::arg("large_diagonal") = false,
      py::arg("tol") = kDefaultTol);

  m.def(
      "minimize",
      [](const py::function& f, const py::function& g, const Array& A, const Array& b, const Array& x1,
         const std::string& variant, std::size_t max_iterations) {
        FeasibleProblem p;
        p.f = wrap_f(f);
        p.grad = wrap_g(g);
        p.A = to_matrix(A);
        p.b = to_vector(b);
        p.Q = RealMatrix::identity(p.A.cols());
        p.variant = variant_for(variant);
        if (p.variant == Variant::GoldfarbIdnani) p.H1 = RealMatrix::identity(p.A.cols());
        const MinimizeReport r = minimize(p, to_vector(x1), max_iterations);
        py::dict out;
        out["status"] = r.status == MinimizeStatus::KtPoint ? "kt_point" : "iteration_limit";
        out["x"] = from_vector(r.x);
        out["iterations"] = r.iterations;
        out["lambda"] = r.kt ? py::object(from_vector(r.kt->lambda)) : py::object(py::none());
        return out;
      },
      py::arg("f"), py::arg("grad"), py::arg("A"), py::arg("b"), py::arg("x1"), py::arg("variant") = "rosen",
      py::arg("max_iterations") = 10000, "Minimize f subject to A x = b from a feasible x1.");
  m.def(
      "unconstrained_min",
      [](const py::function& f, const py::function& g, const Array& x1, double gtol) {
        UnconstrainedOptions opts;
        opts.gtol = gtol;
        const UnconstrainedReport r = abs_unconstrained_min(wrap_f(f), wrap_g(g), to_vector(x1), opts);
        py::dict out;
        switch (r.status) {
          case UnconstrainedStatus::Converged: out["status"] = "converged"; break;
          case UnconstrainedStatus::Unbounded: out["status"] = "unbounded"; break;
          case UnconstrainedStatus::MaxIterations: out["status"] = "iteration_limit"; break;
        }
        out["x"] = from_vector(r.x);
        out["steps"] = r.steps;
        return out;
      },
      py::arg("f"), py::arg("grad"), py::arg("x1"), py::arg("gtol") = 1e-10);

  m.def(
      "generate_conditioned",
      [](std::size_t n, double cond, std::uint64_t seed) {
        const auto p = generate_conditioned(n, cond, seed);
        return py::make_tuple(from_matrix(p.A), from_vector(p.b), from_vector(p.x_true));
      },
      py::arg("n"), py::arg("cond"), py::arg("seed") = 0);
  m.def(
      "generate_integer",
      [](std::size_t m_, std::size_t n, long lo, long hi, std::uint64_t seed) {
        const auto p = generate_integer(m_, n, lo, hi, seed);
        return py::make_tuple(from_int_matrix(p.A), from_int_vector(p.b), from_int_vector(p.x_true));
      },
      py::arg("m"), py::arg("n"), py::arg("lo") = -9, py::arg("hi") = 9, py::arg("seed") = 0);
  m.def(
      "generate_lp",
      [](std::size_t m_, std::size_t n, std::uint64_t seed) {
        const auto p = generate_lp(m_, n, seed);
        return py::make_tuple(from_matrix(p.A), from_vector(p.b), from_vector(p.c));
      },
      py::arg("m"), py::arg("n"), py::arg("seed") = 0);
}
