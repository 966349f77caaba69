// absolve command-line front end.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absolve/constrained.hpp"
#include "absolve/diophantine.hpp"
#include "absolve/engine.hpp"
#include "absolve/errors.hpp"
#include "absolve/generators.hpp"
#include "absolve/io.hpp"
#include "absolve/quasi_newton.hpp"
#include "absolve/simplex.hpp"
#include "absolve/strategies.hpp"

using namespace absolve;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kInconsistent = 2, kIntegerInconsistent = 3, kUnbounded = 4, kInfeasible = 5 };

class Report {
 public:
  explicit Report(bool kv) : kv_(kv) {}

  void add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
  void add(const std::string& key, double v) { add(key, format_real(v)); }
  void add(const std::string& key, std::size_t v) { add(key, std::to_string(v)); }
  void add(const std::string& key, const RealVector& v) { add(key, join(v)); }
  void add(const std::string& key, const IntVector& v) { add(key, join(v)); }
  void add_indices(const std::string& key, const std::vector<std::size_t>& idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? " " : "") + std::to_string(idx[i] + 1);
    add(key, s);
  }

  void print(std::ostream& out) const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_) {
      if (kv_)
        out << k << '=' << v << '\n';
      else
        out << k << std::string(width - k.size(), ' ') << "  " << v << '\n';
    }
  }

 private:
  template <class Vec>
  static std::string join(const Vec& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ' ';
      if constexpr (std::is_same_v<typename Vec::value_type, double>)
        os << format_real(v[i]);
      else
        os << v[i].get_str();
    }
    return os.str();
  }

  bool kv_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

double default_tol() {
  if (const char* env = std::getenv("ABS_TOL")) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(t > 0.0)) throw ParameterError(std::string("ABS_TOL is not a positive number: ") + env);
    return t;
  }
  return kDefaultTol;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double relative_residual(const RealMatrix& A, const RealVector& x, const RealVector& b) {
  return norm2(residual(A, x, b)) / std::max(norm2(b), 1e-300);
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

struct SolveArgs {
  std::string method = "huang";
  std::string matrix, rhs, solution;
  std::optional<double> tol;
  std::size_t refine = 0;
  std::string format = "text";
};

int cmd_solve(const SolveArgs& a) {
  const double tol = a.tol.value_or(default_tol());
  const RealMatrix A = load_real_matrix(a.matrix);
  const RealVector b = load_real_vector(a.rhs);
  std::optional<RealVector> x_true;
  if (!a.solution.empty()) x_true = load_real_vector(a.solution);

  const auto t0 = std::chrono::steady_clock::now();
  SolveReport r;
  if (a.method == "ls") {
    r = solve_least_squares(A, b, tol);
  } else {
    SolveOptions opts;
    opts.tol = tol;
    r = solve(A, b, strategy_for(a.method), opts);
  }
  std::size_t rounds = 0;
  if (a.refine > 0 && r.status == SolveStatus::Solved) {
    r = iterative_refinement(A, b, r, a.refine);
    rounds = a.refine;
  }
  const double elapsed = seconds_since(t0);

  Report rep(a.format == "kv");
  rep.add("method", a.method);
  rep.add("status", status_name(r.status));
  rep.add("m", A.rows());
  rep.add("n", A.cols());
  rep.add("steps", r.steps);
  rep.add("redundant", r.redundant.size());
  if (!r.redundant.empty()) rep.add_indices("redundant_equations", r.redundant);
  if (r.status == SolveStatus::Inconsistent) {
    if (r.inconsistent_equation) rep.add("inconsistent_equation", *r.inconsistent_equation + 1);
  } else {
    rep.add("residual", norm2(residual(A, r.x, b)));
    rep.add("relative_residual", relative_residual(A, r.x, b));
    if (x_true) {
      if (x_true->size() != r.x.size()) throw ShapeError("solution file length does not match the matrix");
      rep.add("error", norm2(r.x - *x_true) / std::max(norm2(*x_true), 1e-300));
    }
    if (rounds) rep.add("refine_rounds", rounds);
    rep.add("x", r.x);
  }
  rep.add("time", elapsed);
  rep.print(std::cout);
  return r.status == SolveStatus::Inconsistent ? kInconsistent : kOk;
}

int cmd_dio(const std::string& matrix, const std::string& rhs, const std::string& format) {
  const IntMatrix A = load_int_matrix(matrix);
  const IntVector b = load_int_vector(rhs);
  const auto t0 = std::chrono::steady_clock::now();
  const DioReport r = dio_solve(A, b);
  const double elapsed = seconds_since(t0);

  Report rep(format == "kv");
  rep.add("method", std::string("diophantine"));
  rep.add("m", A.rows());
  rep.add("n", A.cols());
  int code = kOk;
  switch (r.status) {
    case DioStatus::Solved: rep.add("status", std::string("solved")); break;
    case DioStatus::Incompatible:
      rep.add("status", std::string("inconsistent"));
      code = kInconsistent;
      break;
    case DioStatus::IntegerInconsistent:
      rep.add("status", std::string("integer_inconsistent"));
      code = kIntegerInconsistent;
      break;
  }
  rep.add("steps", r.steps.size());
  rep.add("redundant", r.redundant.size());
  if (!r.redundant.empty()) rep.add_indices("redundant_equations", r.redundant);
  if (r.failed_equation) rep.add("failed_equation", *r.failed_equation + 1);
  if (code == kOk) {
    rep.add("x", r.x);
    // rows of H span the integer null space; x + Hᵀq covers every solution
    for (std::size_t i = 0; i < r.H.rows(); ++i) rep.add("H_row_" + std::to_string(i + 1), r.H.row(i));
  }
  rep.add("time", elapsed);
  rep.print(std::cout);
  return code;
}

int cmd_lp(const std::string& cost, const std::string& matrix, const std::string& rhs, std::optional<double> tol,
           std::size_t max_pivots, const std::string& format) {
  const RealVector c = load_real_vector(cost);
  const RealMatrix A = load_real_matrix(matrix);
  const RealVector b = load_real_vector(rhs);
  const auto t0 = std::chrono::steady_clock::now();
  const LpReport r = lp_solve(A, b, c, tol.value_or(default_tol()), max_pivots);
  const double elapsed = seconds_since(t0);

  Report rep(format == "kv");
  rep.add("method", std::string("simplex"));
  rep.add("m", A.rows());
  rep.add("n", A.cols());
  int code = kOk;
  switch (r.status) {
    case LpStatus::Optimal: rep.add("status", std::string("optimal")); break;
    case LpStatus::Unbounded:
      rep.add("status", std::string("unbounded"));
      code = kUnbounded;
      break;
    case LpStatus::Infeasible:
      rep.add("status", std::string("infeasible"));
      code = kInfeasible;
      break;
    case LpStatus::IterLimit:
      rep.add("status", std::string("iteration_limit"));
      code = kUsage;
      break;
  }
  rep.add("pivots", r.pivots);
  rep.add("phase_one", std::string(r.phase_one ? "yes" : "no"));
  if (r.phase_one) rep.add("phase_one_pivots", r.phase_one_pivots);
  if (r.status == LpStatus::Optimal) {
    rep.add("objective", r.objective);
    rep.add("residual", norm2(residual(A, r.x, b)));
    rep.add_indices("basic", r.basic);
    rep.add("x", r.x);
  }
  rep.add("time", elapsed);
  rep.print(std::cout);
  return code;
}

struct QnArgs {
  std::string B, d, y, s, Q, fixed, out;
  bool symmetric = false;
  bool large_diagonal = false;
  double margin = 1.0;
  std::optional<double> tol;
  std::string format = "text";
};

int cmd_qn(const QnArgs& a) {
  SecantData data;
  data.B = load_real_matrix(a.B);
  data.d = load_real_vector(a.d);
  data.y = load_real_vector(a.y);
  data.s = a.s.empty() ? data.d : load_real_vector(a.s);
  data.Q = a.Q.empty() ? RealMatrix(data.B.rows(), data.B.cols()) : load_real_matrix(a.Q);
  const double tol = a.tol.value_or(default_tol());

  const bool structured = a.symmetric || !a.fixed.empty() || a.large_diagonal;
  const auto t0 = std::chrono::steady_clock::now();
  RealMatrix Bp;
  if (structured) {
    StructureSpec spec;
    spec.symmetric = a.symmetric;
    spec.margin = a.margin;
    spec.large_diagonal = a.large_diagonal;
    if (!a.fixed.empty()) {
      const RealMatrix f = load_real_matrix(a.fixed);
      if (f.cols() != 3) throw ParseError("fixed-entry file needs three columns: row col value");
      for (std::size_t k = 0; k < f.rows(); ++k) {
        const double r = f(k, 0), c = f(k, 1);
        if (r < 1 || c < 1 || r != std::floor(r) || c != std::floor(c))
          throw ParseError("fixed-entry indices must be positive integers");
        spec.fixed.push_back({static_cast<std::size_t>(r) - 1, static_cast<std::size_t>(c) - 1, f(k, 2)});
      }
    }
    Bp = qn_structured_update(data, spec, tol);
  } else {
    Bp = qn_general_update(data, tol);
  }
  const double elapsed = seconds_since(t0);
  if (!a.out.empty()) save(a.out, Bp);

  Report rep(a.format == "kv");
  rep.add("method", std::string(structured ? "structured" : "general"));
  rep.add("n", Bp.rows());
  rep.add("secant_residual", secant_residual(Bp, data.d, data.y));
  for (std::size_t i = 0; i < Bp.rows(); ++i) rep.add("B_row_" + std::to_string(i + 1), Bp.row(i));
  rep.add("time", elapsed);
  rep.print(std::cout);
  return kOk;
}

struct MinArgs {
  std::string G, h, matrix, rhs, x0;
  std::string variant = "rosen";
  std::size_t max_iterations = 10000;
  std::optional<double> tol;
  std::string format = "text";
};

int cmd_min(const MinArgs& a) {
  const RealMatrix G = load_real_matrix(a.G);
  const std::size_t n = G.cols();
  if (G.rows() != n) throw ShapeError("Hessian file must be square");
  const RealVector h = a.h.empty() ? RealVector(n) : load_real_vector(a.h);
  if (h.size() != n) throw ShapeError("linear term length does not match the Hessian");
  Objective f = [G, h](const RealVector& x) { return 0.5 * dot(x, matvec(G, x)) + dot(h, x); };
  Gradient grad = [G, h](const RealVector& x) { return matvec(G, x) + h; };

  Report rep(a.format == "kv");
  const auto t0 = std::chrono::steady_clock::now();
  int code = kOk;
  if (a.matrix.empty()) {
    const RealVector x1 = a.x0.empty() ? RealVector(n) : load_real_vector(a.x0);
    const UnconstrainedReport r = abs_unconstrained_min(f, grad, x1);
    rep.add("method", std::string("abs-unconstrained"));
    rep.add("n", n);
    switch (r.status) {
      case UnconstrainedStatus::Converged: rep.add("status", std::string("converged")); break;
      case UnconstrainedStatus::Unbounded:
        rep.add("status", std::string("unbounded"));
        code = kUnbounded;
        break;
      case UnconstrainedStatus::MaxIterations:
        rep.add("status", std::string("iteration_limit"));
        code = kUsage;
        break;
    }
    rep.add("steps", r.steps);
    rep.add("sweeps", r.sweeps);
    if (code == kOk) {
      rep.add("objective", f(r.x));
      rep.add("gradient_norm", norm2(grad(r.x)));
      rep.add("x", r.x);
    }
  } else {
    FeasibleProblem p;
    p.f = f;
    p.grad = grad;
    p.A = load_real_matrix(a.matrix);
    p.b = load_real_vector(a.rhs);
    p.Q = RealMatrix::identity(n);
    if (a.variant == "rg")
      p.variant = Variant::ReducedGradient;
    else if (a.variant == "rosen")
      p.variant = Variant::RosenProjection;
    else if (a.variant == "gi") {
      p.variant = Variant::GoldfarbIdnani;
      p.H1 = RealMatrix::identity(n);
    }
    else
      throw ParameterError("unknown variant '" + a.variant + "'");

    RealVector x1;
    if (!a.x0.empty()) {
      x1 = load_real_vector(a.x0);
    } else {
      SolveOptions opts;
      opts.tol = a.tol.value_or(default_tol());
      const SolveReport start = solve(p.A, p.b, huang(), opts);
      if (start.status == SolveStatus::Inconsistent) {
        rep.add("method", "descent-" + a.variant);
        rep.add("status", std::string("infeasible"));
        if (start.inconsistent_equation) rep.add("inconsistent_equation", *start.inconsistent_equation + 1);
        rep.print(std::cout);
        return kInfeasible;
      }
      x1 = start.x;
    }
    const MinimizeReport r = minimize(p, x1, a.max_iterations);
    rep.add("method", "descent-" + a.variant);
    rep.add("n", n);
    rep.add("m", p.A.rows());
    if (r.status == MinimizeStatus::KtPoint) {
      rep.add("status", std::string("kt_point"));
    } else {
      rep.add("status", std::string("iteration_limit"));
      code = kUsage;
    }
    rep.add("iterations", r.iterations);
    rep.add("max_infeasibility", r.max_infeasibility);
    rep.add("objective", f(r.x));
    if (r.kt) {
      rep.add("kt_residual", r.kt->residual);
      rep.add("lambda", r.kt->lambda);
    }
    rep.add("x", r.x);
  }
  rep.add("time", seconds_since(t0));
  rep.print(std::cout);
  return code;
}

struct GenArgs {
  std::string kind;
  std::size_t n = 0, m = 0;
  double cond = 1e6;
  std::uint64_t seed = 0;
  long lo = -9, hi = 9;
  std::string out_matrix, out_rhs, out_solution, out_cost;
};

int cmd_gen(const GenArgs& a) {
  if (a.out_matrix.empty() || a.out_rhs.empty()) throw ParameterError("gen needs --out-matrix and --out-rhs");
  if (a.kind == "cond") {
    if (a.m != 0 && a.m != a.n) throw ParameterError("cond generator is square; omit -m or set it to n");
    const auto p = generate_conditioned(a.n, a.cond, a.seed);
    save(a.out_matrix, p.A);
    save(a.out_rhs, p.b);
    if (!a.out_solution.empty()) save(a.out_solution, p.x_true);
  } else if (a.kind == "intrand") {
    const auto p = generate_integer(a.m ? a.m : a.n, a.n, a.lo, a.hi, a.seed);
    save(a.out_matrix, p.A);
    save(a.out_rhs, p.b);
    if (!a.out_solution.empty()) save(a.out_solution, p.x_true);
  } else if (a.kind == "lp") {
    if (a.out_cost.empty()) throw ParameterError("lp generator needs --out-cost");
    const auto p = generate_lp(a.m, a.n, a.seed);
    save(a.out_matrix, p.A);
    save(a.out_rhs, p.b);
    save(a.out_cost, p.c);
  } else {
    throw ParameterError("unknown generator kind '" + a.kind + "'");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ABS-class solvers for linear systems, Diophantine systems, LPs and related problems"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "kv"};

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "solve A x = b with an ABS strategy");
  solve_cmd->add_option("--method", sa.method, "huang|mhuang|ilu|ilx|cd|os|ls")
      ->check(CLI::IsMember({"huang", "mhuang", "ilu", "ilx", "cd", "os", "ls"}));
  solve_cmd->add_option("--matrix", sa.matrix, "matrix file")->required();
  solve_cmd->add_option("--rhs", sa.rhs, "right-hand side file")->required();
  solve_cmd->add_option("--solution", sa.solution, "known solution, enables the error field");
  solve_cmd->add_option("--tol", sa.tol, "zero-test tolerance (default ABS_TOL or 1e-11)");
  solve_cmd->add_option("--refine", sa.refine, "iterative refinement rounds");
  solve_cmd->add_option("--format", sa.format)->check(CLI::IsMember(formats));

  std::string dio_matrix, dio_rhs, dio_format = "text";
  auto* dio_cmd = app.add_subcommand("dio", "integer solutions of A x = b");
  dio_cmd->add_option("--matrix", dio_matrix, "integer matrix file")->required();
  dio_cmd->add_option("--rhs", dio_rhs, "integer right-hand side file")->required();
  dio_cmd->add_option("--format", dio_format)->check(CLI::IsMember(formats));

  std::string lp_cost, lp_matrix, lp_rhs, lp_format = "text";
  std::optional<double> lp_tol;
  std::size_t lp_max_pivots = 10000;
  auto* lp_cmd = app.add_subcommand("lp", "minimize cᵀx subject to A x = b, x ≥ 0");
  lp_cmd->add_option("--cost", lp_cost, "cost vector file")->required();
  lp_cmd->add_option("--matrix", lp_matrix, "constraint matrix file")->required();
  lp_cmd->add_option("--rhs", lp_rhs, "right-hand side file")->required();
  lp_cmd->add_option("--tol", lp_tol);
  lp_cmd->add_option("--max-pivots", lp_max_pivots);
  lp_cmd->add_option("--format", lp_format)->check(CLI::IsMember(formats));

  QnArgs qa;
  auto* qn_cmd = app.add_subcommand("qn", "quasi-Newton update satisfying dᵀB' = yᵀ");
  qn_cmd->add_option("--B", qa.B, "current matrix")->required();
  qn_cmd->add_option("--d", qa.d, "step")->required();
  qn_cmd->add_option("--y", qa.y, "gradient change")->required();
  qn_cmd->add_option("--s", qa.s, "update direction (default d)");
  qn_cmd->add_option("--Q", qa.Q, "perturbation matrix (default zero)");
  qn_cmd->add_flag("--symmetric", qa.symmetric, "require B' symmetric");
  qn_cmd->add_option("--fixed", qa.fixed, "k x 3 file of fixed entries: row col value (1-based)");
  qn_cmd->add_flag("--large-diagonal", qa.large_diagonal, "make the leading diagonal entries dominate their columns");
  qn_cmd->add_option("--margin", qa.margin);
  qn_cmd->add_option("--tol", qa.tol);
  qn_cmd->add_option("--out", qa.out, "write B' to this file");
  qn_cmd->add_option("--format", qa.format)->check(CLI::IsMember(formats));

  MinArgs ma;
  auto* min_cmd = app.add_subcommand("min", "minimize ½xᵀGx + hᵀx, optionally subject to A x = b");
  min_cmd->add_option("--hessian", ma.G, "G")->required();
  min_cmd->add_option("--linear", ma.h, "h (default zero)");
  auto* min_matrix = min_cmd->add_option("--matrix", ma.matrix, "equality constraint matrix");
  min_cmd->add_option("--rhs", ma.rhs, "equality right-hand side")->needs(min_matrix);
  min_matrix->needs(min_cmd->get_option("--rhs"));
  min_cmd->add_option("--x0", ma.x0, "starting point (must be feasible)");
  min_cmd->add_option("--variant", ma.variant, "rg|rosen|gi")->check(CLI::IsMember({"rg", "rosen", "gi"}));
  min_cmd->add_option("--max-iterations", ma.max_iterations);
  min_cmd->add_option("--tol", ma.tol);
  min_cmd->add_option("--format", ma.format)->check(CLI::IsMember(formats));

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "write a seeded test problem");
  gen_cmd->add_option("kind", ga.kind, "cond|intrand|lp")->required()->check(CLI::IsMember({"cond", "intrand", "lp"}));
  gen_cmd->add_option("-n", ga.n, "columns")->required();
  gen_cmd->add_option("-m", ga.m, "rows");
  gen_cmd->add_option("--cond", ga.cond, "condition number target");
  gen_cmd->add_option("--seed", ga.seed);
  gen_cmd->add_option("--lo", ga.lo, "smallest integer entry");
  gen_cmd->add_option("--hi", ga.hi, "largest integer entry");
  gen_cmd->add_option("--out-matrix", ga.out_matrix);
  gen_cmd->add_option("--out-rhs", ga.out_rhs);
  gen_cmd->add_option("--out-solution", ga.out_solution);
  gen_cmd->add_option("--out-cost", ga.out_cost);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(sa);
    if (*dio_cmd) return cmd_dio(dio_matrix, dio_rhs, dio_format);
    if (*lp_cmd) return cmd_lp(lp_cost, lp_matrix, lp_rhs, lp_tol, lp_max_pivots, lp_format);
    if (*qn_cmd) return cmd_qn(qa);
    if (*min_cmd) return cmd_min(ma);
    if (*gen_cmd) return cmd_gen(ga);
  } catch (const InfeasibleStructureError& e) {
    std::cerr << "absolve: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "absolve: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
