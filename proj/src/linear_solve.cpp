#include "tumorbim/linear_solve.hpp"

#include <unsupported/Eigen/IterativeSolvers>

#include "tumorbim/errors.hpp"

namespace tumorbim::linear_solve {

Method parse_method(const std::string& name) {
  if (name == "gmres") return Method::gmres;
  if (name == "lu") return Method::lu;
  throw ConfigError("solver.method", "expected \"gmres\" or \"lu\", got \"" + name + "\"");
}

std::string to_string(Method m) { return m == Method::gmres ? "gmres" : "lu"; }

namespace {

double relative_residual(const Matrix& a, const Vector& x, const Vector& b) {
  const double bn = b.norm();
  const double rn = (a * x - b).norm();
  return bn > 0.0 ? rn / bn : rn;
}

}  // namespace

Result solve(const Matrix& a, const Vector& b, const Options& opt, const Vector& guess) {
  Result out;
  if (opt.method == Method::lu) {
    out.x = a.partialPivLu().solve(b);
    out.iterations = 1;
  } else {
    Eigen::GMRES<Matrix, Eigen::IdentityPreconditioner> gmres;
    gmres.set_restart(opt.max_iterations);
    gmres.setMaxIterations(opt.max_iterations);
    // leave a little headroom; the contract is checked on the true residual below
    gmres.setTolerance(0.5 * opt.tol);
    gmres.compute(a);
    if (guess.size() == b.size()) {
      out.x = gmres.solveWithGuess(b, guess);
    } else {
      out.x = gmres.solve(b);
    }
    out.iterations = static_cast<int>(gmres.iterations());
  }
  out.residual = relative_residual(a, out.x, b);
  if (!(out.residual <= opt.tol)) {
    throw ConvergenceError("linear solve (" + to_string(opt.method) + ") stopped at relative residual " +
                               std::to_string(out.residual),
                           out.residual, out.iterations);
  }
  return out;
}

}  // namespace tumorbim::linear_solve
