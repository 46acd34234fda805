#pragma once

#include <string>

#include <Eigen/Dense>

namespace tumorbim::linear_solve {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class Method { gmres, lu };

Method parse_method(const std::string& name);
std::string to_string(Method m);

struct Options {
  Method method = Method::gmres;
  double tol = 1e-10;       // relative residual |Ax - b| / |b|
  int max_iterations = 500;  // GMRES only; also the restart length
};

struct Result {
  Vector x;
  int iterations = 0;
  double residual = 0.0;  // relative, recomputed from the returned x
};

/// Solves A x = b. `guess` (if non-empty and sized right) seeds GMRES.
/// Throws ConvergenceError when the relative residual exceeds tol.
Result solve(const Matrix& a, const Vector& b, const Options& opt, const Vector& guess = Vector());

}  // namespace tumorbim::linear_solve
