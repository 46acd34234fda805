#include "tumorbim/assembly.hpp"
#include "tumorbim/errors.hpp"

// Serial loops, deliberately unoptimised. Results must match the parallel
// versions bit for bit.
namespace tumorbim::assembly::reference {

LayerBlocks helmholtz_self(const Boundary& b, double mu, const KressRule& rule) {
  if (rule.weights.size() != b.size()) throw DomainError("assembly: Kress rule size does not match the curve");
  const std::size_t n = b.size();
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  LayerBlocks out{Matrix(n, n), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto e = kernels::helmholtz_self_entry(b, i, j, mu);
      const double w = rule.weights[i > j ? i - j : j - i];
      out.single(i, j) = (w * e.single.log_part + h * e.single.smooth_part) * b.geom.speed[j];
      out.dbl(i, j) = w * e.dbl.log_part + h * e.dbl.smooth_part;
    }
  }
  return out;
}

LayerBlocks helmholtz_cross(const Boundary& tgt, const Boundary& src, double mu) {
  const std::size_t nt = tgt.size(), ns = src.size();
  const double h = 2.0 * std::numbers::pi / static_cast<double>(ns);
  LayerBlocks out{Matrix(nt, ns), Matrix(nt, ns)};
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < ns; ++j) {
      const auto e = kernels::helmholtz_cross_entry(tgt, i, src, j, mu);
      out.single(i, j) = h * e.single * src.geom.speed[j];
      out.dbl(i, j) = h * e.dbl;
    }
  }
  return out;
}

Matrix laplace_double(const Boundary& b) {
  const std::size_t n = b.size();
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = h * kernels::laplace_double_kernel(b, i, j);
  }
  return m;
}

Matrix laplace_single_self(const Boundary& b, const KressRule& rule) {
  if (rule.weights.size() != b.size()) throw DomainError("assembly: Kress rule size does not match the curve");
  const std::size_t n = b.size();
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto e = kernels::laplace_single_self_entry(b, i, j);
      m(i, j) = (rule.weights[i > j ? i - j : j - i] * e.log_part + h * e.smooth_part) * b.geom.speed[j];
    }
  }
  return m;
}

}  // namespace tumorbim::assembly::reference
