#pragma once

// Gaussian measures mu_{R^d,s}, Gauss-Hermite and Gauss-Legendre rules,
// tensor-product integration, L^p norms of the ell-functionals and
// reproducible Monte Carlo streams of Wiener coordinates.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "gaussweyl/error.hpp"

namespace gaussweyl {

inline constexpr int kMaxGaussHermiteOrder = 256;
inline constexpr double kTensorBudget = 1.0e8;

// Upper bound on quadrature orders: GAUSSWEYL_QUAD_MAX if set, else 256.
int quad_order_cap();

struct GaussianMeasure {
  GaussianMeasure(int dim_, double variance_);
  double density(std::span<const double> x) const;

  int dim;
  double variance;
};

// Nodes/weights for the centered Gaussian measure of variance s on R.
// Weights sum to one; exact for polynomials of degree <= 2n - 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double variance = 0.0;
  int order = 0;
};

QuadratureRule gh_rule(int n, double s);

// Plain Gauss-Legendre rule on [a, b].
struct LegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

LegendreRule gauss_legendre(int n, double a, double b);

// Composite Gauss-Legendre: [a, b] split into equal panels no wider than
// panel_width, each carrying nodes_per_panel nodes.
LegendreRule composite_legendre(double a, double b, double panel_width, int nodes_per_panel);

// Tensor-product quadrature of f : R^m -> C against mu_{R^m,s}. f is called
// with a span of m coordinates.
template <class F>
std::complex<double> integrate_tensor(F&& f, const QuadratureRule& rule, int m) {
  if (m < 1) throw DomainError("integrate_tensor: dimension must be >= 1");
  const std::size_t n = rule.nodes.size();
  double points = 1.0;
  for (int i = 0; i < m; ++i) points *= static_cast<double>(n);
  if (points > kTensorBudget) {
    throw BudgetError("tensor quadrature budget exceeded: n^m > 1e8");
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  std::vector<double> x(static_cast<std::size_t>(m));
  std::complex<double> total = 0.0;
  for (;;) {
    double w = 1.0;
    for (int i = 0; i < m; ++i) {
      x[i] = rule.nodes[idx[i]];
      w *= rule.weights[idx[i]];
    }
    total += w * std::complex<double>(f(std::span<const double>(x)));
    int pos = m - 1;
    while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return total;
}

// C_{p,s} = sqrt(2s) pi^{-1/(2p)} Gamma((p+1)/2)^{1/p}.
double ell_constant(double p, double s);

// ||ell_b||_{L^p(mu_s)} = C_{p,s} |b|.
double ell_norm(double p, double s, double b_norm);

// Values of ell_{e_1}, ..., ell_{e_n} at one sample point.
struct WienerSample {
  std::vector<double> coords;
  double variance = 0.0;
  std::uint64_t stream = 0;
  std::size_t index = 0;
};

// count i.i.d. N(0, s) draws of coordinate `coordinate` (>= 1) from the
// sub-stream (seed, coordinate). Longer requests extend shorter ones.
std::vector<double> draw_coordinate(std::uint64_t seed, int coordinate, std::size_t count, double s);

std::vector<WienerSample> mc_sample(int n, double s, std::uint64_t seed, std::size_t count);

}  // namespace gaussweyl
