#include "gaussweyl/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gaussweyl/error.hpp"
#include "gaussweyl/gaussian.hpp"

namespace gaussweyl {

Complex wigner_closed(int j, int k, double x, double xi, const CalcContext& ctx) {
  if (j < 0 || k < 0) throw DomainError("Hermite indices must be nonnegative");
  const double h = ctx.h;
  const int lo = std::min(j, k);
  const int m = std::abs(k - j);
  // sqrt(lo! / (lo+m)!) (2/h)^{m/2} (x +- i xi)^m
  const Complex w = j <= k ? Complex(x, xi) : Complex(x, -xi);
  Complex pre = 1.0;
  const double s = std::sqrt(2.0 / h);
  for (int i = 1; i <= m; ++i) pre *= w * s / std::sqrt(static_cast<double>(lo + i));
  const double y = (2.0 / h) * (x * x + xi * xi);
  const double sign = (lo % 2 == 0) ? 1.0 : -1.0;
  return pre * sign * laguerre_recurrence(lo, m, y);
}

AdaptiveValue wigner_quadrature(const ScalarFunction& f, const ScalarFunction& g, double z,
                                double zeta, const CalcContext& ctx,
                                const WignerQuadratureOptions& opts) {
  const double h = ctx.h;
  // Returns the integral and the sum of |summands| (its round-off scale).
  auto at_order = [&](int n) {
    const auto rule = gh_rule(n, h / 2.0);
    Complex sum = 0.0;
    double mag = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = rule.nodes[i];
      const Complex phase = std::polar(1.0, -2.0 * zeta * t / h);
      const Complex term = rule.weights[i] * f(z + t) * std::conj(g(z - t));
      sum += phase * term;
      mag += std::abs(term);
    }
    return std::pair{sum, mag};
  };
  // Convergence is judged on the oscillatory integral itself; the prefactor
  // e^{zeta^2/h} only rescales it.
  const double prefactor = std::exp(zeta * zeta / h);
  const int cap = std::min(opts.max_order, quad_order_cap());
  int n = std::min(opts.start_order, cap);
  Complex prev = at_order(n).first;
  while (n + opts.step <= cap) {
    n += opts.step;
    const auto [cur, mag] = at_order(n);
    if (std::abs(cur - prev) <= opts.tolerance * std::max({1.0, std::abs(cur), mag})) return {prefactor * cur, n};
    prev = cur;
  }
  throw BudgetError("Wigner quadrature did not converge by order " + std::to_string(n));
}

Complex wigner_tensor(const MultiIndex& alpha, const MultiIndex& beta,
                      std::span<const double> point, int dims, const CalcContext& ctx) {
  if (dims < 1) throw DomainError("wigner_tensor: dimension must be >= 1");
  if (point.size() != 2 * static_cast<std::size_t>(dims)) {
    throw DomainError("wigner_tensor: point must have 2d coordinates");
  }
  if (alpha.support_end() > dims || beta.support_end() > dims) {
    throw DomainError("wigner_tensor: multi-index support exceeds dimension");
  }
  Complex out = 1.0;
  auto factor = [&](int c) {
    out *= wigner_closed(alpha[c], beta[c], point[c - 1], point[dims + c - 1], ctx);
  };
  for (const auto& [c, deg] : alpha.entries()) factor(c);
  for (const auto& [c, deg] : beta.entries()) {
    if (alpha[c] == 0) factor(c);
  }
  return out;
}

Complex wigner_bargman(Complex u, Complex v, double x, double xi, const CalcContext& ctx) {
  const double s = std::sqrt(2.0 / ctx.h);
  const Complex i(0.0, 1.0);
  return std::exp(-u * v + s * x * (u + v) + i * s * xi * (v - u));
}

double overlap(int j, int k, const CalcContext& ctx) {
  const int n = std::min(j + k + 2, kMaxGaussHermiteOrder);
  const auto rule = gh_rule(n, ctx.h / 2.0);
  const Complex v = integrate_tensor(
      [&](std::span<const double> p) { return wigner_closed(j, k, p[0], p[1], ctx); }, rule, 2);
  return v.real();
}

AdaptiveValue classical_wigner(const ScalarFunction& u, const ScalarFunction& v, double x,
                               double eta, double weight_variance,
                               const WignerQuadratureOptions& opts) {
  if (!(weight_variance > 0.0)) throw DomainError("classical_wigner: weight variance must be positive");
  const double s = weight_variance;
  auto at_order = [&](int n) {
    const auto rule = gh_rule(n, s);
    Complex sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = rule.nodes[i];
      const double inv_density = std::sqrt(2.0 * std::numbers::pi * s) * std::exp(z * z / (2.0 * s));
      const Complex phase = std::polar(1.0, -2.0 * std::numbers::pi * z * eta);
      sum += rule.weights[i] * inv_density * phase * u(x + z / 2.0) * std::conj(v(x - z / 2.0));
    }
    return sum;
  };
  const int cap = std::min(opts.max_order, quad_order_cap());
  int n = std::min(opts.start_order, cap);
  Complex prev = at_order(n);
  while (n + opts.step <= cap) {
    n += opts.step;
    const Complex cur = at_order(n);
    if (std::abs(cur - prev) <= opts.tolerance * std::max(1.0, std::abs(cur))) return {cur, n};
    prev = cur;
  }
  throw BudgetError("classical Wigner quadrature did not converge by order " + std::to_string(n));
}

}  // namespace gaussweyl
