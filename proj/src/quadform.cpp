#include "gaussweyl/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "gaussweyl/error.hpp"
#include "gaussweyl/gaussian.hpp"

namespace gaussweyl {

HermiteExpansion::HermiteExpansion(int dims, double h) : dims_(dims), h_(h) {
  if (dims < 1) throw DomainError("expansion dimension must be >= 1");
  CalcContext check(h);
}

HermiteExpansion& HermiteExpansion::add(const MultiIndex& alpha, Complex c) {
  if (alpha.support_end() > dims_) throw DomainError("expansion index outside its dimension");
  for (auto& [a, v] : terms_) {
    if (a == alpha) {
      v += c;
      return *this;
    }
  }
  terms_.emplace_back(alpha, c);
  return *this;
}

Complex HermiteExpansion::coefficient(const MultiIndex& alpha) const {
  for (const auto& [a, v] : terms_) {
    if (a == alpha) return v;
  }
  return 0.0;
}

double HermiteExpansion::norm_sq() const {
  double s = 0.0;
  for (const auto& [a, v] : terms_) s += std::norm(v);
  return s;
}

namespace {

bool vanishes_outside(const SymbolDescriptor& sym, const MultiIndex& alpha, const MultiIndex& beta) {
  // alpha_j != beta_j for some j > d
  for (const auto& [c, deg] : alpha.entries()) {
    if (c > sym.d && beta[c] != deg) return true;
  }
  for (const auto& [c, deg] : beta.entries()) {
    if (c > sym.d && alpha[c] != deg) return true;
  }
  return false;
}

int largest_degree(const MultiIndex& a, const MultiIndex& b) { return std::max(a.depth(), b.depth()); }

// \int e^{-rate (x^2 + xi^2)} W(psi_a, psi_a) dmu_{R^2,h/2}: the Gaussian factor
// folds into the reference measure, variance s -> s / (1 + 2 rate s) and mass
// 1 / (1 + 2 rate s), leaving a polynomial that a Gauss-Hermite rule of order a + 1 integrates exactly.
double gaussian_pair_integral(double rate, int a, const CalcContext& ctx, int& order) {
  const double s = ctx.h / 2.0;
  const double amp = 1.0 / (1.0 + 2.0 * rate * s);
  const double s2 = s * amp;
  order = a + 2;
  const auto rule = gh_rule(order, s2);
  const Complex v = integrate_tensor(
      [&](std::span<const double> p) { return wigner_closed(a, a, p[0], p[1], ctx); }, rule, 2);
  return amp * v.real();
}

ElementValue gaussian_element(const std::vector<GaussianTerm>& terms, int d, const MultiIndex& alpha,
                              const MultiIndex& beta, const CalcContext& ctx) {
  // Every term is invariant under rotations of each pair, so pairs with
  // alpha_j != beta_j contribute zero.
  for (int j = 1; j <= d; ++j) {
    if (alpha[j] != beta[j]) return {0.0, 0, "structural-zero"};
  }
  int order = 0;
  Complex total = 0.0;
  for (const auto& t : terms) {
    double v = t.coeff;
    for (int j = 1; j <= d && v != 0.0; ++j) {
      int o = 0;
      v *= gaussian_pair_integral(t.rates[j - 1], alpha[j], ctx, o);
      order = std::max(order, o);
    }
    total += v;
  }
  return {total, order, "gaussian"};
}

ElementValue box_element(const SymbolDescriptor& sym, int a, int b, const CalcContext& ctx) {
  const double h = ctx.h;
  const int deg = std::max(a, b);
  const double cutoff = std::sqrt(h * (60.0 + 6.0 * deg));
  const double x_hi = std::min(sym.box_a, cutoff);
  const double xi_hi = std::min(2.0 * std::numbers::pi * h * sym.box_a, cutoff);
  const double norm = 1.0 / (std::numbers::pi * h);

  auto integrate = [&](double panel) {
    const auto rx = composite_legendre(0.0, x_hi, panel, 12);
    const auto rxi = composite_legendre(0.0, xi_hi, panel, 12);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < rx.nodes.size(); ++i) {
      const double x = rx.nodes[i];
      const double gx = rx.weights[i] * std::exp(-x * x / h);
      for (std::size_t k = 0; k < rxi.nodes.size(); ++k) {
        const double xi = rxi.nodes[k];
        sum += gx * rxi.weights[k] * std::exp(-xi * xi / h) * wigner_closed(a, b, x, xi, ctx);
      }
    }
    return norm * sum;
  };

  double panel = std::sqrt(h);
  Complex prev = integrate(panel);
  for (int level = 0; level < 6; ++level) {
    panel /= 2.0;
    const Complex cur = integrate(panel);
    if (std::abs(cur - prev) <= 1e-13 * std::max(1.0, std::abs(cur))) {
      return {cur, static_cast<int>(std::ceil(std::max(x_hi, xi_hi) / panel)) * 12, "box"};
    }
    prev = cur;
  }
  throw ConvergenceError("box matrix element did not settle under panel refinement");
}

Complex generic_value(const SymbolDescriptor& sym, const MultiIndex& alpha, const MultiIndex& beta,
                      const CalcContext& ctx, int n, bool wigner_quad) {
  const int d = sym.d;
  const auto rule = gh_rule(n, ctx.h / 2.0);
  std::vector<ScalarFunction> fa, fb;
  if (wigner_quad) {
    for (int j = 1; j <= d; ++j) {
      const int aj = alpha[j], bj = beta[j];
      fa.push_back([aj, ctx](double x) { return Complex(hermite_eval(aj, x, ctx)); });
      fb.push_back([bj, ctx](double x) { return Complex(hermite_eval(bj, x, ctx)); });
    }
  }
  return integrate_tensor(
      [&](std::span<const double> p) -> Complex {
        const auto x = p.first(static_cast<std::size_t>(d));
        const auto xi = p.subspan(static_cast<std::size_t>(d));
        const double f = sym.eval(x, xi, ctx);
        if (f == 0.0) return 0.0;
        Complex w = f;
        for (int j = 1; j <= d; ++j) {
          if (wigner_quad) {
            // e^{-2 i xi t/h} needs about 2 xi^2/h nodes before the rule resolves it
            WignerQuadratureOptions opts;
            const double z2 = xi[j - 1] * xi[j - 1] / ctx.h;
            opts.start_order = std::min(24 + 16 * static_cast<int>(std::ceil(z2 / 8.0)), 240);
            opts.max_order = 256;
            w *= wigner_quadrature(fa[j - 1], fb[j - 1], x[j - 1], xi[j - 1], ctx, opts).value;
          } else if (alpha[j] != 0 || beta[j] != 0) {
            w *= wigner_closed(alpha[j], beta[j], x[j - 1], xi[j - 1], ctx);
          }
        }
        return w;
      },
      rule, 2 * d);
}

ElementValue generic_element(const SymbolDescriptor& sym, const MultiIndex& alpha, const MultiIndex& beta,
                             const CalcContext& ctx, const QuadSpec& quad) {
  const int cap = std::min(quad.max_order, quad_order_cap());
  int n = quad.order > 0 ? quad.order : 2 * (largest_degree(alpha, beta) + 1) + 16;
  if (n > cap) throw BudgetError("quadrature order " + std::to_string(n) + " above cap " + std::to_string(cap));
  Complex prev = generic_value(sym, alpha, beta, ctx, n, quad.wigner_by_quadrature);
  while (n + quad.step <= cap) {
    n += quad.step;
    const Complex cur = generic_value(sym, alpha, beta, ctx, n, quad.wigner_by_quadrature);
    if (std::abs(cur - prev) <= std::max(1e-10, 1e-9 * std::abs(cur))) return {cur, n, "quadrature"};
    prev = cur;
  }
  throw BudgetError("matrix element quadrature did not settle by order " + std::to_string(n));
}

}  // namespace

ElementValue matrix_element_detailed(const SymbolDescriptor& sym, const MultiIndex& alpha,
                                     const MultiIndex& beta, const CalcContext& ctx, const QuadSpec& quad) {
  if (vanishes_outside(sym, alpha, beta)) return {0.0, 0, "structural-zero"};
  if (sym.family == Family::box) return box_element(sym, alpha[1], beta[1], ctx);
  if (!quad.wigner_by_quadrature) {
    if (auto terms = sym.gaussian_terms()) return gaussian_element(*terms, sym.d, alpha, beta, ctx);
  }
  return generic_element(sym, alpha, beta, ctx, quad);
}

Complex matrix_element(const SymbolDescriptor& sym, const MultiIndex& alpha, const MultiIndex& beta,
                       const CalcContext& ctx, const QuadSpec& quad) {
  return matrix_element_detailed(sym, alpha, beta, ctx, quad).value;
}

OperatorMatrix assemble_matrix(const SymbolDescriptor& sym, const TruncationSet& truncation,
                               const CalcContext& ctx, const QuadSpec& quad) {
  const std::size_t n = truncation.size();
  if (n > kMaxMatrixRows) {
    throw BudgetError("operator matrix with " + std::to_string(n) + " rows exceeds the limit of 4096");
  }
  OperatorMatrix out{truncation, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)),
                     sym.printable() ? print_symbol(sym) : std::string(family_name(sym.family)),
                     ctx.h, 0, {}};
  if (truncation.dims() < sym.d) {
    out.warnings.push_back("truncation covers " + std::to_string(truncation.dims()) +
                           " coordinates but the symbol depends on " + std::to_string(sym.d));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i; k < n; ++k) {
      const auto e = matrix_element_detailed(sym, truncation[i], truncation[k], ctx, quad);
      out.entries(i, k) = e.value;
      out.entries(k, i) = std::conj(e.value);
      out.quad_order = std::max(out.quad_order, e.order);
    }
  }
  return out;
}

Complex quadratic_form(const SymbolDescriptor& sym, const HermiteExpansion& f, const HermiteExpansion& g,
                       const CalcContext& ctx, const QuadSpec& quad) {
  if (std::abs(f.h() - ctx.h) > 1e-15 * ctx.h || std::abs(g.h() - ctx.h) > 1e-15 * ctx.h) {
    throw DomainError("expansions were built for a different h");
  }
  Complex total = 0.0;
  for (const auto& [a, ca] : f.terms()) {
    if (ca == 0.0) continue;
    for (const auto& [b, cb] : g.terms()) {
      if (cb == 0.0) continue;
      total += ca * std::conj(cb) * matrix_element(sym, a, b, ctx, quad);
    }
  }
  return total;
}

PlaneFunction PlaneFunction::polynomial(std::vector<Monomial> p) {
  for (const auto& m : p) {
    if (m.px.size() != 1 || m.pxi.size() != 1) throw DomainError("plane polynomial needs one-dimensional exponents");
  }
  PlaneFunction f;
  f.poly = std::move(p);
  return f;
}

PlaneFunction PlaneFunction::function(std::function<double(double, double)> fn) {
  if (!fn) throw DomainError("plane function needs an evaluator");
  PlaneFunction f;
  f.fn = std::move(fn);
  return f;
}

double PlaneFunction::operator()(double x, double xi) const {
  if (fn) return fn(x, xi);
  double v = 0.0;
  for (const auto& m : poly) v += m.coeff * std::pow(x, m.px[0]) * std::pow(xi, m.pxi[0]);
  return v;
}

namespace {

// n-th derivative at 0 of a smooth 2 pi-periodic g, from 64 equispaced samples
// (trigonometric interpolation; the Nyquist mode is dropped).
double periodic_derivative(const std::function<double(double)>& g, int n) {
  constexpr int K = 64;
  // out = sum_k g(theta_k) D_k with D_k = (1/K) sum_m (i m)^n e^{-i m theta_k}
  thread_local std::map<int, std::vector<double>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<double> weights(K);
    for (int k = 0; k < K; ++k) {
      Complex acc = 0.0;
      for (int m = -K / 2 + 1; m < K / 2; ++m) {
        acc += std::pow(Complex(0.0, m), n) * std::polar(1.0, -2.0 * std::numbers::pi * m * k / K);
      }
      weights[k] = acc.real() / K;
    }
    it = cache.emplace(n, std::move(weights)).first;
  }
  double out = 0.0;
  for (int k = 0; k < K; ++k) out += it->second[k] * g(2.0 * std::numbers::pi * k / K);
  return out;
}

// L^n F = (-1)^n d^n/dtheta^n F(x cos t + xi sin t, -x sin t + xi cos t) at t = 0.
double rotated_derivative(const std::function<double(double, double)>& f, double x, double xi, int n) {
  const double v = periodic_derivative(
      [&](double t) {
        const double c = std::cos(t), s = std::sin(t);
        return f(x * c + xi * s, -x * s + xi * c);
      },
      n);
  return n % 2 ? -v : v;
}

}  // namespace

IppResult ipp_check(const PlaneFunction& F, int n, int s, int eps, const std::vector<double>& P,
                    const CalcContext& ctx) {
  if (n < 1) throw DomainError("ipp_check: order n must be >= 1");
  if (s < 0) throw DomainError("ipp_check: power s must be >= 0");
  if (eps != 1 && eps != -1) throw DomainError("ipp_check: eps must be 1 or -1");

  IppResult res;
  res.analytic = F.analytic();
  PlaneFunction LF;
  if (res.analytic) {
    std::vector<Monomial> p = F.poly;
    for (int k = 0; k < n; ++k) p = rotation_derivative(p, 1);
    LF = PlaneFunction::polynomial(std::move(p));
  } else {
    LF = PlaneFunction::function([f = F.fn, n](double x, double xi) { return rotated_derivative(f, x, xi, n); });
  }

  auto weight = [&](double x, double xi) {
    const double r2 = x * x + xi * xi;
    double p = 0.0;
    for (std::size_t k = P.size(); k-- > 0;) p = p * r2 + P[k];
    return std::pow(Complex(x, eps * xi), s) * p;
  };
  auto integral = [&](const PlaneFunction& g) {
    auto at = [&](int order) {
      const auto rule = gh_rule(order, ctx.h / 2.0);
      return std::numbers::pi * ctx.h *
             integrate_tensor([&](std::span<const double> p) { return g(p[0], p[1]) * weight(p[0], p[1]); }, rule, 2);
    };
    const int cap = std::min(192, quad_order_cap());
    int order = 32;
    Complex prev = at(order);
    while (order + 16 <= cap) {
      order += 16;
      const Complex cur = at(order);
      if (std::abs(cur - prev) <= std::max(1e-13, 1e-12 * std::abs(cur))) return cur;
      prev = cur;
    }
    throw BudgetError("ipp_check quadrature did not settle");
  };

  const Complex factor = std::pow(Complex(0.0, -static_cast<double>(s) * eps), n);
  res.lhs = factor * integral(F);
  res.rhs = integral(LF);
  res.residual = std::abs(res.lhs - res.rhs);
  res.unstable = !res.analytic && res.residual > 1e-8;
  return res;
}

SymbolDescriptor rotation_derivative_symbol(const SymbolDescriptor& sym, int j, int n) {
  if (j < 1 || j > sym.d) throw DomainError("rotation derivative index outside the symbol's pairs");
  if (n < 0) throw DomainError("rotation derivative order must be >= 0");
  if (!sym.smooth) throw DomainError("rotation derivative needs a smooth symbol");
  if (sym.family == Family::polynomial) {
    auto p = sym.monomials;
    for (int k = 0; k < n; ++k) p = rotation_derivative(p, j);
    return make_polynomial(sym.d, std::move(p));
  }
  const int d = sym.d;
  auto fn = [sym, j, n, d](std::span<const double> x, std::span<const double> xi) {
    std::vector<double> xs(x.begin(), x.end()), xis(xi.begin(), xi.end());
    const CalcContext ctx(1.0);  // only the box family reads h, and it is excluded above
    auto f = [&](double a, double b) {
      xs[j - 1] = a;
      xis[j - 1] = b;
      return sym.eval(xs, xis, ctx);
    };
    const double x0 = x[j - 1], xi0 = xi[j - 1];
    (void)d;
    return rotated_derivative(f, x0, xi0, n);
  };
  return make_custom(d, fn, "L" + std::to_string(j) + "^" + std::to_string(n), true, sym.bounded);
}

Complex rotation_reduction(const SymbolDescriptor& sym, const MultiIndex& alpha, const MultiIndex& beta, int j,
                           int n, const CalcContext& ctx, const QuadSpec& quad) {
  if (j < 1) throw DomainError("rotation_reduction: coordinates start at 1");
  if (alpha[j] == beta[j]) throw DomainError("rotation_reduction needs alpha_j != beta_j");
  if (n < 1) throw DomainError("rotation_reduction: order n must be >= 1");
  if (vanishes_outside(sym, alpha, beta)) return 0.0;
  if (sym.rotation_invariant(j)) return 0.0;
  const auto lf = rotation_derivative_symbol(sym, j, n);
  const Complex factor = std::pow(Complex(0.0, 1.0), n) / std::pow(static_cast<double>(beta[j] - alpha[j]), n);
  return factor * matrix_element(lf, alpha, beta, ctx, quad);
}

}  // namespace gaussweyl
