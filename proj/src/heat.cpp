#include "gaussweyl/heat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gaussweyl/error.hpp"
#include "gaussweyl/gaussian.hpp"

namespace gaussweyl {

namespace {

std::string pair_list(const PairSet& J) {
  std::string s;
  for (int j : J) s += (s.empty() ? "" : ",") + std::to_string(j);
  return "{" + s + "}";
}

// P(v + Y in [lo, hi)) for Y ~ N(0, t)
double interval_mass(double v, double lo, double hi, double t) {
  const double r = std::sqrt(2.0 * t);
  const double upper = std::isinf(hi) ? 1.0 : 0.5 * std::erfc(-(hi - v) / r);
  return upper - 0.5 * std::erfc(-(lo - v) / r);
}

SymbolDescriptor heated_gaussian(const SymbolDescriptor& sym, const std::vector<GaussianTerm>& terms,
                                 const PairSet& J, double t) {
  std::vector<GaussianTerm> out = terms;
  for (auto& term : out) {
    for (int j : J) {
      if (j > sym.d) continue;
      double& nu = term.rates[j - 1];
      const double q = 1.0 + 2.0 * nu * t;
      term.coeff /= q;
      nu /= q;
    }
  }
  return make_gaussian_sum(sym.d, std::move(out));
}

SymbolDescriptor heated_box(const SymbolDescriptor& sym, double t, double h) {
  if (!(h > 0.0)) throw DomainError("heating a box symbol needs h");
  const double a = sym.box_a;
  const double b = 2.0 * std::numbers::pi * h * a;
  auto fn = [a, b, t](std::span<const double> x, std::span<const double> xi) {
    return interval_mass(x[0], 0.0, a, t) * interval_mass(xi[0], 0.0, b, t);
  };
  return make_custom(1, fn, "heated box", true, true);
}

SymbolDescriptor heated_by_quadrature(const SymbolDescriptor& sym, const PairSet& J, double t, double h) {
  std::vector<int> pairs;
  for (int j : J) {
    if (j <= sym.d) pairs.push_back(j);
  }
  const int m = 2 * static_cast<int>(pairs.size());
  const CalcContext ctx(h > 0.0 ? h : 1.0);
  auto fn = [sym, pairs, m, t, ctx](std::span<const double> x, std::span<const double> xi) {
    std::vector<double> xs(x.begin(), x.end()), xis(xi.begin(), xi.end());
    auto at = [&](int n) {
      const auto rule = gh_rule(n, t);
      return integrate_tensor(
                 [&](std::span<const double> y) {
                   for (std::size_t k = 0; k < pairs.size(); ++k) {
                     const int j = pairs[k] - 1;
                     xs[j] = x[j] + y[2 * k];
                     xis[j] = xi[j] + y[2 * k + 1];
                   }
                   return sym.eval(xs, xis, ctx);
                 },
                 rule, m)
          .real();
    };
    const int cap = std::min(64, quad_order_cap());
    int n = std::min(12, cap);
    double prev = at(n);
    while (n + 8 <= cap) {
      n += 8;
      const double cur = at(n);
      if (std::abs(cur - prev) <= std::max(1e-13, 1e-12 * std::abs(cur))) return cur;
      prev = cur;
    }
    throw BudgetError("heat convolution did not settle by order " + std::to_string(n));
  };
  return make_custom(sym.d, fn, "heat" + pair_list(J) + "(" + (sym.printable() ? print_symbol(sym) : sym.label) + ")",
                     true, sym.bounded);
}

}  // namespace

HeatedSymbol heat_apply(const SymbolDescriptor& sym, const PairSet& J, double t, const HeatOptions& opts) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("heat variance t must be positive");
  for (int j : J) {
    if (j < 1) throw DomainError("heat pair indices start at 1");
  }
  HeatedSymbol out{sym, J, t, sym, true};
  const bool touches = std::any_of(J.begin(), J.end(), [&](int j) { return j <= sym.d; });
  if (!touches || sym.family == Family::constant) return out;

  if (!opts.force_quadrature) {
    if (sym.family == Family::box) {
      out.symbol = heated_box(sym, t, opts.h);
      return out;
    }
    if (auto terms = sym.gaussian_terms()) {
      out.symbol = heated_gaussian(sym, *terms, J, t);
      return out;
    }
  }
  out.symbol = heated_by_quadrature(sym, J, t, opts.h);
  out.closed_form = false;
  return out;
}

std::vector<SignedTerm> ts_operators(const SymbolDescriptor& sym, const PairSet& J, const PairSet& Lambda,
                                     const CalcContext& ctx, const HeatOptions& opts) {
  if (J.size() > 16) throw BudgetError("T_J expansion limited to |J| <= 16");
  for (int j : J) {
    if (!Lambda.contains(j)) throw DomainError("J must be a subset of Lambda");
  }
  const std::vector<int> js(J.begin(), J.end());
  PairSet rest;
  for (int j : Lambda) {
    if (!J.contains(j)) rest.insert(j);
  }
  HeatOptions o = opts;
  o.h = ctx.h;
  std::vector<SignedTerm> out;
  const std::size_t count = std::size_t{1} << js.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    PairSet heated = rest;
    double sign = 1.0;
    for (std::size_t k = 0; k < js.size(); ++k) {
      if (mask >> k & 1) {
        heated.insert(js[k]);
        sign = -sign;
      }
    }
    if (heated.empty()) {
      out.push_back({sign, HeatedSymbol{sym, {}, ctx.h / 2.0, sym, true}});
    } else {
      out.push_back({sign, heat_apply(sym, heated, ctx.h / 2.0, o)});
    }
  }
  return out;
}

double evaluate_terms(const std::vector<SignedTerm>& terms, std::span<const double> x, std::span<const double> xi,
                      const CalcContext& ctx) {
  double s = 0.0;
  for (const auto& t : terms) s += t.sign * t.term(x, xi, ctx);
  return s;
}

PhaseGrid phase_grid(int d, int n, double radius) {
  if (d < 1 || n < 1) throw DomainError("phase_grid needs d >= 1 and n >= 1");
  const int m = 2 * d;
  double total = 1.0;
  for (int i = 0; i < m; ++i) total *= n;
  if (total > 1e6) throw BudgetError("phase grid larger than 1e6 points");
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) axis[i] = n == 1 ? 0.0 : -radius + 2.0 * radius * i / (n - 1);
  PhaseGrid grid;
  std::vector<int> idx(m, 0);
  while (true) {
    std::vector<double> x(d), xi(d);
    for (int k = 0; k < d; ++k) {
      x[k] = axis[idx[k]];
      xi[k] = axis[idx[d + k]];
    }
    grid.emplace_back(std::move(x), std::move(xi));
    int k = 0;
    while (k < m && ++idx[k] == n) idx[k++] = 0;
    if (k == m) break;
  }
  return grid;
}

double decomposition_residual(const SymbolDescriptor& sym, const PairSet& Lambda, const CalcContext& ctx,
                              const PhaseGrid& grid) {
  if (Lambda.size() > 16) throw BudgetError("decomposition limited to |Lambda| <= 16");
  const std::vector<int> ls(Lambda.begin(), Lambda.end());
  std::vector<std::vector<SignedTerm>> expansions;
  for (std::size_t mask = 0; mask < (std::size_t{1} << ls.size()); ++mask) {
    PairSet J;
    for (std::size_t k = 0; k < ls.size(); ++k) {
      if (mask >> k & 1) J.insert(ls[k]);
    }
    expansions.push_back(ts_operators(sym, J, Lambda, ctx));
  }
  double worst = 0.0;
  for (const auto& [x, xi] : grid) {
    double sum = 0.0;
    for (const auto& e : expansions) sum += evaluate_terms(e, x, xi, ctx);
    worst = std::max(worst, std::abs(sym.eval(x, xi, ctx) - sum));
  }
  return worst;
}

Complex antiwick_form(const SymbolDescriptor& sym, const HermiteExpansion& f, const HermiteExpansion& g,
                      const CalcContext& ctx, const QuadSpec& quad) {
  return hybrid_form(sym, {}, f, g, ctx, quad);
}

Complex hybrid_form(const SymbolDescriptor& sym, const PairSet& E, const HermiteExpansion& f,
                    const HermiteExpansion& g, const CalcContext& ctx, const QuadSpec& quad) {
  PairSet complement;
  for (int j = 1; j <= sym.d; ++j) {
    if (!E.contains(j)) complement.insert(j);
  }
  if (complement.empty()) return quadratic_form(sym, f, g, ctx, quad);
  HeatOptions o;
  o.h = ctx.h;
  return quadratic_form(heat_apply(sym, complement, ctx.h / 2.0, o).symbol, f, g, ctx, quad);
}

}  // namespace gaussweyl
