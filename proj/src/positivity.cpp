#include "gaussweyl/positivity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "gaussweyl/error.hpp"

namespace gaussweyl {

WitnessValue nonpos_witness(double nu, double anorm, const CalcContext& ctx) {
  if (!(nu > 0.0)) throw DomainError("nonpos_witness: nu must be positive");
  if (!(anorm > 0.0)) throw DomainError("nonpos_witness: anorm must be positive");
  const double h = ctx.h;
  const double q = h * nu * anorm * anorm;
  WitnessValue out;
  out.closed_form = (h * anorm * anorm / 2.0) * (1.0 - q) / ((1.0 + q) * (1.0 + q));

  // Through the generic quadrature path rather than the Gaussian shortcut.
  const auto sym = make_gaussian(nu, anorm);
  const auto generic = make_custom(
      1, [sym, ctx](std::span<const double> x, std::span<const double> xi) { return sym.eval(x, xi, ctx); },
      "gaussian");
  HermiteExpansion la(1, h);
  la.add(MultiIndex({1}), anorm * std::sqrt(h / 2.0));
  out.quadrature = quadratic_form(generic, la, la, ctx).real();
  return out;
}

namespace {

struct LaguerreRule {
  std::vector<double> nodes, weights;
};

// Gauss-Laguerre rule for e^{-u} on (0, inf), Golub-Welsch.
const LaguerreRule& laguerre_rule() {
  static const LaguerreRule rule = [] {
    constexpr int n = 64;
    Eigen::VectorXd diag(n), off(n - 1);
    for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
    for (int k = 1; k < n; ++k) off(k - 1) = k;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    LaguerreRule r;
    for (int i = 0; i < n; ++i) {
      r.nodes.push_back(es.eigenvalues()(i));
      const double v = es.eigenvectors()(0, i);
      r.weights.push_back(v * v);
    }
    return r;
  }();
  return rule;
}

bool phi_increasing(const PhiSpec& phi, double h) {
  for (int i = 0; i <= 400; ++i) {
    const double t = 60.0 * h * i / 400.0;
    double d = 0.0;
    if (phi.kind == PhiSpec::Kind::custom && !phi.dfn) {
      const double e = 1e-5 * std::max(1.0, t);
      d = (phi(t + e) - phi(std::max(0.0, t - e))) / (t + e - std::max(0.0, t - e));
    } else {
      d = phi.derivative(t);
    }
    if (d < -1e-12) return false;
  }
  return true;
}

}  // namespace

double radial_lower_bound(const PhiSpec& phi, const CalcContext& ctx) {
  const double h = ctx.h;
  if (auto terms = phi.exp_terms()) {
    double s = 0.0;
    for (const auto& [c, rate] : *terms) s += c / (1.0 + rate * h);
    return s;
  }
  const auto& rule = laguerre_rule();
  double s = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double term = rule.weights[i] * phi(h * rule.nodes[i]);
    if (!std::isfinite(term)) throw DomainError("radial_lower_bound: Phi(t) e^{-t/h} is not integrable");
    s += term;
    if (i + 8 >= rule.nodes.size()) tail += std::abs(term);
  }
  if (tail > 1e-6 * std::max(1.0, std::abs(s))) {
    throw DomainError("radial_lower_bound: Phi grows too fast for e^{-t/h} to control it");
  }
  return s;
}

RadialCheck radial_positivity_check(const SymbolDescriptor& sym, const TruncationSet& truncation,
                                    const CalcContext& ctx) {
  if (sym.family != Family::radial && sym.family != Family::tensor_radial) {
    throw DomainError("radial_positivity_check needs a radial or tensor-radial symbol");
  }
  RadialCheck out;
  out.bound = 1.0;
  for (const auto& part : sym.parts) {
    out.bound *= radial_lower_bound(part.phi, ctx);
    out.increasing = out.increasing && phi_increasing(part.phi, ctx.h);
  }
  const auto m = assemble_matrix(sym, truncation, ctx);
  const auto n = m.entries.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      if (i != k) out.max_offdiag = std::max(out.max_offdiag, std::abs(m.entries(i, k)));
  if (out.max_offdiag > 1e-10) {
    throw ContractViolation("radial symbol produced off-diagonal matrix elements of size " +
                            std::to_string(out.max_offdiag));
  }
  out.min_eig = eig_hermitian(m.entries).front();
  out.ground_state = m.entries(static_cast<Eigen::Index>(truncation.index_of(MultiIndex())),
                               static_cast<Eigen::Index>(truncation.index_of(MultiIndex())))
                         .real();
  out.ok = out.min_eig >= out.bound - 1e-8;
  return out;
}

EpsilonSpec EpsilonSpec::zero() {
  EpsilonSpec e;
  e.kind = Kind::zero;
  return e;
}

EpsilonSpec EpsilonSpec::power(double p) {
  if (!(p > 0.5)) throw DomainError("eps_j = j^-p is square summable only for p > 1/2");
  EpsilonSpec e;
  e.kind = Kind::power;
  e.p = p;
  return e;
}

EpsilonSpec EpsilonSpec::geometric(double base) {
  if (!(base > 1.0)) throw DomainError("eps_j = b^-j is square summable only for b > 1");
  EpsilonSpec e;
  e.kind = Kind::geometric;
  e.p = base;
  return e;
}

EpsilonSpec EpsilonSpec::finite(std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("eps values must be finite and >= 0");
  }
  EpsilonSpec e;
  e.kind = Kind::finite;
  e.values = std::move(values);
  return e;
}

namespace {

double parse_number(std::string_view s, const std::string& whole) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad number in eps spec '" + whole + "'", 1);
  return v;
}

}  // namespace

EpsilonSpec EpsilonSpec::parse(const std::string& text) {
  if (text == "zero") return zero();
  if (text.rfind("j^-", 0) == 0) return power(parse_number(std::string_view(text).substr(3), text));
  if (text.size() > 3 && text.compare(text.size() - 3, 3, "^-j") == 0) {
    return geometric(parse_number(std::string_view(text).substr(0, text.size() - 3), text));
  }
  if (text.rfind("list:", 0) == 0) {
    std::vector<double> v;
    std::string_view rest = std::string_view(text).substr(5);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      v.push_back(parse_number(rest.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return finite(std::move(v));
  }
  throw ParseError("unknown eps spec '" + text + "' (zero, j^-P, B^-j, list:...)", 1);
}

double EpsilonSpec::operator()(int j) const {
  if (j < 1) throw DomainError("eps index starts at 1");
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::power:
      return std::pow(static_cast<double>(j), -p);
    case Kind::geometric:
      return std::pow(p, -static_cast<double>(j));
    case Kind::finite:
      return j <= static_cast<int>(values.size()) ? values[j - 1] : 0.0;
  }
  return 0.0;
}

std::string EpsilonSpec::label() const {
  auto num = [](double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
  };
  switch (kind) {
    case Kind::zero:
      return "zero";
    case Kind::power:
      return "j^-" + num(p);
    case Kind::geometric:
      return num(p) + "^-j";
    case Kind::finite: {
      std::string s = "list:";
      for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + num(values[i]);
      return s;
    }
  }
  return "";
}

GardingReport garding_bound(const EpsilonSpec& eps, double h, double M) {
  CalcContext check(h);
  if (!(M >= 0.0) || !std::isfinite(M)) throw DomainError("class norm M must be finite and >= 0");
  GardingReport r;
  r.epsilon = eps.label();
  r.h = h;
  r.M = M;
  r.S = 1.0;
  if (eps.kind == EpsilonSpec::Kind::finite) {
    for (double v : eps.values) r.S = std::max(r.S, v * v);
  }
  const double c = 81.0 * std::numbers::pi * h * r.S;

  long double sum = 0.0L, logprod = 0.0L;
  auto add = [&](int j) {
    const double e = eps(j);
    const double lam = c * e * e;
    if (r.lambda.size() < 32) r.lambda.push_back(lam);
    sum += lam;
    logprod += std::log1p(lam);
    r.terms = j;
  };
  double tail = 0.0;  // estimate of sum_{j > terms} lambda_j
  switch (eps.kind) {
    case EpsilonSpec::Kind::zero:
      break;
    case EpsilonSpec::Kind::finite:
      for (int j = 1; j <= static_cast<int>(eps.values.size()); ++j) add(j);
      break;
    case EpsilonSpec::Kind::geometric: {
      const double q = 1.0 / (eps.p * eps.p);
      int j = 0;
      do {
        add(++j);
        tail = c * std::pow(q, j + 1) / (1.0 - q);
      } while (tail > 1e-17 * static_cast<double>(sum) && j < 100000);
      break;
    }
    case EpsilonSpec::Kind::power: {
      const double two_p = 2.0 * eps.p;
      auto tail_after = [&](int j) { return c * std::pow(j + 0.5, 1.0 - two_p) / (two_p - 1.0); };
      int j = 0;
      do {
        add(++j);
        tail = tail_after(j);
      } while (tail > 1e-12 * static_cast<double>(sum) && j < 10000000);
      // the midpoint integral estimates the remaining tail far below its own size
      break;
    }
  }
  sum += tail;
  logprod += tail;  // log(1 + lambda) = lambda to first order; every remaining lambda is tiny
  r.sum_lambda = static_cast<double>(sum);
  r.prod_one_plus = std::exp(static_cast<double>(logprod));
  r.bound = r.sum_lambda == 0.0 || M == 0.0 ? 0.0 : -M * r.sum_lambda * r.prod_one_plus;
  return r;
}

GardingReport garding_verify(const SymbolDescriptor& sym, const TruncationSet& truncation, const CalcContext& ctx) {
  const auto params = cv_class_params(sym, 2);
  auto r = garding_bound(EpsilonSpec::power(2.0), ctx.h, params.M);
  r.class_method = params.method;
  const auto m = assemble_matrix(sym, truncation, ctx);
  r.measured_min_eig = eig_hermitian(m.entries).front();
  r.margin = *r.measured_min_eig - r.bound;
  return r;
}

}  // namespace gaussweyl
