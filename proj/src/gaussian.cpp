#include "gaussweyl/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <random>
#include <string>

namespace gaussweyl {

int quad_order_cap() {
  if (const char* env = std::getenv("GAUSSWEYL_QUAD_MAX")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<int>(std::min<long>(v, kMaxGaussHermiteOrder));
  }
  return kMaxGaussHermiteOrder;
}

GaussianMeasure::GaussianMeasure(int dim_, double variance_) : dim(dim_), variance(variance_) {
  if (dim_ < 1) throw DomainError("Gaussian measure dimension must be >= 1");
  if (!(variance_ > 0.0)) throw DomainError("Gaussian measure variance must be positive");
}

double GaussianMeasure::density(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dim)) throw DomainError("density: dimension mismatch");
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return std::pow(2.0 * std::numbers::pi * variance, -dim / 2.0) * std::exp(-r2 / (2.0 * variance));
}

namespace {

// Eigenvalues of the symmetric tridiagonal Jacobi matrix (zero diagonal).
std::vector<double> jacobi_matrix_nodes(int n, const std::vector<double>& offdiag) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k + 1 < n; ++k) sub[k] = offdiag[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> nodes(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

// Hermite functions phi_k(t) = p_k(t) e^{-t^2/2}, p_k orthonormal for e^{-t^2}.
// Returns phi_{n-1}, phi_n and sum_{k<n} phi_k^2.
struct HermiteFunctionValues {
  double prev, cur, sumsq;
};

HermiteFunctionValues hermite_functions(int n, double t) {
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-t * t / 2.0);
  double sumsq = 0.0;
  for (int k = 0; k < n; ++k) {
    sumsq += cur * cur;
    const double next = std::sqrt(2.0 / (k + 1.0)) * t * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return {prev, cur, sumsq};
}

QuadratureRule unit_gh_rule(int n);

}  // namespace

QuadratureRule gh_rule(int n, double s) {
  if (n < 1 || n > kMaxGaussHermiteOrder) {
    throw DomainError("Gauss-Hermite order " + std::to_string(n) + " outside [1, 256]");
  }
  if (n > quad_order_cap()) {
    throw BudgetError("Gauss-Hermite order " + std::to_string(n) +
                      " above GAUSSWEYL_QUAD_MAX cap " + std::to_string(quad_order_cap()));
  }
  if (!(s > 0.0)) throw DomainError("Gauss-Hermite variance must be positive");

  // Nodes for exp(-x^2) depend only on n.
  thread_local std::map<int, QuadratureRule> unit_rules;
  auto it = unit_rules.find(n);
  if (it == unit_rules.end()) it = unit_rules.emplace(n, unit_gh_rule(n)).first;
  QuadratureRule rule = it->second;
  rule.variance = s;
  for (auto& x : rule.nodes) x *= std::sqrt(2.0 * s);
  return rule;
}

namespace {

QuadratureRule unit_gh_rule(int n) {
  std::vector<double> off(static_cast<std::size_t>(std::max(n - 1, 0)));
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k / 2.0);
  std::vector<double> t = jacobi_matrix_nodes(n, off);

  QuadratureRule rule;
  rule.variance = 0.5;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  double wsum = 0.0;
  for (int i = 0; i < n; ++i) {
    // Newton polish on phi_n; phi_n' = sqrt(2n) phi_{n-1} - t phi_n.
    double x = t[i];
    for (int it = 0; it < 3; ++it) {
      auto v = hermite_functions(n, x);
      const double deriv = std::sqrt(2.0 * n) * v.prev - x * v.cur;
      if (deriv == 0.0) break;
      x -= v.cur / deriv;
    }
    auto v = hermite_functions(n, x);
    // Christoffel weight 1 / sum_k p_k(x)^2, with p_k = phi_k e^{x^2/2}.
    const double w = std::exp(-x * x) / v.sumsq;
    rule.nodes[i] = x;
    rule.weights[i] = w;
    wsum += w;
  }
  for (auto& w : rule.weights) w /= wsum;
  // Symmetrize to remove round-off asymmetry.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

LegendreRule gauss_legendre(int n, double a, double b) {
  if (n < 1 || n > 512) throw DomainError("Gauss-Legendre order outside [1, 512]");
  if (!(b > a)) throw DomainError("Gauss-Legendre interval must satisfy a < b");
  std::vector<double> off(static_cast<std::size_t>(std::max(n - 1, 0)));
  for (int k = 1; k < n; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  std::vector<double> t = jacobi_matrix_nodes(n, off);

  LegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    double x = t[i];
    double dp = 1.0;
    for (int it = 0; it < 4; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = mid + half * x;
    rule.weights[i] = half * 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

LegendreRule composite_legendre(double a, double b, double panel_width, int nodes_per_panel) {
  if (!(b > a)) throw DomainError("composite_legendre: need a < b");
  if (!(panel_width > 0.0)) throw DomainError("composite_legendre: panel width must be positive");
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width - 1e-12)));
  const double w = (b - a) / panels;
  const LegendreRule base = gauss_legendre(nodes_per_panel, -1.0, 1.0);
  LegendreRule out;
  out.nodes.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
  out.weights.reserve(out.nodes.capacity());
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * w;
    for (int i = 0; i < nodes_per_panel; ++i) {
      out.nodes.push_back(lo + 0.5 * w * (base.nodes[i] + 1.0));
      out.weights.push_back(0.5 * w * base.weights[i]);
    }
  }
  return out;
}

double ell_constant(double p, double s) {
  if (!(p >= 1.0)) throw DomainError("ell_constant: p must be >= 1");
  if (!(s > 0.0)) throw DomainError("ell_constant: variance must be positive");
  return std::sqrt(2.0 * s) * std::pow(std::numbers::pi, -1.0 / (2.0 * p)) *
         std::exp(std::lgamma((p + 1.0) / 2.0) / p);
}

double ell_norm(double p, double s, double b_norm) {
  if (!(b_norm >= 0.0)) throw DomainError("ell_norm: |b| must be nonnegative");
  return ell_constant(p, s) * b_norm;
}

std::vector<double> draw_coordinate(std::uint64_t seed, int coordinate, std::size_t count, double s) {
  if (coordinate < 1) throw DomainError("coordinates start at 1");
  if (!(s > 0.0)) throw DomainError("sampling variance must be positive");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(coordinate), 0x5eedu};
  std::mt19937_64 gen(seq);
  std::normal_distribution<double> normal(0.0, std::sqrt(s));
  std::vector<double> out(count);
  for (auto& v : out) v = normal(gen);
  return out;
}

std::vector<WienerSample> mc_sample(int n, double s, std::uint64_t seed, std::size_t count) {
  if (n < 1) throw DomainError("mc_sample: need at least one coordinate");
  if (count < 1) throw DomainError("mc_sample: count must be >= 1");
  std::vector<WienerSample> samples(count);
  for (std::size_t i = 0; i < count; ++i) {
    samples[i].coords.resize(static_cast<std::size_t>(n));
    samples[i].variance = s;
    samples[i].stream = seed;
    samples[i].index = i;
  }
  for (int j = 1; j <= n; ++j) {
    const auto column = draw_coordinate(seed, j, count, s);
    for (std::size_t i = 0; i < count; ++i) samples[i].coords[j - 1] = column[i];
  }
  return samples;
}

}  // namespace gaussweyl
