#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gaussweyl/error.hpp"
#include "gaussweyl/gaussian.hpp"

using namespace gaussweyl;

namespace {

double double_factorial(int n) {
  double f = 1.0;
  for (int i = n; i > 1; i -= 2) f *= i;
  return f;
}

double moment(const QuadratureRule& r, int k) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
  return s;
}

// Sum of |terms|: the scale against which round-off in moment() is measured.
double abs_moment(const QuadratureRule& r, int k) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(std::abs(r.nodes[i]), k);
  return s;
}

}  // namespace

TEST_CASE("gh_rule: basic moments") {
  const auto r = gh_rule(8, 0.5);
  CHECK(moment(r, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(moment(r, 2) - 0.5) < 1e-12);
  CHECK(std::abs(moment(gh_rule(8, 1.0), 6) - 15.0) < 1e-10);
  for (double w : r.weights) CHECK(w > 0.0);
}

TEST_CASE("gh_rule: exact for monomials of degree <= 2n-1") {
  for (int n : {4, 8, 16, 32}) {
    for (double s : {0.5, 1.0, 2.0}) {
      const auto r = gh_rule(n, s);
      double wsum = 0.0;
      for (double w : r.weights) wsum += w;
      CHECK(std::abs(wsum - 1.0) < 1e-12);
      for (int k = 0; k <= 2 * n - 1; ++k) {
        const double exact = (k % 2 == 1) ? 0.0 : std::pow(s, k / 2.0) * double_factorial(k - 1);
        CHECK(std::abs(moment(r, k) - exact) <= 1e-12 * abs_moment(r, k));
      }
    }
  }
}

TEST_CASE("gh_rule: range and cap") {
  CHECK_THROWS_AS(gh_rule(0, 1.0), DomainError);
  CHECK_THROWS_AS(gh_rule(257, 1.0), DomainError);
  CHECK_THROWS_AS(gh_rule(4, -1.0), DomainError);
  CHECK_NOTHROW(gh_rule(256, 1.0));
  const auto big = gh_rule(200, 0.5);
  CHECK(std::abs(moment(big, 4) - 0.75) < 1e-10);
}

TEST_CASE("gauss_legendre: polynomial exactness") {
  const auto r = gauss_legendre(6, -1.0, 2.0);
  for (int k = 0; k <= 11; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
    const double exact = (std::pow(2.0, k + 1) - std::pow(-1.0, k + 1)) / (k + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-12));
  }
  const auto c = composite_legendre(0.0, 3.0, 0.7, 8);
  CHECK(c.nodes.size() == 5 * 8);
  double area = 0.0;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) area += c.weights[i] * std::sin(c.nodes[i]);
  CHECK(area == doctest::Approx(1.0 - std::cos(3.0)).epsilon(1e-13));
}

TEST_CASE("integrate_tensor") {
  const auto r = gh_rule(6, 0.5);
  for (int m = 1; m <= 4; ++m) {
    CHECK(std::abs(integrate_tensor([](std::span<const double>) { return 1.0; }, r, m) - 1.0) < 1e-13);
  }
  const auto v = integrate_tensor([](std::span<const double> x) { return x[0] * x[0] * x[1] * x[1]; }, r, 2);
  CHECK(std::abs(v - 0.25) < 1e-13);

  // exp(-(x^2 + xi^2)) against mu_{R^2,1/2}: (1 + 2 * 1 * 0.5)^{-1/2} squared.
  const auto r40 = gh_rule(40, 0.5);
  const auto g = integrate_tensor([](std::span<const double> x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); },
                                  r40, 2);
  CHECK(std::abs(g - 0.5) < 1e-12);

  // Symmetry under permutation of coordinates.
  auto f = [](std::span<const double> x) { return std::cos(x[0]) * (1.0 + x[1] * x[1]) * std::exp(0.1 * x[2]); };
  auto fp = [](std::span<const double> x) { return std::cos(x[2]) * (1.0 + x[0] * x[0]) * std::exp(0.1 * x[1]); };
  CHECK(std::abs(integrate_tensor(f, r, 3) - integrate_tensor(fp, r, 3)) < 1e-13);

  CHECK_THROWS_AS(integrate_tensor([](std::span<const double>) { return 1.0; }, gh_rule(101, 1.0), 4), BudgetError);
}

TEST_CASE("GaussianMeasure density integrates to one") {
  const GaussianMeasure mu(2, 0.7);
  const auto rule = composite_legendre(-8.0, 8.0, 1.0, 12);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double p[2] = {rule.nodes[i], rule.nodes[j]};
      total += rule.weights[i] * rule.weights[j] * mu.density(p);
    }
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(GaussianMeasure(0, 1.0), DomainError);
  CHECK_THROWS_AS(GaussianMeasure(1, 0.0), DomainError);
}

TEST_CASE("ell_norm examples and constant") {
  CHECK(ell_norm(2.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ell_norm(1.0, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-14));
  CHECK(ell_norm(2.0, 0.5, 2.0) == doctest::Approx(std::sqrt(0.5) * 2.0).epsilon(1e-14));
  // Oracle: (E|X|^p)^{1/p} for X ~ N(0, s) by Gauss-Legendre in u = sqrt|x|.
  for (double p : {1.5, 3.0, 4.0}) {
    const double s = 1.3;
    const auto r = composite_legendre(0.0, 4.0, 0.25, 12);
    double m = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      const double u = r.nodes[i];
      const double x = u * u;
      m += 4.0 * u * r.weights[i] * std::pow(x, p) * std::exp(-x * x / (2 * s)) /
           std::sqrt(2 * std::numbers::pi * s);
    }
    CHECK(ell_constant(p, s) == doctest::Approx(std::pow(m, 1.0 / p)).epsilon(1e-10));
  }
}

TEST_CASE("mc_sample: statistics, reproducibility, extension") {
  const std::size_t count = 100000;
  const auto samples = mc_sample(2, 1.0, 42, count);
  double mean = 0.0, var = 0.0, l2 = 0.0;
  for (const auto& w : samples) {
    mean += w.coords[0];
    var += w.coords[0] * w.coords[0];
    const double lb = 0.6 * w.coords[0] + 0.8 * w.coords[1];
    l2 += lb * lb;
  }
  mean /= count;
  var /= count;
  l2 /= count;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(count)));
  CHECK(std::abs(var - 1.0) < 0.05);
  // Standard error of the mean of lb^2 is sqrt(2/count); check the L^2 norm within 3 SE.
  CHECK(std::abs(std::sqrt(l2) - ell_norm(2.0, 1.0, 1.0)) < 3.0 * std::sqrt(2.0 / count) / 2.0 + 1e-12);

  const auto again = mc_sample(2, 1.0, 42, count);
  for (std::size_t i = 0; i < count; i += 997) CHECK(again[i].coords == samples[i].coords);

  const auto longer = mc_sample(5, 1.0, 42, count + 10);
  for (std::size_t i = 0; i < count; i += 991) {
    CHECK(longer[i].coords[0] == samples[i].coords[0]);
    CHECK(longer[i].coords[1] == samples[i].coords[1]);
  }

  // Linearity of ell on samples.
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& c = samples[i].coords;
    const double a = 2.0 * c[0] - 1.0 * c[1];
    const double b = 0.5 * c[0] + 3.0 * c[1];
    const double sum = 2.5 * c[0] + 2.0 * c[1];
    CHECK(std::abs((a + b) - sum) < 1e-12 * std::max(1.0, std::abs(sum)));
    CHECK(std::abs(-3.0 * a - (-6.0 * c[0] + 3.0 * c[1])) < 1e-12 * std::max(1.0, std::abs(a)));
  }
  CHECK_THROWS_AS(mc_sample(1, 1.0, 1, 0), DomainError);
}

TEST_CASE("GAUSSWEYL_QUAD_MAX caps Gauss-Hermite orders") {
  setenv("GAUSSWEYL_QUAD_MAX", "40", 1);
  CHECK(quad_order_cap() == 40);
  CHECK_THROWS_AS(gh_rule(41, 1.0), BudgetError);
  CHECK_NOTHROW(gh_rule(40, 1.0));
  unsetenv("GAUSSWEYL_QUAD_MAX");
  CHECK(quad_order_cap() == 256);
}
