#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gaussweyl/basis.hpp"
#include "gaussweyl/error.hpp"
#include "gaussweyl/gaussian.hpp"

using namespace gaussweyl;

namespace {

// Hermite polynomial H_j (physicists') by its own recurrence, used as an
// independent route to psi_j = H_j(x / sqrt(h)) / sqrt(2^j j!).
double physicists_hermite(int j, double y) {
  double a = 1.0, b = 2.0 * y;
  if (j == 0) return a;
  for (int n = 1; n < j; ++n) {
    const double c = 2.0 * y * b - 2.0 * n * a;
    a = b;
    b = c;
  }
  return b;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("hermite_eval: low-order values") {
  const CalcContext ctx(1.0);
  CHECK(hermite_eval(0, 3.7, ctx) == doctest::Approx(1.0));
  CHECK(hermite_eval(1, 1.0, ctx) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(hermite_eval(3, 1.0, ctx) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("hermite_eval agrees with physicists' Hermite polynomials") {
  for (double h : {0.5, 1.0, 2.0}) {
    const CalcContext ctx(h);
    for (int j = 0; j <= 15; ++j) {
      for (double x : {-1.3, -0.2, 0.0, 0.7, 2.1}) {
        const double ref = physicists_hermite(j, x / std::sqrt(h)) / std::sqrt(std::pow(2.0, j) * factorial(j));
        CHECK(hermite_eval(j, x, ctx) == doctest::Approx(ref).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("hermite: orthonormality against mu_{h/2}") {
  for (double h : {0.5, 1.0, 2.0}) {
    const CalcContext ctx(h);
    const auto rule = gh_rule(20, h / 2.0);
    for (int j = 0; j <= 12; ++j) {
      for (int k = 0; k <= 12; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          s += rule.weights[i] * hermite_eval(j, rule.nodes[i], ctx) * hermite_eval(k, rule.nodes[i], ctx);
        }
        CHECK(std::abs(s - (j == k ? 1.0 : 0.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("hermite: annihilation relation by central differences") {
  for (double h : {0.5, 1.0, 2.0}) {
    const CalcContext ctx(h);
    for (int j = 1; j <= 8; ++j) {
      for (double x : {-0.8, 0.1, 1.2}) {
        const double e = 1e-3;
        auto f = [&](double t) { return hermite_eval(j, t, ctx); };
        const double d = (-f(x + 2 * e) + 8 * f(x + e) - 8 * f(x - e) + f(x - 2 * e)) / (12 * e);
        const double rhs = std::sqrt(j * 2.0 / h) * hermite_eval(j - 1, x, ctx);
        CHECK(std::abs(d - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("hermite: leading coefficient by divided differences") {
  const CalcContext ctx(0.7);
  for (int j = 0; j <= 8; ++j) {
    // j-th divided difference on nodes 0..j equals the leading coefficient.
    std::vector<double> v(static_cast<std::size_t>(j) + 1);
    for (int i = 0; i <= j; ++i) v[i] = hermite_eval(j, static_cast<double>(i), ctx);
    for (int level = 1; level <= j; ++level) {
      for (int i = j; i >= level; --i) v[i] = (v[i] - v[i - 1]) / level;
    }
    const double lead = std::pow(2.0 / 0.7, j / 2.0) / std::sqrt(factorial(j));
    CHECK(v[j] == doctest::Approx(lead).epsilon(1e-8));
  }
}

TEST_CASE("hermite: degree limit") {
  const CalcContext ctx(1.0);
  CHECK_NOTHROW(hermite_eval(512, 0.1, ctx));
  CHECK_THROWS_AS(hermite_eval(513, 0.1, ctx), DomainError);
  CHECK_THROWS_AS(hermite_eval(-1, 0.1, ctx), DomainError);
  CHECK_THROWS_AS(CalcContext(0.0), DomainError);
  const auto all = hermite_all(10, 0.4, ctx);
  for (int j = 0; j <= 10; ++j) CHECK(all[j] == hermite_eval(j, 0.4, ctx));
}

TEST_CASE("laguerre_eval: examples and recurrence agreement") {
  CHECK(laguerre_eval(0, 3, 7.5) == 1.0);
  for (double x : {-1.0, 0.0, 0.4, 3.0}) CHECK(laguerre_eval(1, 0, x) == doctest::Approx(1.0 - x));
  CHECK(std::abs(laguerre_eval(1, 1, 2.0)) < 1e-15);
  // L_2^{(a)}(x) = (a+1)(a+2)/2 - (a+2)x + x^2/2
  for (int a = 0; a < 4; ++a) {
    const double x = 1.7;
    CHECK(laguerre_eval(2, a, x) == doctest::Approx((a + 1) * (a + 2) / 2.0 - (a + 2) * x + x * x / 2));
  }
  for (int k = 0; k <= 30; ++k) {
    for (int a : {0, 1, 5, 12}) {
      for (double x : {0.0, 0.5, 3.0, 10.0}) {
        // The explicit sum cancels; its terms are bounded by L_k^{(a)}(-x).
        const double scale = laguerre_recurrence(k, a, -x);
        CHECK(std::abs(laguerre_eval(k, a, x) - laguerre_recurrence(k, a, x)) <= 1e-13 * scale);
      }
    }
  }
  CHECK_NOTHROW(laguerre_eval(150, 50, 1.0));
  CHECK_THROWS_AS(laguerre_eval(150, 51, 1.0), DomainError);
}

TEST_CASE("bargman kernel: closed form and partial sums") {
  const CalcContext ctx(1.0);
  CHECK(std::abs(bargman_eval(0.0, 3.0, ctx) - 1.0) < 1e-15);
  const auto v = bargman_eval(0.5, 1.0, ctx);
  CHECK(v.real() == doctest::Approx(1.78980).epsilon(1e-5));
  CHECK(v.real() == doctest::Approx(std::exp(0.5 * std::sqrt(2.0) - 0.125)).epsilon(1e-14));
  CHECK(std::abs(v - bargman_partial_sum(0.5, 1.0, ctx, 30)) < 1e-10);

  double last = 1e300;
  for (int J = 4; J <= 40; J += 4) {
    const double err = std::abs(bargman_eval({0.8, -0.3}, 0.6, ctx) - bargman_partial_sum({0.8, -0.3}, 0.6, ctx, J));
    CHECK(err <= last);
    last = err;
  }
  CHECK(last < 1e-14);
}

TEST_CASE("gamma_transform: normalization and isometry") {
  const CalcContext ctx(1.0);
  auto one = gamma_transform([](std::span<const double>) { return std::complex<double>(1.0); }, ctx, 1);
  const double y0 = 0.0;
  CHECK(one(std::span<const double>(&y0, 1)).real() == doctest::Approx(std::pow(std::numbers::pi, -0.25)));

  for (double h : {0.5, 1.0}) {
    const CalcContext c(h);
    for (int j : {0, 2}) {
      auto g = gamma_transform(
          [&c, j](std::span<const double> y) { return std::complex<double>(hermite_eval(j, y[0], c)); }, c, 1);
      // L^2(dy) norm by Gauss-Legendre on a wide interval.
      const auto rule = composite_legendre(-12.0, 12.0, 1.0, 16);
      double lhs = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        lhs += rule.weights[i] * std::norm(g(std::span<const double>(&rule.nodes[i], 1)));
      }
      const auto gh = gh_rule(16, h / 2.0);
      double rhs = 0.0;
      for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        rhs += gh.weights[i] * std::pow(hermite_eval(j, gh.nodes[i], c), 2);
      }
      CHECK(std::abs(lhs - rhs) < 1e-10);
      CHECK(std::abs(lhs - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("MultiIndex bookkeeping") {
  MultiIndex a;
  CHECK(a.empty());
  CHECK(a.depth() == 0);
  a.set(3, 2);
  a.set(1, 1);
  CHECK(a[3] == 2);
  CHECK(a[2] == 0);
  CHECK(a.depth() == 2);
  CHECK(a.support_end() == 3);
  CHECK(a.total_degree() == 3);
  CHECK(a.to_string() == "{1:1,3:2}");
  a.set(3, 0);
  CHECK(a.support_end() == 1);
  CHECK_THROWS_AS(a.set(0, 1), DomainError);
  CHECK(MultiIndex(std::vector<int>{1, 0, 2}).dense(4) == std::vector<int>{1, 0, 2, 0});
}

TEST_CASE("TruncationSet: size and graded-lex order") {
  const TruncationSet t(2, 2);
  CHECK(t.size() == 9);
  const std::vector<std::vector<int>> expect = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                                                {0, 2}, {2, 1}, {1, 2}, {2, 2}};
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(t[i].dense(2) == expect[i]);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.index_of(t[i]) == i);
  CHECK(TruncationSet(3, 4).size() == 125);
  CHECK(TruncationSet(1, 0).size() == 1);
  CHECK_THROWS_AS(TruncationSet(7, 9), BudgetError);
}
