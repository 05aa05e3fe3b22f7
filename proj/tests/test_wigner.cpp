#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gaussweyl/basis.hpp"
#include "gaussweyl/error.hpp"
#include "gaussweyl/gaussian.hpp"
#include "gaussweyl/wigner.hpp"

using namespace gaussweyl;

namespace {

ScalarFunction psi(int j, const CalcContext& ctx) {
  return [j, ctx](double x) { return Complex(hermite_eval(j, x, ctx)); };
}

}  // namespace

TEST_CASE("wigner_closed: low orders") {
  for (double h : {0.5, 1.0, 2.0}) {
    const CalcContext ctx(h);
    for (double x : {-1.0, 0.3}) {
      for (double xi : {0.0, 0.8}) {
        CHECK(std::abs(wigner_closed(0, 0, x, xi, ctx) - 1.0) < 1e-15);
        CHECK(std::abs(wigner_closed(1, 1, x, xi, ctx) - (-1.0 + 2.0 / h * (x * x + xi * xi))) < 1e-13);
        CHECK(std::abs(wigner_closed(0, 1, x, xi, ctx) - std::sqrt(2.0 / h) * Complex(x, xi)) < 1e-13);
      }
    }
  }
  CHECK(std::abs(wigner_closed(0, 1, 1.0, 1.0, CalcContext(2.0)) - Complex(1.0, 1.0)) < 1e-15);
}

TEST_CASE("wigner_closed: Hermitian symmetry and real diagonal") {
  const CalcContext ctx(0.8);
  for (int j = 0; j <= 10; ++j) {
    for (int k = 0; k <= 10; ++k) {
      for (double x : {-0.9, 0.4}) {
        for (double xi : {-0.3, 1.1}) {
          const Complex a = wigner_closed(j, k, x, xi, ctx);
          const Complex b = wigner_closed(k, j, x, xi, ctx);
          CHECK(std::abs(a - std::conj(b)) < 1e-12 * std::max(1.0, std::abs(a)));
          if (j == k) CHECK(a.imag() == 0.0);
        }
      }
    }
  }
}

TEST_CASE("wigner_quadrature matches closed forms") {
  const CalcContext one(1.0);
  for (double z : {-1.0, 0.4}) {
    for (double zeta : {0.0, 1.3}) {
      CHECK(std::abs(wigner_quadrature(psi(0, one), psi(0, one), z, zeta, one).value - 1.0) < 1e-10);
    }
  }
  const auto w22 = wigner_quadrature(psi(2, one), psi(2, one), 0.3, -0.7, one);
  CHECK(std::abs(w22.value - wigner_closed(2, 2, 0.3, -0.7, one)) < 1e-9);

  const CalcContext half(0.5);
  for (double x : {-1.0, 0.0, 1.0}) {
    for (double xi : {-1.0, 0.0, 1.0}) {
      const auto q = wigner_quadrature(psi(1, half), psi(3, half), x, xi, half);
      CHECK(std::abs(q.value - wigner_closed(1, 3, x, xi, half)) < 1e-8);
    }
  }

  for (double h : {0.5, 1.0, 2.0}) {
    const CalcContext ctx(h);
    const double grid[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (int j = 0; j <= 6; ++j) {
      for (int k = 0; k <= 6; ++k) {
        for (double x : grid) {
          for (double xi : grid) {
            const auto q = wigner_quadrature(psi(j, ctx), psi(k, ctx), x, xi, ctx);
            const Complex c = wigner_closed(j, k, x, xi, ctx);
            CHECK(std::abs(q.value - c) <= 1e-8);
          }
        }
      }
    }
  }
}

TEST_CASE("wigner_quadrature reports budget exhaustion") {
  const CalcContext ctx(1.0);
  // A wildly oscillating, non-decaying integrand cannot settle under the cap.
  ScalarFunction rough = [](double x) { return Complex(std::exp(x * x * 0.9) * std::cos(40 * x)); };
  CHECK_THROWS_AS(wigner_quadrature(rough, rough, 0.0, 5.0, ctx), BudgetError);
}

TEST_CASE("wigner_tensor") {
  const CalcContext h2(2.0);
  const double p1[2] = {0.7, -0.2};
  CHECK(std::abs(wigner_tensor(MultiIndex(), MultiIndex(), p1, 1, h2) - 1.0) < 1e-15);
  MultiIndex one;
  one.set(1, 1);
  CHECK(std::abs(wigner_tensor(one, one, p1, 1, h2) - wigner_closed(1, 1, 0.7, -0.2, h2)) < 1e-15);

  const MultiIndex a(std::vector<int>{1, 0});
  const MultiIndex b(std::vector<int>{0, 1});
  const double p2[4] = {1.0, 1.0, 1.0, 1.0};
  CHECK(std::abs(wigner_tensor(a, b, p2, 2, h2) - 2.0) < 1e-14);
  CHECK_THROWS_AS(wigner_tensor(MultiIndex(std::vector<int>{0, 0, 1}), MultiIndex(), p2, 2, h2), DomainError);

  // Product structure against a direct product of closed forms, d = 3.
  const CalcContext ctx(0.6);
  const MultiIndex al(std::vector<int>{2, 0, 1});
  const MultiIndex be(std::vector<int>{1, 3, 0});
  const double p3[6] = {0.1, -0.4, 0.9, 0.5, 0.2, -0.3};
  Complex prod = 1.0;
  for (int c = 0; c < 3; ++c) prod *= wigner_closed(al[c + 1], be[c + 1], p3[c], p3[3 + c], ctx);
  CHECK(std::abs(wigner_tensor(al, be, p3, 3, ctx) - prod) < 1e-13);
}

TEST_CASE("wigner_bargman: closed form and generating function") {
  const CalcContext one(1.0);
  CHECK(std::abs(wigner_bargman(0.0, 0.0, 0.4, 1.2, one) - 1.0) < 1e-15);
  const Complex v = wigner_bargman(0.3, 0.2, 1.0, 0.0, one);
  CHECK(v.real() == doctest::Approx(std::exp(-0.06 + std::sqrt(2.0) * 0.5)).epsilon(1e-14));
  CHECK(v.real() == doctest::Approx(1.90998).epsilon(1e-5));

  // Mixed partial in (u, v) at 0 recovers W(psi_1, psi_1).
  const double step = 1e-6;
  for (double h : {0.5, 1.0}) {
    const CalcContext ctx(h);
    const double x = 0.6, xi = -0.4;
    const Complex d = (wigner_bargman(step, step, x, xi, ctx) - wigner_bargman(step, -step, x, xi, ctx) -
                       wigner_bargman(-step, step, x, xi, ctx) + wigner_bargman(-step, -step, x, xi, ctx)) /
                      (4 * step * step);
    CHECK(std::abs(d - wigner_closed(1, 1, x, xi, ctx)) < 1e-4);
  }

  // Against direct quadrature of the kernels themselves.
  const CalcContext ctx(1.0);
  const Complex u(0.4, 0.1), w(-0.2, 0.3);
  ScalarFunction ku = [&](double x) { return bargman_eval(u, x, ctx); };
  ScalarFunction kv = [&](double x) { return bargman_eval(std::conj(w), x, ctx); };
  const auto q = wigner_quadrature(ku, kv, 0.5, -0.3, ctx);
  CHECK(std::abs(q.value - wigner_bargman(u, w, 0.5, -0.3, ctx)) < 1e-9);
}

TEST_CASE("overlap identity") {
  for (double h : {0.5, 1.0, 2.0}) {
    const CalcContext ctx(h);
    CHECK(std::abs(overlap(0, 0, ctx) - 1.0) < 1e-12);
    CHECK(std::abs(overlap(2, 5, ctx)) < 1e-10);
    CHECK(std::abs(overlap(7, 7, ctx) - 1.0) < 1e-9);
    for (int j = 0; j <= 8; ++j) {
      for (int k = 0; k <= 8; ++k) CHECK(std::abs(overlap(j, k, ctx) - (j == k ? 1.0 : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("relation to the classical Wigner transform") {
  for (double h : {0.5, 1.0}) {
    const CalcContext ctx(h);
    for (int j : {0, 1}) {
      auto g = gamma_transform(
          [j, ctx](std::span<const double> y) { return Complex(hermite_eval(j, y[0], ctx)); }, ctx, 1);
      ScalarFunction gu = [g](double y) { return g(std::span<const double>(&y, 1)); };
      for (double x : {-0.5, 0.2}) {
        for (double xi : {0.0, 0.7}) {
          const Complex lhs = std::exp(-(x * x + xi * xi) / h) * wigner_closed(j, j, x, xi, ctx);
          const auto cl = classical_wigner(gu, gu, x, xi / (2 * std::numbers::pi * h), 2.0 * h);
          CHECK(std::abs(lhs - 0.5 * cl.value) < 1e-8);
        }
      }
    }
  }
}
