#include <algorithm>
#include <cmath>
#include <numbers>

#include "gaussweyl/error.hpp"
#include "gaussweyl/gaussian.hpp"
#include "gaussweyl/positivity.hpp"
#include "gaussweyl/wigner.hpp"

namespace gaussweyl {

namespace {

constexpr double kPi = std::numbers::pi;

// s^{-1/2} h_j(x / s), j = 0..N, into out
void scaled_hermite(int N, double x, double s, double* out) {
  const double y = x / s;
  const double norm = 1.0 / std::sqrt(s);
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * y * y);
  out[0] = norm * cur;
  for (int k = 0; k < N; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * y * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
    out[k + 1] = norm * cur;
  }
}

// Beyond |y| = sqrt(2N+1) + 9 every h_j, j <= N, is below double precision.
double support_radius(int N) { return std::sqrt(2.0 * N + 1.0) + 9.0; }

// Integrating eta over [0, a) first leaves the kernel
//   K_a(z) = \int_0^a e^{-2 i pi z eta} deta = S(z) - i C(z),
// S = sin(2 pi a z) / (2 pi z), C = (1 - cos(2 pi a z)) / (2 pi z), so with
// f(z) = u(x + z/2) u(x - z/2)^T and K_a(-z) = S + iC,
//   \int_0^a W deta = \int_0^inf S (f + f^T) - i C (f - f^T) dz.
// For a = inf, K = delta/2 - i/(2 pi z) (principal value).
Eigen::MatrixXcd kernel_assemble(double a, int N, double s, double px, double pz, int npp, bool inf_kernel,
                                 int& x_nodes, int& z_nodes) {
  const int n1 = N + 1;
  const double R = s * support_radius(N);
  const double X = std::min(a, R);
  const auto xr = composite_legendre(0.0, X, px, npp);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n1, n1);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n1, n1);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n1, n1);
  Eigen::VectorXd hx(n1);
  x_nodes = static_cast<int>(xr.nodes.size());
  z_nodes = 0;
  for (std::size_t i = 0; i < xr.nodes.size(); ++i) {
    const double x = xr.nodes[i];
    const double wx = xr.weights[i];
    if (inf_kernel) {
      scaled_hermite(N, x, s, hx.data());
      D.noalias() += 0.5 * wx * hx * hx.transpose();
    }
    const double Z = 2.0 * (R - x);
    if (Z <= 0.0) continue;
    const auto zr = composite_legendre(0.0, Z, pz, npp);
    const Eigen::Index m = static_cast<Eigen::Index>(zr.nodes.size());
    z_nodes = std::max(z_nodes, static_cast<int>(m));
    Eigen::MatrixXd U(n1, m), V(n1, m);
    Eigen::VectorXd wS(m), wC(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const double z = zr.nodes[k];
      const double w = wx * zr.weights[k];
      scaled_hermite(N, x + 0.5 * z, s, U.col(k).data());
      scaled_hermite(N, x - 0.5 * z, s, V.col(k).data());
      if (inf_kernel) {
        wS(k) = 0.0;
        wC(k) = w / (2.0 * kPi * z);
      } else {
        const double sn = std::sin(kPi * a * z);
        wS(k) = w * std::sin(2.0 * kPi * a * z) / (2.0 * kPi * z);
        wC(k) = w * 2.0 * sn * sn / (2.0 * kPi * z);
      }
    }
    if (!inf_kernel) P.noalias() += U * wS.asDiagonal() * V.transpose();
    Q.noalias() += U * wC.asDiagonal() * V.transpose();
  }
  Eigen::MatrixXcd M(n1, n1);
  M.real() = P + P.transpose() + D;
  M.imag() = -(Q - Q.transpose());
  return M;
}

}  // namespace

Eigen::MatrixXcd flandrin_matrix(double a, int N, double scale, const FlandrinQuad& quad, FlandrinQuadUsed* used) {
  if (!(a > 0.0)) throw DomainError("Flandrin side a must be positive (or inf)");
  if (N < 0 || N > 128) throw DomainError("Flandrin cutoff N must lie in [0, 128]");
  if (!(scale > 0.0)) throw DomainError("Flandrin scale must be positive");
  if (quad.nodes_per_panel < 2) throw DomainError("need at least 2 nodes per panel");
  const double s = scale;
  const double R = support_radius(N);
  // Once a exceeds the eta-extent of every W(u_j, u_k), cutting eta at a changes nothing.
  const bool inf_kernel = std::isinf(a) || a >= R / (2.0 * kPi * s) + 1.0;
  const double wave = kPi * s / std::sqrt(2.0 * N + 1.0);
  double px = std::min(2.0 * wave, s);
  double pz = std::min(4.0 * wave, 2.0 * s);
  if (!inf_kernel) pz = std::min(pz, 1.0 / a);

  FlandrinQuadUsed info;
  info.infinite_kernel = inf_kernel;
  Eigen::MatrixXcd prev = kernel_assemble(a, N, s, px, pz, quad.nodes_per_panel, inf_kernel, info.x_nodes, info.z_nodes);
  for (int level = 0; level < quad.max_halvings; ++level) {
    px /= 2.0;
    pz /= 2.0;
    Eigen::MatrixXcd cur = kernel_assemble(a, N, s, px, pz, quad.nodes_per_panel, inf_kernel, info.x_nodes, info.z_nodes);
    info.change = (cur - prev).cwiseAbs().maxCoeff();
    info.x_panel = px;
    info.z_panel = pz;
    if (info.change <= quad.tolerance) {
      if (used) *used = info;
      return cur;
    }
    prev = std::move(cur);
  }
  throw ConvergenceError("Flandrin matrix did not settle under panel halving (last change " +
                         std::to_string(info.change) + ")");
}

Eigen::MatrixXcd flandrin_matrix_direct(double a, int N, const CalcContext& ctx) {
  if (!(a > 0.0)) throw DomainError("Flandrin side a must be positive (or inf)");
  if (N < 0 || N > 24) throw DomainError("direct Flandrin evaluation is limited to N <= 24");
  const double h = ctx.h;
  const CalcContext unit(1.0);
  const double R = support_radius(N);
  const double X = std::min(a, R);
  const double Xi = std::min(2.0 * kPi * h * a, h * R);
  const auto rx = composite_legendre(0.0, X, 0.1, 12);
  const auto rxi = composite_legendre(0.0, Xi, 0.1 * h, 12);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (std::size_t i = 0; i < rx.nodes.size(); ++i) {
    const double x = rx.nodes[i];
    for (std::size_t k = 0; k < rxi.nodes.size(); ++k) {
      const double p = rxi.nodes[k] / h;  // 2 pi eta
      // W(h_j, h_k)(x, eta) = 2 e^{-(x^2 + p^2)} W_1(psi_j, psi_k)(x, p)
      const double w = rx.weights[i] * rxi.weights[k] * 2.0 * std::exp(-(x * x + p * p)) / (2.0 * kPi * h);
      for (int j = 0; j <= N; ++j)
        for (int l = j; l <= N; ++l) M(j, l) += w * wigner_closed(j, l, x, p, unit);
    }
  }
  for (int j = 0; j <= N; ++j)
    for (int l = 0; l < j; ++l) M(j, l) = std::conj(M(l, j));
  return M;
}

FlandrinReport flandrin_search(double a, const CalcContext& ctx, int N, const FlandrinQuad& quad) {
  FlandrinReport r;
  r.a = a;
  r.h = ctx.h;
  r.N = N;
  const auto M = flandrin_matrix(a, N, 1.0, quad, &r.quad);
  std::vector<int> cutoffs;
  for (int n = 1; n < N; n *= 2) cutoffs.push_back(n);
  cutoffs.push_back(N);
  for (int n : cutoffs) {
    const auto ev = eig_hermitian(M.topLeftCorner(n + 1, n + 1));
    r.table.push_back({n, ev.back()});
  }
  r.top_eigenvalue = r.table.back().top;
  r.excess = r.top_eigenvalue - 1.0;
  return r;
}

ReductionCheck flandrin_reduction_check(double a, const CalcContext& ctx, const HermiteExpansion& f) {
  if (f.dims() != 1) throw DomainError("Flandrin reduction needs a one-dimensional expansion");
  if (std::abs(f.h() - ctx.h) > 1e-15 * ctx.h) throw DomainError("expansion was built for a different h");
  int N = 0;
  for (const auto& [alpha, c] : f.terms()) N = std::max(N, alpha[1]);
  ReductionCheck out;
  out.lhs = quadratic_form(make_box(a), f, f, ctx);
  // gamma psi_j = h^{-1/4} h_j(x / sqrt h)
  const auto M = flandrin_matrix(a, N, std::sqrt(ctx.h));
  Complex rhs = 0.0;
  for (const auto& [aj, cj] : f.terms())
    for (const auto& [ak, ck] : f.terms()) rhs += cj * std::conj(ck) * M(aj[1], ak[1]);
  out.rhs = rhs;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace gaussweyl
