#include <algorithm>
#include <cmath>

#include "gaussweyl/error.hpp"
#include "gaussweyl/quadform.hpp"

namespace gaussweyl {

std::vector<double> eig_hermitian(const Eigen::MatrixXcd& input) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw DomainError("eig_hermitian needs a square matrix");
  if (n == 0) return {};
  const double scale = std::max(1.0, input.norm());
  if ((input - input.adjoint()).norm() > 1e-8 * scale) throw DomainError("matrix is not Hermitian");

  Eigen::MatrixXcd a = (input + input.adjoint()) / 2.0;
  const double total = a.norm();
  auto off = [&] {
    double s = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = 0; q < n; ++q)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep <= 100; ++sweep) {
    if (off() <= 1e-12 * total) {
      std::vector<double> ev(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i).real();
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    if (sweep == 100) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex z = a(p, q);
        const double r = std::abs(z);
        if (r == 0.0) continue;
        const Complex ph = std::conj(z) / r;  // e^{-i arg z}
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // V = [[c, s], [-s ph, c ph]] acting on columns p, q
        const Complex v00 = c, v01 = s, v10 = -s * ph, v11 = c * ph;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * v00 + akq * v10;
          a(k, q) = akp * v01 + akq * v11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(v00) * apk + std::conj(v10) * aqk;
          a(q, k) = std::conj(v01) * apk + std::conj(v11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  throw ConvergenceError("Jacobi eigensolver did not converge in 100 sweeps");
}

}  // namespace gaussweyl
