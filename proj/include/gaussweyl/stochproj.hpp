#pragma once

// Cylindrical approximations on Wiener space: L^p distances of ell-functionals
// to their projections, Monte Carlo checks of stochastic extensions and the
// covariance matrices K_n of projected coordinates.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gaussweyl {

// Square-summable direction a = (a_1, a_2, ...) in H.
struct DirectionVector {
  enum class Kind { geometric, power, finite };
  Kind kind = Kind::finite;
  double p = 2.0;              // geometric: a_j = p^{-j/2}; power: a_j = j^{-p}
  std::vector<double> values;  // finite

  static DirectionVector geometric(double base);
  static DirectionVector power(double p);
  static DirectionVector finite(std::vector<double> values);
  // "geom:B", "pow:P" or "list:a1,a2,..."
  static DirectionVector parse(const std::string& text);

  double operator()(int j) const;
  double norm2() const;
  // sum_{j > n} a_j^2, computed without subtracting from norm2()
  double tail2(int n) const;
  double tail_norm(int n) const;
  std::string label() const;
};

// C_{p,s} |a - P_{E_n} a| with E_n = span(e_1..e_n).
double exact_conv_rate(const DirectionVector& a, int n, double p, double s);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  int explicit_coords = 0;  // coordinates drawn one by one before the lumped remainder
};

// Monte Carlo value of ||ell_a - ell_{P_{E_n} a}||_{L^p(mu_s)}. Coordinates
// n+1..n+64 are drawn individually; the rest of the tail is one Gaussian with
// the exact remaining variance.
McEstimate mc_conv_rate(const DirectionVector& a, int n, double p, double s, std::size_t samples,
                        std::uint64_t seed);

// Orthonormal columns b_1..b_n in R^M (M = rows) spanning E_n.
using Frame = Eigen::MatrixXd;

// E_n = span(e_1..e_n)
Frame coordinate_frame(int n);
// E_n = span(cos t e_k + sin t e_{k+1}, k = 1..n), orthonormalized. Nested in n,
// with dense union for |tan t| <= 1.
Frame givens_frame(int n, double theta);
// Haar-random n-dimensional subspace of R^M.
Frame random_frame(int n, int M, std::uint64_t seed);

struct CovarianceMatrix {
  Eigen::MatrixXd K;
  double s = 0.0;
  std::string provenance;
  Eigen::VectorXd eigenvalues;  // ascending
  double det = 0.0;
  bool within_bound = false;    // max eigenvalue <= s + 1e-10
  bool invertible = false;
  // min over random y of s <y, K^{-1} y> / |y|^2 (>= 1 expected); only when invertible
  double inverse_ratio = 0.0;
};

// K_ij = s (P_{E_n} e_i . P_{E_n} e_j), i, j = 1..d.
CovarianceMatrix covariance_and_bound(const Frame& basis, int d, double s, const std::string& provenance = "",
                                      std::uint64_t seed = 0);

using CylinderFunction = std::function<double(std::span<const double>)>;

struct CylinderPhi {
  std::string name;
  int d = 1;
  CylinderFunction fn;
  bool growth_ok = false;  // caller asserts the integrability condition for the chosen p, s
};

// cos(x_1); a smooth compactly supported bump in d variables; (1 + x_1^2) e^{-|x|^2/4}
CylinderPhi builtin_phi(const std::string& name, int d = 1);

struct ExtensionRow {
  int n = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double lambda_max = 0.0;  // of K_n
};

// ||phi(ell_{P_n e_1}, ..., ell_{P_n e_d}) - phi(ell_{e_1}, ..., ell_{e_d})||_{L^p(mu_s)} by
// Monte Carlo for each frame. All frames share the same Wiener samples.
std::vector<ExtensionRow> cylinder_extension_check(const CylinderPhi& phi, const std::vector<Frame>& frames,
                                                   double p, double s, std::size_t samples,
                                                   std::uint64_t seed);

}  // namespace gaussweyl
