#pragma once

// Matrix elements I_{alpha,beta}(F) = Q_h^Weyl(F)(psi_alpha, psi_beta), their
// truncated operator matrices, quadratic forms on Hermite expansions, the
// integration-by-parts machinery and the Hermitian eigensolver.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gaussweyl/basis.hpp"
#include "gaussweyl/symbols.hpp"
#include "gaussweyl/wigner.hpp"

namespace gaussweyl {

inline constexpr std::size_t kMaxMatrixRows = 4096;

// Finite combination sum_alpha c_alpha psi_alpha.
class HermiteExpansion {
 public:
  HermiteExpansion(int dims, double h);

  // Adds c to the coefficient of psi_alpha.
  HermiteExpansion& add(const MultiIndex& alpha, Complex c);

  int dims() const { return dims_; }
  double h() const { return h_; }
  const std::vector<std::pair<MultiIndex, Complex>>& terms() const { return terms_; }
  Complex coefficient(const MultiIndex& alpha) const;
  // sum |c_alpha|^2
  double norm_sq() const;

 private:
  int dims_;
  double h_;
  std::vector<std::pair<MultiIndex, Complex>> terms_;
};

struct QuadSpec {
  int order = 0;  // 0: 2(N+1)+16 with N the largest degree involved
  int step = 16;
  int max_order = 192;
  // Evaluate the Wigner factors by direct quadrature instead of the closed
  // Laguerre forms (used to cross-check the two paths).
  bool wigner_by_quadrature = false;
};

struct ElementValue {
  Complex value;
  int order = 0;
  // "structural-zero", "gaussian", "box" or "quadrature"
  std::string method;
};

ElementValue matrix_element_detailed(const SymbolDescriptor& sym, const MultiIndex& alpha,
                                     const MultiIndex& beta, const CalcContext& ctx,
                                     const QuadSpec& quad = {});
Complex matrix_element(const SymbolDescriptor& sym, const MultiIndex& alpha, const MultiIndex& beta,
                       const CalcContext& ctx, const QuadSpec& quad = {});

struct OperatorMatrix {
  TruncationSet truncation;
  Eigen::MatrixXcd entries;
  std::string symbol_text;  // canonical text, or the family name for code-built symbols
  double h = 0.0;
  int quad_order = 0;  // largest quadrature order used by any entry
  std::vector<std::string> warnings;
};

OperatorMatrix assemble_matrix(const SymbolDescriptor& sym, const TruncationSet& truncation,
                               const CalcContext& ctx, const QuadSpec& quad = {});

// Q(F)(f, g) = sum c_alpha conj(c'_beta) I_{alpha,beta}
Complex quadratic_form(const SymbolDescriptor& sym, const HermiteExpansion& f, const HermiteExpansion& g,
                       const CalcContext& ctx, const QuadSpec& quad = {});

// Ascending eigenvalues of a Hermitian matrix by cyclic complex Jacobi.
std::vector<double> eig_hermitian(const Eigen::MatrixXcd& a);

// F on R^2 given either as monomials (px, pxi of length 1) or as a function.
struct PlaneFunction {
  std::vector<Monomial> poly;
  std::function<double(double, double)> fn;

  static PlaneFunction polynomial(std::vector<Monomial> p);
  static PlaneFunction function(std::function<double(double, double)> f);
  bool analytic() const { return !fn; }
  double operator()(double x, double xi) const;
};

struct IppResult {
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  bool analytic = true;   // derivative taken symbolically
  bool unstable = false;  // numeric derivative path and residual above 1e-8
};

// Both sides of
//   (-s i eps)^n \int F (x + i eps xi)^s P(x^2+xi^2) e^{-(x^2+xi^2)/h} dx dxi
//   = \int (L^n F) (x + i eps xi)^s P(x^2+xi^2) e^{-(x^2+xi^2)/h} dx dxi,
// L = x d/dxi - xi d/dx. P is given by its coefficients in t.
IppResult ipp_check(const PlaneFunction& F, int n, int s, int eps, const std::vector<double>& P,
                    const CalcContext& ctx);

// L_j^n Fdd as a symbol: symbolic for polynomials, otherwise by
// differentiating theta -> Fdd(rotated pair j) spectrally at theta = 0.
SymbolDescriptor rotation_derivative_symbol(const SymbolDescriptor& sym, int j, int n);

// I_{alpha,beta} through i^n / (beta_j - alpha_j)^n \int (L_j^n Fdd) prod W dmu.
Complex rotation_reduction(const SymbolDescriptor& sym, const MultiIndex& alpha, const MultiIndex& beta, int j,
                           int n, const CalcContext& ctx, const QuadSpec& quad = {});

}  // namespace gaussweyl
