#pragma once

// Cylindrical symbols F(z, zeta) = Fdd(l_{e_1}(z), .., l_{e_d}(z), l_{e_1}(zeta), ..),
// represented by the function Fdd on R^{2d}, plus the text format used on the
// command line and the class-norm metadata needed by the Garding bound.

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaussweyl/basis.hpp"
#include "gaussweyl/gaussian.hpp"

namespace gaussweyl {

// Radial profile Phi : R^+ -> R.
struct PhiSpec {
  enum class Kind { one, exp, polyexp, custom };

  Kind kind = Kind::one;
  double nu = 0.0;                  // exp: Phi(t) = e^{-nu t}
  std::vector<double> coeffs;       // polyexp: Phi(t) = sum_k c_k e^{-k t}
  std::function<double(double)> fn;  // custom
  std::function<double(double)> dfn;
  std::string label;

  static PhiSpec one();
  static PhiSpec exp(double nu);
  static PhiSpec polyexp(std::vector<double> coeffs);
  static PhiSpec custom(std::function<double(double)> fn, std::function<double(double)> dfn,
                        std::string label);

  double operator()(double t) const;
  double derivative(double t) const;
  // Phi as sum of (coefficient, rate) pairs c e^{-rate t}; empty optional for custom.
  std::optional<std::vector<std::pair<double, double>>> exp_terms() const;
};

std::string to_string(const PhiSpec& phi);
bool operator==(const PhiSpec& a, const PhiSpec& b);

struct RadialPart {
  PhiSpec phi;
  int dims = 1;
};

// c * prod_j exp(-rates[j] (x_j^2 + xi_j^2)), j = 0..d-1.
struct GaussianTerm {
  double coeff = 1.0;
  std::vector<double> rates;
};

// coeff * prod_j x_j^{px[j]} xi_j^{pxi[j]}
struct Monomial {
  double coeff = 1.0;
  std::vector<int> px;
  std::vector<int> pxi;
};

// (x_j d/dxi_j - xi_j d/dx_j) applied to a monomial list (j is 1-based);
// like terms are merged and zero terms dropped.
std::vector<Monomial> rotation_derivative(const std::vector<Monomial>& poly, int j);

using PhaseSpaceFunction = std::function<double(std::span<const double>, std::span<const double>)>;

enum class Family { constant, gaussian, radial, tensor_radial, box, gaussian_sum, polynomial, custom };

std::string_view family_name(Family f);

struct SymbolDescriptor {
  Family family = Family::constant;
  int d = 1;

  double c = 0.0;                   // constant
  double nu = 0.0, anorm = 0.0;     // gaussian
  std::vector<RadialPart> parts;    // radial (one part), tensor_radial
  double box_a = 0.0;               // box; may be +inf
  std::vector<GaussianTerm> terms;  // gaussian_sum
  std::vector<Monomial> monomials;  // polynomial
  PhaseSpaceFunction fn;            // custom
  std::string label;                // custom

  bool smooth = true;
  bool bounded = true;

  // Fdd at (x, xi). Only the box family reads ctx (its xi-side scales with h).
  double eval(std::span<const double> x, std::span<const double> xi, const CalcContext& ctx) const;

  // Separable Gaussian expansion, available for constant, gaussian, radial,
  // tensor_radial (non-custom profiles) and gaussian_sum.
  std::optional<std::vector<GaussianTerm>> gaussian_terms() const;

  // True when (x_j d/dxi_j - xi_j d/dx_j) Fdd vanishes identically, decided
  // from the family alone (j is 1-based).
  bool rotation_invariant(int j) const;

  // Grammar families print and parse; the others are built in code only.
  bool printable() const;
};

bool operator==(const SymbolDescriptor& a, const SymbolDescriptor& b);

SymbolDescriptor make_constant(double c);
SymbolDescriptor make_gaussian(double nu, double anorm);
SymbolDescriptor make_radial(PhiSpec phi, int d);
SymbolDescriptor make_tensor_radial(std::vector<RadialPart> parts);
SymbolDescriptor make_box(double a);
SymbolDescriptor make_gaussian_sum(int d, std::vector<GaussianTerm> terms);
SymbolDescriptor make_polynomial(int d, std::vector<Monomial> monomials);
SymbolDescriptor make_custom(int d, PhaseSpaceFunction fn, std::string label, bool smooth = true,
                             bool bounded = true);

SymbolDescriptor parse_symbol(std::string_view text);
std::string print_symbol(const SymbolDescriptor& sym);

double eval_ddot(const SymbolDescriptor& sym, std::span<const double> x, std::span<const double> xi,
                 const CalcContext& ctx);

// Ftilde(z, zeta): read the first d Wiener coordinates of each sample.
double eval_tilde(const SymbolDescriptor& sym, const WienerSample& z, const WienerSample& zeta,
                  const CalcContext& ctx);

struct SymbolClassParams {
  std::function<double(int)> epsilon;  // j (>= 1) -> eps_j
  std::string epsilon_label;
  int m = 0;
  double M = 0.0;
  bool summable = false;
  bool square_summable = false;
  std::string method;  // "analytic", "analytic-bound" or "numeric"
};

// eps_j = j^{-2}; M = sup over derivative orders (a_j, b_j) <= m on {1..d} of
// prod_j j^{2(a_j + b_j)} sup |d_x^a d_xi^b Fdd|.
SymbolClassParams cv_class_params(const SymbolDescriptor& sym, int m);

// Grid and finite-difference estimate of the same weighted sup, inflated by
// 20%. Works for d <= 2.
double numeric_class_norm(const SymbolDescriptor& sym, int m, double radius = 4.0, int grid = 41);

// eps_j = max(sqrt(Q(e_j, 0)), sqrt(Q(0, e_j))).
std::vector<double> epsilon_from_quadratic_form(const std::vector<std::pair<double, double>>& diag);

}  // namespace gaussweyl
