#pragma once

// Positivity experiments: the non-positivity witness, radial lower bounds,
// the Garding bound and the Flandrin box matrices.

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gaussweyl/quadform.hpp"
#include "gaussweyl/symbols.hpp"

namespace gaussweyl {

struct WitnessValue {
  double closed_form = 0.0;
  double quadrature = 0.0;
};

// Q(gaussian(nu, anorm))(l_a, l_a) with l_a = anorm sqrt(h/2) psi_1(x_1).
WitnessValue nonpos_witness(double nu, double anorm, const CalcContext& ctx);

// (1/h) \int_0^inf Phi(t) e^{-t/h} dt
double radial_lower_bound(const PhiSpec& phi, const CalcContext& ctx);

struct RadialCheck {
  double bound = 0.0;
  double min_eig = 0.0;
  double ground_state = 0.0;  // I_{0,0}
  double max_offdiag = 0.0;
  bool increasing = true;     // Phi_j' >= 0 on the sampled range, for every part
  bool ok = false;            // min_eig >= bound - 1e-8
};

RadialCheck radial_positivity_check(const SymbolDescriptor& sym, const TruncationSet& truncation,
                                    const CalcContext& ctx);

// eps_j for the Garding bound.
struct EpsilonSpec {
  enum class Kind { zero, power, geometric, finite };
  Kind kind = Kind::power;
  double p = 2.0;              // power: j^{-p}; geometric: p^{-j}
  std::vector<double> values;  // finite: eps_1..eps_n, zero afterwards

  static EpsilonSpec zero();
  static EpsilonSpec power(double p);
  static EpsilonSpec geometric(double base);
  static EpsilonSpec finite(std::vector<double> values);
  // "zero", "j^-P", "B^-j" or "list:e1,e2,..."
  static EpsilonSpec parse(const std::string& text);

  double operator()(int j) const;
  std::string label() const;
};

struct GardingReport {
  std::string epsilon;
  double h = 0.0;
  double S = 1.0;
  std::vector<double> lambda;  // leading terms, for display
  int terms = 0;               // number of terms summed before the tail estimate
  double sum_lambda = 0.0;
  double prod_one_plus = 1.0;
  double M = 0.0;
  double bound = 0.0;
  std::optional<double> measured_min_eig;
  std::optional<double> margin;
  std::string class_method;
};

GardingReport garding_bound(const EpsilonSpec& eps, double h, double M);

// Bound with M from cv_class_params(sym, 2) and eps_j = j^{-2}, compared with
// the smallest eigenvalue of the truncated matrix.
GardingReport garding_verify(const SymbolDescriptor& sym, const TruncationSet& truncation, const CalcContext& ctx);

struct FlandrinQuad {
  int nodes_per_panel = 16;
  double tolerance = 1e-9;  // max entry change under panel halving
  int max_halvings = 3;
};

struct FlandrinQuadUsed {
  double x_panel = 0.0;
  double z_panel = 0.0;
  int x_nodes = 0;
  int z_nodes = 0;
  double change = 0.0;  // last halving difference
  bool infinite_kernel = false;
};

// M_jk(a) = \int_{[0,a)^2} W(u_j, u_k)(x, eta) dx deta for u_j(x) = s^{-1/2} h_j(x / s),
// h_j the L^2(R, dx) Hermite functions and W the classical Wigner transform.
// a may be +inf.
Eigen::MatrixXcd flandrin_matrix(double a, int N, double scale = 1.0, const FlandrinQuad& quad = {},
                                 FlandrinQuadUsed* used = nullptr);

// The same matrix (scale 1) evaluated in the Gaussian variables of parameter h:
// \int_{[0,a) x [0, 2 pi h a)} (2 pi h)^{-1} W(h_j, h_k)(x, xi / (2 pi h)) dx dxi,
// on a direct two-dimensional panel grid. Meant for small N.
Eigen::MatrixXcd flandrin_matrix_direct(double a, int N, const CalcContext& ctx);

struct FlandrinRow {
  int N = 0;
  double top = 0.0;
};

struct FlandrinReport {
  double a = 0.0;
  double h = 0.0;
  int N = 0;
  FlandrinQuadUsed quad;
  double top_eigenvalue = 0.0;
  double excess = 0.0;
  std::vector<FlandrinRow> table;
};

FlandrinReport flandrin_search(double a, const CalcContext& ctx, int N, const FlandrinQuad& quad = {});

struct ReductionCheck {
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
};

// Q^Weyl(box(a))(f, f) on the Gaussian side against the classical Wigner
// integral of gamma f over [0,a)^2.
ReductionCheck flandrin_reduction_check(double a, const CalcContext& ctx, const HermiteExpansion& f);

}  // namespace gaussweyl
