#pragma once

// Gaussian-normalized Wigner functions W_h(f, g)(z, zeta) =
//   e^{|zeta|^2/h} \int e^{-2i zeta t/h} f(z+t) conj(g(z-t)) dmu_{h/2}(t)
// and the classical (Lebesgue) Wigner transform used for comparisons.

#include <complex>
#include <functional>
#include <span>

#include "gaussweyl/basis.hpp"

namespace gaussweyl {

using Complex = std::complex<double>;
using ScalarFunction = std::function<Complex(double)>;

// Closed Laguerre form for the Hermite pair (psi_j, psi_k).
Complex wigner_closed(int j, int k, double x, double xi, const CalcContext& ctx);

struct AdaptiveValue {
  Complex value;
  int order = 0;  // quadrature order at which successive orders agreed
};

struct WignerQuadratureOptions {
  int start_order = 24;
  int step = 16;
  int max_order = 192;
  double tolerance = 1e-12;  // relative to max(1, |value|, sum of |summands|) of the bare integral
};

// Direct quadrature of the defining integral for functions on R.
AdaptiveValue wigner_quadrature(const ScalarFunction& f, const ScalarFunction& g, double z,
                                double zeta, const CalcContext& ctx,
                                const WignerQuadratureOptions& opts = {});

// Product over coordinates of the one-dimensional closed forms. point holds
// (x_1..x_d, xi_1..xi_d). Only coordinates where alpha or beta is nonzero
// contribute a non-unit factor.
Complex wigner_tensor(const MultiIndex& alpha, const MultiIndex& beta,
                      std::span<const double> point, int dims, const CalcContext& ctx);

// Wigner function of two Bargman kernels, W(K_u, K_{conj v}).
Complex wigner_bargman(Complex u, Complex v, double x, double xi, const CalcContext& ctx);

// \int W(psi_j, psi_k) dmu_{R^2,h/2}; equals delta_{jk}.
double overlap(int j, int k, const CalcContext& ctx);

// Classical Wigner transform \int e^{-2 i pi z eta} u(x + z/2) conj(v(x - z/2)) dz,
// integrated against a Gaussian importance weight of variance weight_variance
// in z (choose it close to the decay scale of the integrand).
AdaptiveValue classical_wigner(const ScalarFunction& u, const ScalarFunction& v, double x,
                               double eta, double weight_variance,
                               const WignerQuadratureOptions& opts = {});

}  // namespace gaussweyl
