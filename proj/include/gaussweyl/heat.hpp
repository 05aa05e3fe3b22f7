#pragma once

// Partial heat operators H_{D_J,t} acting jointly on the pairs (x_j, xi_j),
// the T_J / S_J algebra built from them, and the Anti-Wick and hybrid forms.

#include <set>
#include <utility>
#include <vector>

#include "gaussweyl/quadform.hpp"
#include "gaussweyl/symbols.hpp"

namespace gaussweyl {

using PairSet = std::set<int>;

struct HeatOptions {
  bool force_quadrature = false;  // skip the closed forms
  double h = 0.0;                 // needed only to heat a box symbol
};

struct HeatedSymbol {
  SymbolDescriptor base;
  PairSet heated_pairs;
  double t = 0.0;
  // Evaluator of H_{D_J,t} Fdd: gaussian_sum, constant, or base itself when
  // closed form; a custom symbol doing the 2|J|-dimensional convolution otherwise.
  SymbolDescriptor symbol;
  bool closed_form = true;

  double operator()(std::span<const double> x, std::span<const double> xi, const CalcContext& ctx) const {
    return symbol.eval(x, xi, ctx);
  }
};

HeatedSymbol heat_apply(const SymbolDescriptor& sym, const PairSet& J, double t, const HeatOptions& opts = {});

struct SignedTerm {
  double sign = 1.0;
  HeatedSymbol term;
};

// T_{J,h} S_{Lambda \ J,h} Fdd as a signed list: for K subset of J the term
// (-1)^{|K|} H_{D_{K u (Lambda \ J)}, h/2} Fdd.
std::vector<SignedTerm> ts_operators(const SymbolDescriptor& sym, const PairSet& J, const PairSet& Lambda,
                                     const CalcContext& ctx, const HeatOptions& opts = {});

double evaluate_terms(const std::vector<SignedTerm>& terms, std::span<const double> x, std::span<const double> xi,
                      const CalcContext& ctx);

using PhaseGrid = std::vector<std::pair<std::vector<double>, std::vector<double>>>;

// Tensor grid of n points per coordinate on [-radius, radius]^{2d}.
PhaseGrid phase_grid(int d, int n, double radius);

// max over the grid of |Fdd - sum_{J subset Lambda} T_J S_{Lambda\J} Fdd|
double decomposition_residual(const SymbolDescriptor& sym, const PairSet& Lambda, const CalcContext& ctx,
                              const PhaseGrid& grid);

// Q^Weyl of the symbol heated with t = h/2 on every pair.
Complex antiwick_form(const SymbolDescriptor& sym, const HermiteExpansion& f, const HermiteExpansion& g,
                      const CalcContext& ctx, const QuadSpec& quad = {});

// Q^Weyl of the symbol heated with t = h/2 on the pairs outside E.
Complex hybrid_form(const SymbolDescriptor& sym, const PairSet& E, const HermiteExpansion& f,
                    const HermiteExpansion& g, const CalcContext& ctx, const QuadSpec& quad = {});

}  // namespace gaussweyl
