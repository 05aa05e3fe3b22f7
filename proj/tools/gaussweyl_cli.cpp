#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gaussweyl/error.hpp"
#include "gaussweyl/gaussian.hpp"
#include "gaussweyl/heat.hpp"
#include "gaussweyl/positivity.hpp"
#include "gaussweyl/quadform.hpp"
#include "gaussweyl/stochproj.hpp"
#include "report.hpp"

using namespace gaussweyl;
using gaussweyl::cli::Report;

namespace {

struct Common {
  double h = 1.0;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->set_help_flag("--help", "Print this help message and exit");
  sub->add_option("--h", c.h, "semiclassical parameter h > 0");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "output file (stdout when empty)");
  sub->add_option("--seed", c.seed, "random seed");
}

double parse_side(const std::string& s) {
  if (s == "inf" || s == "infinity") return INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || used == 0) throw gaussweyl::ParseError("side length must be a number or 'inf'", 1);
  return v;
}

PairSet parse_pairs(const std::string& s) {
  PairSet out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int j = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.insert(j);
    } catch (const std::exception&) {
      throw gaussweyl::ParseError("bad pair index '" + item + "'", 1);
    }
  }
  if (out.empty()) throw gaussweyl::ParseError("empty pair set", 1);
  return out;
}

void echo_config(const CLI::App* sub, Report& r) {
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help") continue;
    if (opt->count() > 0) {
      const auto res = opt->results();
      r.config[name] = res.size() == 1 ? res.front() : opt->as<std::string>();
    } else if (opt->get_expected_min() == 0) {
      r.config[name] = "false";
    } else {
      r.config[name] = opt->get_default_str();
    }
  }
}

TruncationSet truncation_for(const SymbolDescriptor& sym, int d, int N) {
  return TruncationSet(d > 0 ? d : sym.d, N);
}

std::string index_text(const MultiIndex& a, int dims) {
  std::string s = "(";
  for (int j = 1; j <= dims; ++j) s += (j > 1 ? " " : "") + std::to_string(a[j]);
  return s + ")";
}

struct MatrixOpts {
  std::string symbol;
  int N = 2;
  int d = 0;
  int quad_order = 0;
  bool wigner_quadrature = false;
};

void add_matrix_opts(CLI::App* sub, MatrixOpts& m) {
  sub->add_option("--symbol", m.symbol, "symbol text, e.g. gaussian:nu=2,anorm=1")->required();
  sub->add_option("--N", m.N, "largest degree per coordinate");
  sub->add_option("--d", m.d, "number of coordinates (default: the symbol's own)");
  sub->add_option("--quad-order", m.quad_order, "starting Gauss-Hermite order (0: automatic)");
  sub->add_flag("--wigner-quadrature", m.wigner_quadrature, "evaluate Wigner factors by quadrature");
}

OperatorMatrix build_matrix(const MatrixOpts& m, const CalcContext& ctx, Report& r) {
  const auto sym = parse_symbol(m.symbol);
  QuadSpec q;
  q.order = m.quad_order;
  q.wigner_by_quadrature = m.wigner_quadrature;
  auto M = assemble_matrix(sym, truncation_for(sym, m.d, m.N), ctx, q);
  r.quadrature["max_order_used"] = M.quad_order;
  r.quadrature["order_cap"] = quad_order_cap();
  r.values["symbol"] = M.symbol_text;
  r.values["size"] = M.entries.rows();
  if (!M.warnings.empty()) r.values["warnings"] = M.warnings;
  const double asym = (M.entries - M.entries.adjoint()).cwiseAbs().maxCoeff();
  r.values["hermitian_defect"] = asym;
  if (asym > 1e-10) r.violate("hermitian", asym, 1e-10);
  return M;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian Weyl-Wigner calculus on Wiener space truncations"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", std::string(GAUSSWEYL_VERSION));

  Common common;
  std::function<void(Report&)> run;
  CLI::App* chosen = nullptr;

  // wigner
  int wj = 0, wk = 0, grid = 5;
  double radius = 2.0;
  std::string wsym;
  auto* w = app.add_subcommand("wigner", "Wigner function of (psi_j, psi_k) or a symbol on a phase-space grid");
  add_common(w, common);
  w->add_option("--j", wj);
  w->add_option("--k", wk);
  w->add_option("--symbol", wsym, "evaluate this symbol on the grid instead");
  w->add_option("--grid", grid, "points per axis")->check(CLI::Range(1, 201));
  w->add_option("--radius", radius, "grid half-width");
  w->callback([&] {
    chosen = w;
    run = [&](Report& r) {
      const CalcContext ctx(common.h);
      auto axis = [&](int i) { return grid == 1 ? 0.0 : -radius + 2.0 * radius * i / (grid - 1); };
      if (!wsym.empty()) {
        const auto sym = parse_symbol(wsym);
        r.result = "symbol values on a phase-space grid";
        r.columns = {"x", "xi", "value"};
        std::vector<double> x(sym.d, 0.0), xi(sym.d, 0.0);
        for (int a = 0; a < grid; ++a)
          for (int b = 0; b < grid; ++b) {
            x[0] = axis(a);
            xi[0] = axis(b);
            r.row({x[0], xi[0], eval_ddot(sym, x, xi, ctx)});
          }
        return;
      }
      r.result = "closed Laguerre form against direct quadrature";
      r.columns = {"x", "xi", "re", "im", "quad_re", "quad_im", "abs_diff"};
      const int j = wj, k = wk;
      auto fj = [&](double t) { return Complex(hermite_eval(j, t, ctx)); };
      auto fk = [&](double t) { return Complex(hermite_eval(k, t, ctx)); };
      double worst = 0.0;
      int max_order = 0;
      for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b) {
          const double x = axis(a), xi = axis(b);
          const Complex c = wigner_closed(j, k, x, xi, ctx);
          const auto q = wigner_quadrature(fj, fk, x, xi, ctx);
          const double diff = std::abs(c - q.value);
          worst = std::max(worst, diff);
          max_order = std::max(max_order, q.order);
          r.row({x, xi, c.real(), c.imag(), q.value.real(), q.value.imag(), diff});
        }
      r.quadrature["max_order_used"] = max_order;
      r.values["max_abs_diff"] = worst;
      if (worst > 1e-8) r.violate("closed_vs_quadrature", worst, 1e-8);
    };
  });

  // opmatrix / spectrum
  MatrixOpts mo, so;
  auto* om = app.add_subcommand("opmatrix", "truncated operator matrix I_{alpha,beta}");
  add_common(om, common);
  add_matrix_opts(om, mo);
  om->callback([&] {
    chosen = om;
    run = [&](Report& r) {
      r.result = "Weyl operator matrix in the Hermite basis";
      const auto M = build_matrix(mo, CalcContext(common.h), r);
      r.columns = {"row", "col", "alpha", "beta", "re", "im"};
      const int dims = M.truncation.dims();
      for (std::size_t i = 0; i < M.truncation.size(); ++i)
        for (std::size_t k = 0; k < M.truncation.size(); ++k) {
          const Complex v = M.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
          r.row({static_cast<long long>(i), static_cast<long long>(k), index_text(M.truncation[i], dims),
                 index_text(M.truncation[k], dims), v.real(), v.imag()});
        }
    };
  });
  auto* sp = app.add_subcommand("spectrum", "eigenvalues of the truncated operator matrix");
  add_common(sp, common);
  add_matrix_opts(sp, so);
  sp->callback([&] {
    chosen = sp;
    run = [&](Report& r) {
      r.result = "spectrum of the truncated Weyl operator";
      const auto M = build_matrix(so, CalcContext(common.h), r);
      const auto ev = eig_hermitian(M.entries);
      r.columns = {"index", "eigenvalue"};
      for (std::size_t i = 0; i < ev.size(); ++i) r.row({static_cast<long long>(i), ev[i]});
      r.values["min"] = ev.front();
      r.values["max"] = ev.back();
    };
  });

  // nonpos
  double nu = 2.0, anorm = 1.0;
  auto* np = app.add_subcommand("nonpos", "non-positivity witness for a Gaussian symbol");
  add_common(np, common);
  np->add_option("--nu", nu);
  np->add_option("--anorm", anorm);
  np->callback([&] {
    chosen = np;
    run = [&](Report& r) {
      r.result = "Weyl form of a positive Gaussian symbol can be negative";
      const auto v = nonpos_witness(nu, anorm, CalcContext(common.h));
      r.values["closed"] = v.closed_form;
      r.values["quad"] = v.quadrature;
      r.values["abs_diff"] = std::abs(v.closed_form - v.quadrature);
      r.values["h_nu_anorm2"] = common.h * nu * anorm * anorm;
      r.values["negative"] = v.closed_form < 0.0;
      if (std::abs(v.closed_form - v.quadrature) > 1e-8) {
        r.violate("closed_vs_quadrature", std::abs(v.closed_form - v.quadrature), 1e-8);
      }
    };
  });

  // radial
  MatrixOpts ro;
  ro.N = 6;
  auto* ra = app.add_subcommand("radial", "lower bound for radial and tensor-radial symbols");
  add_common(ra, common);
  add_matrix_opts(ra, ro);
  ra->callback([&] {
    chosen = ra;
    run = [&](Report& r) {
      r.result = "radial lower bound (1/h) int Phi e^{-t/h}";
      const CalcContext ctx(common.h);
      const auto sym = parse_symbol(ro.symbol);
      const auto c = radial_positivity_check(sym, truncation_for(sym, ro.d, ro.N), ctx);
      r.values["bound"] = c.bound;
      r.values["min_eig"] = c.min_eig;
      r.values["ground_state"] = c.ground_state;
      r.values["max_offdiag"] = c.max_offdiag;
      r.values["phi_increasing"] = c.increasing;
      r.values["bound_holds"] = c.ok;
      if (c.increasing && !c.ok) r.violate("min_eig_above_bound", c.min_eig, c.bound);
      if (!c.increasing) r.values["note"] = "Phi is not nondecreasing; the bound is not guaranteed";
    };
  });

  // garding
  MatrixOpts go;
  go.N = 4;
  std::string eps_text = "j^-2";
  double class_M = 1.0;
  auto* ga = app.add_subcommand("garding", "Garding lower bound, optionally against a measured spectrum");
  add_common(ga, common);
  ga->add_option("--symbol", go.symbol, "symbol to measure (uses eps_j = j^-2 and its class norm)");
  ga->add_option("--N", go.N);
  ga->add_option("--d", go.d);
  ga->add_option("--eps", eps_text, "zero, j^-P, B^-j or list:e1,e2,... (bound only)");
  ga->add_option("--M", class_M, "class norm (bound only)");
  ga->callback([&] {
    chosen = ga;
    run = [&](Report& r) {
      r.result = "Garding inequality -M sum(lambda) prod(1 + lambda)";
      const CalcContext ctx(common.h);
      GardingReport g;
      if (!go.symbol.empty()) {
        const auto sym = parse_symbol(go.symbol);
        g = garding_verify(sym, truncation_for(sym, go.d, go.N), ctx);
      } else {
        g = garding_bound(EpsilonSpec::parse(eps_text), common.h, class_M);
      }
      r.values["epsilon"] = g.epsilon;
      r.values["S"] = g.S;
      r.values["terms"] = g.terms;
      r.values["sum_lambda"] = g.sum_lambda;
      r.values["prod_one_plus_lambda"] = g.prod_one_plus;
      r.values["M"] = g.M;
      r.values["bound"] = g.bound;
      if (!g.class_method.empty()) r.values["class_method"] = g.class_method;
      if (g.measured_min_eig) {
        r.values["measured_min_eig"] = *g.measured_min_eig;
        r.values["margin"] = *g.margin;
        if (*g.margin < -1e-9) r.violate("margin", *g.margin, -1e-9);
      }
      r.columns = {"j", "lambda"};
      for (std::size_t i = 0; i < g.lambda.size(); ++i) r.row({static_cast<long long>(i + 1), g.lambda[i]});
    };
  });

  // flandrin
  std::string side = "inf";
  int fN = 128;
  double ftol = 1e-9;
  auto* fl = app.add_subcommand("flandrin", "top eigenvalue of the Wigner mass on [0,a)^2");
  add_common(fl, common);
  fl->add_option("--a", side, "side length or inf");
  fl->add_option("--N", fN, "Hermite cutoff")->check(CLI::Range(1, 128));
  fl->add_option("--tolerance", ftol, "panel-halving tolerance");
  fl->callback([&] {
    chosen = fl;
    run = [&](Report& r) {
      r.result = "Wigner mass on a quarter plane or square can exceed the norm";
      const CalcContext ctx(common.h);
      const double a = parse_side(side);
      FlandrinQuad q;
      q.tolerance = ftol;
      const auto rep = flandrin_search(a, ctx, fN, q);
      r.quadrature["x_panel"] = rep.quad.x_panel;
      r.quadrature["z_panel"] = rep.quad.z_panel;
      r.quadrature["x_nodes"] = rep.quad.x_nodes;
      r.quadrature["z_nodes"] = rep.quad.z_nodes;
      r.quadrature["last_change"] = rep.quad.change;
      r.quadrature["infinite_kernel"] = rep.quad.infinite_kernel;
      r.values["top_eigenvalue"] = rep.top_eigenvalue;
      r.values["excess"] = rep.excess;
      r.values["exceeds_norm"] = rep.excess > 0.0;
      HermiteExpansion g(1, common.h);
      g.add(MultiIndex(), 1.0);
      const auto red = flandrin_reduction_check(a, ctx, g);
      r.values["ground_state_lhs"] = red.lhs.real();
      r.values["ground_state_rhs"] = red.rhs.real();
      r.values["reduction_residual"] = red.residual;
      if (red.residual > 1e-8) r.violate("reduction_residual", red.residual, 1e-8);
      r.columns = {"N", "top_eigenvalue", "excess"};
      for (const auto& row : rep.table) r.row({static_cast<long long>(row.N), row.top, row.top - 1.0});
    };
  });

  // stochext
  std::string dir = "geom:2", phi_name;
  int n_max = 8, phi_d = 1;
  double p = 2.0, s = 1.0, theta = 0.5;
  std::size_t samples = 100000;
  auto* st = app.add_subcommand("stochext", "cylindrical approximation errors by Monte Carlo");
  add_common(st, common);
  st->add_option("--dir", dir, "direction a: geom:B, pow:P or list:...");
  st->add_option("--n-max", n_max)->check(CLI::Range(0, 4096));
  st->add_option("--p", p);
  st->add_option("--s", s);
  st->add_option("--samples", samples);
  st->add_option("--phi", phi_name, "cylinder function (cos, bump, polygauss): switch to the extension check");
  st->add_option("--phi-d", phi_d);
  st->add_option("--theta", theta, "Givens angle of the approximating spaces");
  st->callback([&] {
    chosen = st;
    run = [&](Report& r) {
      if (!phi_name.empty()) {
        r.result = "stochastic extension of a cylinder function along rotated spaces";
        const auto phi = builtin_phi(phi_name, phi_d);
        std::vector<Frame> frames;
        for (int n = 1; n <= std::max(1, n_max); ++n) frames.push_back(givens_frame(n, theta));
        const auto rows = cylinder_extension_check(phi, frames, p, s, samples, common.seed);
        r.columns = {"n", "mc_estimate", "std_error", "lambda_max"};
        for (const auto& row : rows) {
          r.row({static_cast<long long>(row.n), row.estimate, row.std_error, row.lambda_max});
          if (row.lambda_max > s + 1e-10) r.violate("lambda_max_le_s", row.lambda_max, s, "n=" + std::to_string(row.n));
        }
        return;
      }
      r.result = "L^p distance of ell_a to its coordinate projections";
      const auto a = DirectionVector::parse(dir);
      r.values["direction"] = a.label();
      r.values["C_ps"] = ell_constant(p, s);
      r.columns = {"n", "exact", "mc_estimate", "std_error", "within_3se"};
      int inside = 0;
      for (int n = 0; n <= n_max; ++n) {
        const double ex = exact_conv_rate(a, n, p, s);
        const auto mc = mc_conv_rate(a, n, p, s, samples, common.seed);
        const bool ok = std::abs(mc.estimate - ex) <= 3.0 * mc.std_error;
        inside += ok;
        r.row({static_cast<long long>(n), ex, mc.estimate, mc.std_error, std::string(ok ? "yes" : "no")});
        if (!ok) r.violate("mc_within_3se", std::abs(mc.estimate - ex), 3.0 * mc.std_error, "n=" + std::to_string(n));
      }
      r.values["within_3se"] = inside;
      r.values["rows"] = n_max + 1;
    };
  });

  // heatcheck
  std::string hsym, lambda_text = "1";
  int hgrid = 4;
  double hradius = 2.0;
  auto* hc = app.add_subcommand("heatcheck", "T/S decomposition of a symbol over heat operators");
  add_common(hc, common);
  hc->add_option("--symbol", hsym)->required();
  hc->add_option("--lambda", lambda_text, "pair set, e.g. 1,2");
  hc->add_option("--grid", hgrid, "points per phase-space axis")->check(CLI::Range(1, 64));
  hc->add_option("--radius", hradius);
  hc->callback([&] {
    chosen = hc;
    run = [&](Report& r) {
      r.result = "sum over J of T_J reproduces the symbol";
      const CalcContext ctx(common.h);
      const auto sym = parse_symbol(hsym);
      const auto Lambda = parse_pairs(lambda_text);
      const auto grid_pts = phase_grid(sym.d, hgrid, hradius);
      const double res = decomposition_residual(sym, Lambda, ctx, grid_pts);
      r.values["grid_points"] = grid_pts.size();
      r.values["residual"] = res;
      if (res > 1e-10) r.violate("decomposition_residual", res, 1e-10);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  Report report;
  report.command = chosen->get_name();
  echo_config(chosen, report);
  try {
    if (!(common.h > 0.0) || !std::isfinite(common.h)) throw DomainError("--h must be positive");
    run(report);
  } catch (const gaussweyl::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ContractViolation& e) {
    report.violate("contract", NAN, NAN, e.what());
  } catch (const gaussweyl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  std::ofstream file;
  if (!common.out.empty()) {
    file.open(common.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << common.out << '\n';
      return 1;
    }
  }
  std::ostream& out = common.out.empty() ? std::cout : file;
  if (common.format == "csv") {
    cli::write_csv(report, out);
  } else {
    cli::write_json(report, out);
  }
  return report.ok() ? 0 : 2;
}
