#include "gaussweyl/symbols.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "gaussweyl/error.hpp"

namespace gaussweyl {

PhiSpec PhiSpec::one() { return PhiSpec{}; }

PhiSpec PhiSpec::exp(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("nu must be positive and finite");
  PhiSpec p;
  p.kind = Kind::exp;
  p.nu = nu;
  return p;
}

PhiSpec PhiSpec::polyexp(std::vector<double> coeffs) {
  if (coeffs.empty()) throw DomainError("polyexp needs at least one coefficient");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw DomainError("polyexp coefficients must be finite");
  }
  PhiSpec p;
  p.kind = Kind::polyexp;
  p.coeffs = std::move(coeffs);
  return p;
}

PhiSpec PhiSpec::custom(std::function<double(double)> fn, std::function<double(double)> dfn,
                        std::string label) {
  if (!fn) throw DomainError("custom profile needs an evaluator");
  PhiSpec p;
  p.kind = Kind::custom;
  p.fn = std::move(fn);
  p.dfn = std::move(dfn);
  p.label = std::move(label);
  return p;
}

double PhiSpec::operator()(double t) const {
  switch (kind) {
    case Kind::one:
      return 1.0;
    case Kind::exp:
      return std::exp(-nu * t);
    case Kind::polyexp: {
      double s = 0.0;
      for (std::size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * std::exp(-static_cast<double>(k) * t);
      return s;
    }
    case Kind::custom:
      return fn(t);
  }
  return 0.0;
}

double PhiSpec::derivative(double t) const {
  switch (kind) {
    case Kind::one:
      return 0.0;
    case Kind::exp:
      return -nu * std::exp(-nu * t);
    case Kind::polyexp: {
      double s = 0.0;
      for (std::size_t k = 1; k < coeffs.size(); ++k) {
        s -= static_cast<double>(k) * coeffs[k] * std::exp(-static_cast<double>(k) * t);
      }
      return s;
    }
    case Kind::custom:
      if (!dfn) throw DomainError("custom profile has no derivative");
      return dfn(t);
  }
  return 0.0;
}

std::optional<std::vector<std::pair<double, double>>> PhiSpec::exp_terms() const {
  switch (kind) {
    case Kind::one:
      return std::vector<std::pair<double, double>>{{1.0, 0.0}};
    case Kind::exp:
      return std::vector<std::pair<double, double>>{{1.0, nu}};
    case Kind::polyexp: {
      std::vector<std::pair<double, double>> out;
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] != 0.0) out.emplace_back(coeffs[k], static_cast<double>(k));
      }
      return out;
    }
    case Kind::custom:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_string(const PhiSpec& phi) {
  switch (phi.kind) {
    case PhiSpec::Kind::one:
      return "one";
    case PhiSpec::Kind::exp:
      return "exp:nu=" + fmt(phi.nu);
    case PhiSpec::Kind::polyexp: {
      std::string s = "polyexp:";
      for (std::size_t k = 0; k < phi.coeffs.size(); ++k) {
        if (k) s += ',';
        s += fmt(phi.coeffs[k]);
      }
      return s;
    }
    case PhiSpec::Kind::custom:
      return "custom:" + phi.label;
  }
  return "";
}

bool operator==(const PhiSpec& a, const PhiSpec& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case PhiSpec::Kind::one:
      return true;
    case PhiSpec::Kind::exp:
      return a.nu == b.nu;
    case PhiSpec::Kind::polyexp:
      return a.coeffs == b.coeffs;
    case PhiSpec::Kind::custom:
      return a.label == b.label;
  }
  return false;
}

std::vector<Monomial> rotation_derivative(const std::vector<Monomial>& poly, int j) {
  if (j < 1) throw DomainError("rotation_derivative: coordinates start at 1");
  std::map<std::pair<std::vector<int>, std::vector<int>>, double> acc;
  for (const auto& m : poly) {
    if (static_cast<std::size_t>(j) > m.px.size()) throw DomainError("rotation_derivative: index beyond d");
    const int p = m.px[j - 1], q = m.pxi[j - 1];
    if (q > 0) {  // x d/dxi
      auto px = m.px, pxi = m.pxi;
      px[j - 1] += 1;
      pxi[j - 1] -= 1;
      acc[{px, pxi}] += m.coeff * q;
    }
    if (p > 0) {  // -xi d/dx
      auto px = m.px, pxi = m.pxi;
      px[j - 1] -= 1;
      pxi[j - 1] += 1;
      acc[{px, pxi}] -= m.coeff * p;
    }
  }
  std::vector<Monomial> out;
  for (const auto& [key, c] : acc) {
    if (c != 0.0) out.push_back({c, key.first, key.second});
  }
  return out;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::constant: return "const";
    case Family::gaussian: return "gaussian";
    case Family::radial: return "radial";
    case Family::tensor_radial: return "tensorradial";
    case Family::box: return "box";
    case Family::gaussian_sum: return "gaussian_sum";
    case Family::polynomial: return "polynomial";
    case Family::custom: return "custom";
  }
  return "?";
}

double SymbolDescriptor::eval(std::span<const double> x, std::span<const double> xi,
                              const CalcContext& ctx) const {
  if (x.size() != static_cast<std::size_t>(d) || xi.size() != static_cast<std::size_t>(d)) {
    throw DomainError("symbol evaluated with dimension " + std::to_string(x.size()) + ", expected " +
                      std::to_string(d));
  }
  switch (family) {
    case Family::constant:
      return c;
    case Family::gaussian:
      return std::exp(-nu * anorm * anorm * (x[0] * x[0] + xi[0] * xi[0]));
    case Family::radial:
    case Family::tensor_radial: {
      double v = 1.0;
      std::size_t off = 0;
      for (const auto& part : parts) {
        double r2 = 0.0;
        for (int i = 0; i < part.dims; ++i, ++off) r2 += x[off] * x[off] + xi[off] * xi[off];
        v *= part.phi(r2);
      }
      return v;
    }
    case Family::box: {
      // x-side [0, a), xi-side [0, 2 pi h a)
      const bool in_x = x[0] >= 0.0 && x[0] < box_a;
      const bool in_xi = xi[0] >= 0.0 && xi[0] < 2.0 * std::numbers::pi * ctx.h * box_a;
      return in_x && in_xi ? 1.0 : 0.0;
    }
    case Family::gaussian_sum: {
      double v = 0.0;
      for (const auto& t : terms) {
        double e = 0.0;
        for (int i = 0; i < d; ++i) e += t.rates[i] * (x[i] * x[i] + xi[i] * xi[i]);
        v += t.coeff * std::exp(-e);
      }
      return v;
    }
    case Family::polynomial: {
      double v = 0.0;
      for (const auto& m : monomials) {
        double t = m.coeff;
        for (int i = 0; i < d; ++i) t *= std::pow(x[i], m.px[i]) * std::pow(xi[i], m.pxi[i]);
        v += t;
      }
      return v;
    }
    case Family::custom:
      return fn(x, xi);
  }
  return 0.0;
}

std::optional<std::vector<GaussianTerm>> SymbolDescriptor::gaussian_terms() const {
  switch (family) {
    case Family::constant:
      return std::vector<GaussianTerm>{{c, std::vector<double>(static_cast<std::size_t>(d), 0.0)}};
    case Family::gaussian:
      return std::vector<GaussianTerm>{{1.0, {nu * anorm * anorm}}};
    case Family::radial:
    case Family::tensor_radial: {
      std::vector<GaussianTerm> acc{{1.0, {}}};
      for (const auto& part : parts) {
        auto pt = part.phi.exp_terms();
        if (!pt) return std::nullopt;
        std::vector<GaussianTerm> next;
        for (const auto& base : acc) {
          for (const auto& [coef, rate] : *pt) {
            GaussianTerm t = base;
            t.coeff *= coef;
            t.rates.insert(t.rates.end(), static_cast<std::size_t>(part.dims), rate);
            next.push_back(std::move(t));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    case Family::gaussian_sum:
      return terms;
    default:
      return std::nullopt;
  }
}

bool SymbolDescriptor::rotation_invariant(int j) const {
  if (j < 1 || j > d) return true;  // Fdd does not depend on the pair
  switch (family) {
    case Family::constant:
    case Family::gaussian:
    case Family::radial:
    case Family::tensor_radial:
    case Family::gaussian_sum:
      return true;
    case Family::polynomial:
      return rotation_derivative(monomials, j).empty();
    case Family::box:
    case Family::custom:
      return false;
  }
  return false;
}

bool SymbolDescriptor::printable() const {
  switch (family) {
    case Family::constant:
    case Family::gaussian:
    case Family::box:
      return true;
    case Family::radial:
    case Family::tensor_radial:
      return std::none_of(parts.begin(), parts.end(),
                          [](const RadialPart& p) { return p.phi.kind == PhiSpec::Kind::custom; });
    default:
      return false;
  }
}

bool operator==(const SymbolDescriptor& a, const SymbolDescriptor& b) {
  if (a.family != b.family || a.d != b.d) return false;
  switch (a.family) {
    case Family::constant:
      return a.c == b.c;
    case Family::gaussian:
      return a.nu == b.nu && a.anorm == b.anorm;
    case Family::radial:
    case Family::tensor_radial:
      if (a.parts.size() != b.parts.size()) return false;
      for (std::size_t i = 0; i < a.parts.size(); ++i) {
        if (!(a.parts[i].phi == b.parts[i].phi) || a.parts[i].dims != b.parts[i].dims) return false;
      }
      return true;
    case Family::box:
      return a.box_a == b.box_a;
    case Family::gaussian_sum:
      if (a.terms.size() != b.terms.size()) return false;
      for (std::size_t i = 0; i < a.terms.size(); ++i) {
        if (a.terms[i].coeff != b.terms[i].coeff || a.terms[i].rates != b.terms[i].rates) return false;
      }
      return true;
    case Family::polynomial:
      if (a.monomials.size() != b.monomials.size()) return false;
      for (std::size_t i = 0; i < a.monomials.size(); ++i) {
        const auto &p = a.monomials[i], &q = b.monomials[i];
        if (p.coeff != q.coeff || p.px != q.px || p.pxi != q.pxi) return false;
      }
      return true;
    case Family::custom:
      return a.label == b.label;
  }
  return false;
}

SymbolDescriptor make_constant(double c) {
  if (!std::isfinite(c)) throw DomainError("constant c must be finite");
  SymbolDescriptor s;
  s.family = Family::constant;
  s.c = c;
  return s;
}

SymbolDescriptor make_gaussian(double nu, double anorm) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("nu must be positive and finite");
  if (!(anorm > 0.0) || !std::isfinite(anorm)) throw DomainError("anorm must be positive and finite");
  SymbolDescriptor s;
  s.family = Family::gaussian;
  s.nu = nu;
  s.anorm = anorm;
  return s;
}

SymbolDescriptor make_radial(PhiSpec phi, int d) {
  if (d < 1) throw DomainError("d must be >= 1");
  SymbolDescriptor s;
  s.family = Family::radial;
  s.d = d;
  s.parts.push_back({std::move(phi), d});
  return s;
}

SymbolDescriptor make_tensor_radial(std::vector<RadialPart> parts) {
  if (parts.empty()) throw DomainError("tensorradial needs at least one part");
  SymbolDescriptor s;
  s.family = Family::tensor_radial;
  s.d = 0;
  for (const auto& p : parts) {
    if (p.dims < 1) throw DomainError("d must be >= 1 in every tensorradial part");
    s.d += p.dims;
  }
  s.parts = std::move(parts);
  return s;
}

SymbolDescriptor make_box(double a) {
  if (!(a > 0.0) || std::isnan(a)) throw DomainError("box side a must be positive");
  SymbolDescriptor s;
  s.family = Family::box;
  s.box_a = a;
  s.smooth = false;
  return s;
}

SymbolDescriptor make_gaussian_sum(int d, std::vector<GaussianTerm> terms) {
  if (d < 1) throw DomainError("d must be >= 1");
  for (const auto& t : terms) {
    if (t.rates.size() != static_cast<std::size_t>(d)) throw DomainError("gaussian_sum: rate vector length != d");
    for (double r : t.rates) {
      if (!(r >= 0.0)) throw DomainError("gaussian_sum: rates must be nonnegative");
    }
  }
  SymbolDescriptor s;
  s.family = Family::gaussian_sum;
  s.d = d;
  s.terms = std::move(terms);
  return s;
}

SymbolDescriptor make_polynomial(int d, std::vector<Monomial> monomials) {
  if (d < 1) throw DomainError("d must be >= 1");
  bool constant = true;
  for (const auto& m : monomials) {
    if (m.px.size() != static_cast<std::size_t>(d) || m.pxi.size() != static_cast<std::size_t>(d)) {
      throw DomainError("polynomial: exponent vector length != d");
    }
    for (int i = 0; i < d; ++i) {
      if (m.px[i] < 0 || m.pxi[i] < 0) throw DomainError("polynomial: negative exponent");
      if (m.coeff != 0.0 && (m.px[i] > 0 || m.pxi[i] > 0)) constant = false;
    }
  }
  SymbolDescriptor s;
  s.family = Family::polynomial;
  s.d = d;
  s.monomials = std::move(monomials);
  s.bounded = constant;
  return s;
}

SymbolDescriptor make_custom(int d, PhaseSpaceFunction fn, std::string label, bool smooth, bool bounded) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (!fn) throw DomainError("custom symbol needs an evaluator");
  SymbolDescriptor s;
  s.family = Family::custom;
  s.d = d;
  s.fn = std::move(fn);
  s.label = std::move(label);
  s.smooth = smooth;
  s.bounded = bounded;
  return s;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  std::size_t column() const { return pos_ + 1; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, column()); }

  bool accept(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view lit) {
    if (!accept(lit)) fail("expected '" + std::string(lit) + "'");
  }

  bool number_ahead() const {
    const char c = peek();
    return (c >= '0' && c <= '9') || c == '-' || c == '.';
  }

  double number(bool allow_inf = false) {
    if (allow_inf && accept("inf")) return std::numeric_limits<double>::infinity();
    if (!number_ahead()) fail("expected a number");
    double v = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || !std::isfinite(v)) fail("expected a number");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    return v;
  }

  int integer() {
    const std::size_t start = pos_;
    int v = 0;
    const char* begin = text_.data() + pos_;
    auto res = std::from_chars(begin, text_.data() + text_.size(), v);
    if (res.ec != std::errc()) fail("expected an integer");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    if (peek() == '.' || peek() == 'e' || peek() == 'E') {
      pos_ = start;
      fail("expected an integer");
    }
    return v;
  }

  PhiSpec phispec() {
    if (accept("one")) return PhiSpec::one();
    if (accept("exp:nu=")) {
      const double nu = number();
      return PhiSpec::exp(nu);
    }
    if (accept("polyexp:")) {
      std::vector<double> c{number()};
      while (peek() == ',') {
        ++pos_;
        if (!number_ahead()) {
          --pos_;
          break;
        }
        c.push_back(number());
      }
      return PhiSpec::polyexp(std::move(c));
    }
    fail("expected a profile: one, exp:nu=<r> or polyexp:<c0>,<c1>,...");
  }

  SymbolDescriptor symbol() {
    if (accept("const:c=")) return make_constant(number());
    if (accept("gaussian:nu=")) {
      const double nu = number();
      expect(",anorm=");
      const double anorm = number();
      return make_gaussian(nu, anorm);
    }
    if (accept("radial:phi=")) {
      PhiSpec phi = phispec();
      expect(",d=");
      const int d = integer();
      return make_radial(std::move(phi), d);
    }
    if (accept("tensorradial:")) {
      std::vector<RadialPart> parts;
      do {
        expect("(");
        PhiSpec phi = phispec();
        int dims = 0;
        if (phi.kind == PhiSpec::Kind::polyexp && peek() == ')') {
          // The trailing list element is the block dimension.
          if (phi.coeffs.size() < 2) fail("expected ',<n>' after the profile");
          const double last = phi.coeffs.back();
          if (last != std::floor(last)) fail("block dimension must be an integer");
          dims = static_cast<int>(last);
          phi.coeffs.pop_back();
        } else {
          expect(",");
          dims = integer();
        }
        expect(")");
        parts.push_back({std::move(phi), dims});
      } while (accept(";"));
      return make_tensor_radial(std::move(parts));
    }
    if (accept("box:a=")) return make_box(number(true));
    fail("unknown symbol family (expected const, gaussian, radial, tensorradial or box)");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SymbolDescriptor parse_symbol(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  Parser p(text);
  SymbolDescriptor s = p.symbol();
  if (!p.at_end()) p.fail("unexpected trailing text");
  return s;
}

std::string print_symbol(const SymbolDescriptor& sym) {
  if (!sym.printable()) {
    throw DomainError("symbol family '" + std::string(family_name(sym.family)) + "' has no text form");
  }
  switch (sym.family) {
    case Family::constant:
      return "const:c=" + fmt(sym.c);
    case Family::gaussian:
      return "gaussian:nu=" + fmt(sym.nu) + ",anorm=" + fmt(sym.anorm);
    case Family::radial:
      return "radial:phi=" + to_string(sym.parts[0].phi) + ",d=" + std::to_string(sym.parts[0].dims);
    case Family::tensor_radial: {
      std::string s = "tensorradial:";
      for (std::size_t i = 0; i < sym.parts.size(); ++i) {
        if (i) s += ';';
        s += '(' + to_string(sym.parts[i].phi) + ',' + std::to_string(sym.parts[i].dims) + ')';
      }
      return s;
    }
    case Family::box:
      return "box:a=" + fmt(sym.box_a);
    default:
      break;
  }
  return "";
}

double eval_ddot(const SymbolDescriptor& sym, std::span<const double> x, std::span<const double> xi,
                 const CalcContext& ctx) {
  return sym.eval(x, xi, ctx);
}

double eval_tilde(const SymbolDescriptor& sym, const WienerSample& z, const WienerSample& zeta,
                  const CalcContext& ctx) {
  const auto d = static_cast<std::size_t>(sym.d);
  if (z.coords.size() < d || zeta.coords.size() < d) {
    throw DomainError("sample carries fewer coordinates than the symbol's base dimension");
  }
  return sym.eval(std::span<const double>(z.coords.data(), d), std::span<const double>(zeta.coords.data(), d), ctx);
}

namespace {

// sup_y |H_a(y) e^{-y^2}| (physicists' H_a). The maximum sits at a critical
// point, i.e. at a zero of H_{a+1}.
double hermite_gauss_sup(int a) {
  const auto zeros = gh_rule(a + 1, 0.5).nodes;
  double best = 0.0;
  for (double y : zeros) {
    double h0 = 1.0, h1 = 2.0 * y;
    double ha = a == 0 ? h0 : h1;
    for (int n = 1; n < a; ++n) {
      const double h2 = 2.0 * y * h1 - 2.0 * n * h0;
      h0 = h1;
      h1 = h2;
      ha = h1;
    }
    best = std::max(best, std::abs(ha) * std::exp(-y * y));
  }
  return best;
}

// sup_x |d^a/dx^a e^{-c x^2}| = c^{a/2} sup_y |H_a(y) e^{-y^2}|.
double gauss_derivative_sup(double c, int a) {
  if (a == 0) return 1.0;
  if (c == 0.0) return 0.0;
  return std::pow(c, a / 2.0) * hermite_gauss_sup(a);
}

SymbolClassParams base_params(int m) {
  SymbolClassParams p;
  p.epsilon = [](int j) { return 1.0 / (static_cast<double>(j) * j); };
  p.epsilon_label = "j^-2";
  p.m = m;
  p.summable = true;
  p.square_summable = true;
  return p;
}

// Enumerates all (a_1..a_d, b_1..b_d) in {0..m}^{2d}.
template <class F>
void for_each_order(int d, int m, F&& f) {
  const double count = std::pow(m + 1.0, 2.0 * d);
  if (count > 1.0e6) throw BudgetError("class norm: too many derivative orders ((m+1)^{2d} > 1e6)");
  std::vector<int> ord(static_cast<std::size_t>(2 * d), 0);
  for (;;) {
    f(ord);
    int pos = 2 * d - 1;
    while (pos >= 0 && ord[pos] == m) ord[pos--] = 0;
    if (pos < 0) break;
    ++ord[pos];
  }
}

double order_weight(const std::vector<int>& ord, int d) {
  double w = 1.0;
  for (int j = 1; j <= d; ++j) w *= std::pow(static_cast<double>(j), 2.0 * (ord[j - 1] + ord[d + j - 1]));
  return w;
}

}  // namespace

SymbolClassParams cv_class_params(const SymbolDescriptor& sym, int m) {
  if (m < 0) throw DomainError("differentiation depth m must be >= 0");
  if (!sym.smooth) {
    throw DomainError("symbol '" + std::string(family_name(sym.family)) +
                      "' is not in any S_m class: it is not even continuous");
  }
  if (!sym.bounded) throw DomainError("symbol is unbounded; no S_m class norm");
  SymbolClassParams p = base_params(m);
  if (sym.family == Family::constant) {
    p.M = std::abs(sym.c);
    p.method = "analytic";
    return p;
  }
  if (auto terms = sym.gaussian_terms()) {
    const int d = sym.d;
    // Cache per (rate, order) sups.
    std::vector<double> sup_table(static_cast<std::size_t>(m) + 1);
    for (int a = 0; a <= m; ++a) sup_table[a] = gauss_derivative_sup(1.0, a);
    double best = 0.0;
    for_each_order(d, m, [&](const std::vector<int>& ord) {
      double total = 0.0;
      for (const auto& t : *terms) {
        double v = std::abs(t.coeff);
        for (int j = 0; j < d && v != 0.0; ++j) {
          const double r = t.rates[j];
          for (int a : {ord[j], ord[d + j]}) {
            v *= a == 0 ? 1.0 : (r == 0.0 ? 0.0 : std::pow(r, a / 2.0) * sup_table[a]);
          }
        }
        total += v;
      }
      best = std::max(best, total * order_weight(ord, d));
    });
    p.M = best;
    p.method = terms->size() == 1 ? "analytic" : "analytic-bound";
    return p;
  }
  if (sym.d > 2) throw BudgetError("numeric class norm supports d <= 2");
  p.M = numeric_class_norm(sym, m);
  p.method = "numeric";
  return p;
}

double numeric_class_norm(const SymbolDescriptor& sym, int m, double radius, int grid) {
  const int d = sym.d;
  if (d > 2) throw BudgetError("numeric class norm supports d <= 2");
  if (grid < 2) throw DomainError("grid needs at least two points per axis");
  if (sym.family == Family::box) throw DomainError("box symbol has no derivatives");
  const CalcContext ctx(1.0);
  const int nv = 2 * d;
  const double step = 0.05;

  std::vector<double> axis(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) axis[i] = -radius + 2.0 * radius * i / (grid - 1);

  auto eval = [&](const std::vector<double>& y) {
    return sym.eval(std::span<const double>(y.data(), static_cast<std::size_t>(d)),
                    std::span<const double>(y.data() + d, static_cast<std::size_t>(d)), ctx);
  };

  // Tensor central difference: sum_k (-1)^k C(o,k) f(y + (o/2 - k) step) / step^o per variable.
  auto derivative = [&](const std::vector<double>& y, const std::vector<int>& ord) {
    std::vector<int> k(static_cast<std::size_t>(nv), 0);
    double total = 0.0;
    for (;;) {
      std::vector<double> z = y;
      double w = 1.0;
      for (int v = 0; v < nv; ++v) {
        const int o = ord[v];
        z[v] += (o / 2.0 - k[v]) * step;
        double binom = 1.0;
        for (int i = 1; i <= k[v]; ++i) binom = binom * (o - i + 1) / i;
        w *= (k[v] % 2 ? -binom : binom) / std::pow(step, o);
      }
      total += w * eval(z);
      int pos = nv - 1;
      while (pos >= 0 && k[pos] == ord[pos]) k[pos--] = 0;
      if (pos < 0) break;
      ++k[pos];
    }
    return total;
  };

  double best = 0.0;
  for_each_order(d, m, [&](const std::vector<int>& ord) {
    const double weight = order_weight(ord, d);
    std::vector<int> idx(static_cast<std::size_t>(nv), 0);
    std::vector<double> y(static_cast<std::size_t>(nv));
    for (;;) {
      for (int v = 0; v < nv; ++v) y[v] = axis[idx[v]];
      best = std::max(best, weight * std::abs(derivative(y, ord)));
      int pos = nv - 1;
      while (pos >= 0 && idx[pos] == grid - 1) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
  });
  return 1.2 * best;
}

std::vector<double> epsilon_from_quadratic_form(const std::vector<std::pair<double, double>>& diag) {
  std::vector<double> eps;
  eps.reserve(diag.size());
  for (std::size_t j = 0; j < diag.size(); ++j) {
    const auto [qx, qxi] = diag[j];
    if (qx < 0.0 || qxi < 0.0) {
      throw DomainError("quadratic form diagonal entry " + std::to_string(j + 1) + " is negative");
    }
    eps.push_back(std::max(std::sqrt(qx), std::sqrt(qxi)));
  }
  return eps;
}

}  // namespace gaussweyl
