#include "gaussweyl/stochproj.hpp"

#include <Eigen/Eigenvalues>
#include <charconv>
#include <cmath>
#include <random>

#include "gaussweyl/error.hpp"
#include "gaussweyl/gaussian.hpp"

namespace gaussweyl {

DirectionVector DirectionVector::geometric(double base) {
  if (!(base > 1.0) || !std::isfinite(base)) throw DomainError("a_j = b^{-j/2} needs b > 1");
  DirectionVector a;
  a.kind = Kind::geometric;
  a.p = base;
  return a;
}

DirectionVector DirectionVector::power(double p) {
  if (!(p > 0.5) || !std::isfinite(p)) throw DomainError("a_j = j^{-p} is square summable only for p > 1/2");
  DirectionVector a;
  a.kind = Kind::power;
  a.p = p;
  return a;
}

DirectionVector DirectionVector::finite(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("direction entries must be finite");
  }
  DirectionVector a;
  a.kind = Kind::finite;
  a.values = std::move(values);
  return a;
}

namespace {

double parse_number(std::string_view s, const std::string& whole) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad number in direction '" + whole + "'", 1);
  }
  return v;
}

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

DirectionVector DirectionVector::parse(const std::string& text) {
  const std::string_view t(text);
  if (t.starts_with("geom:")) return geometric(parse_number(t.substr(5), text));
  if (t.starts_with("pow:")) return power(parse_number(t.substr(4), text));
  if (t.starts_with("list:")) {
    std::vector<double> v;
    std::string_view rest = t.substr(5);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      v.push_back(parse_number(rest.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return finite(std::move(v));
  }
  throw ParseError("unknown direction '" + text + "' (geom:B, pow:P, list:...)", 1);
}

double DirectionVector::operator()(int j) const {
  if (j < 1) throw DomainError("direction index starts at 1");
  switch (kind) {
    case Kind::geometric:
      return std::pow(p, -0.5 * j);
    case Kind::power:
      return std::pow(static_cast<double>(j), -p);
    case Kind::finite:
      return j <= static_cast<int>(values.size()) ? values[j - 1] : 0.0;
  }
  return 0.0;
}

double DirectionVector::tail2(int n) const {
  if (n < 0) throw DomainError("tail index must be >= 0");
  switch (kind) {
    case Kind::geometric:
      return std::pow(p, -static_cast<double>(n)) / (p - 1.0);
    case Kind::power: {
      // explicit terms, then Euler-Maclaurin for sum_{j > m} j^{-q}
      const double q = 2.0 * p;
      const int m = n + 1000;
      long double s = 0.0L;
      for (int j = m; j > n; --j) s += std::pow(static_cast<long double>(j), -q);
      const double x = m;
      const double em = std::pow(x, 1.0 - q) / (q - 1.0) - 0.5 * std::pow(x, -q) + q * std::pow(x, -q - 1.0) / 12.0 -
                        q * (q + 1.0) * (q + 2.0) * std::pow(x, -q - 3.0) / 720.0;
      return static_cast<double>(s) + em;
    }
    case Kind::finite: {
      double s = 0.0;
      for (std::size_t j = static_cast<std::size_t>(n); j < values.size(); ++j) s += values[j] * values[j];
      return s;
    }
  }
  return 0.0;
}

double DirectionVector::norm2() const { return tail2(0); }

double DirectionVector::tail_norm(int n) const { return std::sqrt(tail2(n)); }

std::string DirectionVector::label() const {
  switch (kind) {
    case Kind::geometric:
      return "geom:" + num(p);
    case Kind::power:
      return "pow:" + num(p);
    case Kind::finite: {
      std::string s = "list:";
      for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + num(values[i]);
      return s;
    }
  }
  return "";
}

double exact_conv_rate(const DirectionVector& a, int n, double p, double s) {
  if (n < 0) throw DomainError("n must be >= 0");
  return ell_constant(p, s) * a.tail_norm(n);
}

namespace {

// L^p norm estimate from samples of a random variable, with a delta-method error.
std::pair<double, double> lp_estimate(const std::vector<double>& x, double p) {
  const std::size_t N = x.size();
  long double m = 0.0L, m2 = 0.0L;
  for (double v : x) {
    const long double a = std::pow(std::abs(static_cast<long double>(v)), static_cast<long double>(p));
    m += a;
    m2 += a * a;
  }
  m /= N;
  m2 /= N;
  if (m == 0.0L) return {0.0, 0.0};
  const double var = std::max(0.0, static_cast<double>(m2 - m * m)) * N / (N - 1.0);
  const double se_m = std::sqrt(var / N);
  const double est = std::pow(static_cast<double>(m), 1.0 / p);
  return {est, est / (p * static_cast<double>(m)) * se_m};
}

void check_lp(double p, double s, std::size_t samples) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must be in [1, inf)");
  if (!(s > 0.0)) throw DomainError("variance s must be positive");
  if (samples < 1000) throw DomainError("Monte Carlo needs at least 1000 samples");
}

}  // namespace

McEstimate mc_conv_rate(const DirectionVector& a, int n, double p, double s, std::size_t samples,
                        std::uint64_t seed) {
  if (n < 0) throw DomainError("n must be >= 0");
  check_lp(p, s, samples);
  constexpr int kExplicit = 64;
  McEstimate out;
  out.samples = samples;
  std::vector<double> x(samples, 0.0);
  int last = n + kExplicit;
  if (a.kind == DirectionVector::Kind::finite) last = std::min(last, static_cast<int>(a.values.size()));
  for (int j = n + 1; j <= last; ++j) {
    const double aj = a(j);
    if (aj == 0.0) continue;
    const auto z = draw_coordinate(seed, j, samples, s);
    for (std::size_t i = 0; i < samples; ++i) x[i] += aj * z[i];
  }
  out.explicit_coords = std::max(0, last - n);
  const double rest = last > n ? a.tail2(last) : a.tail2(n);
  if (rest > 0.0) {
    // ell of the unit vector along the remaining tail, carried by coordinate last + 1
    const auto z = draw_coordinate(seed, last + 1, samples, s);
    const double r = std::sqrt(rest);
    for (std::size_t i = 0; i < samples; ++i) x[i] += r * z[i];
  }
  std::tie(out.estimate, out.std_error) = lp_estimate(x, p);
  return out;
}

Frame coordinate_frame(int n) {
  if (n < 1) throw DomainError("frame dimension must be >= 1");
  return Frame::Identity(n, n);
}

Frame givens_frame(int n, double theta) {
  if (n < 1) throw DomainError("frame dimension must be >= 1");
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n + 1, n);
  for (int k = 0; k < n; ++k) {
    V(k, k) = std::cos(theta);
    V(k + 1, k) = std::sin(theta);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(V);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n + 1, n);
}

Frame random_frame(int n, int M, std::uint64_t seed) {
  if (n < 1 || M < n) throw DomainError("random_frame needs 1 <= n <= M");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd G(M, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < M; ++i) G(i, j) = normal(gen);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  return qr.householderQ() * Eigen::MatrixXd::Identity(M, n);
}

namespace {

void check_orthonormal(const Frame& B) {
  const Eigen::MatrixXd G = B.transpose() * B;
  const double err = (G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
  if (!(err <= 1e-10)) throw DomainError("frame is not orthonormal (deviation " + std::to_string(err) + ")");
}

// Rows 0..d-1 of P_{E_n}, padded with zeros where e_i is orthogonal to the ambient space.
Eigen::MatrixXd projected_axes(const Frame& B, int d) {
  const Eigen::MatrixXd P = B * B.transpose();
  const int M = static_cast<int>(P.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, M);
  const int r = std::min(d, M);
  out.topRows(r) = P.topRows(r);
  return out;
}

}  // namespace

CovarianceMatrix covariance_and_bound(const Frame& basis, int d, double s, const std::string& provenance,
                                      std::uint64_t seed) {
  if (d < 1) throw DomainError("target dimension d must be >= 1");
  if (!(s > 0.0)) throw DomainError("variance s must be positive");
  check_orthonormal(basis);
  CovarianceMatrix out;
  out.s = s;
  out.provenance = provenance;
  const Eigen::MatrixXd A = projected_axes(basis, d);  // row i = P e_i
  out.K = s * A * A.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.K, Eigen::EigenvaluesOnly);
  out.eigenvalues = es.eigenvalues();
  out.det = out.eigenvalues.prod();
  out.within_bound = out.eigenvalues.maxCoeff() <= s + 1e-10 && out.eigenvalues.minCoeff() >= -1e-10;
  out.invertible = out.eigenvalues.minCoeff() > 1e-12 * s;
  if (out.invertible) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(out.K);
    out.inverse_ratio = INFINITY;
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd y(d);
      for (int i = 0; i < d; ++i) y(i) = normal(gen);
      out.inverse_ratio = std::min(out.inverse_ratio, s * y.dot(ldlt.solve(y)) / y.squaredNorm());
    }
  }
  return out;
}

CylinderPhi builtin_phi(const std::string& name, int d) {
  if (d < 1) throw DomainError("phi dimension must be >= 1");
  CylinderPhi phi;
  phi.name = name;
  phi.d = d;
  phi.growth_ok = true;
  if (name == "cos") {
    phi.fn = [](std::span<const double> x) { return std::cos(x[0]); };
  } else if (name == "bump") {
    phi.fn = [](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      r2 /= 4.0;
      return r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
    };
  } else if (name == "polygauss") {
    phi.fn = [](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      return (1.0 + x[0] * x[0]) * std::exp(-r2 / 4.0);
    };
  } else {
    throw DomainError("unknown phi '" + name + "' (cos, bump, polygauss)");
  }
  return phi;
}

std::vector<ExtensionRow> cylinder_extension_check(const CylinderPhi& phi, const std::vector<Frame>& frames,
                                                   double p, double s, std::size_t samples,
                                                   std::uint64_t seed) {
  if (!phi.growth_ok) throw DomainError("growth condition for phi was not asserted");
  if (!phi.fn) throw DomainError("phi has no evaluator");
  check_lp(p, s, samples);
  const int d = phi.d;
  int M = d;
  for (const auto& B : frames) {
    check_orthonormal(B);
    M = std::max(M, static_cast<int>(B.rows()));
  }
  Eigen::MatrixXd Z(M, static_cast<Eigen::Index>(samples));
  for (int j = 1; j <= M; ++j) {
    const auto col = draw_coordinate(seed, j, samples, s);
    Z.row(j - 1) = Eigen::Map<const Eigen::RowVectorXd>(col.data(), static_cast<Eigen::Index>(samples));
  }
  std::vector<double> base(samples);
  for (std::size_t i = 0; i < samples; ++i) base[i] = phi.fn({Z.col(static_cast<Eigen::Index>(i)).data(), static_cast<std::size_t>(d)});

  std::vector<ExtensionRow> rows;
  for (const auto& B : frames) {
    const Eigen::MatrixXd A = projected_axes(B, d);
    const Eigen::MatrixXd Y = A * Z.topRows(B.rows());
    std::vector<double> diff(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      diff[i] = phi.fn({Y.col(static_cast<Eigen::Index>(i)).data(), static_cast<std::size_t>(d)}) - base[i];
    }
    ExtensionRow row;
    row.n = static_cast<int>(B.cols());
    std::tie(row.estimate, row.std_error) = lp_estimate(diff, p);
    row.lambda_max = covariance_and_bound(B, d, s).eigenvalues.maxCoeff();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gaussweyl
