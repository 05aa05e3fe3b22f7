#include "gaussweyl/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gaussweyl/error.hpp"

namespace gaussweyl {

CalcContext::CalcContext(double h_) : h(h_) {
  if (!(h_ > 0.0) || !std::isfinite(h_)) {
    throw DomainError("semiclassical parameter h must be positive and finite");
  }
}

namespace {

void check_degree(int j) {
  if (j < 0) throw DomainError("Hermite degree must be nonnegative");
  if (j > kMaxHermiteDegree) {
    throw DomainError("Hermite degree " + std::to_string(j) + " exceeds the supported maximum " +
                      std::to_string(kMaxHermiteDegree));
  }
}

}  // namespace

void hermite_all(int jmax, double x, const CalcContext& ctx, std::span<double> out) {
  check_degree(jmax);
  if (out.size() < static_cast<std::size_t>(jmax) + 1) {
    throw DomainError("hermite_all: output span too small");
  }
  const double scale = std::sqrt(2.0 / ctx.h) * x;
  out[0] = 1.0;
  if (jmax == 0) return;
  out[1] = scale;
  for (int j = 2; j <= jmax; ++j) {
    const double jd = j;
    out[j] = scale / std::sqrt(jd) * out[j - 1] - std::sqrt((jd - 1.0) / jd) * out[j - 2];
  }
}

std::vector<double> hermite_all(int jmax, double x, const CalcContext& ctx) {
  std::vector<double> out(static_cast<std::size_t>(std::max(jmax, 0)) + 1);
  hermite_all(jmax, x, ctx, out);
  return out;
}

double hermite_eval(int j, double x, const CalcContext& ctx) {
  check_degree(j);
  const double scale = std::sqrt(2.0 / ctx.h) * x;
  double prev = 0.0;  // psi_{-1}
  double cur = 1.0;   // psi_0
  for (int i = 1; i <= j; ++i) {
    const double id = i;
    const double next = scale / std::sqrt(id) * cur - std::sqrt((id - 1.0) / id) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

void check_laguerre(int k, int alpha) {
  if (k < 0 || alpha < 0) throw DomainError("Laguerre order and parameter must be nonnegative");
  if (k + alpha > kMaxLaguerreOrder) {
    throw DomainError("Laguerre k + alpha = " + std::to_string(k + alpha) + " exceeds " +
                      std::to_string(kMaxLaguerreOrder));
  }
}

}  // namespace

double laguerre_eval(int k, int alpha, double x) {
  check_laguerre(k, alpha);
  // term_0 = (k+alpha)! / (k! alpha!)
  double term = 1.0;
  for (int i = 1; i <= k; ++i) term *= static_cast<double>(alpha + i) / i;
  double sum = term;
  for (int m = 0; m < k; ++m) {
    term *= -x * static_cast<double>(k - m) / (static_cast<double>(alpha + m + 1) * (m + 1));
    sum += term;
  }
  return sum;
}

double laguerre_recurrence(int k, int alpha, double x) {
  check_laguerre(k, alpha);
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int n = 1; n < k; ++n) {
    const double next = ((2.0 * n + 1.0 + alpha - x) * cur - (n + alpha) * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::complex<double> bargman_eval(std::complex<double> v, double x, const CalcContext& ctx) {
  return std::exp(x * v * std::sqrt(2.0 / ctx.h) - v * v / 2.0);
}

std::complex<double> bargman_partial_sum(std::complex<double> v, double x, const CalcContext& ctx,
                                         int cutoff) {
  if (cutoff < 0) throw DomainError("Bargman partial sum cutoff must be nonnegative");
  const auto psi = hermite_all(cutoff, x, ctx);
  std::complex<double> sum = 0.0;
  std::complex<double> coeff = 1.0;  // v^j / sqrt(j!)
  for (int j = 0; j <= cutoff; ++j) {
    if (j > 0) coeff *= v / std::sqrt(static_cast<double>(j));
    sum += psi[j] * coeff;
  }
  return sum;
}

ComplexField gamma_transform(ComplexField f, const CalcContext& ctx, int dims) {
  if (dims < 1) throw DomainError("gamma_transform: dimension must be >= 1");
  const double h = ctx.h;
  const double norm = std::pow(std::numbers::pi * h, -dims / 4.0);
  return [f = std::move(f), h, norm, dims](std::span<const double> y) {
    if (y.size() != static_cast<std::size_t>(dims)) {
      throw DomainError("gamma_transform: point dimension mismatch");
    }
    double r2 = 0.0;
    for (double v : y) r2 += v * v;
    return norm * std::exp(-r2 / (2.0 * h)) * f(y);
  };
}

MultiIndex::MultiIndex(const std::vector<int>& degrees) {
  for (std::size_t i = 0; i < degrees.size(); ++i) set(static_cast<int>(i) + 1, degrees[i]);
}

int MultiIndex::operator[](int coordinate) const {
  auto it = entries_.find(coordinate);
  return it == entries_.end() ? 0 : it->second;
}

void MultiIndex::set(int coordinate, int degree) {
  if (coordinate < 1) throw DomainError("multi-index coordinates start at 1");
  if (degree < 0) throw DomainError("multi-index degrees must be nonnegative");
  if (degree == 0) {
    entries_.erase(coordinate);
  } else {
    entries_[coordinate] = degree;
  }
}

int MultiIndex::depth() const {
  int d = 0;
  for (const auto& [coord, deg] : entries_) d = std::max(d, deg);
  return d;
}

int MultiIndex::support_end() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

int MultiIndex::total_degree() const {
  int t = 0;
  for (const auto& [coord, deg] : entries_) t += deg;
  return t;
}

std::vector<int> MultiIndex::dense(int dims) const {
  if (support_end() > dims) throw DomainError("multi-index support exceeds dimension");
  std::vector<int> out(static_cast<std::size_t>(dims), 0);
  for (const auto& [coord, deg] : entries_) out[coord - 1] = deg;
  return out;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [coord, deg] : entries_) {
    if (!first) os << ',';
    os << coord << ':' << deg;
    first = false;
  }
  os << '}';
  return os.str();
}

TruncationSet::TruncationSet(int dims, int max_degree) : dims_(dims), max_degree_(max_degree) {
  if (dims < 1) throw DomainError("truncation dimension must be >= 1");
  if (max_degree < 0) throw DomainError("truncation degree must be >= 0");
  double count = std::pow(max_degree + 1.0, dims);
  if (count > 1.0e6) throw BudgetError("truncation set larger than 10^6 multi-indices");

  std::vector<std::vector<int>> tuples;
  std::vector<int> t(static_cast<std::size_t>(dims), 0);
  for (;;) {
    tuples.push_back(t);
    int pos = dims - 1;
    while (pos >= 0 && t[pos] == max_degree) t[pos--] = 0;
    if (pos < 0) break;
    ++t[pos];
  }
  auto total = [](const std::vector<int>& v) {
    int s = 0;
    for (int x : v) s += x;
    return s;
  };
  std::stable_sort(tuples.begin(), tuples.end(), [&](const auto& a, const auto& b) {
    const int ta = total(a), tb = total(b);
    if (ta != tb) return ta < tb;
    return a > b;
  });
  order_.reserve(tuples.size());
  for (const auto& tup : tuples) order_.emplace_back(tup);
}

std::size_t TruncationSet::index_of(const MultiIndex& alpha) const {
  auto it = std::find(order_.begin(), order_.end(), alpha);
  if (it == order_.end()) throw DomainError("multi-index " + alpha.to_string() + " not in truncation");
  return static_cast<std::size_t>(it - order_.begin());
}

}  // namespace gaussweyl
