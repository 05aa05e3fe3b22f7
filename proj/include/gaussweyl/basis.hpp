#pragma once

// h-scaled Hermite functions orthonormal in L^2(R, mu_{h/2}), Laguerre
// polynomials, Bargman kernels and multi-index bookkeeping.

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace gaussweyl {

inline constexpr int kMaxHermiteDegree = 512;
inline constexpr int kMaxLaguerreOrder = 200;  // bound on k + alpha

struct CalcContext {
  explicit CalcContext(double h_);
  double h;
};

// psi_j(x), normalized so that the family is orthonormal for the Gaussian
// measure with density (pi h)^{-1/2} exp(-x^2/h). Computed by the forward
// three-term recurrence.
double hermite_eval(int j, double x, const CalcContext& ctx);

// Fills out[0..jmax] with psi_0(x)..psi_jmax(x).
void hermite_all(int jmax, double x, const CalcContext& ctx, std::span<double> out);
std::vector<double> hermite_all(int jmax, double x, const CalcContext& ctx);

// Generalized Laguerre polynomial L_k^{(alpha)}(x) by its explicit finite sum,
// with the factorial ratios accumulated as running products.
double laguerre_eval(int k, int alpha, double x);

// Same polynomial by the three-term recurrence in k. Used where many orders are
// needed at once or the argument is large.
double laguerre_recurrence(int k, int alpha, double x);

// Generating function sum_j psi_j(x) v^j / sqrt(j!) in closed form.
std::complex<double> bargman_eval(std::complex<double> v, double x, const CalcContext& ctx);
std::complex<double> bargman_partial_sum(std::complex<double> v, double x, const CalcContext& ctx,
                                         int cutoff);

using ComplexField = std::function<std::complex<double>(std::span<const double>)>;

// y -> (pi h)^{-d/4} exp(-|y|^2 / 2h) f(y): unitary map from L^2(mu_{h/2}) to L^2(dy).
ComplexField gamma_transform(ComplexField f, const CalcContext& ctx, int dims);

// Finitely supported map coordinate (>= 1) -> degree (>= 1). Absent means 0.
class MultiIndex {
 public:
  MultiIndex() = default;
  // Dense constructor: degrees[i] is the degree of coordinate i + 1.
  explicit MultiIndex(const std::vector<int>& degrees);

  int operator[](int coordinate) const;
  void set(int coordinate, int degree);

  // Max stored degree (0 if empty).
  int depth() const;
  // Largest coordinate carrying a nonzero degree (0 if empty).
  int support_end() const;
  int total_degree() const;
  bool empty() const { return entries_.empty(); }
  const std::map<int, int>& entries() const { return entries_; }

  std::vector<int> dense(int dims) const;
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::map<int, int> entries_;
};

// All multi-indices supported on {1..dims} with every degree <= max_degree,
// in graded-lexicographic order: total degree ascending, ties broken by the
// dense tuple in descending lexicographic order ((1,0) before (0,1)).
class TruncationSet {
 public:
  TruncationSet(int dims, int max_degree);

  int dims() const { return dims_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return order_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return order_[i]; }
  const std::vector<MultiIndex>& order() const { return order_; }
  // Position of alpha in the enumeration; throws DomainError if absent.
  std::size_t index_of(const MultiIndex& alpha) const;

 private:
  int dims_;
  int max_degree_;
  std::vector<MultiIndex> order_;
};

}  // namespace gaussweyl
