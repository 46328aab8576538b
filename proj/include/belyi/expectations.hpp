#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "belyi/log_gamma.hpp"

// Closed-form quantities of the configuration model for d-regular
// multigraphs on n vertices with m = nd/2 pairs.
//
// Everything is evaluated in log space: the falling factorial n!/(n-k)! and
// the gamma ratio Gamma(m-k+1/2)/Gamma(m+1/2) are individually far outside
// double range at n ~ 10^6 while their product is O(1). The *_rational
// functions are an exact oracle path for small n.

namespace belyi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Up to this many factors the gamma ratio is summed term by term; beyond it
/// log_gamma_difference is used.
inline constexpr long kProductFormCutoff = 4096;
/// Largest n for which the exact rational oracle path is offered.
inline constexpr int kRationalLimit = 30;

namespace detail {

inline void check_nd(long n, int d) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  if (d < 3) throw std::invalid_argument("degree must be at least 3");
  if ((n * d) % 2 != 0) throw std::invalid_argument("n*d must be even");
}

// log n!/(n-k)!, requires 0 <= k <= n.
inline double log_falling_factorial(long n, long k) {
  double acc = 0.0;
  for (long j = 0; j < k; ++j) acc += std::log(static_cast<double>(n - j));
  return acc;
}

// log Gamma(m - k + 1/2) - log Gamma(m + 1/2), requires 0 <= k <= m.
inline double log_gamma_ratio(long m, long k) {
  if (k <= kProductFormCutoff) {
    double acc = 0.0;
    for (long j = 1; j <= k; ++j) acc -= std::log(static_cast<double>(m - j) + 0.5);
    return acc;
  }
  return log_gamma_difference(static_cast<double>(m - k) + 0.5, static_cast<double>(m) + 0.5);
}

}  // namespace detail

struct ConfigurationCount {
  double log_value = 0.0;
  std::optional<BigInt> exact;  // present for m <= 20
};

/// Number of configurations on 2m darts, (2m)_m / 2^m = (2m - 1)!!.
inline ConfigurationCount configuration_count(long m) {
  if (m < 1) throw std::invalid_argument("pair count must be positive");
  ConfigurationCount out;
  out.log_value = log_odd_double_factorial(m);
  if (m <= 20) {
    BigInt v = 1;
    for (long j = 1; j <= m; ++j) v *= 2 * j - 1;
    out.exact = v;
  }
  return out;
}

/// Probability that a uniform configuration on 2m darts contains l given
/// disjoint pairs: 1 / ((2m-1)(2m-3)...(2m-2l+1)).
inline double edge_set_probability_product(long m, long l) {
  double acc = 0.0;
  for (long j = 1; j <= l; ++j) acc -= std::log(2.0 * static_cast<double>(m - j) + 1.0);
  return std::exp(acc);
}

/// Same quantity as 2^-l Gamma(m-l+1/2) / Gamma(m+1/2).
inline double edge_set_probability_gamma(long m, long l) {
  return std::exp(-static_cast<double>(l) * std::numbers::ln2 +
                  log_gamma_difference(static_cast<double>(m - l) + 0.5, static_cast<double>(m) + 0.5));
}

inline double edge_set_probability(long m, long l) {
  if (m < 1) throw std::invalid_argument("pair count must be positive");
  if (l < 0 || l > m) throw std::invalid_argument("fixed edge count must lie in [0, m]");
  return l <= kProductFormCutoff ? edge_set_probability_product(m, l) : edge_set_probability_gamma(m, l);
}

/// C_k = (1/2k) n!/(n-k)! (d(d-1))^k, the number of vertex-pair sets that can
/// form a k-cycle. Zero for k > n.
inline double potential_cycle_count(long n, int d, long k) {
  if (k < 1) throw std::invalid_argument("cycle length must be positive");
  detail::check_nd(n, d);
  if (k > n) return 0.0;
  return std::exp(detail::log_falling_factorial(n, k) + static_cast<double>(k) * std::log(d * (d - 1.0)) -
                  std::log(2.0 * static_cast<double>(k)));
}

/// E(X_k) = (1/2k) n!/(n-k)! (d(d-1))^k 2^-k Gamma(m-k+1/2)/Gamma(m+1/2).
inline double expected_k_cycles_exact(long n, int d, long k) {
  if (k < 1) throw std::invalid_argument("cycle length must be positive");
  detail::check_nd(n, d);
  if (k > n) return 0.0;
  const long m = n * d / 2;
  const double kk = static_cast<double>(k);
  return std::exp(detail::log_falling_factorial(n, k) + kk * std::log(d * (d - 1.0)) - kk * std::numbers::ln2 -
                  std::log(2.0 * kk) + detail::log_gamma_ratio(m, k));
}

/// a_k = (d/2)^k n!/(n-k)! Gamma(m-k+1/2)/Gamma(m+1/2) = 2k E(X_k)/(d-1)^k.
inline double a_k_exact(long n, int d, long k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  detail::check_nd(n, d);
  if (k > n) return 0.0;
  const long m = n * d / 2;
  return std::exp(static_cast<double>(k) * std::log(d / 2.0) + detail::log_falling_factorial(n, k) +
                  detail::log_gamma_ratio(m, k));
}

/// Leading-order behaviour exp(-(d-2) k^2 / (2nd)); error O(k/n) for k = o(n^{2/3}).
inline double a_k_asymptotic(long n, int d, long k) {
  if (d < 3) throw std::invalid_argument("degree must be at least 3");
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  const double kk = static_cast<double>(k);
  return std::exp(-(d - 2.0) * kk * kk / (2.0 * static_cast<double>(n) * d));
}

/// Streams (k, a_k) for k = from, from+1, ..., to, updating log a_k by one
/// ratio per step. `f` returns false to stop early.
template <class F>
void for_each_a_k(long n, int d, long from, long to, F&& f) {
  const long m = n * d / 2;
  double log_a = std::log(a_k_exact(n, d, from));
  for (long k = from; k <= to && k <= n; ++k) {
    if (k > from)
      log_a += std::log(d / 2.0) + std::log(static_cast<double>(n - k + 1)) -
               std::log(static_cast<double>(m - k) + 0.5);
    if (!f(k, std::exp(log_a))) return;
  }
}

/// Relative size below which the lower-bound summation stops.
inline constexpr double kSumTruncation = 1e-15;

/// Sum_{k=3}^{min(m,n)} a_k/k = Sum 2 E(X_k)/(d-1)^k, the expected number of
/// faces that are simple cycles (a k-cycle bounds a face in either
/// direction with probability (d-1)^-k each); grows like (log m)/2.
inline double lower_bound_sum(long n, int d) {
  detail::check_nd(n, d);
  if (n < 4) throw std::invalid_argument("lower bound sum needs n >= 4");
  double sum = 0.0;
  for_each_a_k(n, d, 3, n, [&](long k, double a) {
    const double term = a / static_cast<double>(k);
    sum += term;
    return term >= kSumTruncation * sum;
  });
  return sum;
}

inline long ceil_sqrt(long x) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(x)));
  while (r * r < x) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= x) --r;
  return r;
}

struct FaceCountBound {
  long cutoff = 0;               // ceil(sqrt(m)), the small/large face split
  double small_face_sum = 0.0;   // Sum_{k=3}^{cutoff} (k+1) E(X_k) / (d-1)^k
  double large_face_bound = 0.0; // 3 sqrt(n)
  double total = 0.0;
  double gaussian_cap = 0.0;     // sqrt(nd) * sqrt(pi/2)
  double excess = 0.0;           // max(0, small_face_sum - gaussian_cap)
};

inline FaceCountBound small_face_upper_bound(long n, int d) {
  detail::check_nd(n, d);
  if (n < 4) throw std::invalid_argument("face count bound needs n >= 4");
  FaceCountBound b;
  b.cutoff = ceil_sqrt(n * d / 2);
  for_each_a_k(n, d, 3, b.cutoff, [&](long k, double a) {
    b.small_face_sum += 0.5 * a + 0.5 * a / static_cast<double>(k);
    return true;
  });
  b.large_face_bound = 3.0 * std::sqrt(static_cast<double>(n));
  b.total = b.small_face_sum + b.large_face_bound;
  b.gaussian_cap = std::sqrt(static_cast<double>(n) * d) * std::sqrt(std::numbers::pi / 2.0);
  b.excess = std::max(0.0, b.small_face_sum - b.gaussian_cap);
  return b;
}

/// Limit of P(simple) = P(X_1 = X_2 = 0): exp((1 - d^2) / 4).
inline double simple_probability_asymptotic(int d) {
  if (d < 3) throw std::invalid_argument("degree must be at least 3");
  return std::exp((1.0 - static_cast<double>(d) * d) / 4.0);
}

/// Exact C_k for n <= 30.
inline Rational potential_cycle_count_rational(long n, int d, long k) {
  if (k < 1) throw std::invalid_argument("cycle length must be positive");
  detail::check_nd(n, d);
  if (n > kRationalLimit) throw std::invalid_argument("rational path limited to small n");
  if (k > n) return 0;
  BigInt num = 1;
  for (long j = 0; j < k; ++j) num *= n - j;
  for (long j = 0; j < k; ++j) num *= d * (d - 1);
  return Rational(num, BigInt(2 * k));
}

/// Exact E(X_k) for n <= 30.
inline Rational expected_k_cycles_rational(long n, int d, long k) {
  Rational c = potential_cycle_count_rational(n, d, k);
  if (k > n) return 0;
  const long m = n * d / 2;
  BigInt den = 1;
  for (long j = 1; j <= k; ++j) den *= 2 * (m - j) + 1;
  return c / Rational(den);
}

struct ExpectationRow {
  long k = 0;
  double expected_cycles = 0.0;
  double a_k = 0.0;
  double a_k_asymptotic = 0.0;
};

struct ExpectationTable {
  long n = 0;
  int d = 0;
  long m = 0;
  std::vector<ExpectationRow> rows;
  // Bound sums need n >= 4.
  std::optional<double> lower_bound_sum;
  std::optional<FaceCountBound> face_bound;
  double p_simple_asymptotic = 0.0;
};

inline ExpectationTable expectation_table(long n, int d, long k_max) {
  detail::check_nd(n, d);
  if (k_max < 1) throw std::invalid_argument("k_max must be positive");
  ExpectationTable t;
  t.n = n;
  t.d = d;
  t.m = n * d / 2;
  for (long k = 1; k <= k_max; ++k)
    t.rows.push_back({k, expected_k_cycles_exact(n, d, k), a_k_exact(n, d, k), a_k_asymptotic(n, d, k)});
  if (n >= 4) {
    t.lower_bound_sum = lower_bound_sum(n, d);
    t.face_bound = small_face_upper_bound(n, d);
  }
  t.p_simple_asymptotic = simple_probability_asymptotic(d);
  return t;
}

}  // namespace belyi
