#pragma once

// Counting sequences by rational complexity: the totient closed form for small w,
// exhaustive enumeration, cumulative counts and the sizes of the tail sets.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "twoadic/bigint.hpp"
#include "twoadic/budget.hpp"
#include "twoadic/errors.hpp"
#include "twoadic/parallel.hpp"
#include "twoadic/rational_rep.hpp"

namespace twoadic {

inline constexpr double kEightOverPiSquared = 8.0 / (std::numbers::pi * std::numbers::pi);
inline constexpr double kThreeOverPiSquared = 3.0 / (std::numbers::pi * std::numbers::pi);

/// Euler's totient by trial division.
inline std::uint64_t euler_phi(std::uint64_t w) {
  if (w == 0) throw InvalidInput("euler_phi needs w >= 1");
  std::uint64_t result = w;
  for (std::uint64_t p = 2; p * p <= w; ++p) {
    if (w % p != 0) continue;
    while (w % p == 0) w /= p;
    result -= result / p;
  }
  if (w > 1) result -= result / w;
  return result;
}

/// Totients of 1..bound from a smallest-prime-factor sieve; trial division above the bound.
class TotientTable {
 public:
  explicit TotientTable(std::uint32_t bound) : phi_(bound + 1, 0) {
    std::vector<std::uint32_t> primes;
    std::vector<std::uint32_t> spf(bound + 1, 0);
    if (bound >= 1) phi_[1] = 1;
    for (std::uint32_t i = 2; i <= bound; ++i) {
      if (spf[i] == 0) {
        spf[i] = i;
        phi_[i] = i - 1;
        primes.push_back(i);
      }
      for (const std::uint32_t p : primes) {
        const std::uint64_t ip = std::uint64_t{i} * p;
        if (p > spf[i] || ip > bound) break;
        spf[ip] = p;
        phi_[ip] = (p == spf[i]) ? phi_[i] * p : phi_[i] * (p - 1);
      }
    }
  }

  std::uint32_t bound() const noexcept { return static_cast<std::uint32_t>(phi_.size() - 1); }

  std::uint64_t operator()(std::uint64_t w) const {
    if (w == 0) throw InvalidInput("euler_phi needs w >= 1");
    return w < phi_.size() ? phi_[w] : euler_phi(w);
  }

 private:
  std::vector<std::uint32_t> phi_;
};

struct TotientSum {
  std::uint64_t sum = 0;
  /// (sum - 3m^2/pi^2) / (m ln m); plain difference for m = 1.
  double walfisz_residual = 0.0;
};

inline constexpr std::uint64_t kTotientSumLimit = 10'000'000;

inline TotientSum totient_sum(std::uint64_t m) {
  if (m == 0) throw InvalidInput("totient_sum needs m >= 1");
  if (m > kTotientSumLimit) throw BudgetExceeded("totient_sum is sieve-backed up to 10^7");
  const TotientTable table(static_cast<std::uint32_t>(m));
  std::uint64_t sum = 0;
  for (std::uint64_t w = 1; w <= m; ++w) sum += table(w);
  const long double md = static_cast<long double>(m);
  const long double diff = static_cast<long double>(sum) - kThreeOverPiSquared * md * md;
  const long double residual = m == 1 ? diff : diff / (md * std::log(md));
  return {sum, static_cast<double>(residual)};
}

/// True iff N >= 2 and w <= 2^{(N-1)/2}, i.e. w^2 <= 2^{N-1}. At N = 1 the fractions 1/1
/// and -1/1 coincide mod 2, so the closed form overcounts (3 against 2 words).
inline bool within_formula_range(unsigned n, std::uint64_t w) {
  if (n < 2 || w == 0) return false;
  return BigInt(w) * w <= pow2(n - 1);
}

/// Number of length-N words with rational complexity w, from the totient closed form.
/// Only claimed for 1 <= w <= 2^{(N-1)/2}.
inline std::uint64_t m_count_formula(unsigned n, std::uint64_t w) {
  if (!within_formula_range(n, w)) {
    throw RangeError("M_N(w) closed form holds only for 1 <= w <= 2^((N-1)/2)");
  }
  return (w % 2 == 0 ? 2 : 3) * euler_phi(w);
}

/// counts[L] = number of length-N words with rational complexity L, for L in [0, 2^{N-1}].
/// Partitioned by high-order bits across workers and summed in worker order.
inline std::vector<std::uint64_t> complexity_histogram(unsigned n, unsigned workers = 1,
                                                       unsigned cap = Budget::kHardEnumerationLimit) {
  if (n == 0) throw InvalidInput("N must be >= 1");
  require_within(n, std::min(cap, Budget::kHardEnumerationLimit), "exhaustive enumeration");
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::size_t slots = (std::size_t{1} << (n - 1)) + 1;
  std::vector<std::vector<std::uint64_t>> partial(std::max(1U, workers));
  parallel_ranges(total, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& counts = partial[w];
    counts.assign(slots, 0);
    for (std::uint64_t x = begin; x < end; ++x) ++counts[rational_complexity_u64(x, n)];
  });
  std::vector<std::uint64_t> counts(slots, 0);
  for (const auto& part : partial) {
    for (std::size_t i = 0; i < part.size(); ++i) counts[i] += part[i];
  }
  return counts;
}

/// Number of length-N words with rational complexity exactly w, by enumeration.
inline std::uint64_t m_count_exhaustive(unsigned n, std::uint64_t w, unsigned cap = Budget{}.max_count_n,
                                        unsigned workers = 1) {
  require_within(n, cap, "exhaustive M_N(w)");
  const auto counts = complexity_histogram(n, workers, cap);
  return w < counts.size() ? counts[w] : 0;
}

struct CumulativeCount {
  std::uint64_t sum = 0;
  /// sum / W^2; tends to 8/pi^2.
  double leading = 0.0;
};

/// Sum_{w <= W} M_N(w) through the closed form.
inline CumulativeCount cumulative_m(unsigned n, std::uint64_t big_w) {
  if (!within_formula_range(n, big_w)) {
    throw RangeError("cumulative M_N needs 1 <= W <= 2^((N-1)/2)");
  }
  const TotientTable table(static_cast<std::uint32_t>(std::min<std::uint64_t>(big_w, kTotientSumLimit)));
  std::uint64_t sum = 0;
  for (std::uint64_t w = 1; w <= big_w; ++w) sum += (w % 2 == 0 ? 2 : 3) * table(w);
  const double wd = static_cast<double>(big_w);
  return {sum, static_cast<double>(sum) / (wd * wd)};
}

/// Value of N^{2 delta} as mantissa * 2^exponent. Exact when 2 delta is a small integer,
/// otherwise rounded to a 64-bit mantissa.
struct DyadicValue {
  BigInt mantissa;
  int exponent = 0;
};

inline DyadicValue power_as_dyadic(unsigned base, double exponent) {
  if (exponent >= 0 && exponent <= 4096 && std::floor(exponent) == exponent) {
    return {boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent)), 0};
  }
  const long double value = std::pow(static_cast<long double>(base), static_cast<long double>(exponent));
  int e = 0;
  const long double frac = std::frexp(value, &e);
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 64));
  return {BigInt(mantissa), e - 64};
}

namespace detail {

/// Sign of lhs * 2^le - rhs * 2^re for non-negative lhs, rhs.
inline int compare_scaled(const BigInt& lhs, int le, const BigInt& rhs, int re) {
  const int m = std::min(le, re);
  const BigInt l = lhs << static_cast<unsigned>(le - m);
  const BigInt r = rhs << static_cast<unsigned>(re - m);
  return l < r ? -1 : (l > r ? 1 : 0);
}

}  // namespace detail

/// Membership in the small / large deviation sets, decided on exact integers:
///   small  iff  Lambda^2 * N^{2 delta} < 2^N
///   large  iff  Lambda^2 > 2^N * N^{2 delta}
/// Equality is a non-member on both sides.
class TailThreshold {
 public:
  TailThreshold(unsigned n, double delta) : n_(n), delta_(delta), scale_(power_as_dyadic(n, 2.0 * delta)) {
    if (n == 0) throw InvalidInput("N must be >= 1");
    if (!(delta > 0)) throw InvalidInput("delta must be > 0");
  }

  bool is_small(const BigInt& big_lambda) const {
    return detail::compare_scaled(big_lambda * big_lambda * scale_.mantissa, scale_.exponent, BigInt(1),
                                  static_cast<int>(n_)) < 0;
  }

  bool is_large(const BigInt& big_lambda) const {
    return detail::compare_scaled(big_lambda * big_lambda, 0, scale_.mantissa,
                                  scale_.exponent + static_cast<int>(n_)) > 0;
  }

  unsigned n() const noexcept { return n_; }
  double delta() const noexcept { return delta_; }

 private:
  unsigned n_;
  double delta_;
  DyadicValue scale_;
};

struct TailSetSizes {
  unsigned n = 0;
  double delta = 0.0;
  std::uint64_t small_count = 0;  // |Delta_N|
  std::uint64_t large_count = 0;  // |Gamma_N|
  /// 8/pi^2 * 2^N / N^{2 delta}, the leading term for |Delta_N|.
  double predicted_small = 0.0;
};

inline TailSetSizes tail_set_sizes(unsigned n, double delta, unsigned cap = Budget{}.max_tail_n,
                                   unsigned workers = 1) {
  require_within(n, cap, "exhaustive tail-set count");
  const TailThreshold rule(n, delta);
  const auto counts = complexity_histogram(n, workers, cap);
  TailSetSizes out{n, delta, 0, 0, 0.0};
  for (std::size_t lambda = 1; lambda < counts.size(); ++lambda) {
    if (counts[lambda] == 0) continue;
    const BigInt l(lambda);
    if (rule.is_small(l)) out.small_count += counts[lambda];
    if (rule.is_large(l)) out.large_count += counts[lambda];
  }
  out.predicted_small = kEightOverPiSquared * std::ldexp(1.0, static_cast<int>(n)) /
                        std::pow(static_cast<double>(n), 2.0 * delta);
  return out;
}

/// ((1 - eps)^{1 - 2 delta} - 1) / (2 delta - 1), for 0 < eps < 1 and delta > 1/2.
inline double c_eps_delta(double eps, double delta) {
  if (!(eps > 0 && eps < 1)) throw InvalidInput("eps must lie in (0, 1)");
  if (!(delta > 0.5)) throw InvalidInput("delta must exceed 1/2");
  return (std::pow(1.0 - eps, 1.0 - 2.0 * delta) - 1.0) / (2.0 * delta - 1.0);
}

}  // namespace twoadic
