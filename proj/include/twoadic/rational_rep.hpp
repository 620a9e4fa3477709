#pragma once

// Minimal rational representations of 2-adic truncations.
//
// For x = encode(S) in [0, 2^N) the pairs (f, q) with q*x = f (mod 2^N) form the
// lattice L_N = span{(2^N, 0), (x, 1)}. The rational complexity is the smallest
// max(|f|, q) over lattice points with q odd. A basis reduced for the max-norm
// (generalized Gauss reduction) attains both successive minima; if the shortest
// basis vector has odd q it is optimal, otherwise every odd point is independent
// of it and hence no shorter than the second basis vector, which must be odd.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "twoadic/bigint.hpp"
#include "twoadic/bit_sequence.hpp"
#include "twoadic/errors.hpp"

namespace twoadic {

/// A pair (f, q), q odd and positive, with q * x = f (mod 2^capacity).
struct RationalApprox {
  BigInt f;
  BigInt q;
  unsigned capacity = 0;

  BigInt norm() const { return std::max(detail::abs_value(f), q); }

  /// True when q is positive odd and q * x = f (mod 2^capacity).
  bool represents(const BigInt& x) const {
    if (q <= 0 || !detail::is_odd(q)) return false;
    return mod_pow2(q * x - f, capacity) == 0;
  }

  friend bool operator==(const RationalApprox&, const RationalApprox&) = default;
};

/// Rational complexity (exact) with its base-2 logarithm for display.
/// All comparisons go through big_lambda.
struct ComplexityValue {
  BigInt big_lambda;
  double small_lambda = 0.0;

  static ComplexityValue of(const BigInt& big_lambda) {
    return {big_lambda, static_cast<double>(log2_big(big_lambda))};
  }
};

/// Exhaustive-scan cap for brute_force_min_rep.
inline constexpr unsigned kDefaultOracleCap = 16;
/// Hard ceiling of the oracle's 64-bit arithmetic.
inline constexpr unsigned kOracleArithmeticLimit = 32;

namespace detail {

template <class Int>
struct LatticeVector {
  Int f;
  Int q;
};

template <class Int>
Int max_norm(const LatticeVector<Int>& v) {
  Int af = abs_value(v.f);
  Int aq = abs_value(v.q);
  return af < aq ? aq : af;
}

template <class Int>
Int norm_of_difference(const LatticeVector<Int>& b, const Int& mu, const LatticeVector<Int>& a) {
  return max_norm(LatticeVector<Int>{b.f - mu * a.f, b.q - mu * a.q});
}

/// Integer mu minimizing max(|b.f - mu a.f|, |b.q - mu a.q|); a != 0.
/// The objective is convex and piecewise linear, so its integer minimum sits at the
/// floor or ceiling of one of its breakpoints.
template <class Int>
Int best_multiplier(const LatticeVector<Int>& a, const LatticeVector<Int>& b) {
  const std::pair<Int, Int> breakpoints[] = {
      {b.f, a.f}, {b.q, a.q}, {b.f - b.q, a.f - a.q}, {b.f + b.q, a.f + a.q}};
  Int best_mu = 0;
  Int best = max_norm(b);
  for (const auto& [num, den] : breakpoints) {
    if (den == 0) continue;
    const Int lo = floor_div(num, den);
    for (const Int& mu : {lo, Int(lo + 1)}) {
      const Int value = norm_of_difference(b, mu, a);
      if (value < best || (value == best && abs_value(mu) < abs_value(best_mu))) {
        best = value;
        best_mu = mu;
      }
    }
  }
  return best_mu;
}

/// Max-norm Gauss reduction. On return max_norm(a) <= max_norm(b) <= max_norm(b +- a).
template <class Int>
void reduce_basis(LatticeVector<Int>& a, LatticeVector<Int>& b) {
  Int na = max_norm(a);
  Int nb = max_norm(b);
  if (nb < na) {
    std::swap(a, b);
    std::swap(na, nb);
  }
  while (true) {
    const Int mu = best_multiplier(a, b);
    if (mu != 0) {
      b.f -= mu * a.f;
      b.q -= mu * a.q;
      nb = max_norm(b);
    }
    if (nb < na) {
      std::swap(a, b);
      std::swap(na, nb);
    } else {
      return;
    }
  }
}

/// Smallest max-norm among odd-q points, given a reduced basis.
template <class Int>
Int odd_minimum(const LatticeVector<Int>& a, const LatticeVector<Int>& b) {
  return is_odd(a.q) ? max_norm(a) : max_norm(b);
}

template <class Int>
Int rational_complexity_generic(const Int& x, const Int& modulus) {
  LatticeVector<Int> a{modulus, 0};
  LatticeVector<Int> b{x, 1};
  reduce_basis(a, b);
  return odd_minimum(a, b);
}

using Native = __int128;
inline constexpr unsigned kNativeLimit = 62;

/// Smallest odd q >= 1 with q*x = c (mod 2^n), if any.
inline std::optional<BigInt> smallest_odd_solution(const BigInt& x, const BigInt& c, unsigned n) {
  const BigInt cc = mod_pow2(c, n);
  if (x == 0) {
    return cc == 0 ? std::optional<BigInt>(BigInt(1)) : std::nullopt;
  }
  const unsigned v = trailing_zeros(x);
  if (cc != 0 && trailing_zeros(cc) < v) return std::nullopt;
  const unsigned m = n - v;
  const BigInt u = x >> v;
  const BigInt q0 = mod_pow2((cc >> v) * inverse_mod_pow2(u, m), m);
  if (!is_odd(q0)) return std::nullopt;
  return q0;
}

/// The representative of q*x mod 2^n with |f| <= bound of smallest |f|, preferring f >= 0.
inline std::optional<BigInt> best_numerator(const BigInt& x, const BigInt& q, unsigned n, const BigInt& bound) {
  const BigInt f0 = mod_pow2(q * x, n);
  const BigInt f1 = f0 - pow2(n);
  std::optional<BigInt> best;
  for (const BigInt& f : {f0, f1}) {
    if (abs_value(f) > bound) continue;
    if (!best || abs_value(f) < abs_value(*best) || (abs_value(f) == abs_value(*best) && f >= 0)) best = f;
  }
  return best;
}

}  // namespace detail

/// Rational complexity of x in [0, 2^n), n >= 1, for n <= 62. Fast path for enumeration.
inline std::uint64_t rational_complexity_u64(std::uint64_t x, unsigned n) {
  using detail::Native;
  const Native modulus = Native(1) << n;
  return static_cast<std::uint64_t>(
      detail::rational_complexity_generic<Native>(static_cast<Native>(x) & (modulus - 1), modulus));
}

/// Rational complexity of x mod 2^n for any n >= 1.
inline BigInt rational_complexity(const BigInt& x, unsigned n) {
  if (n == 0) throw InvalidInput("prefix length must be >= 1");
  const BigInt reduced = mod_pow2(x, n);
  if (n <= detail::kNativeLimit) {
    return BigInt(rational_complexity_u64(static_cast<std::uint64_t>(reduced), n));
  }
  return detail::rational_complexity_generic<BigInt>(reduced, pow2(n));
}

/// Given Lambda for x mod 2^n, picks the minimizer with the smallest q, then smallest |f|,
/// then f >= 0. Every minimizer has q = Lambda or |f| = Lambda, so three candidates suffice.
inline RationalApprox canonical_representation(const BigInt& x, unsigned n, const BigInt& big_lambda) {
  const BigInt xr = mod_pow2(x, n);
  std::optional<BigInt> best_q;
  auto consider = [&](const std::optional<BigInt>& q) {
    if (!q || *q < 1 || *q > big_lambda) return;
    if (!detail::best_numerator(xr, *q, n, big_lambda)) return;
    if (!best_q || *q < *best_q) best_q = q;
  };
  consider(detail::smallest_odd_solution(xr, big_lambda, n));
  consider(detail::smallest_odd_solution(xr, BigInt(-big_lambda), n));
  if (detail::is_odd(big_lambda)) consider(big_lambda);
  if (!best_q) throw std::logic_error("no representation attains the supplied complexity");
  return {*detail::best_numerator(xr, *best_q, n, big_lambda), *best_q, n};
}

/// Minimal rational representation via max-norm lattice reduction; polynomial in N.
inline RationalApprox min_rational_rep(const BitSequence& s) {
  const auto n = static_cast<unsigned>(s.size());
  const BigInt x = encode(s);
  return canonical_representation(x, n, rational_complexity(x, n));
}

/// Definitional scan over every odd q <= 2^{N-1}. Same tie rule as min_rational_rep.
inline RationalApprox brute_force_min_rep(const BitSequence& s, unsigned cap = kDefaultOracleCap) {
  const auto n = static_cast<unsigned>(s.size());
  if (cap > kOracleArithmeticLimit) cap = kOracleArithmeticLimit;
  if (n > cap) {
    throw BudgetExceeded("brute-force oracle refused: N=" + std::to_string(n) + " exceeds cap " +
                         std::to_string(cap) + "; use min_rational_rep");
  }
  const std::uint64_t x = encode_u64(s);
  const std::int64_t modulus = std::int64_t{1} << n;
  const std::uint64_t q_max = n == 1 ? 1 : (std::uint64_t{1} << (n - 1));
  std::int64_t best_f = 0;
  std::uint64_t best_q = 0;
  std::uint64_t best_norm = UINT64_MAX;
  for (std::uint64_t q = 1; q <= q_max; q += 2) {
    const auto f0 = static_cast<std::int64_t>((q * x) & static_cast<std::uint64_t>(modulus - 1));
    for (const std::int64_t f : {f0, f0 - modulus}) {
      const auto af = static_cast<std::uint64_t>(f < 0 ? -f : f);
      const std::uint64_t norm = std::max(af, q);
      const auto best_af = static_cast<std::uint64_t>(best_f < 0 ? -best_f : best_f);
      const bool better = norm < best_norm ||
                          (norm == best_norm && q == best_q && (af < best_af || (af == best_af && f >= 0)));
      if (better) {
        best_norm = norm;
        best_f = f;
        best_q = q;
      }
    }
  }
  return {BigInt(best_f), BigInt(best_q), n};
}

inline ComplexityValue complexity(const BitSequence& s) {
  return ComplexityValue::of(rational_complexity(encode(s), static_cast<unsigned>(s.size())));
}

/// The N-bit word whose value is f / q in Z/2^N.
inline BitSequence expand_rational(const BigInt& q, const BigInt& f, unsigned n) {
  if (n == 0) throw InvalidInput("expansion length must be >= 1");
  if (q <= 0 || !detail::is_odd(q)) throw InvalidInput("denominator q must be positive and odd");
  return decode(f * inverse_mod_pow2(q, n), n);
}

}  // namespace twoadic
