#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace twoadic {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(unsigned k) {
  BigInt r = 0;
  boost::multiprecision::bit_set(r, k);
  return r;
}

namespace detail {

// Signed arithmetic helpers shared by BigInt and the native __int128 path.

template <class Int>
Int abs_value(const Int& v) {
  return v < 0 ? Int(-v) : v;
}

/// floor(num / den) for den != 0.
template <class Int>
Int floor_div(const Int& num, const Int& den) {
  Int q = num / den;
  Int r = num - q * den;
  if (r != 0 && ((r < 0) != (den < 0))) q -= 1;
  return q;
}

template <class Int>
bool is_odd(const Int& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return boost::multiprecision::bit_test(v, 0);
  } else {
    return (v & 1) != 0;
  }
}

}  // namespace detail

/// Number of trailing zero bits of a non-zero value.
inline unsigned trailing_zeros(const BigInt& v) {
  return static_cast<unsigned>(boost::multiprecision::lsb(detail::abs_value(v)));
}

/// x mod 2^k as a value in [0, 2^k).
inline BigInt mod_pow2(const BigInt& x, unsigned k) {
  BigInt m = pow2(k);
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

/// Inverse of an odd u modulo 2^k (Newton iteration, each step doubles the correct bits).
inline BigInt inverse_mod_pow2(const BigInt& u, unsigned k) {
  BigInt modulus = pow2(k);
  BigInt uu = mod_pow2(u, k);
  BigInt inv = uu;  // correct to 3 bits for odd u
  for (unsigned bits = 3; bits < k; bits *= 2) {
    inv = mod_pow2(inv * (2 - uu * inv), k);
  }
  return mod_pow2(inv, k);
}

/// log2 of a positive integer, accurate to long double precision.
inline long double log2_big(const BigInt& v) {
  const unsigned top = static_cast<unsigned>(boost::multiprecision::msb(v));
  if (top < 64) return std::log2(static_cast<long double>(static_cast<std::uint64_t>(v)));
  const unsigned shift = top - 63;
  const auto head = static_cast<std::uint64_t>(v >> shift);
  return std::log2(static_cast<long double>(head)) + static_cast<long double>(shift);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace twoadic
