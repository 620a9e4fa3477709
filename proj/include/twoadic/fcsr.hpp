#pragma once

#include <cstddef>
#include <vector>

#include "twoadic/bigint.hpp"
#include "twoadic/bit_sequence.hpp"
#include "twoadic/errors.hpp"

namespace twoadic {

/// Feedback-with-carry shift register: s_{i+L} + 2 z_{i+L} = sum_j a_j s_{i+j} + z_{i+L-1}.
/// Any integer initial carry is accepted.
struct FcsrSpec {
  std::vector<int> taps;          // a_0 .. a_{L-1}
  std::vector<int> initial_bits;  // s_0 .. s_{L-1}
  BigInt initial_carry = 0;       // z_{L-1}

  std::size_t length() const noexcept { return taps.size(); }

  void validate() const {
    if (taps.empty()) throw InvalidInput("FCSR length must be >= 1");
    if (initial_bits.size() != taps.size()) {
      throw InvalidInput("FCSR needs exactly L initial bits");
    }
    for (std::size_t j = 0; j < taps.size(); ++j) {
      if (taps[j] != 0 && taps[j] != 1) throw InvalidInput("tap a_" + std::to_string(j) + " is not 0 or 1");
      if (initial_bits[j] != 0 && initial_bits[j] != 1) {
        throw InvalidInput("initial bit s_" + std::to_string(j) + " is not 0 or 1");
      }
    }
  }

  /// q = sum_{k=1..L} a_{L-k} 2^k - 1. Odd; >= 1 whenever some tap is set.
  BigInt connection_integer() const {
    const std::size_t l = taps.size();
    BigInt q = -1;
    for (std::size_t k = 1; k <= l; ++k) {
      if (taps[l - k]) q += pow2(static_cast<unsigned>(k));
    }
    return q;
  }
};

struct FcsrOutput {
  BitSequence bits;
  /// z_{L-1}, z_L, ..., z_{N-1}; entry i holds z_{L-1+i}.
  std::vector<BigInt> carries;
};

inline FcsrOutput fcsr_generate(const FcsrSpec& spec, std::size_t n) {
  spec.validate();
  const std::size_t l = spec.length();
  if (n < l) throw InvalidInput("output length N must be >= L");

  std::vector<std::uint8_t> s(n);
  for (std::size_t j = 0; j < l; ++j) s[j] = static_cast<std::uint8_t>(spec.initial_bits[j]);
  std::vector<BigInt> carries;
  carries.reserve(n - l + 1);
  carries.push_back(spec.initial_carry);

  for (std::size_t i = 0; i + l < n; ++i) {
    BigInt t = carries.back();
    for (std::size_t j = 0; j < l; ++j) t += spec.taps[j] * s[i + j];
    const int bit = detail::is_odd(t) ? 1 : 0;
    s[i + l] = static_cast<std::uint8_t>(bit);
    carries.push_back((t - bit) / 2);
  }
  return {BitSequence(std::move(s)), std::move(carries)};
}

}  // namespace twoadic
