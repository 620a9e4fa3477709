#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twoadic/bigint.hpp"
#include "twoadic/errors.hpp"

namespace twoadic {

/// A finite binary word s_0 ... s_{N-1}, s_0 first. Never empty.
class BitSequence {
 public:
  BitSequence(std::initializer_list<int> bits) : BitSequence(std::vector<int>(bits)) {}

  explicit BitSequence(const std::vector<int>& bits) {
    bits_.reserve(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != 0 && bits[i] != 1) {
        throw InvalidInput("bit at position " + std::to_string(i) + " is not 0 or 1");
      }
      bits_.push_back(static_cast<std::uint8_t>(bits[i]));
    }
    check_nonempty();
  }

  explicit BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] > 1) throw InvalidInput("bit at position " + std::to_string(i) + " is not 0 or 1");
    }
    check_nonempty();
  }

  /// Parses a strict '0'/'1' string, s_0 first.
  static BitSequence from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '0' && text[i] != '1') {
        throw InvalidInput("invalid character at position " + std::to_string(i));
      }
      bits.push_back(static_cast<std::uint8_t>(text[i] - '0'));
    }
    return BitSequence(std::move(bits));
  }

  /// Low `length` bits of `value`, least significant bit first.
  static BitSequence from_u64(std::uint64_t value, unsigned length) {
    std::vector<std::uint8_t> bits(length);
    for (unsigned i = 0; i < length; ++i) bits[i] = static_cast<std::uint8_t>((value >> i) & 1U);
    return BitSequence(std::move(bits));
  }

  std::size_t size() const noexcept { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  BitSequence prefix(std::size_t length) const {
    return BitSequence(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(length)));
  }

  std::string to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
    return out;
  }

  friend bool operator==(const BitSequence&, const BitSequence&) = default;

 private:
  void check_nonempty() const {
    if (bits_.empty()) throw InvalidInput("bit sequence must have length >= 1");
  }

  std::vector<std::uint8_t> bits_;
};

/// x = sum s_i 2^i, the 2-adic truncation of the word.
inline BigInt encode(const BitSequence& s) {
  BigInt x = 0;
  const auto bits = s.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) boost::multiprecision::bit_set(x, static_cast<unsigned>(i));
  }
  return x;
}

/// Low word of encode() for sequences of at most 64 bits.
inline std::uint64_t encode_u64(const BitSequence& s) {
  if (s.size() > 64) throw InvalidInput("encode_u64 needs length <= 64");
  std::uint64_t x = 0;
  const auto bits = s.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) x |= static_cast<std::uint64_t>(bits[i]) << i;
  return x;
}

/// Inverse of encode: the low `length` bits of x (taken mod 2^length), s_0 first.
inline BitSequence decode(const BigInt& x, std::size_t length) {
  if (length == 0) throw InvalidInput("decode length must be >= 1");
  const BigInt reduced = mod_pow2(x, static_cast<unsigned>(length));
  std::vector<std::uint8_t> bits(length);
  for (std::size_t i = 0; i < length; ++i) {
    bits[i] = boost::multiprecision::bit_test(reduced, static_cast<unsigned>(i)) ? 1 : 0;
  }
  return BitSequence(std::move(bits));
}

}  // namespace twoadic
