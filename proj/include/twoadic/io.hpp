#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twoadic/bit_sequence.hpp"
#include "twoadic/errors.hpp"

namespace twoadic {

enum class SequenceFormat { ascii01, hex };

inline SequenceFormat parse_sequence_format(std::string_view name) {
  if (name == "ascii01") return SequenceFormat::ascii01;
  if (name == "hex") return SequenceFormat::hex;
  throw InvalidInput("unknown sequence format '" + std::string(name) + "' (expected ascii01 or hex)");
}

namespace detail {

inline int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace detail

/// ascii01: '0'/'1' with whitespace ignored, first character is s_0.
/// hex: two digits per byte, first byte first, each byte contributes its bits least
/// significant first. `take` truncates to the first N bits.
inline BitSequence read_sequence(std::string_view text, SequenceFormat format,
                                 std::optional<std::size_t> take = std::nullopt) {
  std::vector<std::uint8_t> bits;
  if (format == SequenceFormat::ascii01) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c != '0' && c != '1') {
        throw InvalidInput("invalid character '" + std::string(1, c) + "' at position " + std::to_string(i));
      }
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
  } else {
    int pending = -1;
    std::size_t pending_pos = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      const int d = detail::hex_digit(c);
      if (d < 0) {
        throw InvalidInput("invalid hex character '" + std::string(1, c) + "' at position " + std::to_string(i));
      }
      if (pending < 0) {
        pending = d;
        pending_pos = i;
        continue;
      }
      const int byte = pending * 16 + d;
      for (int b = 0; b < 8; ++b) bits.push_back(static_cast<std::uint8_t>((byte >> b) & 1));
      pending = -1;
    }
    if (pending >= 0) {
      throw InvalidInput("incomplete hex byte starting at position " + std::to_string(pending_pos));
    }
  }
  if (take) {
    if (*take == 0) throw InvalidInput("--take must be >= 1");
    if (*take > bits.size()) {
      throw InvalidInput("--take " + std::to_string(*take) + " exceeds the " + std::to_string(bits.size()) +
                         " available bits");
    }
    bits.resize(*take);
  }
  if (bits.empty()) throw InvalidInput("input contains no bits");
  return BitSequence(std::move(bits));
}

/// Inverse of read_sequence. Hex output pads the last byte with zero bits, so reading it
/// back needs take = size().
inline std::string write_sequence(const BitSequence& s, SequenceFormat format) {
  if (format == SequenceFormat::ascii01) return s.to_string();
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  const auto bits = s.bits();
  for (std::size_t i = 0; i < bits.size(); i += 8) {
    int byte = 0;
    for (std::size_t b = 0; b < 8 && i + b < bits.size(); ++b) byte |= bits[i + b] << b;
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 15]);
  }
  return out;
}

/// Fixed-point decimal; identical inputs give identical text.
inline std::string format_fixed(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// RFC 4180 field quoting.
inline std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (const char c : v) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_field(fields[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace twoadic
