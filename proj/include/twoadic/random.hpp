#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "twoadic/bit_sequence.hpp"

namespace twoadic {

/// Recorded in report metadata so runs can be reproduced elsewhere.
inline constexpr const char* kGeneratorDescription =
    "mt19937_64 per sample, seeded with splitmix64(seed + (i + 1) * 0x9e3779b97f4a7c15); "
    "bits taken least significant first from each 64-bit output";

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Fair i.i.d. bits for sample `index` of a run seeded with `seed`.
class SampleBits {
 public:
  SampleBits(std::uint64_t seed, std::uint64_t index) : engine_(substream_seed(seed, index)) {}

  int next() {
    if (left_ == 0) {
      word_ = engine_();
      left_ = 64;
    }
    const int bit = static_cast<int>(word_ & 1U);
    word_ >>= 1;
    --left_;
    return bit;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t word_ = 0;
  int left_ = 0;
};

inline BitSequence random_sequence(std::uint64_t seed, std::uint64_t index, std::size_t length) {
  SampleBits source(seed, index);
  std::vector<std::uint8_t> bits(length);
  for (auto& b : bits) b = static_cast<std::uint8_t>(source.next());
  return BitSequence(std::move(bits));
}

}  // namespace twoadic
