#pragma once

#include <cstdlib>
#include <string>

#include "twoadic/errors.hpp"

namespace twoadic {

/// Enumeration caps. Defaults keep the full test suite at desk scale; each can be
/// raised through the environment (TWOADIC_MAX_EXHAUSTIVE_N and friends).
struct Budget {
  unsigned max_exhaustive_n = 22;  // exhaustive expectation tables
  unsigned max_oracle_n = 16;      // brute-force minimal representation
  unsigned max_count_n = 16;       // exhaustive M_N(w)
  unsigned max_tail_n = 20;        // exhaustive tail-set sizes
  unsigned max_pair_n = 16;        // pair-sum lemma check

  /// Above this even an override is refused: per-worker histograms grow as 2^{N-1}.
  static constexpr unsigned kHardEnumerationLimit = 26;

  static Budget from_environment() {
    Budget b;
    read("TWOADIC_MAX_EXHAUSTIVE_N", b.max_exhaustive_n, kHardEnumerationLimit);
    read("TWOADIC_MAX_ORACLE_N", b.max_oracle_n, 32);
    read("TWOADIC_MAX_COUNT_N", b.max_count_n, kHardEnumerationLimit);
    read("TWOADIC_MAX_TAIL_N", b.max_tail_n, kHardEnumerationLimit);
    read("TWOADIC_MAX_PAIR_N", b.max_pair_n, kHardEnumerationLimit);
    return b;
  }

 private:
  static void read(const char* name, unsigned& slot, unsigned ceiling) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return;
    char* end = nullptr;
    const unsigned long v = std::strtoul(raw, &end, 10);
    if (*end != '\0' || v == 0 || v > ceiling) {
      throw InvalidInput(std::string(name) + " must be an integer in [1, " + std::to_string(ceiling) + "]");
    }
    slot = static_cast<unsigned>(v);
  }
};

inline void require_within(unsigned n, unsigned cap, const char* what) {
  if (n > cap) {
    throw BudgetExceeded(std::string(what) + " refused: N=" + std::to_string(n) + " exceeds the cap of " +
                         std::to_string(cap));
  }
}

}  // namespace twoadic
