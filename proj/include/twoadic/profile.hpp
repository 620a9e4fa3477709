#pragma once

#include <cstddef>
#include <vector>

#include "twoadic/rational_rep.hpp"

namespace twoadic {

/// Feeds bits one at a time and keeps a max-norm reduced basis of the current lattice.
///
/// L_{n+1} is the index-2 sublattice of L_n cut out by the parity of (q*x - f) / 2^n,
/// so a basis of it comes from the previous reduced basis with one doubling; the
/// re-reduction that follows is short.
class IncrementalComplexity {
 public:
  /// Appends s_n and returns the rational complexity of the n+1 bit prefix.
  const BigInt& push(int bit) {
    if (bit != 0 && bit != 1) throw InvalidInput("bit must be 0 or 1");
    if (bit) boost::multiprecision::bit_set(x_, length_);
    if (length_ == 0) {
      a_ = {BigInt(2), BigInt(0)};
      b_ = {BigInt(bit), BigInt(1)};
    } else {
      const bool da = defect(a_);
      const bool db = defect(b_);
      // The defect map is onto Z/2, so da and db are never both zero.
      if (!da) {
        b_.f <<= 1;
        b_.q <<= 1;
      } else if (!db) {
        a_.f <<= 1;
        a_.q <<= 1;
      } else {
        a_.f += b_.f;
        a_.q += b_.q;
        b_.f <<= 1;
        b_.q <<= 1;
      }
    }
    ++length_;
    detail::reduce_basis(a_, b_);
    lambda_ = detail::odd_minimum(a_, b_);
    return lambda_;
  }

  unsigned length() const noexcept { return length_; }
  const BigInt& value() const noexcept { return x_; }
  const BigInt& big_lambda() const noexcept { return lambda_; }

 private:
  // Bit n of q*x - f for a point of L_n, after x has gained bit n.
  bool defect(const detail::LatticeVector<BigInt>& v) const {
    const BigInt d = v.q * x_ - v.f;
    return boost::multiprecision::bit_test(detail::abs_value(d), length_);
  }

  BigInt x_ = 0;
  unsigned length_ = 0;
  detail::LatticeVector<BigInt> a_{};
  detail::LatticeVector<BigInt> b_{};
  BigInt lambda_ = 0;
};

struct ProfileEntry {
  unsigned n = 0;
  ComplexityValue value;
  RationalApprox rep;
};

/// Per-prefix complexity of S, n = 1..N. Non-decreasing in big_lambda.
struct ComplexityProfile {
  std::vector<ProfileEntry> entries;

  std::vector<BigInt> big_lambdas() const {
    std::vector<BigInt> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.value.big_lambda);
    return out;
  }
};

/// Rational complexities of every prefix, without representations.
inline std::vector<BigInt> profile_values(const BitSequence& s) {
  IncrementalComplexity inc;
  std::vector<BigInt> out;
  out.reserve(s.size());
  for (const auto bit : s.bits()) out.push_back(inc.push(bit));
  return out;
}

inline ComplexityProfile profile(const BitSequence& s) {
  IncrementalComplexity inc;
  ComplexityProfile p;
  p.entries.reserve(s.size());
  for (const auto bit : s.bits()) {
    const BigInt lambda = inc.push(bit);
    p.entries.push_back({inc.length(), ComplexityValue::of(lambda),
                         canonical_representation(inc.value(), inc.length(), lambda)});
  }
  return p;
}

}  // namespace twoadic
