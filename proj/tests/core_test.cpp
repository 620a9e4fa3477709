#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "twoadic/rational_rep.hpp"

namespace twoadic {
namespace {

using testing::definitional_complexity;
using testing::random_bits;

TEST(Encode, Examples) {
  EXPECT_EQ(encode(BitSequence{0, 0, 0, 0}), 0);
  EXPECT_EQ(encode(BitSequence{1, 1, 1, 1}), 15);
  EXPECT_EQ(encode(BitSequence{1, 0, 1, 0, 1, 0}), 21);
}

TEST(Encode, EmptySequenceIsRejected) {
  EXPECT_THROW(BitSequence(std::vector<int>{}), InvalidInput);
  EXPECT_THROW(BitSequence::from_string(""), InvalidInput);
  EXPECT_THROW((BitSequence{0, 2}), InvalidInput);
}

TEST(Encode, DecodeInvertsEncode) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const BitSequence s = random_bits(rng, 1 + rng() % 300);
    const BigInt x = encode(s);
    EXPECT_LT(x, pow2(static_cast<unsigned>(s.size())));
    EXPECT_EQ(decode(x, s.size()), s);
  }
}

TEST(BruteForce, Examples) {
  const auto zero = brute_force_min_rep(BitSequence{0, 0, 0, 0});
  EXPECT_EQ(zero.f, 0);
  EXPECT_EQ(zero.q, 1);

  EXPECT_EQ(brute_force_min_rep(BitSequence{0, 0, 0, 0, 0, 1, 1, 0}).norm(), 32);

  const auto r = brute_force_min_rep(BitSequence{1, 0, 1, 0, 1, 0});
  EXPECT_EQ(r.f, -1);
  EXPECT_EQ(r.q, 3);
  EXPECT_EQ(r.norm(), 3);
}

TEST(BruteForce, RefusesAboveCap) {
  std::mt19937_64 rng(3);
  EXPECT_THROW(brute_force_min_rep(random_bits(rng, 17)), BudgetExceeded);
  EXPECT_NO_THROW(brute_force_min_rep(random_bits(rng, 17), 17));
}

TEST(MinRationalRep, Examples) {
  const auto one = min_rational_rep(BitSequence{1, 0, 0, 0});
  EXPECT_EQ(one.f, 1);
  EXPECT_EQ(one.q, 1);

  const auto minus_one = min_rational_rep(BitSequence{1, 1, 1, 1});
  EXPECT_EQ(minus_one.f, -1);
  EXPECT_EQ(minus_one.q, 1);

  const auto two = min_rational_rep(BitSequence{0, 1, 0, 0, 0, 0});
  EXPECT_EQ(two.f, 2);
  EXPECT_EQ(two.q, 1);
  EXPECT_EQ(complexity(BitSequence{0, 1, 0, 0, 0, 0}).small_lambda, 1.0);

  const auto third = min_rational_rep(BitSequence{1, 0, 1, 0, 1, 0});
  EXPECT_EQ(third.f, -1);
  EXPECT_EQ(third.q, 3);
}

TEST(MinRationalRep, MatchesOracleExhaustivelyIncludingTieRule) {
  for (unsigned n = 1; n <= 10; ++n) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      const BitSequence s = BitSequence::from_u64(x, n);
      const RationalApprox fast = min_rational_rep(s);
      const RationalApprox slow = brute_force_min_rep(s);
      ASSERT_EQ(fast, slow) << "N=" << n << " x=" << x;
      ASSERT_EQ(fast.norm(), definitional_complexity(x, n));
    }
  }
}

TEST(MinRationalRep, MatchesOracleOnRandomLongerWords) {
  std::mt19937_64 rng(2024);
  for (unsigned n = 13; n <= 16; ++n) {
    for (int t = 0; t < 300; ++t) {
      const BitSequence s = random_bits(rng, n);
      ASSERT_EQ(min_rational_rep(s), brute_force_min_rep(s)) << s.to_string();
    }
  }
}

TEST(MinRationalRep, NativeAndBigIntegerPathsAgree) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 2000; ++t) {
    const unsigned n = 1 + rng() % 62;
    const std::uint64_t x = rng() & ((std::uint64_t{1} << n) - 1);
    const BigInt big = detail::rational_complexity_generic<BigInt>(BigInt(x), pow2(n));
    ASSERT_EQ(big, rational_complexity_u64(x, n)) << "N=" << n << " x=" << x;
  }
}

TEST(MinRationalRep, CongruenceAndUpperBound) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    const BitSequence s = random_bits(rng, 1 + rng() % 400);
    const auto n = static_cast<unsigned>(s.size());
    const RationalApprox r = min_rational_rep(s);
    EXPECT_TRUE(r.represents(encode(s)));
    EXPECT_EQ(r.capacity, n);
    EXPECT_LE(r.norm(), pow2(n - 1));
    EXPECT_LE(detail::abs_value(r.f), pow2(n - 1));
  }
}

// A reduced fraction f/q with 2 max(|f|, q)^2 < 2^N is the unique minimum, which gives
// exact expected values far beyond the oracle's reach.
TEST(MinRationalRep, RecoversShortFractionsFromLongExpansions) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 300; ++t) {
    const unsigned n = 100 + rng() % 200;
    BigInt q = BigInt(rng() >> 24) | 1;
    BigInt f = BigInt(rng() >> 24) - BigInt(std::uint64_t{1} << 39);
    const BigInt g = boost::multiprecision::gcd(detail::abs_value(f), q);
    f /= g;
    q /= g;
    const BitSequence s = expand_rational(q, f, n);
    const RationalApprox r = min_rational_rep(s);
    EXPECT_EQ(r.f, f);
    EXPECT_EQ(r.q, q);
  }
}

TEST(MinRationalRep, LeadingZeroFamilyBeyondNativeRange) {
  // s_0..s_{k-1} = 0, s_k = 1, arbitrary tail, k >= N/2  =>  Lambda = 2^k.
  std::mt19937_64 rng(8);
  for (const unsigned n : {80U, 129U, 300U}) {
    for (int t = 0; t < 20; ++t) {
      const unsigned k = (n + 1) / 2 + rng() % (n - 1 - (n + 1) / 2);
      std::vector<std::uint8_t> bits(n, 0);
      bits[k] = 1;
      for (unsigned i = k + 1; i < n; ++i) bits[i] = rng() & 1U;
      EXPECT_EQ(complexity(BitSequence(bits)).big_lambda, pow2(k)) << "N=" << n << " k=" << k;
    }
  }
}

TEST(Complexity, Examples) {
  const auto zero = complexity(BitSequence{0, 0});
  EXPECT_EQ(zero.big_lambda, 1);
  EXPECT_EQ(zero.small_lambda, 0.0);

  const auto two = complexity(BitSequence{0, 1});
  EXPECT_EQ(two.big_lambda, 2);
  EXPECT_EQ(two.small_lambda, 1.0);

  const auto k5 = complexity(BitSequence{0, 0, 0, 0, 0, 1, 1, 0});
  EXPECT_EQ(k5.big_lambda, 32);
  EXPECT_DOUBLE_EQ(k5.small_lambda, 5.0);
}

TEST(Complexity, SmallLambdaIsLog2OfBigLambda) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto v = complexity(random_bits(rng, 1 + rng() % 500));
    const double expected = static_cast<double>(log2_big(v.big_lambda));
    EXPECT_DOUBLE_EQ(v.small_lambda, expected);
  }
}

TEST(ExpandRational, Examples) {
  EXPECT_EQ(expand_rational(1, 0, 5), (BitSequence{0, 0, 0, 0, 0}));
  EXPECT_EQ(expand_rational(3, -1, 6), (BitSequence{1, 0, 1, 0, 1, 0}));
  EXPECT_EQ(expand_rational(1, -1, 4), (BitSequence{1, 1, 1, 1}));
}

TEST(ExpandRational, RejectsInvalidDenominator) {
  EXPECT_THROW(expand_rational(2, 1, 4), InvalidInput);
  EXPECT_THROW(expand_rational(-3, 1, 4), InvalidInput);
  EXPECT_THROW(expand_rational(0, 1, 4), InvalidInput);
  EXPECT_THROW(expand_rational(3, 1, 0), InvalidInput);
}

TEST(ExpandRational, RoundTripsMinimalRepresentation) {
  for (unsigned n = 1; n <= 12; ++n) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      const BitSequence s = BitSequence::from_u64(x, n);
      const RationalApprox r = min_rational_rep(s);
      ASSERT_EQ(expand_rational(r.q, r.f, n), s);
    }
  }
}

TEST(CanonicalRepresentation, PrefersSmallestQThenNonNegativeF) {
  // x = 2 mod 4: both (2, 1) and (-2, 1) attain Lambda = 2.
  const RationalApprox r = canonical_representation(2, 2, 2);
  EXPECT_EQ(r.f, 2);
  EXPECT_EQ(r.q, 1);
  EXPECT_THROW(canonical_representation(5, 4, 1), std::logic_error);
}

}  // namespace
}  // namespace twoadic
