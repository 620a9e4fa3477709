#pragma once

// Frozen numeric envelopes. The asymptotic statements only give O(.) terms; the
// constants below were fixed once from the pilot runs in scripts/pilot_envelopes.sh
// and are embedded in every report's metadata.

namespace twoadic {

/// Exponent of the published upper envelope E^rat < 2^{0.7716 N}, E^2adic < 0.7716 N.
inline constexpr double kUpperEnvelopeExponent = 0.7716;

/// E^2adic <= N/2 + c log2 N. Pilot, N = 2..22: largest (E - N/2) / log2 N is -0.093.
inline constexpr double kExpectationUpperEnvelope = 2.0;

/// sup_{n0 <= N <= n_max} |lambda(N) - N/2| / log2 N <= c for most random words.
/// Pilot (seed 1, 200 samples, n_max 2048, n0 16): max 1.50.
inline constexpr double kSupDeviationEnvelope = 3.0;
inline constexpr double kSupDeviationQuantile = 0.95;

/// |lambda(n_max)/n_max - 1/2| tolerance on the sample mean.
inline constexpr double kNormalizedTailTolerance = 0.01;

/// |cumulative_m(N, W) / W^2 - 8/pi^2| <= c log2(W) / W for W >= 64.
/// Pilot over N <= 41, 64 <= W <= 2^20: 0.154.
inline constexpr double kCumulativeEnvelope = 8.0;

/// Relative slack of |Delta_N| against 8/pi^2 2^N / N^{2 delta} at N = 16, delta = 1.
/// Pilot: -0.070.
inline constexpr double kSmallSetRelativeSlack = 0.25;

/// |Gamma_N| / 2^N <= C / N^{2 delta - 1}. Pilot, N = 8..20, delta = 1: 0.027.
inline constexpr double kLargeSetConstant = 0.05;

}  // namespace twoadic
