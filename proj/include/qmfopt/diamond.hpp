#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmfopt/channel.hpp"
#include "qmfopt/errors.hpp"
#include "qmfopt/rates_single.hpp"

namespace qmfopt::diamond {

/// Relays on the destination side of a cut (bit i set means relay i+1 crossed).
struct RelayPartition {
    std::uint32_t mask = 0;
};

/// Per-relay quantizer distortions.
struct DistortionVector {
    std::vector<double> deltas;
};

inline constexpr int kMaxRelays = 20;  // explicit 2^N cut enumeration guard

/// QMF rate with per-relay Gaussian quantizers: the minimum over all 2^N cuts
/// of the clipped cut expression (destination-side relays contribute their
/// g_i^2 minus a quantization penalty, source-side relays their quantized
/// observations).
double qmf_rate(const ChannelDiamond& ch, const DistortionVector& dv);

/// Cutset bound: minimum over cuts of the coherent relay sum plus the
/// source-side broadcast term.
double cutset(const ChannelDiamond& ch);

/// Decode-forward: best decoding subset, limited by its weakest incoming link.
double df_rate(const ChannelDiamond& ch);

/// Worst-case gap to the cutset bound when every relay quantizes at the same
/// distortion, as a function of the common distortion and the relay count.
double universal_gap(int n, Distortion d);

/// The distortion minimizing the worst-case gap: N/(N-1) for two relays, N-1
/// beyond that.
Distortion universal_delta_opt(int n);

/// The optimized worst-case gap, Theta(log N).
double gap_star(int n);

/// Quantities of the two-relay max-min analysis: the interval boundaries of
/// the outer distortion and the quadratic coefficients deciding which interval
/// holds the optimum.
struct TwoRelayCase {
    double a_coef, b_coef, c_coef;
    double delta1, delta2;
    double delta3;  // defined only when a_coef < 0 (NaN otherwise)
    int interval;   // 1, 2 or 3: where the optimal outer distortion lands
};

TwoRelayCase two_relay_case_analysis(const ChannelDiamond& ch);

struct TwoRelayOptimum {
    double delta1;
    double delta2;
    double rate;
    int interval;
};

/// Closed-form optimal per-relay distortions for the two-relay network with
/// global CSI.
TwoRelayOptimum two_relay_opt(const ChannelDiamond& ch);

/// R_k for the symmetric network: k relays on the destination side of the cut.
double symmetric_rate_k(int n, double h2, double g2, int k, double delta);

struct SymmetricOptimum {
    double delta;
    double rate;
};

/// Common-distortion optimum for the symmetric network: the unique crossing of
/// R_0 (falling) and R_N (rising); the crossing simultaneously minimizes over
/// all cut indices.
SymmetricOptimum symmetric_opt(int n, double h2, double g2);

/// Numeric certification of the structural facts the symmetric solution rests
/// on: unique pairwise crossings, divergence of consecutive differences at
/// vanishing distortion, and ordering of the consecutive crossings.
struct SymmetricStructureReport {
    bool unique_crossings = false;
    bool low_delta_divergence = false;
    bool ordered_crossings = false;
    std::vector<double> consecutive_crossings;
    std::string detail;
    bool all_ok() const {
        return unique_crossings && low_delta_divergence && ordered_crossings;
    }
};

SymmetricStructureReport nrelay_lemma_checks(int n, double h2, double g2);

/// Relays whose incoming link supports decoding at rate R.
RelayPartition decode_set(const ChannelDiamond& ch, double rate_bits);

/// Supportable rate of the decode/quantize hybrid: decoded relays contribute
/// their g_i^2 penalty-free, the rest split across the remaining cut choices.
double hybrid_rate(const ChannelDiamond& ch, RelayPartition omega_d, const DistortionVector& dv);

}  // namespace qmfopt::diamond
