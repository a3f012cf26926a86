#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmfopt/channel.hpp"

namespace qmfopt {

/// log2(1 + x) without cancellation for small x.
inline double log2_1p(double x) { return std::log1p(x) * 1.4426950408889634; }

/// Gaussian vector quantizer distortion.  +infinity is a sentinel meaning the
/// relay forwards nothing informative; rate expressions use the analytic
/// limits at that point rather than a large-number stand-in.
struct Distortion {
    double delta;

    explicit Distortion(double d) : delta(d) {
        if (!(d > 0.0)) throw std::invalid_argument("Distortion: delta must be > 0");
    }
    static Distortion noise_level() { return Distortion(1.0); }
    static Distortion infinite() { return Distortion(std::numeric_limits<double>::infinity()); }
    bool is_infinite() const { return std::isinf(delta); }

    /// log2((1+delta)/delta), the per-relay quantization rate penalty; 0 at infinity.
    double penalty_bits() const { return is_infinite() ? 0.0 : log2_1p(1.0 / delta); }
};

/// Half-duplex relay listening fraction.
struct HdSchedule {
    double f;

    explicit HdSchedule(double frac) : f(frac) {
        if (!(frac >= 0.0 && frac <= 1.0))
            throw std::invalid_argument("HdSchedule: f must lie in [0,1]");
    }
};

/// Full-duplex QMF rate: clip+min of the broadcast branch
/// I1 = log2(1 + h^2/(1+D) + g2^2) and the multiple-access branch
/// I2 = log2(1 + g1^2 + g2^2) - log2((1+D)/D).
double fd_qmf_rate(const ChannelSingle& ch, Distortion d);
double fd_qmf_i1(const ChannelSingle& ch, Distortion d);
double fd_qmf_i2(const ChannelSingle& ch, Distortion d);

/// Full-duplex decode-forward with point-to-point fallback; no coherent
/// combining gain (the relay does not know forward-link phases).
double fd_df_rate(const ChannelSingle& ch);

/// Full-duplex cutset bound min{log2(1+h^2+g2^2), log2(1+(g1+g2)^2)} with
/// nonnegative amplitude alignment in the coherent sum.
double fd_cutset(const ChannelSingle& ch);

/// Half-duplex QMF rate at schedule f; the quantization penalty enters the
/// multiple-access branch scaled by the listening fraction.
double hd_qmf_rate(const ChannelSingle& ch, Distortion d, HdSchedule s);
double hd_qmf_i1(const ChannelSingle& ch, Distortion d, HdSchedule s);
double hd_qmf_i2(const ChannelSingle& ch, Distortion d, HdSchedule s);

/// Dynamic decode-forward rate at a fixed schedule (direct link fallback included).
double hd_ddf_rate(const ChannelSingle& ch, HdSchedule s);

struct DdfOptimum {
    double f;
    double rate;
};

/// Best DDF schedule: the crossing of the decode constraint f*log2(1+h^2) with
/// the decreasing forwarding line, clipped to [0,1]; direct transmission when
/// h^2 <= g2^2.
DdfOptimum hd_ddf_best(const ChannelSingle& ch);

/// Half-duplex cutset bound at schedule f.
double hd_cutset(const ChannelSingle& ch, HdSchedule s);

/// The schedule equating the two half-duplex cut values (global CSI).
double hd_cutset_best_schedule(const ChannelSingle& ch);

}  // namespace qmfopt
