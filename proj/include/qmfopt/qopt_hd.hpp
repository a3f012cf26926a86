#pragma once

#include "qmfopt/channel.hpp"
#include "qmfopt/errors.hpp"
#include "qmfopt/numerics.hpp"
#include "qmfopt/qopt_fd.hpp"
#include "qmfopt/rates_single.hpp"

namespace qmfopt {

/// What the half-duplex relay decided to run for one fading block.
struct HdPolicy {
    enum class Mode { Qmf, Ddf, Direct };
    Mode mode;
    HdSchedule f;
    Distortion delta;  ///< meaningful in Qmf mode
};

/// For a fixed schedule, the distortion where the two half-duplex QMF branches
/// cross (the rate-maximizing choice; the crossing is unique because one
/// branch falls and the other rises in the distortion).
Distortion hd_delta_crossing(const ChannelSingle& ch, HdSchedule s);

struct HdGlobalOptimum {
    double f;
    Distortion delta;
    double rate;
};

/// Joint (schedule, distortion) rate maximization with global CSI: the inner
/// distortion is the branch crossing, the outer schedule search is a scanned
/// and refined maximization over (0,1).
HdGlobalOptimum hd_opt_global(const ChannelSingle& ch);

/// Conditional outage given h at schedule f and distortion d, integrating the
/// exponential pair (g1^2, g2^2) over the success region induced by the
/// half-duplex QMF rate.
double hd_csir_outage(const CsirContext& ctx, HdSchedule s, Distortion d);

/// The success region used by hd_csir_outage (exposed for oracle checks).
numerics::Region2D hd_csir_success_region(const CsirContext& ctx, HdSchedule s, Distortion d);

struct HdCsirOptimum {
    double f;
    Distortion delta;
    double outage;
};

/// Best distortion at a fixed schedule (safeguarded log scan + refinement).
HdCsirOptimum hd_csir_delta_opt(const CsirContext& ctx, HdSchedule s);

/// Joint CSIR optimization of (f, delta) by nested scanned searches.
HdCsirOptimum hd_opt_csir(const CsirContext& ctx);

/// Conditional outage of dynamic decode-forward at a schedule that permits
/// decoding: the forwarding phase must carry the rate on its own.
double ddf_schedule_outage(const CsirContext& ctx, HdSchedule s);

/// CSIR-limited scheme selection: scan schedules up to the minimal decoding
/// fraction f_DDF = R / log2(1+h^2) with QMF-type outage, plus the single DDF
/// candidate at f_DDF itself (outage only grows for longer listening).
/// Returns the outage-minimizing policy.
HdPolicy hybrid_ddf_qmf(const CsirContext& ctx);

/// Conditional outage of an arbitrary policy under the same CSIR statistics.
double hd_policy_outage(const CsirContext& ctx, const HdPolicy& policy);

namespace detail_hd {

/// Search sizes for the nested CSIR optimizations; the defaults match the
/// published contract, coarser settings serve the Monte Carlo policy tables.
struct SearchParams {
    int f_points = 64;
    int delta_points = 128;
    double delta_lo = 1e-4;
    double delta_hi = 1e6;
};

HdCsirOptimum csir_delta_opt(const CsirContext& ctx, double f, const SearchParams& sp);
HdCsirOptimum opt_csir(const CsirContext& ctx, const SearchParams& sp);
HdPolicy hybrid(const CsirContext& ctx, const SearchParams& sp);
Distortion delta_crossing_or_infinite(const ChannelSingle& ch, HdSchedule s);
HdGlobalOptimum opt_global(const ChannelSingle& ch, int f_points);

}  // namespace detail_hd

}  // namespace qmfopt
