#pragma once

#include "qmfopt/channel.hpp"
#include "qmfopt/errors.hpp"
#include "qmfopt/numerics.hpp"
#include "qmfopt/rates_single.hpp"

namespace qmfopt {

/// What a CSIR-limited relay knows: its incoming squared gain, the target
/// rate, and the fading statistics of the two links it cannot observe.
struct CsirContext {
    double h2;
    double rate_bits;
    double lambda1;  ///< inverse mean of |g1|^2
    double lambda2;  ///< inverse mean of |g2|^2
};

/// Rate-maximizing distortion under global CSI: (1 + h^2 + g2^2)/g1^2, the
/// point where the two full-duplex QMF branches meet.
Distortion opt_global(const ChannelSingle& ch);

/// Outage-minimizing distortion under local CSI (h, g1 known): the positive
/// root of g1^2 D^2 + (g1^2 - h^2 - 2^R) D - 2^R = 0, equating the two
/// g2^2 thresholds.
Distortion opt_local(double h2, double g1_2, double rate_bits);

/// Conditional outage given (h, g1) at distortion d, with g2^2 ~ Exp(lambda2):
/// 1 - exp(-lambda2 * max{clip(beta1), clip(beta2)}).
double conditional_outage_local(double h2, double g1_2, double rate_bits, Distortion d,
                                double lambda2);

/// Conditional success probability Q(D) given only h, in closed form for the
/// equal- and unequal-rate fading branches.
double csir_Q(const CsirContext& ctx, Distortion d);

/// d/dD of csir_Q, using the analytic expression (piecewise across the
/// alpha1-clipping threshold).
double csir_Q_derivative(const CsirContext& ctx, double delta);

/// The success region of csir_Q in the (g1^2, g2^2) plane, for cross-checking
/// the closed form against the generic exponential-measure integrator.
numerics::Region2D csir_success_region(const CsirContext& ctx, Distortion d);

/// Threshold below which the direct-link threshold alpha1 clips to zero.
double csir_delta_threshold(const CsirContext& ctx);

/// Outage-optimal CSIR distortion.  Equal fading rates: max of the cubic
/// critical point and the clipping threshold, in closed form.  Unequal rates:
/// a safeguarded global scan of Q with derivative polish (the critical point
/// is conjectured unique but not proven, so the scan does not rely on it).
Distortion opt_csir(const CsirContext& ctx);

}  // namespace qmfopt
