#include "qmfopt/qopt_hd.hpp"

#include <algorithm>
#include <cmath>

namespace qmfopt {

namespace {

double direct_outage(const CsirContext& ctx) {
    if (ctx.rate_bits <= 0.0) return 0.0;
    return 1.0 - std::exp(-ctx.lambda2 * (std::exp2(ctx.rate_bits) - 1.0));
}

/// Success region of {(1-f) log2(1+u+v) + f log2(1+v) - f*kappa > R} together
/// with an optional floor v >= v_min from a v-only constraint.
numerics::Region2D forwarding_region(double rate_bits, double f, double kappa, double v_min) {
    numerics::Region2D region;
    const double one_minus_f = 1.0 - f;
    // where the u-requirement hits zero: (1+v)^{1/(1-f)} = 2^{(R+f*kappa)/(1-f)}
    double v_flat = std::exp2(rate_bits + f * kappa) - 1.0;
    auto curve = [=](double v) {
        double e = (rate_bits + f * kappa - f * log2_1p(v)) / one_minus_f;
        return std::exp2(e) - (1.0 + v);  // may overflow to +inf; measure is then 0
    };
    if (v_flat > v_min) {
        numerics::Region2D::Piece curved;
        curved.v_begin = v_min;
        curved.v_end = v_flat;
        curved.u_curve = curve;
        region.pieces.push_back(std::move(curved));
        numerics::Region2D::Piece flat;
        flat.v_begin = v_flat;
        region.pieces.push_back(std::move(flat));
    } else {
        numerics::Region2D::Piece flat;
        flat.v_begin = v_min;
        region.pieces.push_back(std::move(flat));
    }
    return region;
}

}  // namespace

Distortion hd_delta_crossing(const ChannelSingle& ch, HdSchedule s) {
    if (!(ch.g1_2 > 0.0)) throw RelayLinkAbsent();
    if (!(s.f > 0.0 && s.f < 1.0))
        throw std::invalid_argument("hd_delta_crossing: schedule must be interior");
    auto gap = [&](double delta) {
        Distortion d(delta);
        return hd_qmf_i1(ch, d, s) - hd_qmf_i2(ch, d, s);
    };
    return Distortion(numerics::find_root(gap, numerics::Bracket{1e-12, 1e12, 1e-12}));
}

namespace detail_hd {

Distortion delta_crossing_or_infinite(const ChannelSingle& ch, HdSchedule s) {
    try {
        return hd_delta_crossing(ch, s);
    } catch (const numerics::NoSignChange&) {
        // g1^2 so small the branches never cross in double range
        return Distortion::infinite();
    }
}

HdGlobalOptimum opt_global(const ChannelSingle& ch, int f_points) {
    if (!(ch.g1_2 > 0.0)) throw RelayLinkAbsent();
    auto rate_at = [&](double f) {
        HdSchedule s(f);
        return hd_qmf_rate(ch, delta_crossing_or_infinite(ch, s), s);
    };
    numerics::GridMax best = numerics::grid_refine_max(rate_at, 1e-4, 1.0 - 1e-4, f_points);
    HdSchedule s(best.arg);
    return {best.arg, delta_crossing_or_infinite(ch, s), best.value};
}

}  // namespace detail_hd

HdGlobalOptimum hd_opt_global(const ChannelSingle& ch) {
    return detail_hd::opt_global(ch, 1024);
}

numerics::Region2D hd_csir_success_region(const CsirContext& ctx, HdSchedule s, Distortion d) {
    const double R = ctx.rate_bits;
    if (R <= 0.0) return numerics::Region2D::full_quadrant();
    const double f = s.f;
    const double kappa = d.penalty_bits();
    const double relay_term = d.is_infinite() ? 0.0 : ctx.h2 / (1.0 + d.delta);
    if (f <= 0.0) {
        // relay never listens: both branches collapse to the direct link
        return numerics::Region2D::rectangle(0.0, std::exp2(R) - 1.0);
    }
    if (f >= 1.0) {
        // relay never transmits: both constraints act on g2^2 alone
        double v1 = std::exp2(R) - 1.0 - relay_term;
        double v2 = std::exp2(R + kappa) - 1.0;
        return numerics::Region2D::rectangle(0.0, std::max({v1, v2, 0.0}));
    }
    // the listening branch f*log2(1+relay+v) + (1-f)*log2(1+v) > R caps v from below
    auto listen = [&](double v) {
        return f * log2_1p(relay_term + v) + (1.0 - f) * log2_1p(v) - R;
    };
    double v_min = 0.0;
    if (listen(0.0) < 0.0) {
        double hi = std::exp2(R) - 1.0;  // listen(hi) >= 0 always
        v_min = numerics::find_root(listen, numerics::Bracket{0.0, hi + 1e-12, 1e-12});
    }
    return forwarding_region(R, f, kappa, v_min);
}

double hd_csir_outage(const CsirContext& ctx, HdSchedule s, Distortion d) {
    if (ctx.rate_bits <= 0.0) return 0.0;
    numerics::Region2D region = hd_csir_success_region(ctx, s, d);
    return 1.0 - numerics::exp_measure(region, ctx.lambda1, ctx.lambda2);
}

double ddf_schedule_outage(const CsirContext& ctx, HdSchedule s) {
    if (ctx.rate_bits <= 0.0) return 0.0;
    if (s.f >= 1.0) return direct_outage(ctx);
    numerics::Region2D region = forwarding_region(ctx.rate_bits, s.f, 0.0, 0.0);
    return 1.0 - numerics::exp_measure(region, ctx.lambda1, ctx.lambda2);
}

namespace detail_hd {

HdCsirOptimum csir_delta_opt(const CsirContext& ctx, double f, const SearchParams& sp) {
    if (f <= 0.0) return {0.0, Distortion::infinite(), direct_outage(ctx)};
    HdSchedule s(f);
    auto success_of_log = [&](double t) {
        return -hd_csir_outage(ctx, s, Distortion(std::exp(t)));
    };
    numerics::GridMax best = numerics::grid_refine_max(
        success_of_log, std::log(sp.delta_lo), std::log(sp.delta_hi), sp.delta_points);
    return {f, Distortion(std::exp(best.arg)), -best.value};
}

HdCsirOptimum opt_csir(const CsirContext& ctx, const SearchParams& sp) {
    HdCsirOptimum best{0.0, Distortion::infinite(), direct_outage(ctx)};
    auto objective = [&](double f) {
        HdCsirOptimum cand = csir_delta_opt(ctx, f, sp);
        if (cand.outage < best.outage) best = cand;
        return -cand.outage;
    };
    numerics::grid_refine_max(objective, 1e-3, 1.0 - 1e-3, sp.f_points);
    return best;
}

HdPolicy hybrid(const CsirContext& ctx, const SearchParams& sp) {
    if (!(ctx.rate_bits > 0.0))
        throw std::invalid_argument("hybrid_ddf_qmf: target rate must be > 0");
    double decode_bits = log2_1p(ctx.h2);
    double f_ddf = decode_bits > 0.0 ? ctx.rate_bits / decode_bits
                                     : std::numeric_limits<double>::infinity();
    if (!(f_ddf <= 1.0)) {
        // decoding is impossible at any schedule
        HdCsirOptimum q = opt_csir(ctx, sp);
        if (q.f <= 1e-12) return {HdPolicy::Mode::Direct, HdSchedule(0.0), Distortion::infinite()};
        return {HdPolicy::Mode::Qmf, HdSchedule(q.f), q.delta};
    }
    // QMF-type candidates strictly below f_DDF
    HdCsirOptimum best_qmf{0.0, Distortion::infinite(), direct_outage(ctx)};
    double hi = f_ddf * (1.0 - 1e-9);
    if (hi > 1e-6) {
        auto objective = [&](double f) {
            HdCsirOptimum cand = csir_delta_opt(ctx, f, sp);
            if (cand.outage < best_qmf.outage) best_qmf = cand;
            return -cand.outage;
        };
        numerics::grid_refine_max(objective, 0.0, hi, std::max(16, sp.f_points / 2));
    }
    double ddf_outage = ddf_schedule_outage(ctx, HdSchedule(std::min(f_ddf, 1.0)));
    if (ddf_outage <= best_qmf.outage)
        return {HdPolicy::Mode::Ddf, HdSchedule(std::min(f_ddf, 1.0)), Distortion::infinite()};
    if (best_qmf.f <= 1e-12)
        return {HdPolicy::Mode::Direct, HdSchedule(0.0), Distortion::infinite()};
    return {HdPolicy::Mode::Qmf, HdSchedule(best_qmf.f), best_qmf.delta};
}

}  // namespace detail_hd

HdCsirOptimum hd_csir_delta_opt(const CsirContext& ctx, HdSchedule s) {
    return detail_hd::csir_delta_opt(ctx, s.f, detail_hd::SearchParams{});
}

HdCsirOptimum hd_opt_csir(const CsirContext& ctx) {
    return detail_hd::opt_csir(ctx, detail_hd::SearchParams{});
}

HdPolicy hybrid_ddf_qmf(const CsirContext& ctx) {
    return detail_hd::hybrid(ctx, detail_hd::SearchParams{});
}

double hd_policy_outage(const CsirContext& ctx, const HdPolicy& policy) {
    switch (policy.mode) {
        case HdPolicy::Mode::Qmf:
            return hd_csir_outage(ctx, policy.f, policy.delta);
        case HdPolicy::Mode::Ddf:
            return ddf_schedule_outage(ctx, policy.f);
        case HdPolicy::Mode::Direct:
        default:
            return direct_outage(ctx);
    }
}

}  // namespace qmfopt
