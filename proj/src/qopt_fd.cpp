#include "qmfopt/qopt_fd.hpp"

#include <algorithm>
#include <cmath>

namespace qmfopt {

namespace {

constexpr double kLambdaBranchTol = 1e-6;

bool lambdas_equal(const CsirContext& ctx) {
    return std::abs(ctx.lambda1 - ctx.lambda2) <=
           kLambdaBranchTol * std::max(ctx.lambda1, ctx.lambda2);
}

struct Alphas {
    double a1;        // direct-link threshold, may be negative
    double a2;        // sum threshold, always > a1
    double a1_clip;   // max(a1, 0)
};

Alphas csir_alphas(const CsirContext& ctx, double delta) {
    double pow_r = std::exp2(ctx.rate_bits);
    Alphas a{};
    if (std::isinf(delta)) {
        a.a1 = pow_r - 1.0;
        a.a2 = pow_r - 1.0;
    } else {
        a.a1 = pow_r - ctx.h2 / (1.0 + delta) - 1.0;
        a.a2 = pow_r * (1.0 + delta) / delta - 1.0;
    }
    a.a1_clip = std::max(a.a1, 0.0);
    return a;
}

}  // namespace

Distortion opt_global(const ChannelSingle& ch) {
    if (!(ch.g1_2 > 0.0)) throw RelayLinkAbsent();
    return Distortion((1.0 + ch.h2 + ch.g2_2) / ch.g1_2);
}

Distortion opt_local(double h2, double g1_2, double rate_bits) {
    if (!(g1_2 > 0.0)) throw RelayLinkAbsent();
    double pow_r = std::exp2(rate_bits);
    double b = g1_2 - h2 - pow_r;
    double disc = std::sqrt(b * b + 4.0 * g1_2 * pow_r);
    // positive root of g1^2 D^2 + b D - 2^R, in the cancellation-free form
    double delta = b >= 0.0 ? 2.0 * pow_r / (b + disc) : (disc - b) / (2.0 * g1_2);
    return Distortion(delta);
}

double conditional_outage_local(double h2, double g1_2, double rate_bits, Distortion d,
                                double lambda2) {
    if (rate_bits <= 0.0) return 0.0;  // a clipped rate always supports R = 0
    double pow_r = std::exp2(rate_bits);
    double beta1, beta2;
    if (d.is_infinite()) {
        beta1 = pow_r - 1.0;
        beta2 = pow_r - g1_2 - 1.0;
    } else {
        beta1 = pow_r - h2 / (1.0 + d.delta) - 1.0;
        beta2 = pow_r * (1.0 + d.delta) / d.delta - g1_2 - 1.0;
    }
    double needed = std::max({beta1, beta2, 0.0});
    return 1.0 - std::exp(-lambda2 * needed);
}

double csir_delta_threshold(const CsirContext& ctx) {
    return ctx.h2 / (std::exp2(ctx.rate_bits) - 1.0) - 1.0;
}

double csir_Q(const CsirContext& ctx, Distortion d) {
    if (ctx.rate_bits <= 0.0) return 1.0;
    Alphas a = csir_alphas(ctx, d.delta);
    double l1 = ctx.lambda1, l2 = ctx.lambda2;
    double q;
    if (lambdas_equal(ctx)) {
        double lam = 0.5 * (l1 + l2);
        q = std::exp(-lam * a.a2) * (1.0 + lam * (a.a2 - a.a1_clip));
    } else {
        q = l2 / (l2 - l1) * std::exp(-(l1 * a.a2 + (l2 - l1) * a.a1_clip)) -
            l1 / (l2 - l1) * std::exp(-l2 * a.a2);
    }
    return std::clamp(q, 0.0, 1.0);
}

double csir_Q_derivative(const CsirContext& ctx, double delta) {
    Alphas a = csir_alphas(ctx, delta);
    double pow_r = std::exp2(ctx.rate_bits);
    double a2p = -pow_r / (delta * delta);
    double a1p = a.a1 > 0.0 ? ctx.h2 / ((1.0 + delta) * (1.0 + delta)) : 0.0;
    double l1 = ctx.lambda1, l2 = ctx.lambda2;
    if (lambdas_equal(ctx)) {
        double lam = 0.5 * (l1 + l2);
        return lam * std::exp(-lam * a.a2) *
               (lam * (a.a1_clip - a.a2) * a2p - a1p);
    }
    double e1 = std::exp(-(l1 * a.a2 + (l2 - l1) * a.a1_clip));
    double e2 = std::exp(-l2 * a.a2);
    return (l2 * e1 * ((l1 - l2) * a1p - l1 * a2p) + l1 * l2 * a2p * e2) / (l2 - l1);
}

numerics::Region2D csir_success_region(const CsirContext& ctx, Distortion d) {
    if (ctx.rate_bits <= 0.0) return numerics::Region2D::full_quadrant();
    Alphas a = csir_alphas(ctx, d.delta);
    double v_min = a.a1_clip;        // g2^2 alone must clear alpha1
    double sum_min = a.a2;           // g1^2 + g2^2 must clear alpha2
    numerics::Region2D region;
    if (sum_min > v_min) {
        numerics::Region2D::Piece curved;
        curved.v_begin = v_min;
        curved.v_end = sum_min;
        curved.u_curve = [sum_min](double v) { return sum_min - v; };
        region.pieces.push_back(std::move(curved));
        numerics::Region2D::Piece flat;
        flat.v_begin = sum_min;
        region.pieces.push_back(std::move(flat));
    } else {
        numerics::Region2D::Piece flat;
        flat.v_begin = v_min;
        region.pieces.push_back(std::move(flat));
    }
    return region;
}

Distortion opt_csir(const CsirContext& ctx) {
    if (!(ctx.rate_bits > 0.0))
        throw std::invalid_argument("opt_csir: target rate must be > 0");
    double delta_t = csir_delta_threshold(ctx);
    if (!(ctx.h2 > 0.0)) {
        // nothing usable arrives at the relay; Q increases towards its
        // direct-link limit, so forward nothing
        return Distortion::infinite();
    }
    double pow_r = std::exp2(ctx.rate_bits);

    if (lambdas_equal(ctx)) {
        double lam = 0.5 * (ctx.lambda1 + ctx.lambda2);
        double dagger = numerics::cubic_positive_root(
            ctx.h2 / lam, -pow_r * (pow_r + ctx.h2),
            -pow_r * (2.0 * pow_r + ctx.h2), -pow_r * pow_r);
        return Distortion(std::max(dagger, delta_t));
    }

    // unequal fading rates: safeguarded global scan of Q plus derivative
    // polish, since uniqueness of the critical point is only a conjecture
    auto q_of_log = [&](double t) { return csir_Q(ctx, Distortion(std::exp(t))); };
    double lo = std::log(1e-6), hi = std::log(1e9);
    numerics::GridMax best = numerics::grid_refine_max(q_of_log, lo, hi, 400);
    double delta = std::exp(best.arg);
    if (delta_t > 0.0 && csir_Q(ctx, Distortion(delta_t)) >= best.value) delta = delta_t;

    // polish an interior critical point via the analytic derivative
    double window = 1.05;
    double a = delta / window, b = delta * window;
    if (delta > delta_t * window) {
        double da = csir_Q_derivative(ctx, a), db = csir_Q_derivative(ctx, b);
        if ((da > 0.0) != (db > 0.0))
            delta = numerics::find_root([&](double x) { return csir_Q_derivative(ctx, x); },
                                        numerics::Bracket{a, b, 1e-13});
    }
    return Distortion(std::max(delta, delta_t));
}

}  // namespace qmfopt
