#include "qmfopt/diamond.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qmfopt/numerics.hpp"

namespace qmfopt::diamond {

namespace {

void check_size(const ChannelDiamond& ch) {
    if (ch.n < 1 || ch.h2.size() != static_cast<size_t>(ch.n) ||
        ch.g2.size() != static_cast<size_t>(ch.n))
        throw std::invalid_argument("diamond channel: inconsistent relay count");
    if (ch.n > kMaxRelays) throw TooManyRelays(ch.n);
}

double penalty_bits(double delta) {
    return std::isinf(delta) ? 0.0 : log2_1p(1.0 / delta);
}

}  // namespace

double qmf_rate(const ChannelDiamond& ch, const DistortionVector& dv) {
    check_size(ch);
    if (dv.deltas.size() != static_cast<size_t>(ch.n))
        throw std::invalid_argument("qmf_rate: one distortion per relay required");
    const int n = ch.n;
    std::vector<double> quantized(n), penalty(n);
    for (int i = 0; i < n; ++i) {
        if (!(dv.deltas[i] > 0.0))
            throw std::invalid_argument("qmf_rate: distortions must be > 0");
        quantized[i] = std::isinf(dv.deltas[i]) ? 0.0 : ch.h2[i] / (1.0 + dv.deltas[i]);
        penalty[i] = penalty_bits(dv.deltas[i]);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double sum_g = 0.0, sum_h = 0.0, pen = 0.0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                sum_g += ch.g2[i];
                pen += penalty[i];
            } else {
                sum_h += quantized[i];
            }
        }
        double value = std::max(0.0, log2_1p(sum_g) + log2_1p(sum_h) - pen);
        best = std::min(best, value);
    }
    return best;
}

double cutset(const ChannelDiamond& ch) {
    check_size(ch);
    const int n = ch.n;
    std::vector<double> amp(n);
    for (int i = 0; i < n; ++i) amp[i] = std::sqrt(ch.g2[i]);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double sum_amp = 0.0, sum_h = 0.0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i))
                sum_amp += amp[i];
            else
                sum_h += ch.h2[i];
        }
        best = std::min(best, log2_1p(sum_amp * sum_amp) + log2_1p(sum_h));
    }
    return best;
}

double df_rate(const ChannelDiamond& ch) {
    check_size(ch);
    const int n = ch.n;
    double best = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        double sum_g = 0.0;
        double weakest = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                sum_g += ch.g2[i];
                weakest = std::min(weakest, log2_1p(ch.h2[i]));
            }
        }
        best = std::max(best, std::min(log2_1p(sum_g), weakest));
    }
    return best;
}

double universal_gap(int n, Distortion d) {
    if (n < 1) throw std::invalid_argument("universal_gap: need at least one relay");
    double kappa = d.penalty_bits();
    double all_quantized = std::log2(static_cast<double>(n)) + n * kappa;
    if (n < 2) return all_quantized;
    double split = std::log2(static_cast<double>(n - 1)) + (n - 1) * kappa +
                   (d.is_infinite() ? std::numeric_limits<double>::infinity()
                                    : log2_1p(d.delta));
    return std::max(all_quantized, split);
}

Distortion universal_delta_opt(int n) {
    if (n < 2) throw std::invalid_argument("universal_delta_opt: derived for N >= 2");
    return Distortion(n == 2 ? 2.0 : static_cast<double>(n - 1));
}

double gap_star(int n) {
    if (n < 2) throw std::invalid_argument("gap_star: derived for N >= 2");
    if (n == 2) return 2.0 * std::log2(3.0) - 1.0;
    double nd = static_cast<double>(n);
    return nd * std::log2(nd / (nd - 1.0)) + 2.0 * std::log2(nd - 1.0);
}

TwoRelayCase two_relay_case_analysis(const ChannelDiamond& ch) {
    check_size(ch);
    if (ch.n != 2) throw std::invalid_argument("two_relay_case_analysis: requires N = 2");
    const double h1 = ch.h2[0], h2 = ch.h2[1], g1 = ch.g2[0], g2 = ch.g2[1];
    if (!(h1 > 0.0 && h2 > 0.0 && g1 > 0.0 && g2 > 0.0)) throw DegenerateGain();
    TwoRelayCase c{};
    c.a_coef = h1 * (1.0 + h1) - h2 * (1.0 + h1 + g1 + g2);
    c.b_coef = 2.0 * h1 * (1.0 + h1);
    c.c_coef = h1 * (1.0 + h1 + h2);
    c.delta1 = ((1.0 + g1 + g2) * (1.0 + h1 + h2) + (1.0 + g2) * h1 * h2) /
               (g2 * (1.0 + g1 + g2) * (1.0 + h1));
    c.delta2 = (1.0 + g1) * (1.0 + h2) / g2;
    c.delta3 = std::numeric_limits<double>::quiet_NaN();
    if (c.a_coef >= 0.0) {
        c.interval = 3;  // outer objective rises throughout the middle interval
        return c;
    }
    c.delta3 = (-c.b_coef - std::sqrt(c.b_coef * c.b_coef - 4.0 * c.a_coef * c.c_coef)) /
               (2.0 * c.a_coef);
    c.interval = c.delta3 < c.delta1 ? 1 : (c.delta3 < c.delta2 ? 2 : 3);
    return c;
}

TwoRelayOptimum two_relay_opt(const ChannelDiamond& ch) {
    TwoRelayCase c = two_relay_case_analysis(ch);
    const double h1 = ch.h2[0], h2 = ch.h2[1], g1 = ch.g2[0], g2 = ch.g2[1];
    auto inner_middle = [&](double d2) {
        return ((1.0 + h1) * d2 + (1.0 + h1 + h2)) / ((g1 + g2) * d2 - (1.0 + h2));
    };
    double d2, d1;
    if (c.interval == 3) {
        // optimum at the upper interval edge, where three cut curves meet
        d2 = c.delta2;
        d1 = inner_middle(d2);
    } else if (c.interval == 1) {
        d2 = c.delta1;
        d1 = (1.0 + g2) * (1.0 + h1) / g1;
    } else {
        d2 = c.delta3;
        d1 = inner_middle(d2);
    }
    DistortionVector dv{{d1, d2}};
    return {d1, d2, qmf_rate(ch, dv), c.interval};
}

double symmetric_rate_k(int n, double h2, double g2, int k, double delta) {
    double quantized = std::isinf(delta) ? 0.0 : h2 / (1.0 + delta);
    return log2_1p((n - k) * quantized) + log2_1p(k * g2) - k * penalty_bits(delta);
}

SymmetricOptimum symmetric_opt(int n, double h2, double g2) {
    if (n < 1) throw std::invalid_argument("symmetric_opt: need at least one relay");
    if (!(h2 > 0.0 && g2 > 0.0)) throw DegenerateGain();
    auto gap = [&](double d) {
        return symmetric_rate_k(n, h2, g2, 0, d) - symmetric_rate_k(n, h2, g2, n, d);
    };
    double delta = numerics::find_root(gap, numerics::Bracket{1e-12, 1e12, 1e-12});
    double rate = symmetric_rate_k(n, h2, g2, 0, delta);
    for (int k = 1; k < n; ++k) {
        if (symmetric_rate_k(n, h2, g2, k, delta) < rate - 1e-9)
            throw std::logic_error("symmetric_opt: an interior cut undercuts the crossing");
    }
    return {delta, rate};
}

SymmetricStructureReport nrelay_lemma_checks(int n, double h2, double g2) {
    SymmetricStructureReport report;
    if (n < 1 || !(h2 > 0.0) || !(g2 > 0.0)) {
        report.detail = "invalid instance";
        return report;
    }
    auto rk = [&](int k, double d) { return symmetric_rate_k(n, h2, g2, k, d); };

    // (a) every pair of cut curves crosses exactly once on a dense log grid
    constexpr int kGrid = 480;
    report.unique_crossings = true;
    for (int i = 0; i <= n && report.unique_crossings; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            int sign_changes = 0;
            double prev = 0.0;
            for (int t = 0; t < kGrid; ++t) {
                double d = std::pow(10.0, -8.0 + 16.0 * t / (kGrid - 1));
                double diff = rk(i, d) - rk(j, d);
                if (diff != 0.0) {
                    if (prev != 0.0 && (diff > 0.0) != (prev > 0.0)) ++sign_changes;
                    prev = diff;
                }
            }
            if (sign_changes != 1) {
                report.unique_crossings = false;
                report.detail = "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                ") crossed " + std::to_string(sign_changes) + " times";
                break;
            }
        }
    }

    // (b) consecutive differences blow up as the distortion vanishes
    report.low_delta_divergence = true;
    for (int i = 0; i < n; ++i) {
        if (rk(i, 1e-9) - rk(i + 1, 1e-9) <= 20.0) {
            report.low_delta_divergence = false;
            report.detail = "difference " + std::to_string(i) + " small at 1e-9";
            break;
        }
    }

    // (c) consecutive crossings are non-decreasing
    report.consecutive_crossings.reserve(n);
    for (int i = 0; i < n; ++i) {
        auto gap = [&](double d) { return rk(i, d) - rk(i + 1, d); };
        report.consecutive_crossings.push_back(
            numerics::find_root(gap, numerics::Bracket{1e-12, 1e12, 1e-12}));
    }
    report.ordered_crossings = true;
    for (int i = 0; i + 1 < n; ++i) {
        if (report.consecutive_crossings[i] >
            report.consecutive_crossings[i + 1] * (1.0 + 1e-9)) {
            report.ordered_crossings = false;
            report.detail = "crossing order violated at index " + std::to_string(i);
            break;
        }
    }
    return report;
}

RelayPartition decode_set(const ChannelDiamond& ch, double rate_bits) {
    check_size(ch);
    RelayPartition part;
    for (int i = 0; i < ch.n; ++i)
        if (rate_bits < log2_1p(ch.h2[i])) part.mask |= (1u << i);
    return part;
}

double hybrid_rate(const ChannelDiamond& ch, RelayPartition omega_d, const DistortionVector& dv) {
    check_size(ch);
    if (dv.deltas.size() != static_cast<size_t>(ch.n))
        throw std::invalid_argument("hybrid_rate: one distortion per relay required");
    const int n = ch.n;
    const std::uint32_t decoded = omega_d.mask & ((1u << n) - 1u);
    std::vector<double> quantized(n), penalty(n);
    for (int i = 0; i < n; ++i) {
        quantized[i] = std::isinf(dv.deltas[i]) ? 0.0 : ch.h2[i] / (1.0 + dv.deltas[i]);
        penalty[i] = penalty_bits(dv.deltas[i]);
    }
    // enumerate subsets gamma of the non-decoding relays
    std::uint32_t rest = ~decoded & ((1u << n) - 1u);
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t gamma = 0;
    while (true) {
        double sum_g = 0.0, sum_h = 0.0, pen = 0.0;
        for (int i = 0; i < n; ++i) {
            std::uint32_t bit = 1u << i;
            if (decoded & bit) {
                sum_g += ch.g2[i];
            } else if (gamma & bit) {
                sum_g += ch.g2[i];
                pen += penalty[i];
            } else {
                sum_h += quantized[i];
            }
        }
        best = std::min(best, log2_1p(sum_g) + log2_1p(sum_h) - pen);
        if (gamma == rest) break;
        gamma = (gamma - rest) & rest;  // next subset of rest
    }
    return std::max(0.0, best);
}

}  // namespace qmfopt::diamond
