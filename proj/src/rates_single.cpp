#include "qmfopt/rates_single.hpp"

#include <algorithm>

namespace qmfopt {

double fd_qmf_i1(const ChannelSingle& ch, Distortion d) {
    double relay_term = d.is_infinite() ? 0.0 : ch.h2 / (1.0 + d.delta);
    return log2_1p(relay_term + ch.g2_2);
}

double fd_qmf_i2(const ChannelSingle& ch, Distortion d) {
    if (d.is_infinite()) return log2_1p(ch.g1_2 + ch.g2_2);
    return log2_1p(ch.g1_2 + ch.g2_2) - d.penalty_bits();
}

double fd_qmf_rate(const ChannelSingle& ch, Distortion d) {
    if (d.is_infinite()) return log2_1p(ch.g2_2);  // limit of the dominated I1 branch
    return std::max(0.0, std::min(fd_qmf_i1(ch, d), fd_qmf_i2(ch, d)));
}

double fd_df_rate(const ChannelSingle& ch) {
    double direct = log2_1p(ch.g2_2);
    double relayed = std::min(log2_1p(ch.h2), log2_1p(ch.g1_2 + ch.g2_2));
    return std::max(direct, relayed);
}

double fd_cutset(const ChannelSingle& ch) {
    double g1 = std::sqrt(ch.g1_2);
    double g2 = std::sqrt(ch.g2_2);
    return std::min(log2_1p(ch.h2 + ch.g2_2), log2_1p((g1 + g2) * (g1 + g2)));
}

double hd_qmf_i1(const ChannelSingle& ch, Distortion d, HdSchedule s) {
    double relay_term = d.is_infinite() ? 0.0 : ch.h2 / (1.0 + d.delta);
    return s.f * log2_1p(relay_term + ch.g2_2) + (1.0 - s.f) * log2_1p(ch.g2_2);
}

double hd_qmf_i2(const ChannelSingle& ch, Distortion d, HdSchedule s) {
    return (1.0 - s.f) * log2_1p(ch.g1_2 + ch.g2_2) +
           s.f * (log2_1p(ch.g2_2) - d.penalty_bits());
}

double hd_qmf_rate(const ChannelSingle& ch, Distortion d, HdSchedule s) {
    if (d.is_infinite()) return log2_1p(ch.g2_2);
    return std::max(0.0, std::min(hd_qmf_i1(ch, d, s), hd_qmf_i2(ch, d, s)));
}

double hd_ddf_rate(const ChannelSingle& ch, HdSchedule s) {
    double direct = log2_1p(ch.g2_2);
    double decode = s.f * log2_1p(ch.h2);
    double forward = (1.0 - s.f) * log2_1p(ch.g1_2 + ch.g2_2) + s.f * direct;
    return std::max(direct, std::min(decode, forward));
}

DdfOptimum hd_ddf_best(const ChannelSingle& ch) {
    double direct = log2_1p(ch.g2_2);
    double decode_slope = log2_1p(ch.h2);
    if (decode_slope <= direct) return {0.0, direct};
    double forward_full = log2_1p(ch.g1_2 + ch.g2_2);
    double f = forward_full / (decode_slope + forward_full - direct);
    f = std::clamp(f, 0.0, 1.0);
    return {f, hd_ddf_rate(ch, HdSchedule(f))};
}

double hd_cutset(const ChannelSingle& ch, HdSchedule s) {
    double g1 = std::sqrt(ch.g1_2);
    double g2 = std::sqrt(ch.g2_2);
    double direct = log2_1p(ch.g2_2);
    double c1 = s.f * log2_1p(ch.h2 + ch.g2_2) + (1.0 - s.f) * direct;
    double c2 = s.f * direct + (1.0 - s.f) * log2_1p((g1 + g2) * (g1 + g2));
    return std::min(c1, c2);
}

double hd_cutset_best_schedule(const ChannelSingle& ch) {
    double g1 = std::sqrt(ch.g1_2);
    double g2 = std::sqrt(ch.g2_2);
    double direct = log2_1p(ch.g2_2);
    double listen = log2_1p(ch.h2 + ch.g2_2);
    double coherent = log2_1p((g1 + g2) * (g1 + g2));
    double denom = listen + coherent - 2.0 * direct;
    if (denom <= 0.0) return 0.5;  // both cuts equal the direct rate for every f
    return std::clamp((coherent - direct) / denom, 0.0, 1.0);
}

}  // namespace qmfopt
