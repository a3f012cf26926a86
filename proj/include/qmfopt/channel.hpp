#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qmfopt {

/// Squared link magnitudes of the single-relay network, in linear SNR units
/// (unit noise, unit transmit power).  Squared gains are the canonical
/// representation; amplitudes are derived on demand for the coherent cutset
/// term.
struct ChannelSingle {
    double h2 = 0.0;    ///< |h|^2, source -> relay
    double g1_2 = 0.0;  ///< |g1|^2, relay -> destination
    double g2_2 = 0.0;  ///< |g2|^2, source -> destination
};

/// Squared link magnitudes of the N-relay diamond network (no direct link).
struct ChannelDiamond {
    int n = 0;
    std::vector<double> h2;  ///< |h_i|^2, source -> relay i
    std::vector<double> g2;  ///< |g_i|^2, relay i -> destination
};

/// Rayleigh fading statistics: one inverse mean squared gain per link.
/// Single relay order: {rho, lambda1, lambda2} for the h, g1, g2 links.
/// Diamond order: {h_1..h_N, g_1..g_N}.
struct FadingParams {
    std::vector<double> inv_snr;
};

/// Either a fixed transmission rate in bits/s/Hz or a multiplexing gain r
/// resolved per SNR point as R = r * log2(SNR).
struct RateSpec {
    bool scaled = false;
    double value = 0.0;

    static RateSpec fixed(double rate_bits) { return RateSpec{false, rate_bits}; }
    static RateSpec multiplexing(double r) { return RateSpec{true, r}; }

    double resolve(double snr_db) const {
        if (!scaled) return value;
        double snr_lin = std::pow(10.0, snr_db / 10.0);
        return value * std::log2(snr_lin);
    }
};

/// Counter-based draw: the squared gain of one link in one trial, fully
/// determined by (seed, trial_id, link index) so parallel Monte Carlo and
/// paired cross-scheme comparisons are bit-reproducible.
double exponential_draw(std::uint64_t seed, std::uint64_t trial_id, std::uint32_t link,
                        double inv_mean);

ChannelSingle sample_single(const FadingParams& params, std::uint64_t trial_id,
                            std::uint64_t seed);

ChannelDiamond sample_diamond(const FadingParams& params, std::uint64_t trial_id,
                              std::uint64_t seed);

}  // namespace qmfopt
