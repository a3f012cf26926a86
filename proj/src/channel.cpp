#include "qmfopt/channel.hpp"

namespace qmfopt {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t trial, std::uint32_t link) {
    std::uint64_t x = mix(seed + kGolden);
    x = mix(x ^ (trial * kGolden + 0xD1B54A32D192ED03ULL));
    x = mix(x ^ ((link + 1ULL) * 0xEB44ACCAB455D165ULL));
    return x;
}

}  // namespace

double exponential_draw(std::uint64_t seed, std::uint64_t trial_id, std::uint32_t link,
                        double inv_mean) {
    if (!(inv_mean > 0.0)) throw std::invalid_argument("exponential_draw: inv_mean must be > 0");
    std::uint64_t bits = counter_hash(seed, trial_id, link);
    // strictly inside (0,1), so the log below is finite
    double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    return -std::log(u) / inv_mean;
}

ChannelSingle sample_single(const FadingParams& params, std::uint64_t trial_id,
                            std::uint64_t seed) {
    if (params.inv_snr.size() != 3)
        throw std::invalid_argument("sample_single: expected 3 inverse link SNRs {rho, l1, l2}");
    ChannelSingle ch;
    ch.h2 = exponential_draw(seed, trial_id, 0, params.inv_snr[0]);
    ch.g1_2 = exponential_draw(seed, trial_id, 1, params.inv_snr[1]);
    ch.g2_2 = exponential_draw(seed, trial_id, 2, params.inv_snr[2]);
    return ch;
}

ChannelDiamond sample_diamond(const FadingParams& params, std::uint64_t trial_id,
                              std::uint64_t seed) {
    if (params.inv_snr.empty() || params.inv_snr.size() % 2 != 0)
        throw std::invalid_argument("sample_diamond: expected 2N inverse link SNRs");
    int n = static_cast<int>(params.inv_snr.size() / 2);
    ChannelDiamond ch;
    ch.n = n;
    ch.h2.resize(n);
    ch.g2.resize(n);
    for (int i = 0; i < n; ++i) {
        ch.h2[i] = exponential_draw(seed, trial_id, static_cast<std::uint32_t>(i),
                                    params.inv_snr[i]);
        ch.g2[i] = exponential_draw(seed, trial_id, static_cast<std::uint32_t>(n + i),
                                    params.inv_snr[n + i]);
    }
    return ch;
}

}  // namespace qmfopt
