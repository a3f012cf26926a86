#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmfopt/channel.hpp"
#include "qmfopt/outage.hpp"

namespace qmfopt::cli {

/// Configuration error that names the offending key.
struct ConfigError : std::runtime_error {
    std::string key;
    ConfigError(std::string k, const std::string& message)
        : std::runtime_error("config key '" + k + "': " + message), key(std::move(k)) {}
};

/// A batch sweep request: flat key=value text, one pair per line, '#' comments.
///
///   network  = single_fd | single_hd | diamond
///   schemes  = comma list (qmf_noise_level, qmf_csir, df, ...)
///   ratios   = mean link SNR relative to the swept link; single relay order
///              h, g1, g2; diamond order h_1..h_N, g_1..g_N
///   r        = multiplexing gain (R = r*log2(SNR)), or rate_bits = fixed R
///   snr_db   = start:stop:step
///   trials   = Monte Carlo trials per point (default 100000)
///   seed     = base RNG seed (default 1)
struct RunConfig {
    outage::Network network = outage::Network::SingleFd;
    std::vector<outage::SchemeSpec> schemes;
    std::vector<double> ratios;
    RateSpec rate;
    double snr_start_db = 0.0;
    double snr_stop_db = 0.0;
    double snr_step_db = 1.0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;

    std::vector<double> snr_grid() const;
    FadingParams reference_params() const;  ///< inv_snr = 1/ratio per link
};

RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);

}  // namespace qmfopt::cli
