#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmfopt/channel.hpp"
#include "qmfopt/errors.hpp"

namespace qmfopt::outage {

enum class Network { SingleFd, SingleHd, Diamond };

enum class Scheme {
    QmfNoiseLevel,
    QmfGlobal,
    QmfLocal,
    QmfCsir,
    Df,
    Ddf,
    Hybrid,
    Cutset,
    Direct,
    QmfUniversal,
    QmfTwoRelayOpt,
    QmfSymmetricOpt,
};

/// Which relaying strategy and CSI policy one Monte Carlo trial evaluates.
struct SchemeSpec {
    Network network;
    Scheme scheme;
};

bool scheme_valid_for(Network network, Scheme scheme);

std::string to_string(Network network);
std::string to_string(Scheme scheme);
std::optional<Network> network_from_string(const std::string& name);
std::optional<Scheme> scheme_from_string(const std::string& name);

struct OutageEstimate {
    double p_hat = 0.0;
    std::uint64_t trials = 0;
    double ci95_halfwidth = 0.0;
};

/// Per-fade achievable rate of the scheme with its CSI policy applied; the
/// outage event at target R is {R > supportable_rate}.  The fading statistics
/// enter through the CSIR-optimized policies.
double supportable_rate(const SchemeSpec& spec, const ChannelSingle& ch, double rate_bits,
                        const FadingParams& params);
double supportable_rate(const SchemeSpec& spec, const ChannelDiamond& ch, double rate_bits,
                        const FadingParams& params);

/// Monte Carlo outage estimate at a fixed rate.  Deterministic in (seed,
/// config) regardless of worker count: realizations are counter-indexed and
/// the outage count is an exact integer reduction.
OutageEstimate estimate_at(const SchemeSpec& spec, const FadingParams& params,
                           double rate_bits, std::uint64_t trials, std::uint64_t seed,
                           int threads = 0);

/// RateSpec front-end; scaled specs need an SNR grid, use sweep for those.
OutageEstimate estimate(const SchemeSpec& spec, const FadingParams& params,
                        const RateSpec& rate, std::uint64_t trials, std::uint64_t seed,
                        int threads = 0);

struct SweepRow {
    double snr_db;
    Scheme scheme;
    double rate_bits;
    OutageEstimate est;
};

/// Scale the reference link statistics to an SNR point: mean gain of link i
/// becomes ratio_i * SNR, i.e. inv_snr_i = inv_ref_i / SNR.
FadingParams params_at_snr(const FadingParams& reference, double snr_db);

/// One outage estimate per (scheme, SNR) with common random numbers across
/// schemes at the same SNR point.
std::vector<SweepRow> sweep(const std::vector<SchemeSpec>& specs,
                            const FadingParams& reference, const RateSpec& rate,
                            const std::vector<double>& snr_grid_db, std::uint64_t trials,
                            std::uint64_t seed, int threads = 0);

/// Worker-count resolution: explicit argument, else QMFOPT_THREADS, else the
/// hardware concurrency.
int resolve_threads(int requested);

}  // namespace qmfopt::outage
