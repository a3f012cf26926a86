#include "qmfopt/outage.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "qmfopt/diamond.hpp"
#include "qmfopt/numerics.hpp"
#include "qmfopt/qopt_fd.hpp"
#include "qmfopt/qopt_hd.hpp"
#include "qmfopt/rates_single.hpp"

namespace qmfopt::outage {

namespace {

const char* kSchemeNames[] = {
    "qmf_noise_level", "qmf_global", "qmf_local", "qmf_csir", "df", "ddf",
    "hybrid", "cutset", "direct", "qmf_universal", "qmf_two_relay_opt",
    "qmf_symmetric_opt",
};

const char* kNetworkNames[] = {"single_fd", "single_hd", "diamond"};

CsirContext make_ctx(double h2, double rate_bits, const FadingParams& params) {
    return CsirContext{h2, rate_bits, params.inv_snr[1], params.inv_snr[2]};
}

double direct_rate(const ChannelSingle& ch) { return log2_1p(ch.g2_2); }

double fd_csir_rate(const ChannelSingle& ch, double rate_bits, const FadingParams& params) {
    if (rate_bits <= 0.0) return direct_rate(ch);
    Distortion d = opt_csir(make_ctx(ch.h2, rate_bits, params));
    return fd_qmf_rate(ch, d);
}

// ---- half-duplex CSIR policy tables -------------------------------------
//
// The per-fade CSIR policies depend on the realization only through h^2, so
// Monte Carlo runs quantize h^2 onto a 512-bin log grid and look the policy
// up at the bin center; the joint (f, delta) optimization per trial would
// otherwise dominate every sweep.

constexpr int kHdBins = 512;
constexpr double kBinLoFactor = 1e-6;
constexpr double kBinHiFactor = 32.0;

struct HdBinPolicy {
    HdPolicy::Mode mode = HdPolicy::Mode::Direct;
    double f_qmf = 0.0;      // best QMF-type candidate, always populated
    double delta_qmf = 1.0;
};

struct HdPolicyTable {
    double log_lo = 0.0;
    double log_step = 0.0;
    std::vector<HdBinPolicy> bins;

    const HdBinPolicy& lookup(double h2) const {
        double t = (std::log(std::max(h2, 1e-300)) - log_lo) / log_step;
        int idx = std::clamp(static_cast<int>(t), 0, kHdBins - 1);
        return bins[static_cast<size_t>(idx)];
    }
};

void run_parallel_chunks(std::uint64_t count, int workers,
                         const std::function<void(std::uint64_t, std::uint64_t, int)>& body) {
    if (workers <= 1 || count < 2 * static_cast<std::uint64_t>(workers)) {
        body(0, count, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::uint64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::uint64_t begin = w * chunk;
        std::uint64_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end, w] { body(begin, end, w); });
    }
    for (auto& t : pool) t.join();
}

HdPolicyTable build_hd_table(Scheme scheme, double rate_bits, const FadingParams& params,
                             int workers) {
    HdPolicyTable table;
    double mean_h2 = 1.0 / params.inv_snr[0];
    table.log_lo = std::log(mean_h2 * kBinLoFactor);
    table.log_step = (std::log(mean_h2 * kBinHiFactor) - table.log_lo) / kHdBins;
    table.bins.resize(kHdBins);
    detail_hd::SearchParams sp;
    sp.f_points = 32;
    sp.delta_points = 64;
    run_parallel_chunks(kHdBins, workers, [&](std::uint64_t begin, std::uint64_t end, int) {
        for (std::uint64_t b = begin; b < end; ++b) {
            double h2 = std::exp(table.log_lo + (b + 0.5) * table.log_step);
            CsirContext ctx = make_ctx(h2, rate_bits, params);
            HdBinPolicy pol;
            if (scheme == Scheme::QmfCsir) {
                HdCsirOptimum opt = detail_hd::opt_csir(ctx, sp);
                pol.mode = opt.f <= 1e-12 ? HdPolicy::Mode::Direct : HdPolicy::Mode::Qmf;
                pol.f_qmf = opt.f;
                pol.delta_qmf = opt.delta.delta;
            } else {
                HdPolicy hybrid = detail_hd::hybrid(ctx, sp);
                pol.mode = hybrid.mode;
                if (hybrid.mode == HdPolicy::Mode::Qmf) {
                    pol.f_qmf = hybrid.f.f;
                    pol.delta_qmf = hybrid.delta.delta;
                } else {
                    // keep a QMF fallback for realizations that cannot decode
                    HdCsirOptimum opt = detail_hd::opt_csir(ctx, sp);
                    pol.f_qmf = opt.f;
                    pol.delta_qmf = opt.delta.delta;
                }
            }
            table.bins[static_cast<size_t>(b)] = pol;
        }
    });
    return table;
}

double hd_rate_from_policy(const HdBinPolicy& pol, const ChannelSingle& ch, double rate_bits) {
    switch (pol.mode) {
        case HdPolicy::Mode::Ddf: {
            double decode_bits = log2_1p(ch.h2);
            double f_ddf = decode_bits > 0.0 ? rate_bits / decode_bits : 2.0;
            if (f_ddf <= 1.0) return hd_ddf_rate(ch, HdSchedule(f_ddf));
            // the realization cannot decode anywhere in the block
            if (pol.f_qmf > 1e-12)
                return hd_qmf_rate(ch, Distortion(pol.delta_qmf), HdSchedule(pol.f_qmf));
            return direct_rate(ch);
        }
        case HdPolicy::Mode::Qmf:
            return hd_qmf_rate(ch, Distortion(pol.delta_qmf), HdSchedule(pol.f_qmf));
        case HdPolicy::Mode::Direct:
        default:
            return direct_rate(ch);
    }
}

double diamond_common_delta_rate(const ChannelDiamond& ch) {
    auto rate_of_log = [&](double t) {
        diamond::DistortionVector dv;
        dv.deltas.assign(ch.n, std::exp(t));
        return diamond::qmf_rate(ch, dv);
    };
    numerics::GridMax best =
        numerics::grid_refine_max(rate_of_log, std::log(1e-4), std::log(1e6), 64);
    return best.value;
}

void require(bool ok, const char* message) {
    if (!ok) throw InvalidCombination(message);
}

}  // namespace

bool scheme_valid_for(Network network, Scheme scheme) {
    switch (network) {
        case Network::SingleFd:
            switch (scheme) {
                case Scheme::QmfNoiseLevel:
                case Scheme::QmfGlobal:
                case Scheme::QmfLocal:
                case Scheme::QmfCsir:
                case Scheme::Df:
                case Scheme::Hybrid:
                case Scheme::Cutset:
                case Scheme::Direct:
                    return true;
                default:
                    return false;
            }
        case Network::SingleHd:
            switch (scheme) {
                case Scheme::QmfNoiseLevel:
                case Scheme::QmfGlobal:
                case Scheme::QmfCsir:
                case Scheme::Ddf:
                case Scheme::Hybrid:
                case Scheme::Cutset:
                case Scheme::Direct:
                    return true;
                default:
                    return false;
            }
        case Network::Diamond:
            switch (scheme) {
                case Scheme::QmfNoiseLevel:
                case Scheme::QmfUniversal:
                case Scheme::QmfTwoRelayOpt:
                case Scheme::QmfSymmetricOpt:
                case Scheme::Df:
                case Scheme::Hybrid:
                case Scheme::Cutset:
                    return true;
                default:
                    return false;
            }
    }
    return false;
}

std::string to_string(Network network) { return kNetworkNames[static_cast<int>(network)]; }
std::string to_string(Scheme scheme) { return kSchemeNames[static_cast<int>(scheme)]; }

std::optional<Network> network_from_string(const std::string& name) {
    for (int i = 0; i < 3; ++i)
        if (name == kNetworkNames[i]) return static_cast<Network>(i);
    return std::nullopt;
}

std::optional<Scheme> scheme_from_string(const std::string& name) {
    for (int i = 0; i < 12; ++i)
        if (name == kSchemeNames[i]) return static_cast<Scheme>(i);
    return std::nullopt;
}

double supportable_rate(const SchemeSpec& spec, const ChannelSingle& ch, double rate_bits,
                        const FadingParams& params) {
    require(spec.network != Network::Diamond, "single-relay realization with a diamond spec");
    require(scheme_valid_for(spec.network, spec.scheme), "scheme not defined for this network");
    const bool fd = spec.network == Network::SingleFd;
    switch (spec.scheme) {
        case Scheme::QmfNoiseLevel:
            return fd ? fd_qmf_rate(ch, Distortion::noise_level())
                      : hd_qmf_rate(ch, Distortion::noise_level(), HdSchedule(0.5));
        case Scheme::QmfGlobal:
            if (!(ch.g1_2 > 1e-300)) return direct_rate(ch);
            return fd ? fd_qmf_rate(ch, opt_global(ch))
                      : detail_hd::opt_global(ch, 128).rate;
        case Scheme::QmfLocal:
            if (!(ch.g1_2 > 1e-300)) return direct_rate(ch);
            return fd_qmf_rate(ch, opt_local(ch.h2, ch.g1_2, rate_bits));
        case Scheme::QmfCsir: {
            if (rate_bits <= 0.0) return direct_rate(ch);
            if (fd) return fd_csir_rate(ch, rate_bits, params);
            HdCsirOptimum opt = hd_opt_csir(make_ctx(ch.h2, rate_bits, params));
            if (opt.f <= 1e-12) return direct_rate(ch);
            return hd_qmf_rate(ch, opt.delta, HdSchedule(opt.f));
        }
        case Scheme::Df:
            return fd_df_rate(ch);
        case Scheme::Ddf:
            return hd_ddf_best(ch).rate;
        case Scheme::Hybrid: {
            if (fd) {
                if (log2_1p(ch.h2) > rate_bits) return log2_1p(ch.g1_2 + ch.g2_2);
                return fd_csir_rate(ch, rate_bits, params);
            }
            if (rate_bits <= 0.0) return direct_rate(ch);
            HdPolicy policy = hybrid_ddf_qmf(make_ctx(ch.h2, rate_bits, params));
            switch (policy.mode) {
                case HdPolicy::Mode::Ddf:
                    return hd_ddf_rate(ch, policy.f);
                case HdPolicy::Mode::Qmf:
                    return hd_qmf_rate(ch, policy.delta, policy.f);
                default:
                    return direct_rate(ch);
            }
        }
        case Scheme::Cutset:
            return fd ? fd_cutset(ch) : hd_cutset(ch, HdSchedule(hd_cutset_best_schedule(ch)));
        case Scheme::Direct:
            return direct_rate(ch);
        default:
            throw InvalidCombination("scheme not defined for single-relay networks");
    }
}

double supportable_rate(const SchemeSpec& spec, const ChannelDiamond& ch, double rate_bits,
                        const FadingParams& params) {
    (void)params;
    require(spec.network == Network::Diamond, "diamond realization with a single-relay spec");
    require(scheme_valid_for(spec.network, spec.scheme), "scheme not defined for this network");
    switch (spec.scheme) {
        case Scheme::QmfNoiseLevel: {
            diamond::DistortionVector dv;
            dv.deltas.assign(ch.n, 1.0);
            return diamond::qmf_rate(ch, dv);
        }
        case Scheme::QmfUniversal: {
            require(ch.n >= 2, "universal quantizer is defined for N >= 2");
            diamond::DistortionVector dv;
            dv.deltas.assign(ch.n, diamond::universal_delta_opt(ch.n).delta);
            return diamond::qmf_rate(ch, dv);
        }
        case Scheme::QmfTwoRelayOpt:
            require(ch.n == 2, "two-relay optimizer needs N = 2");
            return diamond::two_relay_opt(ch).rate;
        case Scheme::QmfSymmetricOpt:
            return diamond_common_delta_rate(ch);
        case Scheme::Df:
            return diamond::df_rate(ch);
        case Scheme::Hybrid: {
            require(ch.n >= 2, "hybrid uses the universal quantizer, N >= 2");
            diamond::DistortionVector dv;
            dv.deltas.assign(ch.n, diamond::universal_delta_opt(ch.n).delta);
            return diamond::hybrid_rate(ch, diamond::decode_set(ch, rate_bits), dv);
        }
        case Scheme::Cutset:
            return diamond::cutset(ch);
        default:
            throw InvalidCombination("scheme not defined for diamond networks");
    }
}

int resolve_threads(int requested) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("QMFOPT_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(n, 1, 64);
}

OutageEstimate estimate_at(const SchemeSpec& spec, const FadingParams& params,
                           double rate_bits, std::uint64_t trials, std::uint64_t seed,
                           int threads) {
    if (trials < 1) throw std::invalid_argument("estimate: trials must be >= 1");
    int workers = resolve_threads(threads);

    if (spec.network == Network::Diamond) {
        require(params.inv_snr.size() >= 2 && params.inv_snr.size() % 2 == 0,
                "diamond networks need 2N link statistics");
    } else {
        require(params.inv_snr.size() == 3, "single-relay networks need 3 link statistics");
    }

    // half-duplex CSIR policies are cached on an h^2 grid (see above)
    HdPolicyTable table;
    bool use_table = spec.network == Network::SingleHd &&
                     (spec.scheme == Scheme::QmfCsir || spec.scheme == Scheme::Hybrid) &&
                     rate_bits > 0.0;
    if (use_table) table = build_hd_table(spec.scheme, rate_bits, params, workers);

    std::vector<std::uint64_t> counts(static_cast<size_t>(workers), 0);
    run_parallel_chunks(trials, workers, [&](std::uint64_t begin, std::uint64_t end, int w) {
        std::uint64_t local = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
            double rate;
            if (spec.network == Network::Diamond) {
                ChannelDiamond ch = sample_diamond(params, t, seed);
                rate = supportable_rate(spec, ch, rate_bits, params);
            } else {
                ChannelSingle ch = sample_single(params, t, seed);
                rate = use_table ? hd_rate_from_policy(table.lookup(ch.h2), ch, rate_bits)
                                 : supportable_rate(spec, ch, rate_bits, params);
            }
            if (rate_bits > rate) ++local;
        }
        counts[static_cast<size_t>(w)] += local;
    });

    std::uint64_t outages = 0;
    for (std::uint64_t c : counts) outages += c;
    OutageEstimate est;
    est.trials = trials;
    est.p_hat = static_cast<double>(outages) / static_cast<double>(trials);
    est.ci95_halfwidth = 1.96 * std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                                          static_cast<double>(trials));
    return est;
}

OutageEstimate estimate(const SchemeSpec& spec, const FadingParams& params,
                        const RateSpec& rate, std::uint64_t trials, std::uint64_t seed,
                        int threads) {
    require(!rate.scaled, "a scaled rate needs an SNR grid; use sweep");
    return estimate_at(spec, params, rate.value, trials, seed, threads);
}

FadingParams params_at_snr(const FadingParams& reference, double snr_db) {
    double snr_lin = std::pow(10.0, snr_db / 10.0);
    FadingParams scaled;
    scaled.inv_snr.reserve(reference.inv_snr.size());
    for (double inv : reference.inv_snr) scaled.inv_snr.push_back(inv / snr_lin);
    return scaled;
}

std::vector<SweepRow> sweep(const std::vector<SchemeSpec>& specs,
                            const FadingParams& reference, const RateSpec& rate,
                            const std::vector<double>& snr_grid_db, std::uint64_t trials,
                            std::uint64_t seed, int threads) {
    std::vector<SweepRow> rows;
    rows.reserve(specs.size() * snr_grid_db.size());
    for (double snr_db : snr_grid_db) {
        FadingParams params = params_at_snr(reference, snr_db);
        double rate_bits = rate.resolve(snr_db);
        for (const SchemeSpec& spec : specs) {
            SweepRow row;
            row.snr_db = snr_db;
            row.scheme = spec.scheme;
            row.rate_bits = rate_bits;
            row.est = estimate_at(spec, params, rate_bits, trials, seed, threads);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace qmfopt::outage
