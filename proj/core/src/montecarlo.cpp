// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include "monostat/montecarlo.hpp"

#include <climits>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "monostat/errors.hpp"
#include "monostat/parallel.hpp"
#include "monostat/rng.hpp"

namespace monostat::mc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Moments {
    double mean = 0.0;
    double std_error = 0.0;
};

Moments moments(const std::vector<double>& v) {
    Moments m;
    if (v.empty()) return m;
    double sum = 0.0;
    for (double x : v) sum += x;
    m.mean = sum / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - m.mean) * (x - m.mean);
        const double var = ss / static_cast<double>(v.size() - 1);
        m.std_error = std::sqrt(var / static_cast<double>(v.size()));
    }
    return m;
}

PsdEstimate to_psd(const std::vector<double>& v, double scale) {
    const Moments m = moments(v);
    return {m.mean * scale, m.std_error * std::abs(scale), v.size()};
}

// Averages of 1/(1 + q t) and t/(1 + q t) over t in [0, 1].
void interval_weights(cplx q, cplx& l_weight, cplx& g_weight) {
    if (std::abs(q) < 1e-2) {
        // Truncation error below |q|^10 / 11.
        cplx l{};
        cplx g{};
        for (int j = 9; j >= 0; --j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            l = l * q + sign / (j + 1.0);
            g = g * q + sign / (j + 2.0);
        }
        l_weight = l;
        g_weight = g;
        return;
    }
    // The segment 1 + q t never crosses the negative real axis unless it
    // passes through 0, so the principal logarithm is the right branch.
    l_weight = std::log(1.0 + q) / q;
    g_weight = (1.0 - l_weight) / q;
}

}  // namespace

void SimConfig::validate() const {
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw ConfigError("SimConfig: sample_rate must be positive");
    }
    if (n_samples < 2 || n_samples > static_cast<std::size_t>(INT_MAX)) {
        throw ConfigError("SimConfig: n_samples out of range");
    }
    if (n_segments == 0 || n_samples % n_segments != 0) {
        throw ConfigError("SimConfig: n_samples must be divisible by n_segments");
    }
    if (boxcar_len == 0 || boxcar_len > n_samples / n_segments - 1) {
        throw ConfigError("SimConfig: boxcar_len must fit inside one segment");
    }
    if (n_realizations == 0 || workers == 0) {
        throw ConfigError("SimConfig: n_realizations and workers must be positive");
    }
}

void SimConfig::validate_for(const FlatSpectrumSetup& setup) const {
    validate();
    setup.validate();
    if (!(sample_rate > 2.0 * (0.5 * setup.bandwidth + setup.carrier_offset))) {
        throw ConfigError("SimConfig: sample_rate must exceed 2 (W/2 + f_c)");
    }
}

SimConfig SimConfig::for_setup(const FlatSpectrumSetup& setup, double oversample,
                               std::size_t n_samples, std::uint64_t seed, std::size_t n_segments,
                               std::size_t n_realizations) {
    setup.validate();
    if (!(oversample > 2.0)) throw ConfigError("SimConfig: oversample must exceed 2");
    SimConfig cfg;
    cfg.sample_rate = oversample * (0.5 * setup.bandwidth + setup.carrier_offset);
    cfg.n_samples = n_samples;
    cfg.seed = seed;
    cfg.n_segments = n_segments;
    cfg.n_realizations = n_realizations;
    cfg.boxcar_len = static_cast<std::size_t>(
        std::llround(kDefaultBoxcarBandwidths * cfg.sample_rate / setup.bandwidth));
    return cfg;
}

void CarrierParams::validate_against(const SignalPowers& powers,
                                     const FlatSpectrumSetup& setup) const {
    if (power != powers.p_carrier || offset != setup.carrier_offset) {
        throw ConfigError("CarrierParams: power/offset disagree with SignalPowers/FlatSpectrumSetup");
    }
    if (initial_phase && !std::isfinite(*initial_phase)) {
        throw ConfigError("CarrierParams: initial_phase must be finite");
    }
}

std::uint64_t stream_id(std::size_t realization, StreamRole role) {
    return (static_cast<std::uint64_t>(realization) << 8) | static_cast<std::uint64_t>(role);
}

std::vector<cplx> gen_bandlimited_gaussian(double bandwidth, double power, const SimConfig& cfg,
                                           std::uint64_t stream) {
    cfg.validate();
    if (!(bandwidth > 0.0) || !(bandwidth < cfg.sample_rate)) {
        throw ConfigError("gen_bandlimited_gaussian: need 0 < bandwidth < sample_rate");
    }
    if (!(power >= 0.0) || !std::isfinite(power)) {
        throw ConfigError("gen_bandlimited_gaussian: power must be >= 0");
    }
    const std::size_t n = cfg.n_samples;
    std::vector<cplx> spectrum(n);
    rng::Philox gen(rng::derive_key(cfg.seed, stream >> 8, stream & 0xFF));
    const double df = cfg.sample_rate / static_cast<double>(n);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    std::size_t bins = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double idx = k < (n + 1) / 2 ? static_cast<double>(k)
                                            : static_cast<double>(k) - static_cast<double>(n);
        if (std::abs(idx * df) <= 0.5 * bandwidth) {
            const double re = gen.normal();
            const double im = gen.normal();
            spectrum[k] = {re * inv_sqrt2, im * inv_sqrt2};
            ++bins;
        }
    }
    if (bins == 0) throw ConfigError("gen_bandlimited_gaussian: no FFT bin inside the band");
    detail::inverse_dft(spectrum);
    const double scale = std::sqrt(power / static_cast<double>(bins));
    for (auto& v : spectrum) v *= scale;
    return spectrum;
}

Channels synthesize_channels(const SignalPowers& powers, const CarrierParams& carrier,
                             const FlatSpectrumSetup& setup, const SimConfig& cfg,
                             std::size_t realization,
                             const std::optional<TrackingGeometry>& geometry) {
    powers.validate();
    carrier.validate_against(powers, setup);
    cfg.validate_for(setup);
    if (geometry) geometry->validate();
    const double w = setup.bandwidth;

    Channels ch;
    const auto x =
        gen_bandlimited_gaussian(w, powers.p_gaussian_signal, cfg,
                                 stream_id(realization, StreamRole::gaussian_signal));
    ch.sum = gen_bandlimited_gaussian(w, powers.p_sum_noise, cfg,
                                      stream_id(realization, StreamRole::sum_noise));
    ch.delta = gen_bandlimited_gaussian(w, powers.p_delta_noise, cfg,
                                        stream_id(realization, StreamRole::delta_noise));
    if (carrier.initial_phase) {
        ch.carrier_phase = *carrier.initial_phase;
    } else {
        const auto sid = stream_id(realization, StreamRole::carrier_phase);
        rng::Philox gen(rng::derive_key(cfg.seed, sid >> 8, sid & 0xFF));
        ch.carrier_phase = kTwoPi * gen.uniform();
    }

    const double amp = std::sqrt(powers.p_carrier);
    const double cycles_per_sample = setup.carrier_offset / cfg.sample_rate;
    const cplx steer = geometry ? geometry->noiseless_ratio() : cplx{};
    for (std::size_t i = 0; i < ch.sum.size(); ++i) {
        const double turns = std::fmod(cycles_per_sample * static_cast<double>(i), 1.0);
        const cplx signal = std::polar(amp, kTwoPi * turns + ch.carrier_phase) + x[i];
        ch.sum[i] += signal;
        if (geometry) ch.delta[i] += steer * signal;
    }
    return ch;
}

RatioSeries monopulse_ratio(const std::vector<cplx>& sum, const std::vector<cplx>& delta,
                            ClipPolicy policy) {
    if (sum.size() != delta.size()) throw ConfigError("monopulse_ratio: length mismatch");
    const bool capped = policy.kind == ClipPolicy::Kind::magnitude_cap;
    if (capped && !(policy.cap > 0.0)) throw ConfigError("monopulse_ratio: cap must be positive");
    RatioSeries out;
    out.values.resize(sum.size());
    for (std::size_t i = 0; i < sum.size(); ++i) {
        if (sum[i] == cplx{}) {
            ++out.n_flagged;
            out.values[i] = capped ? cplx{policy.cap, 0.0} : cplx{};
            continue;
        }
        cplx m = delta[i] / sum[i];
        if (capped) {
            const double mag = std::abs(m);
            if (mag > policy.cap) {
                m *= policy.cap / mag;
                ++out.n_clipped;
            }
        }
        out.values[i] = m;
    }
    return out;
}

RatioSeries integrate_ratio(const std::vector<cplx>& sum, const std::vector<cplx>& delta) {
    if (sum.size() != delta.size()) throw ConfigError("integrate_ratio: length mismatch");
    RatioSeries out;
    if (sum.size() < 2) return out;
    out.values.resize(sum.size() - 1);
    for (std::size_t i = 0; i + 1 < sum.size(); ++i) {
        const cplx s0 = sum[i];
        if (s0 == cplx{}) {
            ++out.n_flagged;
            continue;
        }
        const cplx q = (sum[i + 1] - s0) / s0;
        cplx l_weight;
        cplx g_weight;
        interval_weights(q, l_weight, g_weight);
        out.values[i] = (delta[i] * l_weight + (delta[i + 1] - delta[i]) * g_weight) / s0;
    }
    return out;
}

AlphaEstimate estimate_alpha(const SignalPowers& powers, const CarrierParams& carrier,
                             const TrackingGeometry& geometry, const FlatSpectrumSetup& setup,
                             const SimConfig& cfg) {
    geometry.validate();
    if (!(geometry.theta_s > 0.0) || geometry.k_f == 0.0) {
        throw ConfigError("estimate_alpha: theta_s and k_f must be nonzero");
    }
    cfg.validate_for(setup);
    const cplx steer = geometry.noiseless_ratio();
    const std::size_t seg_len = cfg.n_samples / cfg.n_segments;

    std::vector<std::vector<cplx>> seg_means(cfg.n_realizations);
    parallel_for(cfg.n_realizations, cfg.workers, [&](std::size_t r) {
        const Channels ch = synthesize_channels(powers, carrier, setup, cfg, r, geometry);
        const RatioSeries m = monopulse_ratio(ch.sum, ch.delta);
        auto& out = seg_means[r];
        out.resize(cfg.n_segments);
        for (std::size_t s = 0; s < cfg.n_segments; ++s) {
            cplx acc{};
            for (std::size_t i = s * seg_len; i < (s + 1) * seg_len; ++i) acc += m.values[i];
            out[s] = acc / static_cast<double>(seg_len) / steer;
        }
    });

    std::vector<double> re;
    std::vector<double> im;
    for (const auto& v : seg_means) {
        for (const cplx& u : v) {
            re.push_back(u.real());
            im.push_back(u.imag());
        }
    }
    const Moments mr = moments(re);
    const Moments mi = moments(im);
    return {cplx(mr.mean, mi.mean), mr.std_error, mi.std_error, re.size()};
}

ChiEstimate estimate_chi(const SignalPowers& powers, const CarrierParams& carrier,
                         const FlatSpectrumSetup& setup, const SimConfig& cfg) {
    cfg.validate_for(setup);
    const std::size_t seg_len = cfg.n_samples / cfg.n_segments;
    const std::size_t box = cfg.boxcar_len;
    if (2 * box > seg_len - 1) {
        throw ConfigError("estimate_chi: a segment must hold two boxcar lengths");
    }
    const double fs = cfg.sample_rate;

    // Zero-frequency density from non-overlapping windows w:
    // E|sum w m|^2 = S(0) fs sum w^2 for a spectrum flat across the window
    // response. The boxcar is the single integrate-and-dump; the triangle of
    // length 2T - 1 is two boxcars in cascade.
    const std::vector<double> boxcar_w(box, 1.0);
    std::vector<double> cascade_w(2 * box - 1);
    for (std::size_t j = 0; j < cascade_w.size(); ++j) {
        cascade_w[j] = static_cast<double>(std::min(j + 1, 2 * box - 1 - j));
    }
    std::vector<double> hann_w(box);
    for (std::size_t j = 0; j < box; ++j) {
        const double s = std::sin(std::numbers::pi * (static_cast<double>(j) + 0.5) /
                                  static_cast<double>(box));
        hann_w[j] = s * s;
    }
    auto zero_bin = [fs](const std::vector<cplx>& m, std::size_t begin, std::size_t end,
                         const std::vector<double>& w, std::size_t hop) {
        double w_sq = 0.0;
        for (double v : w) w_sq += v * v;
        double acc = 0.0;
        std::size_t count = 0;
        for (std::size_t start = begin; start + w.size() <= end; start += hop) {
            cplx sum{};
            for (std::size_t j = 0; j < w.size(); ++j) sum += w[j] * m[start + j];
            acc += std::norm(sum) / (fs * w_sq);
            ++count;
        }
        return acc / static_cast<double>(count);
    };

    struct SegmentValues {
        std::vector<double> cascade;
        std::vector<double> boxcar;
        std::vector<double> welch;
        std::vector<double> sum_power;
        std::vector<double> delta_power;
        std::size_t flagged = 0;
    };
    std::vector<SegmentValues> per_real(cfg.n_realizations);
    parallel_for(cfg.n_realizations, cfg.workers, [&](std::size_t r) {
        const Channels ch = synthesize_channels(powers, carrier, setup, cfg, r);
        const RatioSeries m = integrate_ratio(ch.sum, ch.delta);
        auto& out = per_real[r];
        out.flagged = m.n_flagged;
        for (std::size_t s = 0; s < cfg.n_segments; ++s) {
            const std::size_t begin = s * seg_len;
            const std::size_t end = std::min((s + 1) * seg_len, m.values.size());
            out.cascade.push_back(zero_bin(m.values, begin, end, cascade_w, 2 * box));
            out.boxcar.push_back(zero_bin(m.values, begin, end, boxcar_w, box));
            out.welch.push_back(zero_bin(m.values, begin, end, hann_w, std::max<std::size_t>(1, box / 2)));
            double ps = 0.0;
            double pd = 0.0;
            for (std::size_t i = begin; i < (s + 1) * seg_len; ++i) {
                ps += std::norm(ch.sum[i]);
                pd += std::norm(ch.delta[i]);
            }
            out.sum_power.push_back(ps / static_cast<double>(seg_len));
            out.delta_power.push_back(pd / static_cast<double>(seg_len));
        }
    });

    std::vector<double> cascade;
    std::vector<double> boxcar;
    std::vector<double> welch;
    std::vector<double> sum_power;
    std::vector<double> delta_power;
    ChiEstimate est;
    for (const auto& v : per_real) {
        sum_power.insert(sum_power.end(), v.sum_power.begin(), v.sum_power.end());
        delta_power.insert(delta_power.end(), v.delta_power.begin(), v.delta_power.end());
        cascade.insert(cascade.end(), v.cascade.begin(), v.cascade.end());
        boxcar.insert(boxcar.end(), v.boxcar.begin(), v.boxcar.end());
        welch.insert(welch.end(), v.welch.begin(), v.welch.end());
        est.n_flagged += v.flagged;
    }
    est.sdm0 = to_psd(cascade, 1.0);
    est.sum_power = to_psd(sum_power, 1.0);
    est.delta_power = to_psd(delta_power, 1.0);
    const double norm = powers.p_delta_noise > 0.0
                            ? setup.bandwidth * powers.total_gaussian() / powers.p_delta_noise
                            : std::numeric_limits<double>::quiet_NaN();
    est.chi = to_psd(cascade, norm);
    est.chi_boxcar = to_psd(boxcar, norm);
    est.chi_periodogram = to_psd(welch, norm);
    if (powers.p_delta_noise > 0.0) {
        const double diff = std::abs(est.chi.value - est.chi_periodogram.value);
        est.estimators_agree =
            diff <= 3.0 * std::hypot(est.chi.std_error, est.chi_periodogram.std_error);
    }
    return est;
}

}  // namespace monostat::mc
