// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "monostat/analytic.hpp"

namespace monostat::mc {

/// Role tags for stream derivation; each (seed, realization, role) is an
/// independent stream.
enum class StreamRole : std::uint64_t {
    gaussian_signal = 1,
    sum_noise = 2,
    delta_noise = 3,
    carrier_phase = 4,
};

struct SimConfig {
    double sample_rate = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 1;
    /// Segments per realization; estimator scatter is taken across all
    /// segments of all realizations.
    std::size_t n_segments = 1;
    /// Samples per boxcar average (T = boxcar_len / sample_rate).
    std::size_t boxcar_len = 1;
    /// Independent records, each with its own carrier phase.
    std::size_t n_realizations = 1;
    /// Worker threads for realizations; results do not depend on it.
    std::size_t workers = 1;

    void validate() const;
    /// Also checks sample_rate > 2 (W/2 + f_c) and W < sample_rate.
    void validate_for(const FlatSpectrumSetup& setup) const;

    /// sample_rate = oversample (W/2 + f_c), boxcar T = 64/W.
    static SimConfig for_setup(const FlatSpectrumSetup& setup, double oversample,
                               std::size_t n_samples, std::uint64_t seed,
                               std::size_t n_segments = 16, std::size_t n_realizations = 1);
};

inline constexpr double kDefaultOversample = 32.0;
inline constexpr double kDefaultBoxcarBandwidths = 64.0;

struct CarrierParams {
    double power = 0.0;
    double offset = 0.0;
    /// Drawn uniformly on [0, 2 pi) per realization when absent.
    std::optional<double> initial_phase;

    /// The carrier must agree with powers.p_carrier and setup.carrier_offset.
    void validate_against(const SignalPowers& powers, const FlatSpectrumSetup& setup) const;
};

struct PsdEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_effective = 0;
};

struct ClipPolicy {
    enum class Kind { none, magnitude_cap };
    Kind kind = Kind::none;
    double cap = 0.0;

    static ClipPolicy none() { return {}; }
    static ClipPolicy magnitude_cap(double c) { return {Kind::magnitude_cap, c}; }
};

struct RatioSeries {
    std::vector<cplx> values;
    /// Samples limited by a magnitude cap.
    std::size_t n_clipped = 0;
    /// Samples with an exactly zero denominator; set to 0 under policy none
    /// and to the cap (with zero phase) otherwise.
    std::size_t n_flagged = 0;
};

struct Channels {
    std::vector<cplx> sum;
    std::vector<cplx> delta;
    double carrier_phase = 0.0;
};

/// Circular Gaussian samples with a flat spectrum on [-W/2, W/2] and total
/// power P. In-band FFT bins receive unit complex normals in bin order, the
/// unnormalized inverse transform is scaled by sqrt(P / bins), so the
/// ensemble power is exactly P. The stream is keyed by (cfg.seed, stream_id).
std::vector<cplx> gen_bandlimited_gaussian(double bandwidth, double power, const SimConfig& cfg,
                                           std::uint64_t stream_id);

/// Stream id for the given realization and role.
std::uint64_t stream_id(std::size_t realization, StreamRole role);

/// S(t) = sqrt(P_c) e^{i(2 pi f_c t + theta_c)} + x(t) + n_Sigma(t) and
/// D(t) = n_Delta(t), plus theta_s K_F e^{i phi_s} (carrier + x) when a
/// geometry is given.
Channels synthesize_channels(const SignalPowers& powers, const CarrierParams& carrier,
                             const FlatSpectrumSetup& setup, const SimConfig& cfg,
                             std::size_t realization = 0,
                             const std::optional<TrackingGeometry>& geometry = std::nullopt);

/// Elementwise D / S.
RatioSeries monopulse_ratio(const std::vector<cplx>& sum, const std::vector<cplx>& delta,
                            ClipPolicy policy = ClipPolicy::none());

/// Exact time averages of D/S over each sampling interval, with S and D
/// linearly interpolated between samples. Returns n - 1 values.
///
/// Per-sample ratios have infinite power, so sample-based boxcar averages
/// are dominated by near-zeros of S that a continuous-time integrator would
/// average through; these interval means are what a continuous integrator
/// sees, which keeps the boxcar variance finite and unbiased.
RatioSeries integrate_ratio(const std::vector<cplx>& sum, const std::vector<cplx>& delta);

struct AlphaEstimate {
    cplx value;
    double std_error_re = 0.0;
    double std_error_im = 0.0;
    std::size_t n_effective = 0;
};

/// Mean of the per-sample ratio divided by theta_s K_F e^{i phi_s}. The
/// standard errors come from the scatter of segment means across all
/// segments of all realizations.
AlphaEstimate estimate_alpha(const SignalPowers& powers, const CarrierParams& carrier,
                             const TrackingGeometry& geometry, const FlatSpectrumSetup& setup,
                             const SimConfig& cfg);

struct ChiEstimate {
    /// S_dM(0) in 1/Hz from cascaded-boxcar (triangular) dumps of length 2T.
    PsdEstimate sdm0;
    /// sdm0 * W P / P_Delta; NaN when P_Delta = 0.
    PsdEstimate chi;
    /// Single-boxcar variance E|M_T|^2 T, normalized like chi. Its 1/f^2
    /// sidelobes let strong spectral content near (but not at) zero leak in,
    /// so it is reported as a diagnostic only.
    PsdEstimate chi_boxcar;
    /// Welch zero-bin estimate of chi (Hann window of length T, 50% overlap).
    PsdEstimate chi_periodogram;
    /// |chi - chi_periodogram| within 3 combined standard errors.
    bool estimators_agree = true;
    std::size_t n_flagged = 0;
    /// Per-segment sample powers of S and D, for power-conservation checks.
    PsdEstimate sum_power;
    PsdEstimate delta_power;
};

/// Null tracking is implied: D carries only n_Delta. All estimators run on
/// the interval means of integrate_ratio, with the mean known to be zero.
ChiEstimate estimate_chi(const SignalPowers& powers, const CarrierParams& carrier,
                         const FlatSpectrumSetup& setup, const SimConfig& cfg);

}  // namespace monostat::mc
