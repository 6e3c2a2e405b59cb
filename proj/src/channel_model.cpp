// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "physec/error.hpp"
#include "physec/seed.hpp"

namespace physec::channel {

namespace {

enum Stream : std::uint64_t { fading = 1, eve_fading = 2, noise_a = 3, noise_b = 4, noise_e = 5 };

std::vector<double> white_noise(std::size_t n, double variance, std::uint64_t seed) {
    std::vector<double> w(n, 0.0);
    if (variance <= 0.0) {
        return w;
    }
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance));
    for (auto& v : w) {
        v = gauss(eng);
    }
    return w;
}

}  // namespace

void ChannelParams::validate() const {
    if (!(temporal_correlation >= 0.0 && temporal_correlation <= 1.0)) {
        throw ParameterError("temporal_correlation must lie in [0, 1]");
    }
    if (!(eve_correlation >= -1.0 && eve_correlation <= 1.0)) {
        throw ParameterError("eve_correlation must lie in [-1, 1]");
    }
    if (sampling_delay < 0) {
        throw ParameterError("sampling_delay must be non-negative");
    }
    if (n_probes < 1) {
        throw ParameterError("n_probes must be at least 1");
    }
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
        throw ParameterError("snr_db must be a number or +inf");
    }
}

double ChannelParams::noise_variance() const {
    if (std::isinf(snr_db)) {
        return 0.0;
    }
    return std::pow(10.0, -snr_db / 10.0);
}

std::vector<double> gauss_markov_process(double rho, std::size_t n, std::uint64_t seed) {
    std::vector<double> h(n);
    if (n == 0) {
        return h;
    }
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double innovation = std::sqrt(1.0 - rho * rho);
    h[0] = gauss(eng);
    for (std::size_t i = 1; i < n; ++i) {
        h[i] = rho * h[i - 1] + innovation * gauss(eng);
    }
    return h;
}

std::vector<double> fading_realisation(const ChannelParams& params) {
    params.validate();
    const std::size_t len = params.n_probes + static_cast<std::size_t>(params.sampling_delay);
    return gauss_markov_process(params.temporal_correlation, len, derive_seed(params.rng_seed, {Stream::fading}));
}

ChannelTrace generate_trace(const ChannelParams& params) {
    params.validate();
    const std::size_t n = params.n_probes;
    const auto tau = static_cast<std::size_t>(params.sampling_delay);
    const double nv = params.noise_variance();

    const auto h = fading_realisation(params);
    const auto g = gauss_markov_process(params.temporal_correlation, n, derive_seed(params.rng_seed, {Stream::eve_fading}));
    const auto w_a = white_noise(n, nv, derive_seed(params.rng_seed, {Stream::noise_a}));
    const auto w_b = white_noise(n, nv, derive_seed(params.rng_seed, {Stream::noise_b}));
    const auto w_e = white_noise(n, nv, derive_seed(params.rng_seed, {Stream::noise_e}));

    const double rho_e = params.eve_correlation;
    const double rho_e_perp = std::sqrt(1.0 - rho_e * rho_e);

    ChannelTrace trace;
    trace.x_a.resize(n);
    trace.x_b.resize(n);
    trace.x_e.resize(n);
    trace.t_a.resize(n);
    trace.t_b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        trace.x_b[i] = h[i] + w_b[i];
        trace.x_a[i] = h[i + tau] + w_a[i];
        trace.x_e[i] = rho_e * h[i] + rho_e_perp * g[i] + w_e[i];
        trace.t_b[i] = static_cast<std::int64_t>(i);
        trace.t_a[i] = static_cast<std::int64_t>(i + tau);
    }
    return trace;
}

double pearson_correlation(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw ParameterError("pearson_correlation: length mismatch");
    }
    if (u.empty()) {
        throw ParameterError("pearson_correlation: empty input");
    }
    const auto n = static_cast<double>(u.size());
    double mu = 0.0;
    double mv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i];
        mv += v[i];
    }
    mu /= n;
    mv /= n;
    double suu = 0.0;
    double svv = 0.0;
    double suv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double du = u[i] - mu;
        const double dv = v[i] - mv;
        suu += du * du;
        svv += dv * dv;
        suv += du * dv;
    }
    if (suu == 0.0 || svv == 0.0) {
        throw DegenerateInputError("pearson_correlation: zero variance input");
    }
    const double r = suv / std::sqrt(suu * svv);
    return std::clamp(r, -1.0, 1.0);
}

double clarke_correlation(double distance, double wavelength) {
    if (!(wavelength > 0.0) || !(distance >= 0.0)) {
        throw ParameterError("clarke_correlation: distance must be >= 0 and wavelength > 0");
    }
    return std::cyl_bessel_j(0.0, 2.0 * std::numbers::pi * distance / wavelength);
}

}  // namespace physec::channel
