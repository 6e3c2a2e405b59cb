// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace physec::channel {

// Knobs for the three key-generation principles: reciprocity (sampling_delay,
// snr_db), temporal variation (temporal_correlation) and spatial decorrelation
// (eve_correlation).
struct ChannelParams {
    double temporal_correlation = 0.99;  // one-step AR(1) coefficient, [0, 1]
    std::int64_t sampling_delay = 1;     // Alice samples tau intervals after Bob, >= 0
    double snr_db = 30.0;                // fading variance / noise variance; +inf disables noise
    double eve_correlation = 0.0;        // [-1, 1]
    std::size_t n_probes = 1024;
    std::uint64_t rng_seed = 1;

    void validate() const;
    // Per-receiver additive noise variance, 10^(-snr_db/10).
    double noise_variance() const;
};

// Paired measurements of one fading process. Index i is probing round i:
// Bob measures at t_b[i] = i, Alice at t_a[i] = i + tau.
struct ChannelTrace {
    std::vector<double> x_a;
    std::vector<double> x_b;
    std::vector<double> x_e;
    std::vector<std::int64_t> t_a;
    std::vector<std::int64_t> t_b;

    std::size_t size() const noexcept { return x_b.size(); }
};

// Zero-mean unit-variance stationary Gauss-Markov sequence of length n.
std::vector<double> gauss_markov_process(double rho, std::size_t n, std::uint64_t seed);

// X^B(i) = h(i) + w_B, X^A(i) = h(i + tau) + w_A,
// X^E(i) = rho_E h(i) + sqrt(1 - rho_E^2) g(i) + w_E  with g an independent copy of h.
// Each random stream has its own seed derived from params.rng_seed, so changing
// snr_db leaves the fading realisation unchanged.
ChannelTrace generate_trace(const ChannelParams& params);

// Noise-free fading samples h(0..n+tau-1) that generate_trace uses for params.
std::vector<double> fading_realisation(const ChannelParams& params);

// Sample Pearson correlation. Throws ParameterError on length mismatch or empty
// input and DegenerateInputError when either input has zero variance.
double pearson_correlation(std::span<const double> u, std::span<const double> v);

// Clarke-model spatial correlation J0(2 pi d / lambda) for an antenna offset d.
double clarke_correlation(double distance, double wavelength);

}  // namespace physec::channel
