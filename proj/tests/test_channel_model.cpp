// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numeric>

#include "physec/channel_model.hpp"
#include "physec/error.hpp"

using namespace physec;
using namespace physec::channel;
using Catch::Matchers::WithinAbs;

namespace {

ChannelParams params(double rho, std::int64_t tau, double snr, double rho_e, std::size_t n, std::uint64_t seed) {
    ChannelParams p;
    p.temporal_correlation = rho;
    p.sampling_delay = tau;
    p.snr_db = snr;
    p.eve_correlation = rho_e;
    p.n_probes = n;
    p.rng_seed = seed;
    return p;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

double sample_variance(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    const double mu = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mu) * (v - mu);
    return ss / (n - 1.0);
}

}  // namespace

TEST_CASE("pearson correlation on hand-computed inputs") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{3, 2, 1};
    CHECK_THAT(pearson_correlation(a, a), WithinAbs(1.0, 1e-15));
    CHECK_THAT(pearson_correlation(a, b), WithinAbs(-1.0, 1e-15));
    // deviations (-1.5,-.5,.5,1.5) and (-1.5,-.5,1.5,.5): 4 / sqrt(5 * 5)
    CHECK_THAT(pearson_correlation(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 2, 4, 3}),
               WithinAbs(0.8, 1e-15));
}

TEST_CASE("pearson correlation rejects bad input") {
    const std::vector<double> a{1, 2, 3};
    CHECK_THROWS_AS(pearson_correlation(a, std::vector<double>{1, 2}), ParameterError);
    CHECK_THROWS_AS(pearson_correlation(std::vector<double>{}, std::vector<double>{}), ParameterError);
    CHECK_THROWS_AS(pearson_correlation(a, std::vector<double>{5, 5, 5}), DegenerateInputError);
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(params(0.99, 1, 30, 0, 10, 1).validate());
    CHECK_NOTHROW(params(0.0, 0, kInf, -1.0, 1, 1).validate());
    CHECK_NOTHROW(params(1.0, 0, -5, 1.0, 1, 1).validate());
    CHECK_THROWS_AS(params(1.01, 1, 30, 0, 10, 1).validate(), ParameterError);
    CHECK_THROWS_AS(params(-0.1, 1, 30, 0, 10, 1).validate(), ParameterError);
    CHECK_THROWS_AS(params(0.5, -1, 30, 0, 10, 1).validate(), ParameterError);
    CHECK_THROWS_AS(params(0.5, 1, 30, 1.5, 10, 1).validate(), ParameterError);
    CHECK_THROWS_AS(params(0.5, 1, 30, 0, 0, 1).validate(), ParameterError);
    CHECK_THROWS_AS(params(0.5, 1, std::nan(""), 0, 10, 1).validate(), ParameterError);
    CHECK_THROWS_AS(params(0.5, 1, -kInf, 0, 10, 1).validate(), ParameterError);
    CHECK_THROWS_AS(generate_trace(params(2.0, 1, 30, 0, 10, 1)), ParameterError);
}

TEST_CASE("noise-free zero-delay trace is perfectly reciprocal") {
    const auto t = generate_trace(params(0.99, 0, kInf, 0, 1000, 7));
    CHECK(t.x_a == t.x_b);
}

TEST_CASE("trace shape and timestamps") {
    const auto t = generate_trace(params(0.9, 3, 20, 0.2, 257, 3));
    REQUIRE(t.size() == 257);
    REQUIRE(t.x_a.size() == 257);
    REQUIRE(t.x_e.size() == 257);
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(t.t_b[i] == static_cast<std::int64_t>(i));
        CHECK(t.t_a[i] - t.t_b[i] == 3);
        CHECK(std::isfinite(t.x_a[i]));
        CHECK(std::isfinite(t.x_b[i]));
        CHECK(std::isfinite(t.x_e[i]));
    }
}

TEST_CASE("alice sees the fading sample tau rounds later") {
    const auto p = params(0.9, 2, kInf, 0, 500, 11);
    const auto h = fading_realisation(p);
    const auto t = generate_trace(p);
    REQUIRE(h.size() == 502);
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(t.x_b[i] == h[i]);
        CHECK(t.x_a[i] == h[i + 2]);
    }
}

TEST_CASE("traces are deterministic in the seed") {
    const auto p = params(0.95, 1, 10, 0.3, 2048, 42);
    const auto a = generate_trace(p);
    const auto b = generate_trace(p);
    CHECK(a.x_a == b.x_a);
    CHECK(a.x_b == b.x_b);
    CHECK(a.x_e == b.x_e);
    auto q = p;
    q.rng_seed = 43;
    CHECK(generate_trace(q).x_b != a.x_b);
}

TEST_CASE("snr only changes the noise, not the fading") {
    auto p = params(0.95, 1, 30, 0, 512, 5);
    const auto h30 = fading_realisation(p);
    p.snr_db = 0;
    CHECK(fading_realisation(p) == h30);
}

TEST_CASE("measurement noise has the configured variance") {
    const auto p = params(0.9, 0, 10, 0, 100000, 9);
    const auto h = fading_realisation(p);
    const auto t = generate_trace(p);
    std::vector<double> w(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) w[i] = t.x_b[i] - h[i];
    // sample variance of 1e5 Gaussians: relative sd sqrt(2/n) ~ 0.45%
    CHECK_THAT(sample_variance(w), WithinAbs(0.1, 0.1 * 0.03));
}

TEST_CASE("fading process is stationary with unit variance") {
    const auto h = gauss_markov_process(0.9, 100000, 77);
    const double var = sample_variance(h);
    CHECK(var >= 0.9);
    CHECK(var <= 1.1);
    const double mean = std::accumulate(h.begin(), h.end(), 0.0) / static_cast<double>(h.size());
    // var(mean) = (1 + rho) / ((1 - rho) n) for AR(1)
    CHECK(std::abs(mean) < 4.0 * std::sqrt(19.0 / 100000.0));
}

TEST_CASE("fading process has the configured lag-one correlation") {
    const auto h = gauss_markov_process(0.8, 100000, 13);
    const std::vector<double> head(h.begin(), h.end() - 1);
    const std::vector<double> tail(h.begin() + 1, h.end());
    CHECK_THAT(pearson_correlation(head, tail), WithinAbs(0.8, 0.01));
}

TEST_CASE("reciprocal correlation at 20 dB matches the analytic value") {
    const auto t = generate_trace(params(0.99, 1, 20, 0, 100000, 2024));
    CHECK_THAT(pearson_correlation(t.x_a, t.x_b), WithinAbs(0.99 / 1.01, 0.01));
}

TEST_CASE("uncorrelated eve is decorrelated from bob") {
    SECTION("noise off, n = 1e5") {
        const auto t = generate_trace(params(0.0, 0, kInf, 0.0, 100000, 99));
        CHECK(std::abs(pearson_correlation(t.x_e, t.x_b)) < 0.01);
    }
    SECTION("below three over root n at n = 1e4, several seeds") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto t = generate_trace(params(0.0, 1, 20, 0.0, 10000, seed));
            CHECK(std::abs(pearson_correlation(t.x_e, t.x_b)) < 3.0 / std::sqrt(10000.0));
        }
    }
}

TEST_CASE("eve correlation follows the configured scalar") {
    const auto t = generate_trace(params(0.0, 0, kInf, 0.7, 100000, 17));
    CHECK_THAT(pearson_correlation(t.x_e, t.x_b), WithinAbs(0.7, 0.01));
    const auto same = generate_trace(params(0.5, 0, kInf, 1.0, 1000, 17));
    CHECK(same.x_e == same.x_b);
}

TEST_CASE("mean reciprocal correlation does not increase as snr falls") {
    const std::vector<double> snrs{30, 20, 10, 0};
    std::vector<double> means;
    for (double snr : snrs) {
        double sum = 0.0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const auto t = generate_trace(params(0.99, 1, snr, 0, 1024, seed));
            sum += pearson_correlation(t.x_a, t.x_b);
        }
        means.push_back(sum / 50.0);
    }
    for (std::size_t i = 1; i < means.size(); ++i) {
        CHECK(means[i] <= means[i - 1]);
    }
}

TEST_CASE("clarke correlation") {
    CHECK_THAT(clarke_correlation(0.0, 0.125), WithinAbs(1.0, 1e-15));
    // J0(pi)
    CHECK_THAT(clarke_correlation(0.0625, 0.125), WithinAbs(-0.30424217764409386, 1e-12));
    CHECK_THROWS_AS(clarke_correlation(0.1, 0.0), ParameterError);
}
