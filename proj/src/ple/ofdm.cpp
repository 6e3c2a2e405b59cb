// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/ple/ofdm.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <string>

#include "physec/error.hpp"

namespace physec::ple {

namespace {

// The FFTW planner is not thread-safe; execution on new arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    fftw_complex* data;
};

}  // namespace

void OfdmConfig::validate() const {
    if (n_fft < 2 || (n_fft & (n_fft - 1)) != 0) {
        throw ConfigError("n_fft must be a power of two >= 2");
    }
    if (cp_len >= n_fft) {
        throw ConfigError("cp_len must be smaller than n_fft");
    }
    if (data_carriers.empty()) {
        throw ConfigError("at least one data carrier is required");
    }
    std::vector<char> used(n_fft, 0);
    for (auto set : {&data_carriers, &dummy_carriers}) {
        for (auto c : *set) {
            if (c >= n_fft) {
                throw ConfigError("carrier index " + std::to_string(c) + " outside [0, n_fft)");
            }
            if (used[c]) {
                throw ConfigError("carrier " + std::to_string(c) + " listed twice (data and dummy sets must be disjoint)");
            }
            used[c] = 1;
        }
    }
}

OfdmConfig OfdmConfig::wifi_default() {
    OfdmConfig cfg;
    cfg.n_fft = 64;
    cfg.cp_len = 16;
    cfg.mapping = Mapping::qpsk;
    auto bin = [](int logical) { return static_cast<std::size_t>((logical + 64) % 64); };
    for (int k = -26; k <= 26; ++k) {
        if (k == 0) {
            continue;
        }
        if (k == -21 || k == -7 || k == 7 || k == 21) {
            cfg.dummy_carriers.push_back(bin(k));
        } else {
            cfg.data_carriers.push_back(bin(k));
        }
    }
    return cfg;
}

double SymbolFrame::energy() const {
    double e = 0.0;
    for (const auto& s : samples) {
        e += std::norm(s);
    }
    return e;
}

void require_domain(const SymbolFrame& frame, Domain domain) {
    if (frame.domain != domain) {
        throw StateError(domain == Domain::frequency ? "frame must be in the frequency domain"
                                                     : "frame must be in the time domain");
    }
}

struct OfdmModem::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

OfdmModem::OfdmModem(const OfdmConfig& cfg) : cfg_(cfg), plans_(std::make_unique<Plans>()) {
    cfg_.validate();
    const int n = static_cast<int>(cfg_.n_fft);
    FftwBuffer in(cfg_.n_fft);
    FftwBuffer out(cfg_.n_fft);
    std::lock_guard lock(planner_mutex());
    plans_->forward = fftw_plan_dft_1d(n, in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_1d(n, in.data, out.data, FFTW_BACKWARD, FFTW_ESTIMATE);
}

OfdmModem::~OfdmModem() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plans_->forward);
    fftw_destroy_plan(plans_->backward);
}

namespace {

std::vector<Complex> run_plan(fftw_plan plan, std::span<const Complex> x) {
    const std::size_t n = x.size();
    FftwBuffer in(n);
    FftwBuffer out(n);
    for (std::size_t i = 0; i < n; ++i) {
        in.data[i][0] = x[i].real();
        in.data[i][1] = x[i].imag();
    }
    fftw_execute_dft(plan, in.data, out.data);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = Complex(out.data[i][0], out.data[i][1]) * scale;
    }
    return y;
}

}  // namespace

std::vector<Complex> OfdmModem::idft(std::span<const Complex> x) const {
    if (x.size() != cfg_.n_fft) {
        throw ParameterError("idft: expected n_fft samples");
    }
    return run_plan(plans_->backward, x);
}

std::vector<Complex> OfdmModem::dft(std::span<const Complex> x) const {
    if (x.size() != cfg_.n_fft) {
        throw ParameterError("dft: expected n_fft samples");
    }
    return run_plan(plans_->forward, x);
}

SymbolFrame OfdmModem::modulate(const SymbolFrame& freq) const {
    require_domain(freq, Domain::frequency);
    const auto body = idft(freq.samples);
    SymbolFrame out{Domain::time, {}, cfg_.cp_len};
    out.samples.reserve(cfg_.cp_len + cfg_.n_fft);
    out.samples.insert(out.samples.end(), body.end() - static_cast<std::ptrdiff_t>(cfg_.cp_len), body.end());
    out.samples.insert(out.samples.end(), body.begin(), body.end());
    return out;
}

SymbolFrame OfdmModem::demodulate(const SymbolFrame& time, Complex channel) const {
    std::vector<Complex> h(cfg_.n_fft, channel);
    return demodulate(time, h);
}

SymbolFrame OfdmModem::demodulate(const SymbolFrame& time, std::span<const Complex> channel) const {
    require_domain(time, Domain::time);
    if (time.cp_len != cfg_.cp_len || time.samples.size() != cfg_.cp_len + cfg_.n_fft) {
        throw ParameterError("demodulate: frame shape does not match the OFDM configuration");
    }
    if (channel.size() != cfg_.n_fft) {
        throw ParameterError("demodulate: channel response must have n_fft taps");
    }
    const std::span<const Complex> body(time.samples.data() + cfg_.cp_len, cfg_.n_fft);
    auto x = dft(body);
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] /= channel[k];
    }
    return SymbolFrame::frequency(std::move(x));
}

SymbolFrame ofdm_modulate(const SymbolFrame& freq, const OfdmConfig& cfg) {
    if (freq.samples.size() != cfg.n_fft) {
        throw ParameterError("ofdm_modulate: frame length differs from n_fft");
    }
    return OfdmModem(cfg).modulate(freq);
}

SymbolFrame ofdm_demodulate(const SymbolFrame& time, const OfdmConfig& cfg, Complex channel) {
    return OfdmModem(cfg).demodulate(time, channel);
}

SymbolFrame awgn_link(const SymbolFrame& frame, double snr_db, std::uint64_t rng_seed) {
    if (std::isnan(snr_db)) {
        throw ParameterError("awgn_link: snr_db is NaN");
    }
    SymbolFrame out = frame;
    if (snr_db == std::numeric_limits<double>::infinity()) {
        return out;
    }
    const double sigma = std::sqrt(std::pow(10.0, -snr_db / 10.0) / 2.0);
    std::mt19937_64 eng(rng_seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (auto& s : out.samples) {
        const double re = gauss(eng);
        const double im = gauss(eng);
        s += Complex(re, im);
    }
    return out;
}

SymbolFrame flat_fading_link(const SymbolFrame& frame, Complex coefficient) {
    SymbolFrame out = frame;
    for (auto& s : out.samples) {
        s *= coefficient;
    }
    return out;
}

double ebn0_to_snr_db(double ebn0_db, Mapping mapping) {
    return ebn0_db + 10.0 * std::log10(static_cast<double>(bits_per_symbol(mapping)));
}

}  // namespace physec::ple
