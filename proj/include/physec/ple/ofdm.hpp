// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "physec/ple/symbols.hpp"

namespace physec::ple {

struct OfdmConfig {
    std::size_t n_fft = 64;
    std::size_t cp_len = 16;
    std::vector<std::size_t> data_carriers;   // FFT bin indices
    std::vector<std::size_t> dummy_carriers;  // disjoint from data_carriers
    Mapping mapping = Mapping::qpsk;

    // Throws ConfigError on overlapping or out-of-range carrier sets, a
    // non-power-of-two FFT size or cp_len >= n_fft.
    void validate() const;
    std::size_t occupied() const { return data_carriers.size() + dummy_carriers.size(); }

    // 802.11a-like layout: 64 bins, CP 16, 48 data carriers at logical
    // -26..26 without DC and +/-7, +/-21; those four bins are the dummy carriers.
    static OfdmConfig wifi_default();
};

enum class Domain { frequency, time };

// One OFDM symbol: n_fft subcarriers (frequency) or cp_len + n_fft samples (time).
struct SymbolFrame {
    Domain domain = Domain::frequency;
    std::vector<Complex> samples;
    std::size_t cp_len = 0;

    static SymbolFrame frequency(std::vector<Complex> x) { return {Domain::frequency, std::move(x), 0}; }
    double energy() const;
};

void require_domain(const SymbolFrame& frame, Domain domain);

// Unitary FFT pair for one size. Plans are built once; transforms are const
// and may be called concurrently.
class OfdmModem {
public:
    explicit OfdmModem(const OfdmConfig& cfg);
    ~OfdmModem();
    OfdmModem(const OfdmModem&) = delete;
    OfdmModem& operator=(const OfdmModem&) = delete;

    const OfdmConfig& config() const { return cfg_; }

    // Unitary inverse DFT, then the last cp_len samples copied to the front.
    SymbolFrame modulate(const SymbolFrame& freq) const;
    // Strips the CP and applies the unitary forward DFT; each subcarrier is then
    // divided by the known flat channel coefficient.
    SymbolFrame demodulate(const SymbolFrame& time, Complex channel = {1.0, 0.0}) const;
    // Per-subcarrier equalisation (|channel| == n_fft).
    SymbolFrame demodulate(const SymbolFrame& time, std::span<const Complex> channel) const;

    // Raw unitary transforms of n_fft samples.
    std::vector<Complex> idft(std::span<const Complex> x) const;
    std::vector<Complex> dft(std::span<const Complex> x) const;

private:
    struct Plans;
    OfdmConfig cfg_;
    std::unique_ptr<Plans> plans_;
};

SymbolFrame ofdm_modulate(const SymbolFrame& freq, const OfdmConfig& cfg);
SymbolFrame ofdm_demodulate(const SymbolFrame& time, const OfdmConfig& cfg, Complex channel = {1.0, 0.0});

// Adds CN(0, 10^(-snr_db/10)) noise to every sample (signal power reference 1).
// snr_db = +inf leaves the frame unchanged.
SymbolFrame awgn_link(const SymbolFrame& frame, double snr_db, std::uint64_t rng_seed);
// Multiplies every sample by a one-tap channel coefficient.
SymbolFrame flat_fading_link(const SymbolFrame& frame, Complex coefficient);

// Per-subcarrier Es/N0 (dB) that corresponds to an Eb/N0 for the given mapping.
double ebn0_to_snr_db(double ebn0_db, Mapping mapping);

}  // namespace physec::ple
