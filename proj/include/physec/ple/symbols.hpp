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
#include <span>
#include <string_view>
#include <vector>

#include "physec/bits.hpp"

namespace physec::ple {

using Complex = std::complex<double>;

enum class Mapping { qpsk, qam16 };

unsigned bits_per_symbol(Mapping mapping);
std::string_view to_string(Mapping mapping);
Mapping parse_mapping(std::string_view name);

// Constellation point for each label, unit average energy.
//   QPSK : b0 -> I sign, b1 -> Q sign, 0 -> +, 1 -> -, scaled by 1/sqrt(2); 00 -> (1+j)/sqrt(2).
//   16QAM: b0b1 -> I, b2b3 -> Q, per axis 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3, scaled by 1/sqrt(10).
std::vector<Complex> constellation(Mapping mapping);
double min_distance(Mapping mapping);

// Throws ParameterError when |bits| is not a multiple of bits_per_symbol.
std::vector<Complex> map_symbols(BitSpan bits, Mapping mapping);
// Hard-decision nearest-point demapping.
BitVector demap_symbols(std::span<const Complex> symbols, Mapping mapping);

// m'_k = m_k e^{j theta_k} + n_k with theta_k = 2 pi v_k / 2^q, v_k the k-th
// q-bit keystream word. With noise enabled a further 16 bits per symbol give
// n_k = noise_scale * (a / 255) * e^{j 2 pi b / 256} (a, b the two keystream bytes),
// so |n_k| <= noise_scale and the receiver can subtract it exactly.
struct PhaseEncryptConfig {
    unsigned bits_per_angle = 2;
    bool noise_enabled = false;
    double noise_scale = 0.0;

    // Also enforces the decodability guard noise_scale < min_distance(mapping) / 2.
    void validate(Mapping mapping) const;
    std::size_t keystream_bits_per_symbol() const { return bits_per_angle + (noise_enabled ? 16u : 0u); }
};

std::vector<Complex> phase_encrypt(std::span<const Complex> symbols, BitSpan ks, const PhaseEncryptConfig& cfg);
std::vector<Complex> phase_decrypt(std::span<const Complex> symbols, BitSpan ks, const PhaseEncryptConfig& cfg);

}  // namespace physec::ple
