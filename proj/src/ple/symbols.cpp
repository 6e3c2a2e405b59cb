// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/ple/symbols.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "physec/error.hpp"

namespace physec::ple {

namespace {

// Gray-labelled 4-PAM level for two bits, before scaling.
double pam4_level(unsigned two_bits) {
    switch (two_bits) {
        case 0b00: return -3.0;
        case 0b01: return -1.0;
        case 0b11: return 1.0;
        default: return 3.0;  // 0b10
    }
}

unsigned pam4_decide(double v) {
    if (v < -2.0) return 0b00;
    if (v < 0.0) return 0b01;
    if (v < 2.0) return 0b11;
    return 0b10;
}

const double kQpskScale = 1.0 / std::numbers::sqrt2;
const double kQam16Scale = 1.0 / std::sqrt(10.0);

}  // namespace

unsigned bits_per_symbol(Mapping mapping) { return mapping == Mapping::qpsk ? 2 : 4; }

std::string_view to_string(Mapping mapping) { return mapping == Mapping::qpsk ? "qpsk" : "16qam"; }

Mapping parse_mapping(std::string_view name) {
    if (name == "qpsk" || name == "QPSK") return Mapping::qpsk;
    if (name == "16qam" || name == "16QAM" || name == "qam16") return Mapping::qam16;
    throw ParameterError("unknown mapping '" + std::string(name) + "'");
}

std::vector<Complex> constellation(Mapping mapping) {
    const unsigned bps = bits_per_symbol(mapping);
    std::vector<Complex> points;
    for (unsigned label = 0; label < (1u << bps); ++label) {
        BitVector bits;
        append_word(bits, label, bps);
        points.push_back(map_symbols(bits, mapping).front());
    }
    return points;
}

double min_distance(Mapping mapping) {
    return mapping == Mapping::qpsk ? 2.0 * kQpskScale : 2.0 * kQam16Scale;
}

std::vector<Complex> map_symbols(BitSpan bits, Mapping mapping) {
    const unsigned bps = bits_per_symbol(mapping);
    if (bits.size() % bps != 0) {
        throw ParameterError("map_symbols: bit count not a multiple of " + std::to_string(bps));
    }
    std::vector<Complex> out;
    out.reserve(bits.size() / bps);
    for (std::size_t i = 0; i < bits.size(); i += bps) {
        if (mapping == Mapping::qpsk) {
            out.emplace_back(bits[i] ? -kQpskScale : kQpskScale, bits[i + 1] ? -kQpskScale : kQpskScale);
        } else {
            const unsigned ib = (bits[i] << 1) | bits[i + 1];
            const unsigned qb = (bits[i + 2] << 1) | bits[i + 3];
            out.emplace_back(pam4_level(ib) * kQam16Scale, pam4_level(qb) * kQam16Scale);
        }
    }
    return out;
}

BitVector demap_symbols(std::span<const Complex> symbols, Mapping mapping) {
    BitVector out;
    out.reserve(symbols.size() * bits_per_symbol(mapping));
    for (const auto& s : symbols) {
        if (mapping == Mapping::qpsk) {
            out.push_back(s.real() < 0.0 ? 1 : 0);
            out.push_back(s.imag() < 0.0 ? 1 : 0);
        } else {
            append_word(out, pam4_decide(s.real() / kQam16Scale), 2);
            append_word(out, pam4_decide(s.imag() / kQam16Scale), 2);
        }
    }
    return out;
}

void PhaseEncryptConfig::validate(Mapping mapping) const {
    if (bits_per_angle < 1 || bits_per_angle > 8) {
        throw ParameterError("bits_per_angle must lie in [1, 8]");
    }
    if (!(noise_scale >= 0.0)) {
        throw ParameterError("noise_scale must be non-negative");
    }
    if (noise_enabled && !(noise_scale < min_distance(mapping) / 2.0)) {
        throw ParameterError("noise_scale must stay below half the minimum constellation distance");
    }
}

namespace {

// Quarter turns are returned exactly so that q <= 2 rotations are lossless.
Complex rotation_for(std::uint64_t word, unsigned bits) {
    const std::uint64_t levels = std::uint64_t{1} << bits;
    if ((4 * word) % levels == 0) {
        static const Complex quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        return quarter[(4 * word) / levels];
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(word) / static_cast<double>(levels));
}

struct PhaseKey {
    Complex rotation;
    Complex noise;
};

std::vector<PhaseKey> phase_keys(std::size_t count, BitSpan ks, const PhaseEncryptConfig& cfg) {
    const std::size_t per = cfg.keystream_bits_per_symbol();
    if (ks.size() < per * count) {
        throw ParameterError("phase encryption: keystream exhausted");
    }
    std::vector<PhaseKey> keys(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t off = k * per;
        const auto word = read_word(ks, off, cfg.bits_per_angle);
        keys[k].rotation = rotation_for(word, cfg.bits_per_angle);
        if (cfg.noise_enabled) {
            const auto a = static_cast<double>(read_word(ks, off + cfg.bits_per_angle, 8));
            const auto b = static_cast<double>(read_word(ks, off + cfg.bits_per_angle + 8, 8));
            keys[k].noise = std::polar(cfg.noise_scale * a / 255.0, 2.0 * std::numbers::pi * b / 256.0);
        }
    }
    return keys;
}

}  // namespace

std::vector<Complex> phase_encrypt(std::span<const Complex> symbols, BitSpan ks, const PhaseEncryptConfig& cfg) {
    const auto keys = phase_keys(symbols.size(), ks, cfg);
    std::vector<Complex> out(symbols.size());
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        out[k] = symbols[k] * keys[k].rotation + keys[k].noise;
    }
    return out;
}

std::vector<Complex> phase_decrypt(std::span<const Complex> symbols, BitSpan ks, const PhaseEncryptConfig& cfg) {
    const auto keys = phase_keys(symbols.size(), ks, cfg);
    std::vector<Complex> out(symbols.size());
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        out[k] = (symbols[k] - keys[k].noise) * std::conj(keys[k].rotation);
    }
    return out;
}

}  // namespace physec::ple
