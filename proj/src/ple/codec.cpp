// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/ple/codec.hpp"

#include <algorithm>
#include <string>

#include "physec/error.hpp"

namespace physec::ple {

namespace {

constexpr std::size_t kPermutationSeedBits = 256;
constexpr unsigned kReferencePhaseBits = 8;

Permutation permutation_from_seed(BitSpan seed_bits, std::size_t n) {
    KeystreamGenerator gen(KeystreamSeed{BitKey(BitVector(seed_bits.begin(), seed_bits.end())), 0});
    return keyed_permutation(n, gen);
}

}  // namespace

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::xor_bits: return "xor";
        case Scheme::phase: return "phase";
        case Scheme::scramble_freq: return "scramble_freq";
        case Scheme::scramble_time: return "scramble_time";
        case Scheme::partial_interleave: return "partial_interleave";
        case Scheme::dummy: return "dummy";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    for (auto s : all_schemes()) {
        if (name == to_string(s)) {
            return s;
        }
    }
    throw ParameterError("unknown PLE scheme '" + std::string(name) + "'");
}

std::vector<Scheme> all_schemes() {
    return {Scheme::xor_bits, Scheme::phase, Scheme::scramble_freq,
            Scheme::scramble_time, Scheme::partial_interleave, Scheme::dummy};
}

struct PleCodec::SymbolKeys {
    BitSpan xor_bits;
    BitSpan phase_bits;
    OfdmConfig layout;
    BitSpan dummy_content;
    std::vector<double> interleave_phases;
    Permutation freq_perm;
    Permutation time_perm;
};

PleCodec::PleCodec(OfdmConfig cfg, std::vector<Scheme> schemes, PleOptions options)
    : modem_(cfg), schemes_(std::move(schemes)), options_(options) {
    auto sorted = schemes_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ParameterError("PLE scheme listed twice");
    }
    if (enabled(Scheme::phase)) {
        options_.phase.validate(config().mapping);
    }
    pool_ = config().data_carriers;
    pool_.insert(pool_.end(), config().dummy_carriers.begin(), config().dummy_carriers.end());
    std::sort(pool_.begin(), pool_.end());
}

bool PleCodec::enabled(Scheme s) const { return std::find(schemes_.begin(), schemes_.end(), s) != schemes_.end(); }

std::size_t PleCodec::payload_bits_per_symbol() const {
    return config().data_carriers.size() * bits_per_symbol(config().mapping);
}

std::size_t PleCodec::keystream_bits_per_symbol() const {
    const std::size_t n_data = config().data_carriers.size();
    std::size_t bits = 0;
    if (enabled(Scheme::xor_bits)) {
        bits += payload_bits_per_symbol();
    }
    if (enabled(Scheme::phase)) {
        bits += n_data * options_.phase.keystream_bits_per_symbol();
    }
    if (enabled(Scheme::dummy)) {
        bits += kPermutationSeedBits + config().dummy_carriers.size() * bits_per_symbol(config().mapping);
    }
    if (enabled(Scheme::partial_interleave)) {
        bits += n_data * kReferencePhaseBits;
    }
    if (enabled(Scheme::scramble_freq)) {
        bits += kPermutationSeedBits;
    }
    if (enabled(Scheme::scramble_time)) {
        bits += kPermutationSeedBits;
    }
    return bits;
}

std::size_t PleCodec::symbols_for(std::size_t payload_bits) const {
    const std::size_t per = payload_bits_per_symbol();
    return std::max<std::size_t>(1, (payload_bits + per - 1) / per);
}

double PleCodec::key_to_data_ratio() const {
    return static_cast<double>(keystream_bits_per_symbol()) / static_cast<double>(payload_bits_per_symbol());
}

PleCodec::SymbolKeys PleCodec::derive_symbol_keys(BitSpan slice) const {
    const auto& cfg = config();
    const std::size_t n_data = cfg.data_carriers.size();
    SpanBitSource src(slice);
    SymbolKeys keys;
    keys.layout = cfg;

    if (enabled(Scheme::xor_bits)) {
        keys.xor_bits = src.take_bits(payload_bits_per_symbol());
    }
    if (enabled(Scheme::phase)) {
        keys.phase_bits = src.take_bits(n_data * options_.phase.keystream_bits_per_symbol());
    }
    if (enabled(Scheme::dummy)) {
        const auto local = permutation_from_seed(src.take_bits(kPermutationSeedBits), pool_.size());
        keys.layout.data_carriers.clear();
        keys.layout.dummy_carriers.clear();
        for (std::size_t i = 0; i < local.size(); ++i) {
            (i < n_data ? keys.layout.data_carriers : keys.layout.dummy_carriers).push_back(pool_[local[i]]);
        }
        keys.dummy_content = src.take_bits(keys.layout.dummy_carriers.size() * bits_per_symbol(cfg.mapping));
    }
    if (enabled(Scheme::partial_interleave)) {
        keys.interleave_phases = reference_phases(n_data, src);
    }
    if (enabled(Scheme::scramble_freq)) {
        const auto local = permutation_from_seed(src.take_bits(kPermutationSeedBits), pool_.size());
        keys.freq_perm = embed_permutation(local, pool_, cfg.n_fft);
    }
    if (enabled(Scheme::scramble_time)) {
        keys.time_perm = permutation_from_seed(src.take_bits(kPermutationSeedBits), cfg.n_fft);
    }
    return keys;
}

EncryptedFrame PleCodec::encrypt(BitSpan payload, const KeystreamSeed& seed) const {
    const auto& cfg = config();
    const std::size_t per_sym = payload_bits_per_symbol();
    const std::size_t budget = keystream_bits_per_symbol();
    const std::size_t n_sym = symbols_for(payload.size());

    BitVector padded(payload.begin(), payload.end());
    padded.resize(n_sym * per_sym, 0);
    const BitVector ks = budget > 0 ? keystream_segment(seed, 0, n_sym * budget) : BitVector{};

    EncryptedFrame out;
    out.payload_bits = payload.size();
    out.nonce = seed.nonce;
    out.next_nonce = seed.nonce + keystream_blocks(n_sym * budget);
    out.symbols.reserve(n_sym);
    for (std::size_t s = 0; s < n_sym; ++s) {
        const auto keys = derive_symbol_keys(BitSpan(ks).subspan(s * budget, budget));
        BitVector bits(padded.begin() + static_cast<std::ptrdiff_t>(s * per_sym),
                       padded.begin() + static_cast<std::ptrdiff_t>((s + 1) * per_sym));
        if (enabled(Scheme::xor_bits)) {
            bits = xor_encrypt(bits, keys.xor_bits);
        }
        auto symbols = map_symbols(bits, cfg.mapping);
        if (enabled(Scheme::phase)) {
            symbols = phase_encrypt(symbols, keys.phase_bits, options_.phase);
        }
        auto freq = place_data(symbols, keys.layout);
        if (enabled(Scheme::dummy)) {
            freq = insert_dummy(freq, keys.layout, keys.dummy_content);
        }
        if (enabled(Scheme::partial_interleave)) {
            freq = partial_interleave(freq, options_.interleave_threshold, keys.layout.data_carriers,
                                      keys.interleave_phases);
        }
        if (enabled(Scheme::scramble_freq)) {
            freq = scramble_freq(freq, keys.freq_perm);
        }
        auto time = modem_.modulate(freq);
        if (enabled(Scheme::scramble_time)) {
            time = scramble_time(time, keys.time_perm);
        }
        out.symbols.push_back(std::move(time));
    }
    return out;
}

BitVector PleCodec::decrypt(const EncryptedFrame& frame, const KeystreamSeed& seed, Complex channel) const {
    const auto& cfg = config();
    const std::size_t budget = keystream_bits_per_symbol();
    const std::size_t n_sym = frame.symbols.size();
    if (n_sym * payload_bits_per_symbol() < frame.payload_bits) {
        throw ParameterError("decrypt: frame holds fewer bits than its payload length");
    }
    const BitVector ks = budget > 0 ? keystream_segment(seed, 0, n_sym * budget) : BitVector{};

    BitVector out;
    out.reserve(n_sym * payload_bits_per_symbol());
    for (std::size_t s = 0; s < n_sym; ++s) {
        const auto keys = derive_symbol_keys(BitSpan(ks).subspan(s * budget, budget));
        SymbolFrame time = frame.symbols[s];
        if (enabled(Scheme::scramble_time)) {
            time = unscramble_time(time, keys.time_perm);
        }
        auto freq = modem_.demodulate(time, channel);
        if (enabled(Scheme::scramble_freq)) {
            freq = unscramble_freq(freq, keys.freq_perm);
        }
        if (enabled(Scheme::partial_interleave)) {
            freq = partial_interleave(freq, options_.interleave_threshold, keys.layout.data_carriers,
                                      keys.interleave_phases);
        }
        auto symbols = extract_data(freq, keys.layout);
        if (enabled(Scheme::phase)) {
            symbols = phase_decrypt(symbols, keys.phase_bits, options_.phase);
        }
        auto bits = demap_symbols(symbols, cfg.mapping);
        if (enabled(Scheme::xor_bits)) {
            bits = xor_encrypt(bits, keys.xor_bits);
        }
        out.insert(out.end(), bits.begin(), bits.end());
    }
    out.resize(frame.payload_bits);
    return out;
}

EncryptedFrame encrypt_frame(BitSpan plain, const std::vector<Scheme>& schemes, const KeystreamSeed& seed,
                             const OfdmConfig& cfg, const PleOptions& options) {
    return PleCodec(cfg, schemes, options).encrypt(plain, seed);
}

BitVector decrypt_frame(const EncryptedFrame& frame, const std::vector<Scheme>& schemes, const KeystreamSeed& seed,
                        const OfdmConfig& cfg, const PleOptions& options) {
    return PleCodec(cfg, schemes, options).decrypt(frame, seed);
}

double key_to_data_ratio(const std::vector<Scheme>& schemes, const OfdmConfig& cfg, const PleOptions& options) {
    return PleCodec(cfg, schemes, options).key_to_data_ratio();
}

BitVector xor_encrypt(BitSpan plain, BitSpan ks) {
    if (ks.size() < plain.size()) {
        throw ParameterError("xor_encrypt: keystream shorter than plaintext");
    }
    return xor_bits(plain, ks.first(plain.size()));
}

}  // namespace physec::ple
