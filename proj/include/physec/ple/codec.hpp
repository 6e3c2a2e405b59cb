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
#include <string>
#include <string_view>
#include <vector>

#include "physec/ple/keystream.hpp"
#include "physec/ple/ofdm.hpp"
#include "physec/ple/scrambling.hpp"
#include "physec/ple/symbols.hpp"

namespace physec::ple {

enum class Scheme { xor_bits, phase, scramble_freq, scramble_time, partial_interleave, dummy };

std::string_view to_string(Scheme scheme);
// "xor", "phase", "scramble_freq", "scramble_time", "partial_interleave", "dummy".
Scheme parse_scheme(std::string_view name);
std::vector<Scheme> all_schemes();

struct PleOptions {
    PhaseEncryptConfig phase;
    double interleave_threshold = 0.0;  // radians
};

struct EncryptedFrame {
    std::vector<SymbolFrame> symbols;  // time domain
    std::size_t payload_bits = 0;
    std::uint64_t nonce = 0;       // first keystream block used
    std::uint64_t next_nonce = 0;  // first block free for the next frame
};

// Composes the keyed stages at fixed pipeline positions, independent of the
// order in which schemes are listed:
//   xor -> (coding: identity) -> mapping -> phase -> dummy positions/content
//   -> partial interleave -> frequency scrambling -> IFFT -> time scrambling -> CP
// Each OFDM symbol consumes a fixed slice of keystream_bits_per_symbol() bits:
//   xor       payload_bits_per_symbol()
//   phase     |data| * (q [+16 with noise])
//   dummy     256-bit position seed + |dummy| * bits_per_symbol
//   interleave |data| * 8 (reference phases)
//   scramble_freq, scramble_time  256-bit permutation seed each
// Dummy positions are re-keyed every symbol inside data U dummy carriers.
class PleCodec {
public:
    PleCodec(OfdmConfig cfg, std::vector<Scheme> schemes, PleOptions options = {});

    const OfdmConfig& config() const { return modem_.config(); }
    const std::vector<Scheme>& schemes() const { return schemes_; }
    bool enabled(Scheme s) const;

    std::size_t payload_bits_per_symbol() const;
    std::size_t keystream_bits_per_symbol() const;
    std::size_t symbols_for(std::size_t payload_bits) const;

    // Pads the payload with zeros to whole OFDM symbols. Keystream blocks
    // [seed.nonce, next_nonce) are consumed.
    EncryptedFrame encrypt(BitSpan payload, const KeystreamSeed& seed) const;
    // Exact inverse over a noiseless link; channel is the flat coefficient the
    // receiver equalises with.
    BitVector decrypt(const EncryptedFrame& frame, const KeystreamSeed& seed, Complex channel = {1.0, 0.0}) const;

    // Keystream bits per plaintext bit, from the per-scheme budgets above.
    double key_to_data_ratio() const;

private:
    struct SymbolKeys;
    SymbolKeys derive_symbol_keys(BitSpan slice) const;

    OfdmModem modem_;
    std::vector<Scheme> schemes_;
    PleOptions options_;
    std::vector<std::size_t> pool_;  // sorted data U dummy carriers
};

// Convenience wrappers matching the codec.
EncryptedFrame encrypt_frame(BitSpan plain, const std::vector<Scheme>& schemes, const KeystreamSeed& seed,
                             const OfdmConfig& cfg, const PleOptions& options = {});
BitVector decrypt_frame(const EncryptedFrame& frame, const std::vector<Scheme>& schemes, const KeystreamSeed& seed,
                        const OfdmConfig& cfg, const PleOptions& options = {});
double key_to_data_ratio(const std::vector<Scheme>& schemes, const OfdmConfig& cfg, const PleOptions& options = {});
BitVector xor_encrypt(BitSpan plain, BitSpan ks);

}  // namespace physec::ple
