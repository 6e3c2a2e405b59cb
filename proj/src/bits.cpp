// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/bits.hpp"

#include <algorithm>

#include "physec/error.hpp"

namespace physec {

std::string_view to_string(KeyStage stage) {
    switch (stage) {
        case KeyStage::quantized: return "quantized";
        case KeyStage::reconciled: return "reconciled";
        case KeyStage::amplified: return "amplified";
    }
    return "unknown";
}

BitKey BitKey::advanced_to(KeyStage next) const {
    if (static_cast<int>(next) < static_cast<int>(stage_)) {
        throw StateError("key stage cannot move from " + std::string(to_string(stage_)) + " back to " +
                         std::string(to_string(next)));
    }
    return BitKey(bits_, next);
}

std::size_t hamming_distance(BitSpan a, BitSpan b) {
    if (a.size() != b.size()) {
        throw ParameterError("hamming_distance: length mismatch");
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += (a[i] != b[i]) ? 1 : 0;
    }
    return d;
}

std::size_t count_ones(BitSpan bits) {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<std::uint8_t> pack_bits(BitSpan bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) {
            out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
        }
    }
    return out;
}

BitVector unpack_bits(std::span<const std::uint8_t> bytes, std::size_t n_bits) {
    if (n_bits > bytes.size() * 8) {
        throw ParameterError("unpack_bits: not enough bytes");
    }
    BitVector out(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) {
        out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    }
    return out;
}

BitVector bits_from_string(std::string_view text) {
    BitVector out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '0' || c == '1') {
            out.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (c != ' ') {
            throw ParameterError("bits_from_string: unexpected character");
        }
    }
    return out;
}

std::string bits_to_string(BitSpan bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

BitVector xor_bits(BitSpan a, BitSpan b) {
    if (a.size() != b.size()) {
        throw ParameterError("xor_bits: length mismatch");
    }
    BitVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] ^ b[i];
    }
    return out;
}

std::uint64_t read_word(BitSpan bits, std::size_t offset, unsigned width) {
    if (width > 64 || offset + width > bits.size()) {
        throw ParameterError("read_word: out of range");
    }
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) {
        v = (v << 1) | (bits[offset + i] & 1u);
    }
    return v;
}

void append_word(BitVector& out, std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) {
        out.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
    }
}

}  // namespace physec
