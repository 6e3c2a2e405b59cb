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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace physec {

// One bit per element, values 0 or 1.
using BitVector = std::vector<std::uint8_t>;
using BitSpan = std::span<const std::uint8_t>;

enum class KeyStage { quantized = 0, reconciled = 1, amplified = 2 };

std::string_view to_string(KeyStage stage);

// An ordered bit sequence tagged with the pipeline stage that produced it.
// Stages only move forward: quantized -> reconciled -> amplified.
class BitKey {
public:
    BitKey() = default;
    explicit BitKey(BitVector bits, KeyStage stage = KeyStage::quantized)
        : bits_(std::move(bits)), stage_(stage) {}

    const BitVector& bits() const noexcept { return bits_; }
    KeyStage stage() const noexcept { return stage_; }
    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    // Re-tags the key; throws StateError when moving backwards.
    BitKey advanced_to(KeyStage next) const;

    friend bool operator==(const BitKey&, const BitKey&) = default;

private:
    BitVector bits_;
    KeyStage stage_ = KeyStage::quantized;
};

std::size_t hamming_distance(BitSpan a, BitSpan b);
std::size_t count_ones(BitSpan bits);

// Packs bits MSB-first into bytes; the last byte is zero-padded.
std::vector<std::uint8_t> pack_bits(BitSpan bits);
// Expands bytes MSB-first and keeps the first n_bits.
BitVector unpack_bits(std::span<const std::uint8_t> bytes, std::size_t n_bits);

// "0110" <-> {0,1,1,0}. Parsing ignores spaces; other characters throw ParameterError.
BitVector bits_from_string(std::string_view text);
std::string bits_to_string(BitSpan bits);

BitVector xor_bits(BitSpan a, BitSpan b);

// Reads an unsigned integer from width bits (MSB first) starting at offset.
std::uint64_t read_word(BitSpan bits, std::size_t offset, unsigned width);
void append_word(BitVector& out, std::uint64_t value, unsigned width);

}  // namespace physec
