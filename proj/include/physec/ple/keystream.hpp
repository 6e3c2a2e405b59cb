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

#include "physec/bits.hpp"

namespace physec::ple {

inline constexpr std::size_t kKeystreamBlockBits = 256;

// Shared key from key generation plus the counter origin for this stream.
struct KeystreamSeed {
    BitKey key;
    std::uint64_t nonce = 0;
};

// Block i = SHA-256(u64be(|key|) || packed(key) || u64be(nonce + i)); blocks are
// concatenated and truncated to n_bits. Throws ParameterError on an empty key.
BitVector keystream(const KeystreamSeed& seed, std::size_t n_bits);

// Same stream starting at block first_block (seekable access).
BitVector keystream_segment(const KeystreamSeed& seed, std::uint64_t first_block, std::size_t n_bits);

// Number of counter blocks needed to cover n_bits.
constexpr std::uint64_t keystream_blocks(std::size_t n_bits) {
    return (n_bits + kKeystreamBlockBits - 1) / kKeystreamBlockBits;
}

// Sequential reader over keystream bits.
class BitSource {
public:
    virtual ~BitSource() = default;
    // Next width bits as an unsigned integer, MSB first (width <= 64).
    virtual std::uint64_t take(unsigned width) = 0;
    virtual std::size_t consumed() const = 0;
};

// Reads from a fixed buffer; throws ParameterError("keystream exhausted") past the end.
class SpanBitSource final : public BitSource {
public:
    explicit SpanBitSource(BitSpan bits) : bits_(bits) {}
    std::uint64_t take(unsigned width) override;
    BitSpan take_bits(std::size_t n);
    std::size_t consumed() const override { return pos_; }
    std::size_t remaining() const { return bits_.size() - pos_; }

private:
    BitSpan bits_;
    std::size_t pos_ = 0;
};

// Unbounded reader that expands a seed block by block on demand.
class KeystreamGenerator final : public BitSource {
public:
    explicit KeystreamGenerator(KeystreamSeed seed);
    std::uint64_t take(unsigned width) override;
    std::size_t consumed() const override { return consumed_; }

private:
    KeystreamSeed seed_;
    std::uint64_t next_block_ = 0;
    BitVector buffer_;
    std::size_t pos_ = 0;
    std::size_t consumed_ = 0;
};

}  // namespace physec::ple
