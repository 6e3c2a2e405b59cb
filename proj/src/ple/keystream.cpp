// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/ple/keystream.hpp"

#include <algorithm>

#include "physec/error.hpp"
#include "physec/sha256.hpp"

namespace physec::ple {

namespace {

Digest256 keystream_block(std::span<const std::uint8_t> packed_key, std::size_t key_bits, std::uint64_t counter) {
    Sha256 h;
    h.update_u64be(key_bits).update(packed_key).update_u64be(counter);
    return h.finish();
}

}  // namespace

BitVector keystream_segment(const KeystreamSeed& seed, std::uint64_t first_block, std::size_t n_bits) {
    if (seed.key.empty()) {
        throw ParameterError("keystream: empty key");
    }
    const auto packed = pack_bits(seed.key.bits());
    BitVector out;
    out.reserve(n_bits);
    for (std::uint64_t b = first_block; out.size() < n_bits; ++b) {
        const auto digest = keystream_block(packed, seed.key.size(), seed.nonce + b);
        const auto bits = unpack_bits(digest, std::min(kKeystreamBlockBits, n_bits - out.size()));
        out.insert(out.end(), bits.begin(), bits.end());
    }
    return out;
}

BitVector keystream(const KeystreamSeed& seed, std::size_t n_bits) {
    if (n_bits < 1) {
        throw ParameterError("keystream: n_bits must be at least 1");
    }
    return keystream_segment(seed, 0, n_bits);
}

std::uint64_t SpanBitSource::take(unsigned width) {
    if (width > 64) {
        throw ParameterError("take: width above 64");
    }
    if (remaining() < width) {
        throw ParameterError("keystream exhausted");
    }
    const auto v = read_word(bits_, pos_, width);
    pos_ += width;
    return v;
}

BitSpan SpanBitSource::take_bits(std::size_t n) {
    if (remaining() < n) {
        throw ParameterError("keystream exhausted");
    }
    const auto s = bits_.subspan(pos_, n);
    pos_ += n;
    return s;
}

KeystreamGenerator::KeystreamGenerator(KeystreamSeed seed) : seed_(std::move(seed)) {
    if (seed_.key.empty()) {
        throw ParameterError("keystream: empty key");
    }
}

std::uint64_t KeystreamGenerator::take(unsigned width) {
    if (width > 64) {
        throw ParameterError("take: width above 64");
    }
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) {
        if (pos_ == buffer_.size()) {
            buffer_ = keystream_segment(seed_, next_block_++, kKeystreamBlockBits);
            pos_ = 0;
        }
        v = (v << 1) | buffer_[pos_++];
    }
    consumed_ += width;
    return v;
}

}  // namespace physec::ple
