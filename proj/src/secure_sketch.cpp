// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/secure_sketch.hpp"

#include <random>
#include <string>

#include "physec/error.hpp"
#include "physec/seed.hpp"

namespace physec::distill {

BitVector fit_to_blocks(BitSpan bits, std::size_t block_len, RemainderPolicy policy) {
    if (block_len == 0) {
        throw ParameterError("fit_to_blocks: block length must be positive");
    }
    BitVector out(bits.begin(), bits.end());
    const std::size_t rem = out.size() % block_len;
    if (rem == 0) {
        return out;
    }
    if (policy == RemainderPolicy::truncate) {
        out.resize(out.size() - rem);
    } else {
        out.resize(out.size() + (block_len - rem), 0);
    }
    return out;
}

std::vector<BitVector> sketch_messages(const BlockCode& code, std::size_t n_blocks, std::uint64_t seed) {
    std::vector<BitVector> msgs;
    msgs.reserve(n_blocks);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        std::mt19937_64 eng(derive_seed(seed, {b}));
        BitVector m(code.k());
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i % 64 == 0) {
                word = eng();
            }
            m[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
        }
        msgs.push_back(std::move(m));
    }
    return msgs;
}

SecureSketch sketch(const BitKey& k_a, const BlockCode& code, std::uint64_t seed) {
    const std::size_t n = code.n();
    if (k_a.empty() || k_a.size() % n != 0) {
        throw ParameterError("sketch: key length " + std::to_string(k_a.size()) + " is not a positive multiple of " +
                             std::to_string(n));
    }
    SecureSketch sk;
    sk.code_id = std::string(code.id());
    sk.n_blocks = k_a.size() / n;
    sk.s.reserve(k_a.size());
    const auto msgs = sketch_messages(code, sk.n_blocks, seed);
    const BitSpan key(k_a.bits());
    for (std::size_t b = 0; b < sk.n_blocks; ++b) {
        const auto c = code.encode(msgs[b]);
        const auto block = key.subspan(b * n, n);
        for (std::size_t i = 0; i < n; ++i) {
            sk.s.push_back(block[i] ^ c[i]);
        }
    }
    return sk;
}

std::optional<BitKey> recover(const BitKey& k_b, const SecureSketch& sk, const BlockCode& code) {
    if (sk.code_id != code.id()) {
        throw ParameterError("recover: sketch was made with code '" + sk.code_id + "'");
    }
    const std::size_t n = code.n();
    if (sk.s.size() != sk.n_blocks * n || k_b.size() != sk.s.size()) {
        throw ParameterError("recover: key and sketch lengths differ");
    }
    BitVector out;
    out.reserve(sk.s.size());
    const BitSpan key(k_b.bits());
    const BitSpan s(sk.s);
    for (std::size_t b = 0; b < sk.n_blocks; ++b) {
        const auto s_block = s.subspan(b * n, n);
        const auto c_b = xor_bits(key.subspan(b * n, n), s_block);
        const auto msg = code.decode(c_b);
        if (!msg) {
            return std::nullopt;
        }
        const auto c = code.encode(*msg);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(c[i] ^ s_block[i]);
        }
    }
    return BitKey(std::move(out), KeyStage::reconciled);
}

std::size_t sketch_leakage_bits(const BlockCode& code, std::size_t n_blocks) {
    return n_blocks * (code.n() - code.k());
}

}  // namespace physec::distill
