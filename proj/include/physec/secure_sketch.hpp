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
#include <optional>
#include <string>
#include <vector>

#include "physec/bits.hpp"
#include "physec/block_code.hpp"

namespace physec::distill {

// Public helper string of the code-offset construction: s = K^A XOR c, one
// random codeword c per n-bit block.
struct SecureSketch {
    BitVector s;
    std::string code_id;
    std::size_t n_blocks = 0;

    friend bool operator==(const SecureSketch&, const SecureSketch&) = default;
};

enum class RemainderPolicy { pad_with_zeros, truncate };

// Makes |bits| a multiple of block_len. Padding uses public zero bits.
BitVector fit_to_blocks(BitSpan bits, std::size_t block_len, RemainderPolicy policy);

// The uniformly random messages sketch() draws for a given seed, one per block.
std::vector<BitVector> sketch_messages(const BlockCode& code, std::size_t n_blocks, std::uint64_t seed);

// Alice's side. |k_a| must be a multiple of code.n() (ParameterError otherwise).
SecureSketch sketch(const BitKey& k_a, const BlockCode& code, std::uint64_t seed);

// Bob's side: per block c_b = k_b XOR s, decode to c, output c XOR s. Returns
// nullopt (reconcile failure) when any block fails to decode; no partial key is
// ever produced. The result carries stage reconciled.
std::optional<BitKey> recover(const BitKey& k_b, const SecureSketch& sk, const BlockCode& code);

// Information the sketch reveals about the key: the syndrome bits, n_blocks * (n - k).
std::size_t sketch_leakage_bits(const BlockCode& code, std::size_t n_blocks);

}  // namespace physec::distill
