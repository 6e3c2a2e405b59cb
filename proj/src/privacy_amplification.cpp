// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/privacy_amplification.hpp"

#include <algorithm>
#include <string>

#include "physec/error.hpp"
#include "physec/sha256.hpp"

namespace physec::distill {

BitKey amplify(const BitKey& k, std::size_t leaked_bits, std::size_t out_len, std::span<const std::uint8_t> salt) {
    if (out_len < 1) {
        throw ParameterError("amplify: out_len must be at least 1");
    }
    if (leaked_bits >= k.size() || out_len > k.size() - leaked_bits) {
        throw BudgetError("amplify: " + std::to_string(out_len) + " output bits exceed the budget of " +
                          std::to_string(k.size()) + " - " + std::to_string(leaked_bits) + " bits");
    }
    const auto packed = pack_bits(k.bits());
    BitVector out;
    out.reserve(out_len);
    for (std::uint64_t block = 0; out.size() < out_len; ++block) {
        Sha256 h;
        h.update(salt).update_u64be(k.size()).update(packed).update_u64be(block);
        const auto digest = h.finish();
        const auto bits = unpack_bits(digest, std::min<std::size_t>(256, out_len - out.size()));
        out.insert(out.end(), bits.begin(), bits.end());
    }
    return BitKey(std::move(out), KeyStage::amplified);
}

}  // namespace physec::distill
