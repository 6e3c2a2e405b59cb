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

#include "physec/bits.hpp"

namespace physec::distill {

// First out_len bits of SHA-256(salt || u64be(|k|) || packed(k) || u64be(i)),
// i = 0, 1, ... concatenated. Requires 1 <= out_len (ParameterError) and
// out_len <= |k| - leaked_bits (BudgetError).
BitKey amplify(const BitKey& k, std::size_t leaked_bits, std::size_t out_len,
               std::span<const std::uint8_t> salt = {});

}  // namespace physec::distill
