// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/randomness.hpp"

#include <cmath>

#include "physec/error.hpp"

namespace physec::distill {

RandomnessResult monobit_test(BitSpan bits) {
    if (bits.size() < 100) {
        throw ParameterError("monobit_test: need at least 100 bits");
    }
    const auto n = static_cast<double>(bits.size());
    const auto ones = static_cast<double>(count_ones(bits));
    const double z = std::abs(ones - (n - ones)) / std::sqrt(n);
    return {z, z <= kRandomnessZLimit, true};
}

RandomnessResult runs_test(BitSpan bits) {
    if (bits.size() < 100 || !monobit_test(bits).pass) {
        return {0.0, false, false};
    }
    const auto n = static_cast<double>(bits.size());
    const double pi = static_cast<double>(count_ones(bits)) / n;
    double runs = 1.0;
    for (std::size_t i = 1; i < bits.size(); ++i) {
        runs += (bits[i] != bits[i - 1]) ? 1.0 : 0.0;
    }
    const double spread = pi * (1.0 - pi);
    const double expected = 2.0 * n * spread + 1.0;
    const double z = std::abs(runs - expected) / (2.0 * std::sqrt(n) * spread);
    return {z, z <= kRandomnessZLimit, true};
}

}  // namespace physec::distill
