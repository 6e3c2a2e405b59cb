// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#pragma once

#include "physec/bits.hpp"

namespace physec::distill {

inline constexpr double kRandomnessZLimit = 3.0;

struct RandomnessResult {
    double statistic = 0.0;
    bool pass = false;
    bool applicable = true;
};

// z = |#ones - #zeros| / sqrt(n); pass iff z <= 3. Needs n >= 100 (ParameterError).
RandomnessResult monobit_test(BitSpan bits);

// Observed runs R against 2 n pi (1 - pi) + 1, normalised by 2 sqrt(n) pi (1 - pi).
// Not applicable (applicable = false, pass = false) when n < 100 or the
// monobit test fails.
RandomnessResult runs_test(BitSpan bits);

}  // namespace physec::distill
