// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace physec {

// Invalid argument or violated precondition.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is well-formed but statistically degenerate (zero variance, too few distinct values).
class DegenerateInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Privacy amplification asked for more bits than the entropy budget allows.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operation applied to an object in the wrong state (domain tag, key stage).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Configuration is inconsistent (overlapping carrier sets, schema violations).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace physec
