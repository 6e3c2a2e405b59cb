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
#include <span>
#include <vector>

#include "physec/ple/keystream.hpp"
#include "physec/ple/ofdm.hpp"

namespace physec::ple {

using Permutation = std::vector<std::size_t>;

// Fisher-Yates shuffle; each swap index j in [0, i] is drawn from bit_width(i)
// keystream bits with rejection of values > i, so the draw is unbiased.
Permutation keyed_permutation(std::size_t n, BitSource& ks);
// Throws ParameterError("keystream exhausted") when ks runs out.
Permutation keyed_permutation(std::size_t n, BitSpan ks);

Permutation invert_permutation(std::span<const std::size_t> perm);
bool is_permutation(std::span<const std::size_t> perm);

// Identity on [0, n) except that positions[i] takes the content of positions[local[i]].
Permutation embed_permutation(std::span<const std::size_t> local, std::span<const std::size_t> positions, std::size_t n);

// X' = X S_f as an index map: output subcarrier i = input subcarrier perm[i].
SymbolFrame scramble_freq(const SymbolFrame& frame, std::span<const std::size_t> perm);
SymbolFrame unscramble_freq(const SymbolFrame& frame, std::span<const std::size_t> perm);

// x' = x S_t on the n_fft samples after the CP; the CP is rewritten from the
// permuted block so it stays a cyclic prefix.
SymbolFrame scramble_time(const SymbolFrame& frame, std::span<const std::size_t> perm);
SymbolFrame unscramble_time(const SymbolFrame& frame, std::span<const std::size_t> perm);

// Swaps real and imaginary parts of every listed subcarrier whose own phase
// arg(X_k) (principal value in (-pi, pi]) exceeds threshold. An empty carrier
// list means every subcarrier. Selection depends on the data, so the map is not
// invertible in general: [1, j] with threshold pi/4 becomes [1, 1].
SymbolFrame partial_interleave(const SymbolFrame& frame, double threshold, std::span<const std::size_t> carriers = {});

// Same swap, but carriers[i] is selected when reference_phases[i] > threshold.
// The selection does not depend on the frame, so applying it twice is the identity.
SymbolFrame partial_interleave(const SymbolFrame& frame, double threshold, std::span<const std::size_t> carriers,
                               std::span<const double> reference_phases);

// Keystream-driven reference phases in (-pi, pi], 8 bits each.
std::vector<double> reference_phases(std::size_t count, BitSource& ks);

// Fills cfg.dummy_carriers with constellation points mapped from keystream
// bits; data carriers are untouched. Throws ConfigError on overlapping sets.
SymbolFrame insert_dummy(const SymbolFrame& frame, const OfdmConfig& cfg, BitSpan ks);
std::vector<Complex> extract_data(const SymbolFrame& frame, const OfdmConfig& cfg);
// Places symbols on cfg.data_carriers of an otherwise empty frame.
SymbolFrame place_data(std::span<const Complex> symbols, const OfdmConfig& cfg);

}  // namespace physec::ple
