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
#include <vector>

#include "physec/bits.hpp"

namespace physec::quant {

struct MeanSigmaConfig {
    double alpha = 0.5;  // guard-band half width in standard deviations

    void validate() const;
};

struct CdfConfig {
    unsigned quantization_level = 1;  // bits per measurement, 1..8

    void validate() const;
};

struct QuantizationOutcome {
    BitKey bits;
    std::vector<std::size_t> kept_indices;  // strictly increasing; bits_per_sample bits each
};

// Thresholds mu +/- alpha * sigma (sigma with n-1 denominator). Emits 1 above
// the upper threshold, 0 below the lower one and drops everything in between,
// including samples lying exactly on a threshold.
QuantizationOutcome quantize_mean_sigma(std::span<const double> x, const MeanSigmaConfig& cfg);

// Thresholds at the empirical quantiles j / 2^QL, j = 1..2^QL-1, using
// F(x) = #{samples < x} / n and eta_j = min{sample v : F(v) >= j / 2^QL}.
// Sample x falls in interval j when eta_{j-1} <= x < eta_j and is replaced by
// the QL-bit Gray code of j-1 (MSB first). Output has QL * |x| bits.
// Throws DegenerateInputError when x has fewer than 2^QL distinct values.
BitKey quantize_cdf(std::span<const double> x, const CdfConfig& cfg);

// The quantile thresholds quantize_cdf uses, eta_1..eta_{2^QL-1}.
std::vector<double> cdf_thresholds(std::span<const double> x, const CdfConfig& cfg);

// Reflected binary Gray code j ^ (j >> 1); throws ParameterError unless 0 <= j < 2^ql.
std::uint32_t gray_code(std::uint32_t j, unsigned ql);

struct CensoredBits {
    BitKey bits;
    std::vector<std::size_t> common;
};

// Keeps the bits of a whose sample index also appears in other_kept.
// Both index lists must be sorted ascending.
CensoredBits intersect_kept_indices(const QuantizationOutcome& a, std::span<const std::size_t> other_kept);

}  // namespace physec::quant
