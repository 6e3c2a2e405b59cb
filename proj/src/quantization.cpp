// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "physec/error.hpp"

namespace physec::quant {

void MeanSigmaConfig::validate() const {
    if (!std::isfinite(alpha) || alpha < 0.0) {
        throw ParameterError("alpha must be finite and non-negative");
    }
}

void CdfConfig::validate() const {
    if (quantization_level < 1 || quantization_level > 8) {
        throw ParameterError("quantization_level must lie in [1, 8]");
    }
}

QuantizationOutcome quantize_mean_sigma(std::span<const double> x, const MeanSigmaConfig& cfg) {
    cfg.validate();
    if (x.size() < 2) {
        throw ParameterError("quantize_mean_sigma: need at least two samples");
    }
    QuantizationOutcome out;
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*lo == *hi) {
        // Every sample equals the mean and is dropped.
        return out;
    }

    const auto n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) {
        mean += v;
    }
    mean /= n;
    double ss = 0.0;
    for (double v : x) {
        ss += (v - mean) * (v - mean);
    }
    const double sigma = std::sqrt(ss / (n - 1.0));
    const double upper = mean + cfg.alpha * sigma;
    const double lower = mean - cfg.alpha * sigma;

    BitVector bits;
    bits.reserve(x.size());
    out.kept_indices.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > upper) {
            bits.push_back(1);
            out.kept_indices.push_back(i);
        } else if (x[i] < lower) {
            bits.push_back(0);
            out.kept_indices.push_back(i);
        }
    }
    out.bits = BitKey(std::move(bits), KeyStage::quantized);
    return out;
}

std::uint32_t gray_code(std::uint32_t j, unsigned ql) {
    if (ql < 1 || ql > 31 || j >= (1u << ql)) {
        throw ParameterError("gray_code: index " + std::to_string(j) + " out of range for " + std::to_string(ql) +
                             " bits");
    }
    return j ^ (j >> 1);
}

std::vector<double> cdf_thresholds(std::span<const double> x, const CdfConfig& cfg) {
    cfg.validate();
    const std::size_t levels = std::size_t{1} << cfg.quantization_level;
    if (x.size() < levels) {
        throw DegenerateInputError("quantize_cdf: need at least 2^QL samples");
    }
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t n_distinct = sorted.empty() ? 0 : 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        n_distinct += (sorted[i] != sorted[i - 1]) ? 1 : 0;
    }
    if (n_distinct < levels) {
        throw DegenerateInputError("quantize_cdf: fewer than 2^QL distinct values");
    }

    // F(sorted[k]) = #{samples < sorted[k]} / n, which is k / n for the first
    // occurrence of each value. eta_j is the first sample whose F reaches j / 2^QL.
    const std::size_t n = sorted.size();
    std::vector<double> eta;
    eta.reserve(levels - 1);
    for (std::size_t j = 1; j < levels; ++j) {
        // smallest k with k * levels >= j * n
        const std::size_t k_min = (j * n + levels - 1) / levels;
        // only the first occurrence of a value carries F = k / n
        std::size_t k = k_min;
        while (k < n && k > 0 && sorted[k] == sorted[k - 1]) {
            ++k;
        }
        eta.push_back(k < n ? sorted[k] : std::numeric_limits<double>::infinity());
    }
    return eta;
}

BitKey quantize_cdf(std::span<const double> x, const CdfConfig& cfg) {
    const auto eta = cdf_thresholds(x, cfg);
    const unsigned ql = cfg.quantization_level;
    BitVector bits;
    bits.reserve(x.size() * ql);
    for (double v : x) {
        const auto interval = static_cast<std::uint32_t>(std::upper_bound(eta.begin(), eta.end(), v) - eta.begin());
        append_word(bits, gray_code(interval, ql), ql);
    }
    return BitKey(std::move(bits), KeyStage::quantized);
}

CensoredBits intersect_kept_indices(const QuantizationOutcome& a, std::span<const std::size_t> other_kept) {
    if (!std::is_sorted(other_kept.begin(), other_kept.end()) ||
        !std::is_sorted(a.kept_indices.begin(), a.kept_indices.end())) {
        throw ParameterError("intersect_kept_indices: index lists must be sorted");
    }
    CensoredBits out;
    if (a.kept_indices.empty()) {
        out.bits = BitKey(BitVector{}, a.bits.stage());
        return out;
    }
    if (a.bits.size() % a.kept_indices.size() != 0) {
        throw ParameterError("intersect_kept_indices: bit count is not a multiple of the kept count");
    }
    const std::size_t width = a.bits.size() / a.kept_indices.size();

    BitVector bits;
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.kept_indices.size(); ++i) {
        const std::size_t idx = a.kept_indices[i];
        while (j < other_kept.size() && other_kept[j] < idx) {
            ++j;
        }
        if (j == other_kept.size()) {
            break;
        }
        if (other_kept[j] == idx) {
            out.common.push_back(idx);
            const auto first = a.bits.bits().begin() + static_cast<std::ptrdiff_t>(i * width);
            bits.insert(bits.end(), first, first + static_cast<std::ptrdiff_t>(width));
        }
    }
    out.bits = BitKey(std::move(bits), a.bits.stage());
    return out;
}

}  // namespace physec::quant
