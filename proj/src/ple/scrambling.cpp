// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/ple/scrambling.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "physec/error.hpp"

namespace physec::ple {

Permutation keyed_permutation(std::size_t n, BitSource& ks) {
    if (n < 1) {
        throw ParameterError("keyed_permutation: n must be at least 1");
    }
    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto width = static_cast<unsigned>(std::bit_width(i));
        std::uint64_t j = 0;
        do {
            j = ks.take(width);
        } while (j > i);
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

Permutation keyed_permutation(std::size_t n, BitSpan ks) {
    SpanBitSource src(ks);
    return keyed_permutation(n, src);
}

bool is_permutation(std::span<const std::size_t> perm) {
    std::vector<char> seen(perm.size(), 0);
    for (auto p : perm) {
        if (p >= perm.size() || seen[p]) {
            return false;
        }
        seen[p] = 1;
    }
    return true;
}

Permutation invert_permutation(std::span<const std::size_t> perm) {
    if (!is_permutation(perm)) {
        throw ParameterError("invert_permutation: not a permutation");
    }
    Permutation inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        inv[perm[i]] = i;
    }
    return inv;
}

Permutation embed_permutation(std::span<const std::size_t> local, std::span<const std::size_t> positions,
                              std::size_t n) {
    if (local.size() != positions.size() || !is_permutation(local)) {
        throw ParameterError("embed_permutation: local permutation does not match the position set");
    }
    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] >= n) {
            throw ParameterError("embed_permutation: position out of range");
        }
        perm[positions[i]] = positions[local[i]];
    }
    return perm;
}

namespace {

std::vector<Complex> gather(std::span<const Complex> in, std::span<const std::size_t> perm) {
    if (perm.size() != in.size() || !is_permutation(perm)) {
        throw ParameterError("scramble: permutation size does not match the frame");
    }
    std::vector<Complex> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = in[perm[i]];
    }
    return out;
}

std::vector<Complex> scatter(std::span<const Complex> in, std::span<const std::size_t> perm) {
    if (perm.size() != in.size() || !is_permutation(perm)) {
        throw ParameterError("unscramble: permutation size does not match the frame");
    }
    std::vector<Complex> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[perm[i]] = in[i];
    }
    return out;
}

SymbolFrame with_body(const SymbolFrame& frame, std::vector<Complex> body) {
    SymbolFrame out{Domain::time, {}, frame.cp_len};
    out.samples.reserve(frame.cp_len + body.size());
    out.samples.insert(out.samples.end(), body.end() - static_cast<std::ptrdiff_t>(frame.cp_len), body.end());
    out.samples.insert(out.samples.end(), body.begin(), body.end());
    return out;
}

std::span<const Complex> body_of(const SymbolFrame& frame) {
    require_domain(frame, Domain::time);
    if (frame.samples.size() <= frame.cp_len) {
        throw ParameterError("time frame shorter than its cyclic prefix");
    }
    return std::span<const Complex>(frame.samples).subspan(frame.cp_len);
}

Complex swapped(Complex v) { return {v.imag(), v.real()}; }

// arg() in (-pi, pi]; std::arg maps a negative real with -0 imaginary part to -pi.
double principal_arg(Complex v) {
    const double a = std::arg(v);
    return a == -std::numbers::pi ? std::numbers::pi : a;
}

}  // namespace

SymbolFrame scramble_freq(const SymbolFrame& frame, std::span<const std::size_t> perm) {
    require_domain(frame, Domain::frequency);
    return SymbolFrame::frequency(gather(frame.samples, perm));
}

SymbolFrame unscramble_freq(const SymbolFrame& frame, std::span<const std::size_t> perm) {
    require_domain(frame, Domain::frequency);
    return SymbolFrame::frequency(scatter(frame.samples, perm));
}

SymbolFrame scramble_time(const SymbolFrame& frame, std::span<const std::size_t> perm) {
    return with_body(frame, gather(body_of(frame), perm));
}

SymbolFrame unscramble_time(const SymbolFrame& frame, std::span<const std::size_t> perm) {
    return with_body(frame, scatter(body_of(frame), perm));
}

SymbolFrame partial_interleave(const SymbolFrame& frame, double threshold, std::span<const std::size_t> carriers) {
    require_domain(frame, Domain::frequency);
    SymbolFrame out = frame;
    auto apply = [&](std::size_t k) {
        if (k >= out.samples.size()) {
            throw ParameterError("partial_interleave: carrier out of range");
        }
        if (principal_arg(frame.samples[k]) > threshold) {
            out.samples[k] = swapped(frame.samples[k]);
        }
    };
    if (carriers.empty()) {
        for (std::size_t k = 0; k < out.samples.size(); ++k) {
            apply(k);
        }
    } else {
        for (auto k : carriers) {
            apply(k);
        }
    }
    return out;
}

SymbolFrame partial_interleave(const SymbolFrame& frame, double threshold, std::span<const std::size_t> carriers,
                               std::span<const double> reference_phases) {
    require_domain(frame, Domain::frequency);
    if (carriers.size() != reference_phases.size()) {
        throw ParameterError("partial_interleave: one reference phase per carrier required");
    }
    SymbolFrame out = frame;
    for (std::size_t i = 0; i < carriers.size(); ++i) {
        const auto k = carriers[i];
        if (k >= out.samples.size()) {
            throw ParameterError("partial_interleave: carrier out of range");
        }
        if (reference_phases[i] > threshold) {
            out.samples[k] = swapped(out.samples[k]);
        }
    }
    return out;
}

std::vector<double> reference_phases(std::size_t count, BitSource& ks) {
    std::vector<double> phases(count);
    for (auto& p : phases) {
        const auto v = static_cast<double>(ks.take(8));
        p = -std::numbers::pi + 2.0 * std::numbers::pi * (v + 1.0) / 256.0;
    }
    return phases;
}

SymbolFrame insert_dummy(const SymbolFrame& frame, const OfdmConfig& cfg, BitSpan ks) {
    require_domain(frame, Domain::frequency);
    cfg.validate();
    if (frame.samples.size() != cfg.n_fft) {
        throw ParameterError("insert_dummy: frame length differs from n_fft");
    }
    const std::size_t need = cfg.dummy_carriers.size() * bits_per_symbol(cfg.mapping);
    if (ks.size() < need) {
        throw ParameterError("insert_dummy: keystream exhausted");
    }
    SymbolFrame out = frame;
    const auto points = map_symbols(ks.first(need), cfg.mapping);
    for (std::size_t i = 0; i < cfg.dummy_carriers.size(); ++i) {
        out.samples[cfg.dummy_carriers[i]] = points[i];
    }
    return out;
}

std::vector<Complex> extract_data(const SymbolFrame& frame, const OfdmConfig& cfg) {
    require_domain(frame, Domain::frequency);
    std::vector<Complex> out;
    out.reserve(cfg.data_carriers.size());
    for (auto c : cfg.data_carriers) {
        if (c >= frame.samples.size()) {
            throw ParameterError("extract_data: carrier out of range");
        }
        out.push_back(frame.samples[c]);
    }
    return out;
}

SymbolFrame place_data(std::span<const Complex> symbols, const OfdmConfig& cfg) {
    if (symbols.size() != cfg.data_carriers.size()) {
        throw ParameterError("place_data: one symbol per data carrier required");
    }
    SymbolFrame out = SymbolFrame::frequency(std::vector<Complex>(cfg.n_fft, Complex{}));
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        out.samples.at(cfg.data_carriers[i]) = symbols[i];
    }
    return out;
}

}  // namespace physec::ple
