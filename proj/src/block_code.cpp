// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/block_code.hpp"

#include <string>

#include "physec/error.hpp"

namespace physec::distill {

BitVector BlockCode::encode(BitSpan msg) const {
    if (msg.size() != k()) {
        throw ParameterError("encode: message must have " + std::to_string(k()) + " bits");
    }
    return do_encode(msg);
}

std::optional<BitVector> BlockCode::decode(BitSpan word) const {
    if (word.size() != n()) {
        throw ParameterError("decode: word must have " + std::to_string(n()) + " bits");
    }
    return do_decode(word);
}

BitVector BlockCode::syndrome(BitSpan word) const {
    if (word.size() != n()) {
        throw ParameterError("syndrome: word must have " + std::to_string(n()) + " bits");
    }
    return do_syndrome(word);
}

SystematicLinearCode::SystematicLinearCode(std::string id, std::vector<BitVector> parity_rows, std::size_t t)
    : id_(std::move(id)), parity_rows_(std::move(parity_rows)), t_(t) {
    k_ = parity_rows_.size();
    if (k_ == 0 || parity_rows_.front().empty()) {
        throw ParameterError("SystematicLinearCode: empty parity matrix");
    }
    const std::size_t r = parity_rows_.front().size();
    for (const auto& row : parity_rows_) {
        if (row.size() != r) {
            throw ParameterError("SystematicLinearCode: ragged parity matrix");
        }
    }
    if (r > 20) {
        throw ParameterError("SystematicLinearCode: syndrome table too large");
    }
    n_ = k_ + r;

    leaders_.assign(std::size_t{1} << r, std::nullopt);
    // Enumerate error patterns by increasing weight; the first pattern to claim
    // a syndrome is its coset leader. Ties at the same weight make the syndrome
    // ambiguous; those are only reachable above t for the codes defined here.
    BitVector e(n_, 0);
    auto claim = [&](const BitVector& pattern) {
        auto& slot = leaders_[syndrome_index(pattern)];
        if (!slot) {
            slot = pattern;
        }
    };
    claim(e);
    // weight 1..t via recursive combination walk
    std::vector<std::size_t> pos;
    auto walk = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
        if (remaining == 0) {
            BitVector pattern(n_, 0);
            for (auto p : pos) {
                pattern[p] = 1;
            }
            claim(pattern);
            return;
        }
        for (std::size_t i = start; i < n_; ++i) {
            pos.push_back(i);
            self(self, i + 1, remaining - 1);
            pos.pop_back();
        }
    };
    for (std::size_t w = 1; w <= t_; ++w) {
        walk(walk, 0, w);
    }
}

BitVector SystematicLinearCode::do_encode(BitSpan msg) const {
    BitVector word(msg.begin(), msg.end());
    const std::size_t r = n_ - k_;
    word.resize(n_, 0);
    for (std::size_t i = 0; i < k_; ++i) {
        if (msg[i]) {
            for (std::size_t j = 0; j < r; ++j) {
                word[k_ + j] ^= parity_rows_[i][j];
            }
        }
    }
    return word;
}

BitVector SystematicLinearCode::do_syndrome(BitSpan word) const {
    // H = [P^T | I]: syndrome = parity recomputed from the message part XOR received parity.
    const std::size_t r = n_ - k_;
    BitVector s(word.begin() + static_cast<std::ptrdiff_t>(k_), word.end());
    for (std::size_t i = 0; i < k_; ++i) {
        if (word[i]) {
            for (std::size_t j = 0; j < r; ++j) {
                s[j] ^= parity_rows_[i][j];
            }
        }
    }
    return s;
}

std::size_t SystematicLinearCode::syndrome_index(BitSpan word) const {
    std::size_t idx = 0;
    for (auto b : do_syndrome(word)) {
        idx = (idx << 1) | b;
    }
    return idx;
}

std::optional<BitVector> SystematicLinearCode::do_decode(BitSpan word) const {
    const auto& leader = leaders_[syndrome_index(word)];
    if (!leader) {
        return std::nullopt;
    }
    BitVector msg(k_);
    for (std::size_t i = 0; i < k_; ++i) {
        msg[i] = word[i] ^ (*leader)[i];
    }
    return msg;
}

std::shared_ptr<const BlockCode> hamming74() {
    static const auto code = std::make_shared<const SystematicLinearCode>(
        "hamming74", std::vector<BitVector>{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, 1);
    return code;
}

std::shared_ptr<const BlockCode> hamming84() {
    static const auto code = std::make_shared<const SystematicLinearCode>(
        "hamming84", std::vector<BitVector>{{1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}}, 1);
    return code;
}

std::shared_ptr<const BlockCode> make_block_code(std::string_view id) {
    if (id == "hamming74") {
        return hamming74();
    }
    if (id == "hamming84") {
        return hamming84();
    }
    throw ParameterError("unknown block code '" + std::string(id) + "'");
}

std::vector<std::string> available_codes() { return {"hamming74", "hamming84"}; }

}  // namespace physec::distill
