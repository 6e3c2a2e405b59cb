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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "physec/bits.hpp"

namespace physec::distill {

// Binary linear block code in systematic form: codeword = message || parity.
class BlockCode {
public:
    virtual ~BlockCode() = default;

    virtual std::string_view id() const = 0;
    virtual std::size_t n() const = 0;  // codeword length
    virtual std::size_t k() const = 0;  // message length
    virtual std::size_t t() const = 0;  // guaranteed correctable errors per block

    // Throws ParameterError unless |msg| == k().
    BitVector encode(BitSpan msg) const;
    // Message of the unique codeword within distance t(), or nullopt when the
    // word's syndrome has no such codeword. Throws ParameterError unless |word| == n().
    std::optional<BitVector> decode(BitSpan word) const;
    BitVector syndrome(BitSpan word) const;

protected:
    virtual BitVector do_encode(BitSpan msg) const = 0;
    virtual std::optional<BitVector> do_decode(BitSpan word) const = 0;
    virtual BitVector do_syndrome(BitSpan word) const = 0;
};

// Systematic code given by its k x (n-k) parity sub-matrix, decoded through a
// syndrome -> coset-leader table restricted to error weights <= t.
class SystematicLinearCode final : public BlockCode {
public:
    SystematicLinearCode(std::string id, std::vector<BitVector> parity_rows, std::size_t t);

    std::string_view id() const override { return id_; }
    std::size_t n() const override { return n_; }
    std::size_t k() const override { return k_; }
    std::size_t t() const override { return t_; }

private:
    BitVector do_encode(BitSpan msg) const override;
    std::optional<BitVector> do_decode(BitSpan word) const override;
    BitVector do_syndrome(BitSpan word) const override;
    std::size_t syndrome_index(BitSpan word) const;

    std::string id_;
    std::vector<BitVector> parity_rows_;
    std::size_t n_;
    std::size_t k_;
    std::size_t t_;
    // Indexed by syndrome value; empty optional = no correctable error pattern.
    std::vector<std::optional<BitVector>> leaders_;
};

// Hamming(7,4), parity p1 = d1^d2^d4, p2 = d1^d3^d4, p3 = d2^d3^d4. Perfect,
// so decode never fails: two-bit errors are silently mis-corrected.
std::shared_ptr<const BlockCode> hamming74();
// Extended Hamming(8,4): Hamming(7,4) plus an overall parity bit. Single errors
// are corrected, double errors are detected and reported as decode failure.
std::shared_ptr<const BlockCode> hamming84();

// "hamming74" or "hamming84"; throws ParameterError for anything else.
std::shared_ptr<const BlockCode> make_block_code(std::string_view id);
std::vector<std::string> available_codes();

}  // namespace physec::distill
