// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/sha256.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace physec {

namespace {
EVP_MD_CTX* as_ctx(void* p) { return static_cast<EVP_MD_CTX*>(p); }
}  // namespace

Sha256::Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(as_ctx(ctx_), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 initialisation failed");
    }
}

Sha256::~Sha256() { EVP_MD_CTX_free(as_ctx(ctx_)); }

Sha256& Sha256::update(std::span<const std::uint8_t> bytes) {
    if (!bytes.empty()) {
        EVP_DigestUpdate(as_ctx(ctx_), bytes.data(), bytes.size());
    }
    return *this;
}

Sha256& Sha256::update(std::string_view text) {
    if (!text.empty()) {
        EVP_DigestUpdate(as_ctx(ctx_), text.data(), text.size());
    }
    return *this;
}

Sha256& Sha256::update_u64be(std::uint64_t value) {
    std::array<std::uint8_t, 8> be{};
    for (int i = 0; i < 8; ++i) {
        be[i] = static_cast<std::uint8_t>(value >> (56 - 8 * i));
    }
    return update(be);
}

Digest256 Sha256::finish() {
    Digest256 out{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(as_ctx(ctx_), out.data(), &len);
    return out;
}

Digest256 sha256(std::span<const std::uint8_t> bytes) { return Sha256().update(bytes).finish(); }

Digest256 sha256(std::string_view text) { return Sha256().update(text).finish(); }

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0x0f]);
    }
    return s;
}

}  // namespace physec
