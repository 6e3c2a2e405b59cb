// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "physec/block_code.hpp"
#include "physec/error.hpp"
#include "physec/ple/keystream.hpp"
#include "physec/privacy_amplification.hpp"
#include "physec/randomness.hpp"
#include "physec/secure_sketch.hpp"
#include "physec/sha256.hpp"

using namespace physec;
using namespace physec::distill;

namespace {

BitVector word(std::uint64_t v, std::size_t width) {
    BitVector b;
    append_word(b, v, static_cast<unsigned>(width));
    return b;
}

std::vector<BitVector> codebook(const BlockCode& code) {
    std::vector<BitVector> words;
    for (std::uint64_t m = 0; m < (1ULL << code.k()); ++m) words.push_back(code.encode(word(m, code.k())));
    return words;
}

// Messages of every codeword within distance t of w.
std::vector<BitVector> within_radius(const BlockCode& code, BitSpan w) {
    std::vector<BitVector> out;
    for (std::uint64_t m = 0; m < (1ULL << code.k()); ++m) {
        const auto msg = word(m, code.k());
        if (hamming_distance(code.encode(msg), w) <= code.t()) out.push_back(msg);
    }
    return out;
}

BitVector random_bits(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    BitVector b(n);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

}  // namespace

TEST_CASE("hamming 7,4 parity convention") {
    const auto code = hamming74();
    CHECK(code->n() == 7);
    CHECK(code->k() == 4);
    CHECK(code->t() == 1);
    CHECK(bits_to_string(code->encode(bits_from_string("0000"))) == "0000000");
    CHECK(bits_to_string(code->encode(bits_from_string("1011"))) == "1011010");
    CHECK(bits_to_string(code->encode(bits_from_string("1000"))) == "1000110");
    CHECK(bits_to_string(code->encode(bits_from_string("0001"))) == "0001111");
}

TEST_CASE("codes are systematic, linear and have the designed distance") {
    for (const auto& id : available_codes()) {
        const auto code = make_block_code(id);
        const auto words = codebook(*code);
        std::size_t d_min = code->n();
        for (std::size_t i = 0; i < words.size(); ++i) {
            CHECK(std::equal(words[i].begin(), words[i].begin() + static_cast<std::ptrdiff_t>(code->k()),
                             word(i, code->k()).begin()));
            CHECK(count_ones(code->syndrome(words[i])) == 0);
            for (std::size_t j = 0; j < words.size(); ++j) {
                CHECK(xor_bits(words[i], words[j]) == code->encode(word(i ^ j, code->k())));
                if (i != j) d_min = std::min(d_min, hamming_distance(words[i], words[j]));
            }
        }
        CHECK(d_min >= 2 * code->t() + 1);
        CHECK(d_min == (id == "hamming74" ? 3u : 4u));
    }
}

TEST_CASE("decoding agrees with a brute-force nearest-codeword search") {
    for (const auto& id : available_codes()) {
        const auto code = make_block_code(id);
        for (std::uint64_t w = 0; w < (1ULL << code->n()); ++w) {
            const auto received = word(w, code->n());
            const auto candidates = within_radius(*code, received);
            const auto decoded = code->decode(received);
            if (candidates.size() == 1) {
                REQUIRE(decoded.has_value());
                CHECK(*decoded == candidates.front());
            } else {
                CHECK_FALSE(decoded.has_value());
            }
        }
    }
}

TEST_CASE("hamming 7,4 corrects every single error") {
    const auto code = hamming74();
    for (std::uint64_t m = 0; m < 16; ++m) {
        const auto msg = word(m, 4);
        const auto c = code->encode(msg);
        CHECK(code->decode(c) == msg);
        for (std::size_t i = 0; i < 7; ++i) {
            auto e = c;
            e[i] ^= 1u;
            CHECK(code->decode(e) == msg);
        }
    }
    CHECK(code->decode(BitVector(7, 0)) == BitVector(4, 0));
}

TEST_CASE("extended hamming detects double errors") {
    const auto code = hamming84();
    for (std::uint64_t m = 0; m < 16; ++m) {
        const auto c = code->encode(word(m, 4));
        for (std::size_t i = 0; i < 8; ++i) {
            for (std::size_t j = i + 1; j < 8; ++j) {
                auto e = c;
                e[i] ^= 1u;
                e[j] ^= 1u;
                CHECK_FALSE(code->decode(e).has_value());
            }
        }
    }
}

TEST_CASE("block code length checks") {
    const auto code = hamming74();
    CHECK_THROWS_AS(code->encode(BitVector(3)), ParameterError);
    CHECK_THROWS_AS(code->decode(BitVector(8)), ParameterError);
    CHECK_THROWS_AS(code->syndrome(BitVector(6)), ParameterError);
    CHECK_THROWS_AS(make_block_code("golay"), ParameterError);
}

TEST_CASE("sketch is key XOR a codeword of the drawn message") {
    const auto code = hamming74();
    const BitKey k(random_bits(7 * 5, 1));
    const auto sk = sketch(k, *code, 99);
    CHECK(sk.n_blocks == 5);
    CHECK(sk.code_id == "hamming74");
    REQUIRE(sk.s.size() == 35);
    const auto msgs = sketch_messages(*code, 5, 99);
    for (std::size_t b = 0; b < 5; ++b) {
        const auto c = code->encode(msgs[b]);
        const auto s_block = BitSpan(sk.s).subspan(b * 7, 7);
        CHECK(xor_bits(s_block, c) == BitVector(k.bits().begin() + b * 7, k.bits().begin() + b * 7 + 7));
        // c has zero syndrome, so s and k share syndromes
        CHECK(code->syndrome(s_block) == code->syndrome(BitSpan(k.bits()).subspan(b * 7, 7)));
    }
}

TEST_CASE("zero key passes the codeword through") {
    const auto code = hamming74();
    const auto sk = sketch(BitKey(BitVector(7, 0)), *code, 5);
    CHECK(sk.s == code->encode(sketch_messages(*code, 1, 5).front()));
}

TEST_CASE("sketch is deterministic and seed dependent") {
    const auto code = hamming74();
    const BitKey k(random_bits(7 * 16, 3));
    CHECK(sketch(k, *code, 1) == sketch(k, *code, 1));
    // identical with probability 2^-64
    CHECK(sketch(k, *code, 1).s != sketch(k, *code, 2).s);
}

TEST_CASE("for fixed randomness the sketch is a bijection of the key") {
    const auto code = hamming74();
    std::set<BitVector> seen;
    for (std::uint64_t w = 0; w < 128; ++w) seen.insert(sketch(BitKey(word(w, 7)), *code, 17).s);
    CHECK(seen.size() == 128);
}

TEST_CASE("sketch rejects partial blocks") {
    const auto code = hamming74();
    CHECK_THROWS_AS(sketch(BitKey(BitVector(10)), *code, 1), ParameterError);
    CHECK_THROWS_AS(sketch(BitKey(), *code, 1), ParameterError);
}

TEST_CASE("recovery within the correction radius is exact") {
    const auto code = hamming74();
    for (std::uint64_t w = 0; w < 128; ++w) {
        const BitKey ka(word(w, 7));
        const auto sk = sketch(ka, *code, w + 1);
        const auto same = recover(ka, sk, *code);
        REQUIRE(same.has_value());
        CHECK(same->bits() == ka.bits());
        CHECK(same->stage() == KeyStage::reconciled);
        for (std::size_t i = 0; i < 7; ++i) {
            auto kb = ka.bits();
            kb[i] ^= 1u;
            const auto r = recover(BitKey(kb), sk, *code);
            REQUIRE(r.has_value());
            CHECK(r->bits() == ka.bits());
        }
    }
}

TEST_CASE("recovery beyond the correction radius never yields alice's key") {
    for (const auto& id : available_codes()) {
        const auto code = make_block_code(id);
        const std::size_t n = code->n();
        for (std::uint64_t w = 0; w < (1ULL << n); w += 3) {
            const BitKey ka(word(w, n));
            const auto sk = sketch(ka, *code, w);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    for (std::size_t l = j + 1; l < n; ++l) {
                        auto kb = ka.bits();
                        kb[i] ^= 1u;
                        kb[j] ^= 1u;
                        kb[l] ^= 1u;
                        const auto r = recover(BitKey(kb), sk, *code);
                        CHECK((!r || r->bits() != ka.bits()));
                    }
                }
            }
        }
    }
}

TEST_CASE("one undecodable block fails the whole key") {
    const auto code = hamming84();
    const BitKey ka(random_bits(8 * 10, 4));
    const auto sk = sketch(ka, *code, 4);
    auto kb = ka.bits();
    kb[3] ^= 1u;   // block 0: corrected
    kb[40] ^= 1u;  // block 5: two errors, detected
    kb[41] ^= 1u;
    CHECK_FALSE(recover(BitKey(kb), sk, *code).has_value());
    kb[41] ^= 1u;
    const auto r = recover(BitKey(kb), sk, *code);
    REQUIRE(r.has_value());
    CHECK(r->bits() == ka.bits());
}

TEST_CASE("recover validates its inputs") {
    const auto sk = sketch(BitKey(BitVector(14)), *hamming74(), 1);
    CHECK_THROWS_AS(recover(BitKey(BitVector(7)), sk, *hamming74()), ParameterError);
    CHECK_THROWS_AS(recover(BitKey(BitVector(16)), sk, *hamming84()), ParameterError);
}

TEST_CASE("remainder handling is explicit") {
    const auto bits = bits_from_string("1011001011");
    CHECK(bits_to_string(fit_to_blocks(bits, 7, RemainderPolicy::truncate)) == "1011001");
    CHECK(bits_to_string(fit_to_blocks(bits, 7, RemainderPolicy::pad_with_zeros)) == "10110010110000");
    CHECK(fit_to_blocks(bits, 5, RemainderPolicy::truncate) == bits);
    CHECK_THROWS_AS(fit_to_blocks(bits, 0, RemainderPolicy::truncate), ParameterError);
}

TEST_CASE("leakage is the syndrome length per block") {
    CHECK(sketch_leakage_bits(*hamming74(), 8) == 24);
    CHECK(sketch_leakage_bits(*hamming84(), 3) == 12);
}

TEST_CASE("sha256 wrapper on a standard vector") {
    CHECK(to_hex(sha256(std::string_view("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(to_hex(sha256(std::string_view(""))) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("amplification budget") {
    const BitKey k(random_bits(128, 8));
    const auto out = amplify(k, 56, 64);
    CHECK(out.size() == 64);
    CHECK(out.stage() == KeyStage::amplified);
    CHECK(amplify(k, 56, 72).size() == 72);
    CHECK_THROWS_AS(amplify(k, 56, 73), BudgetError);
    CHECK_THROWS_AS(amplify(k, 200, 1), BudgetError);
    CHECK_THROWS_AS(amplify(k, 0, 0), ParameterError);
}

TEST_CASE("amplification is counter-mode sha256 over salt and key") {
    const BitKey k(random_bits(300, 9));
    const std::vector<std::uint8_t> salt{0xde, 0xad, 0xbe, 0xef};
    const auto out = amplify(k, 0, 300, salt);
    BitVector expected;
    for (std::uint64_t i = 0; expected.size() < 300; ++i) {
        Sha256 h;
        h.update(salt);
        h.update_u64be(300);
        h.update(pack_bits(k.bits()));
        h.update_u64be(i);
        const auto digest = h.finish();
        const auto block = unpack_bits(digest, 256);
        expected.insert(expected.end(), block.begin(), block.end());
    }
    expected.resize(300);
    CHECK(out.bits() == expected);
    CHECK(amplify(k, 0, 300, salt) == out);
    CHECK(amplify(k, 0, 300).bits() != out.bits());
}

TEST_CASE("amplification avalanche") {
    double changed = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const BitKey k(random_bits(224, 100 + t));
        auto flipped = k.bits();
        flipped[t % flipped.size()] ^= 1u;
        const auto a = amplify(k, 96, 128);
        const auto b = amplify(BitKey(flipped), 96, 128);
        changed += static_cast<double>(hamming_distance(a.bits(), b.bits())) / 128.0;
    }
    CHECK(changed / 100.0 >= 0.25);
}

TEST_CASE("monobit test") {
    const auto zeros = monobit_test(BitVector(100, 0));
    CHECK(zeros.statistic == Catch::Approx(10.0));
    CHECK_FALSE(zeros.pass);
    BitVector alt(100);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2;
    const auto balanced = monobit_test(alt);
    CHECK(balanced.statistic == 0.0);
    CHECK(balanced.pass);
    CHECK_THROWS_AS(monobit_test(BitVector(99, 0)), ParameterError);
}

TEST_CASE("runs test") {
    BitVector alt(100);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2;
    // R = 100 against 2 * 100 * 0.25 + 1 = 51, scale 2 * 10 * 0.25 = 5
    const auto a = runs_test(alt);
    CHECK(a.applicable);
    CHECK(a.statistic == Catch::Approx(49.0 / 5.0));
    CHECK_FALSE(a.pass);

    BitVector blocks(100, 0);
    std::fill(blocks.begin() + 50, blocks.end(), 1);
    const auto b = runs_test(blocks);
    CHECK(b.statistic == Catch::Approx(49.0 / 5.0));
    CHECK_FALSE(b.pass);

    CHECK_FALSE(runs_test(BitVector(50, 0)).applicable);
    CHECK_FALSE(runs_test(BitVector(1000, 1)).applicable);
}

TEST_CASE("keystream output passes both randomness tests") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ple::KeystreamSeed ks{BitKey(random_bits(128, seed), KeyStage::amplified), seed};
        const auto bits = ple::keystream(ks, 10000);
        CHECK(monobit_test(bits).pass);
        const auto r = runs_test(bits);
        CHECK(r.applicable);
        CHECK(r.pass);
    }
}

TEST_CASE("key stages only move forward") {
    const BitKey k(bits_from_string("0101"));
    CHECK(k.advanced_to(KeyStage::reconciled).stage() == KeyStage::reconciled);
    CHECK_THROWS_AS(k.advanced_to(KeyStage::amplified).advanced_to(KeyStage::quantized), StateError);
}
