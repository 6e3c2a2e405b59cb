// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "physec/block_code.hpp"
#include "physec/harness/trace_csv.hpp"
#include "physec/ple/keystream.hpp"
#include "physec/privacy_amplification.hpp"
#include "physec/quantization.hpp"
#include "physec/randomness.hpp"
#include "physec/secure_sketch.hpp"
#include "physec/seed.hpp"

namespace physec::harness {

namespace {

constexpr std::size_t kMaxErrorMessages = 5;

// Per-trial sub-stream identifiers; fixed so results never depend on sweep order.
enum Stream : std::uint64_t {
    kChannel = 1,
    kLoss = 2,
    kSketch = 3,
    kSalt = 4,
    kPayload = 5,
    kLinkCoefficient = 6,
    kBobNoise = 7,
    kEveNoise = 8,
    kEveLinkCoefficient = 9,
};

struct Measurements {
    std::vector<double> x_a;
    std::vector<double> x_b;
    std::optional<std::vector<double>> x_e;  // aligned with x_b
    std::size_t n_probes = 0;
};

Measurements measure(const ExperimentConfig& cfg, std::uint64_t ts, const std::optional<probing::PartyRecords>& recorded) {
    Measurements m;
    if (recorded) {
        auto aligned = probing::align_timestamps(recorded->alice, recorded->bob, cfg.channel.sampling_delay);
        m.x_a = std::move(aligned.x_a);
        m.x_b = std::move(aligned.x_b);
        m.n_probes = std::max(recorded->alice.size(), recorded->bob.size());
        return m;
    }
    auto params = cfg.channel;
    params.rng_seed = derive_seed(ts, {kChannel});
    const auto trace = channel::generate_trace(params);
    auto loss = cfg.loss;
    loss.rng_seed = derive_seed(ts, {kLoss});
    const auto records = probing::apply_loss(trace, loss);
    auto aligned = probing::align_timestamps(records.alice, records.bob, params.sampling_delay);
    std::vector<double> x_e;
    x_e.reserve(aligned.size());
    for (auto t : aligned.base_times) {
        x_e.push_back(trace.x_e[static_cast<std::size_t>(t)]);
    }
    m.x_a = std::move(aligned.x_a);
    m.x_b = std::move(aligned.x_b);
    m.x_e = std::move(x_e);
    m.n_probes = params.n_probes;
    return m;
}

struct QuantizedBits {
    BitVector alice;
    BitVector bob;
    std::optional<BitVector> eve;  // Eve's guess of Alice's bits
};

QuantizedBits quantize(const ExperimentConfig& cfg, const Measurements& m) {
    QuantizedBits q;
    if (cfg.quantizer.kind == QuantizerKind::cdf) {
        const quant::CdfConfig qc{cfg.quantizer.quantization_level};
        q.alice = quant::quantize_cdf(m.x_a, qc).bits();
        q.bob = quant::quantize_cdf(m.x_b, qc).bits();
        if (m.x_e) {
            q.eve = quant::quantize_cdf(*m.x_e, qc).bits();
        }
        return q;
    }
    const quant::MeanSigmaConfig qc{cfg.quantizer.alpha};
    const auto qa = quant::quantize_mean_sigma(m.x_a, qc);
    const auto qb = quant::quantize_mean_sigma(m.x_b, qc);
    auto ca = quant::intersect_kept_indices(qa, qb.kept_indices);
    q.alice = ca.bits.bits();
    q.bob = quant::intersect_kept_indices(qb, qa.kept_indices).bits.bits();
    if (m.x_e) {
        // Eve sees the public kept-index lists; where her own guard band drops a
        // sample she falls back to the sign about her mean.
        const auto& xe = *m.x_e;
        const auto qe = quant::quantize_mean_sigma(xe, qc);
        const double mu = std::accumulate(xe.begin(), xe.end(), 0.0) / static_cast<double>(xe.size());
        BitVector guess;
        guess.reserve(ca.common.size());
        std::size_t j = 0;
        for (auto idx : ca.common) {
            while (j < qe.kept_indices.size() && qe.kept_indices[j] < idx) ++j;
            if (j < qe.kept_indices.size() && qe.kept_indices[j] == idx) {
                guess.push_back(qe.bits.bits()[j]);
            } else {
                guess.push_back(xe[idx] > mu ? 1 : 0);
            }
        }
        q.eve = std::move(guess);
    }
    return q;
}

double bit_error_rate(BitSpan a, BitSpan b) {
    return static_cast<double>(hamming_distance(a, b)) / static_cast<double>(a.size());
}

BitVector receive(const ple::PleCodec& codec, const ple::EncryptedFrame& frame, const ple::KeystreamSeed& key,
                  const PleSpec& spec, ple::Complex h, ple::Complex estimate, std::uint64_t noise_seed) {
    ple::EncryptedFrame rx = frame;
    const double snr = spec.ebn0_db ? ple::ebn0_to_snr_db(*spec.ebn0_db, spec.ofdm.mapping)
                                    : std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < rx.symbols.size(); ++s) {
        auto sym = spec.link == LinkKind::flat ? ple::flat_fading_link(rx.symbols[s], h) : rx.symbols[s];
        rx.symbols[s] = ple::awgn_link(sym, snr, derive_seed(noise_seed, {s}));
    }
    return codec.decrypt(rx, key, estimate);
}

ple::Complex draw_coefficient(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    const double re = g(rng);
    return {re, g(rng)};
}

}  // namespace

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {
        "kdr",     "reconcile_failure_rate", "key_agreement_rate", "kgr",     "eve_kdr",          "eve_key_agreement_rate",
        "monobit_pass_rate", "runs_pass_rate", "bob_ber",    "eve_ber", "key_to_data_ratio"};
    return names;
}

const MetricSummary& MetricsReport::metric(std::size_t point, std::string_view name) const {
    const auto& names = metric_names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        throw ParameterError("unknown metric '" + std::string(name) + "'");
    }
    return results.at(point).metrics.at(static_cast<std::size_t>(it - names.begin()));
}

TrialOutcome run_trial(const ExperimentConfig& cfg, std::size_t trial_index,
                       const std::optional<probing::PartyRecords>& recorded) {
    TrialOutcome out;
    const std::uint64_t ts = derive_seed(cfg.seed, {trial_index});
    try {
        const ple::PleCodec codec(cfg.ple.ofdm, cfg.ple.schemes, cfg.ple.options);
        out.key_to_data_ratio = codec.key_to_data_ratio();

        const auto m = measure(cfg, ts, recorded);
        const auto q = quantize(cfg, m);
        if (!q.alice.empty() && q.alice.size() == q.bob.size()) {
            out.kdr = bit_error_rate(q.alice, q.bob);
            if (q.eve) {
                out.eve_kdr = bit_error_rate(q.alice, *q.eve);
            }
        }

        const auto code = distill::make_block_code(cfg.code_id);
        const std::size_t blocks = (cfg.out_len + code->k() - 1) / code->k();
        const std::size_t raw_len = blocks * code->n();
        if (q.alice.size() < raw_len || q.bob.size() < raw_len) {
            out.reconcile_failed = true;
            return out;
        }
        auto head = [raw_len](const BitVector& v) {
            return BitKey(BitVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(raw_len)));
        };
        const BitKey ka = head(q.alice);
        const BitKey kb = head(q.bob);
        const auto sk = distill::sketch(ka, *code, derive_seed(ts, {kSketch}));
        const auto rb = distill::recover(kb, sk, *code);
        out.reconcile_failed = !rb.has_value();

        const std::size_t leaked = distill::sketch_leakage_bits(*code, blocks);
        BitVector salt;
        append_word(salt, derive_seed(ts, {kSalt}), 64);
        const auto salt_bytes = pack_bits(salt);
        auto finalize = [&](const BitKey& k) { return distill::amplify(k, leaked, cfg.out_len, salt_bytes); };

        const BitKey final_a = finalize(ka.advanced_to(KeyStage::reconciled));
        const BitKey final_b = finalize(rb ? *rb : kb);
        out.key_agreed = rb && final_a.bits() == final_b.bits();
        out.key_generation_rate =
            out.key_agreed && m.n_probes > 0 ? static_cast<double>(cfg.out_len) / static_cast<double>(m.n_probes) : 0.0;

        std::optional<BitKey> final_e;
        if (q.eve) {
            const BitKey ke = head(*q.eve);
            const auto re = distill::recover(ke, sk, *code);
            final_e = finalize(re ? *re : ke);
            out.eve_key_agreed = final_e->bits() == final_a.bits();
        }

        if (final_a.size() >= 100) {
            out.monobit_pass = distill::monobit_test(final_a.bits()).pass;
            out.runs_pass = distill::runs_test(final_a.bits()).pass;
        }

        if (cfg.ple.symbols_per_trial > 0) {
            const std::size_t n_bits = cfg.ple.symbols_per_trial * codec.payload_bits_per_symbol();
            std::mt19937_64 rng(derive_seed(ts, {kPayload}));
            BitVector payload(n_bits);
            for (auto& b : payload) {
                b = static_cast<std::uint8_t>(rng() >> 63);
            }
            const auto frame = codec.encrypt(payload, {final_a, 0});
            const auto h = cfg.ple.link == LinkKind::flat ? draw_coefficient(derive_seed(ts, {kLinkCoefficient}))
                                                          : ple::Complex{1.0, 0.0};
            const auto bob_rx = receive(codec, frame, {final_b, 0}, cfg.ple, h, h, derive_seed(ts, {kBobNoise}));
            out.bob_ber = bit_error_rate(payload, BitSpan(bob_rx).first(n_bits));
            if (final_e) {
                const auto he = cfg.ple.link == LinkKind::flat
                                    ? draw_coefficient(derive_seed(ts, {kEveLinkCoefficient}))
                                    : ple::Complex{1.0, 0.0};
                const auto estimate = cfg.ple.preamble_encrypted ? ple::Complex{1.0, 0.0} : he;
                const auto eve_rx =
                    receive(codec, frame, {*final_e, 0}, cfg.ple, he, estimate, derive_seed(ts, {kEveNoise}));
                out.eve_ber = bit_error_rate(payload, BitSpan(eve_rx).first(n_bits));
            }
        }
    } catch (const std::exception& e) {
        out.error = e.what();
        out.reconcile_failed = true;
        out.key_agreed = false;
        out.key_generation_rate = 0.0;
    }
    return out;
}

namespace {

class Accumulator {
public:
    void add(double v) { values_.push_back(v); }
    void add(const std::optional<double>& v) {
        if (v) add(*v);
    }
    void add(const std::optional<bool>& v) {
        if (v) add(*v ? 1.0 : 0.0);
    }

    MetricSummary summary() const {
        MetricSummary s;
        s.count = values_.size();
        if (values_.empty()) {
            s.mean = std::numeric_limits<double>::quiet_NaN();
            s.std_error = std::numeric_limits<double>::quiet_NaN();
            return s;
        }
        const double n = static_cast<double>(values_.size());
        s.mean = std::accumulate(values_.begin(), values_.end(), 0.0) / n;
        if (values_.size() > 1) {
            double ss = 0.0;
            for (double v : values_) ss += (v - s.mean) * (v - s.mean);
            s.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        }
        return s;
    }

private:
    std::vector<double> values_;
};

PointResult aggregate(double sweep_value, std::span<const TrialOutcome> trials) {
    const std::size_t n_metrics = metric_names().size();
    std::vector<Accumulator> acc(n_metrics);
    PointResult r;
    r.sweep_value = sweep_value;
    r.trials = trials.size();
    for (const auto& t : trials) {
        if (t.error) {
            ++r.trial_errors;
            if (r.error_messages.size() < kMaxErrorMessages &&
                std::find(r.error_messages.begin(), r.error_messages.end(), *t.error) == r.error_messages.end()) {
                r.error_messages.push_back(*t.error);
            }
        }
        acc[0].add(t.kdr);
        acc[1].add(t.reconcile_failed);
        acc[2].add(t.key_agreed ? 1.0 : 0.0);
        acc[3].add(t.key_generation_rate);
        acc[4].add(t.eve_kdr);
        acc[5].add(t.eve_key_agreed);
        acc[6].add(t.monobit_pass);
        acc[7].add(t.runs_pass);
        acc[8].add(t.bob_ber);
        acc[9].add(t.eve_ber);
        if (!t.error) acc[10].add(t.key_to_data_ratio);
    }
    for (const auto& a : acc) {
        r.metrics.push_back(a.summary());
    }
    return r;
}

}  // namespace

MetricsReport run_experiment(const ExperimentConfig& cfg, unsigned jobs) {
    std::optional<probing::PartyRecords> recorded;
    if (cfg.trace_file) {
        recorded = read_trace_csv(*cfg.trace_file).records;
    }
    std::vector<ExperimentConfig> points;
    for (double v : cfg.sweep.values) {
        points.push_back(with_parameter(cfg, cfg.sweep.parameter, v));
    }

    const std::size_t total = points.size() * cfg.trials;
    std::vector<TrialOutcome> outcomes(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
            outcomes[i] = run_trial(points[i / cfg.trials], i % cfg.trials, recorded);
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    MetricsReport report;
    report.config = to_json(cfg);
    report.config_hash = config_hash(cfg);
    report.seed = cfg.seed;
    report.scenario = cfg.scenario;
    report.sweep_parameter = cfg.sweep.parameter;
    for (std::size_t p = 0; p < points.size(); ++p) {
        report.results.push_back(aggregate(cfg.sweep.values[p], std::span(outcomes).subspan(p * cfg.trials, cfg.trials)));
    }
    return report;
}

}  // namespace physec::harness
