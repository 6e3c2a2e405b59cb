// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/probing.hpp"

#include <algorithm>
#include <random>

#include "physec/error.hpp"
#include "physec/seed.hpp"

namespace physec::probing {

namespace {

void require_increasing(std::span<const ProbeRecord> records, const char* who) {
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].timestamp <= records[i - 1].timestamp) {
            throw ParameterError(std::string("align_timestamps: ") + who + " timestamps not strictly increasing");
        }
    }
}

}  // namespace

void LossModel::validate() const {
    if (!(loss_probability >= 0.0 && loss_probability < 1.0)) {
        throw ParameterError("loss_probability must lie in [0, 1)");
    }
}

PartyRecords records_from_trace(const channel::ChannelTrace& trace) {
    PartyRecords out;
    out.alice.reserve(trace.size());
    out.bob.reserve(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out.alice.push_back({trace.t_a[i], trace.x_a[i]});
        out.bob.push_back({trace.t_b[i], trace.x_b[i]});
    }
    return out;
}

PartyRecords apply_loss(const channel::ChannelTrace& trace, const LossModel& loss) {
    loss.validate();
    if (trace.x_a.size() != trace.size() || trace.t_a.size() != trace.size() || trace.t_b.size() != trace.size()) {
        throw ParameterError("apply_loss: trace vectors differ in length");
    }
    if (loss.loss_probability == 0.0) {
        return records_from_trace(trace);
    }
    std::mt19937_64 to_bob(derive_seed(loss.rng_seed, {1}));
    std::mt19937_64 to_alice(derive_seed(loss.rng_seed, {2}));
    std::bernoulli_distribution lost_b(loss.loss_probability);
    std::bernoulli_distribution lost_a(loss.loss_probability);

    PartyRecords out;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (!lost_b(to_bob)) {
            out.bob.push_back({trace.t_b[i], trace.x_b[i]});
        }
        if (!lost_a(to_alice)) {
            out.alice.push_back({trace.t_a[i], trace.x_a[i]});
        }
    }
    return out;
}

std::vector<std::int64_t> timestamps_of(std::span<const ProbeRecord> records) {
    std::vector<std::int64_t> t;
    t.reserve(records.size());
    for (const auto& r : records) {
        t.push_back(r.timestamp);
    }
    return t;
}

std::vector<ProbeRecord> censor(std::span<const ProbeRecord> own, std::span<const std::int64_t> published,
                                std::int64_t offset) {
    std::vector<ProbeRecord> kept;
    auto it = published.begin();
    for (const auto& r : own) {
        const std::int64_t key = r.timestamp - offset;
        it = std::lower_bound(it, published.end(), key);
        if (it == published.end()) {
            break;
        }
        if (*it == key) {
            kept.push_back(r);
        }
    }
    return kept;
}

AlignedMeasurements align_timestamps(std::span<const ProbeRecord> alice, std::span<const ProbeRecord> bob,
                                     std::int64_t tau, Initiator initiator) {
    require_increasing(alice, "alice");
    require_increasing(bob, "bob");

    std::vector<ProbeRecord> alice_kept;
    std::vector<ProbeRecord> bob_kept;
    if (initiator == Initiator::alice) {
        bob_kept = censor(bob, timestamps_of(alice), -tau);
        alice_kept = censor(alice, timestamps_of(bob_kept), tau);
    } else {
        alice_kept = censor(alice, timestamps_of(bob), tau);
        bob_kept = censor(bob, timestamps_of(alice_kept), -tau);
    }

    AlignedMeasurements out;
    out.x_a.reserve(alice_kept.size());
    out.x_b.reserve(bob_kept.size());
    for (std::size_t i = 0; i < bob_kept.size(); ++i) {
        out.x_a.push_back(alice_kept[i].value);
        out.x_b.push_back(bob_kept[i].value);
        out.base_times.push_back(bob_kept[i].timestamp);
    }
    return out;
}

}  // namespace physec::probing
