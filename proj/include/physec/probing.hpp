// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "physec/channel_model.hpp"

namespace physec::probing {

struct ProbeRecord {
    std::int64_t timestamp = 0;  // probing-interval units
    double value = 0.0;

    friend bool operator==(const ProbeRecord&, const ProbeRecord&) = default;
};

// i.i.d. Bernoulli loss, applied independently to each direction of a round.
struct LossModel {
    double loss_probability = 0.0;  // [0, 1)
    std::uint64_t rng_seed = 1;

    void validate() const;
};

struct PartyRecords {
    std::vector<ProbeRecord> alice;
    std::vector<ProbeRecord> bob;
};

// Drops each probe with loss.loss_probability. A lost Bob->Alice pilot removes
// Alice's record for the round, a lost Alice->Bob pilot removes Bob's.
PartyRecords apply_loss(const channel::ChannelTrace& trace, const LossModel& loss);

// Records of both parties without any loss.
PartyRecords records_from_trace(const channel::ChannelTrace& trace);

enum class Initiator { alice, bob };

struct AlignedMeasurements {
    std::vector<double> x_a;
    std::vector<double> x_b;
    std::vector<std::int64_t> base_times;  // Bob's timestamps of the kept rounds

    std::size_t size() const noexcept { return x_b.size(); }
};

// One censoring step of the public timestamp exchange: keeps the records whose
// timestamp minus offset appears in published (sorted ascending).
std::vector<ProbeRecord> censor(std::span<const ProbeRecord> own, std::span<const std::int64_t> published,
                                std::int64_t offset);

std::vector<std::int64_t> timestamps_of(std::span<const ProbeRecord> records);

// Two-round timestamp exchange. With Alice initiating: Alice publishes her
// timestamps, Bob keeps the rounds with t_b + tau among them and publishes the
// survivors, Alice keeps the rounds with t_a - tau among those. Both record
// lists must have strictly increasing timestamps (ParameterError otherwise).
AlignedMeasurements align_timestamps(std::span<const ProbeRecord> alice, std::span<const ProbeRecord> bob,
                                     std::int64_t tau, Initiator initiator = Initiator::alice);

}  // namespace physec::probing
