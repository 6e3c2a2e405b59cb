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
#include <optional>
#include <string>
#include <vector>

#include "physec/harness/config.hpp"

namespace physec::harness {

// Stable metric order used by every report format.
const std::vector<std::string>& metric_names();

struct MetricSummary {
    double mean = 0.0;        // NaN when no trial contributed
    double std_error = 0.0;   // sample standard deviation / sqrt(count)
    std::size_t count = 0;

    friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

struct PointResult {
    double sweep_value = 0.0;
    std::size_t trials = 0;
    std::size_t trial_errors = 0;
    std::vector<std::string> error_messages;  // first few per-trial errors
    std::vector<MetricSummary> metrics;       // parallel to metric_names()
};

struct MetricsReport {
    nlohmann::json config;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string scenario;
    std::string sweep_parameter;
    std::vector<PointResult> results;

    const MetricSummary& metric(std::size_t point, std::string_view name) const;
};

// Per-trial observations before aggregation. Unset optionals do not contribute.
struct TrialOutcome {
    std::optional<std::string> error;
    std::optional<double> kdr;
    std::optional<double> eve_kdr;
    std::optional<bool> reconcile_failed;
    bool key_agreed = false;
    std::optional<bool> eve_key_agreed;
    double key_generation_rate = 0.0;
    std::optional<bool> monobit_pass;
    std::optional<bool> runs_pass;
    std::optional<double> bob_ber;
    std::optional<double> eve_ber;
    double key_to_data_ratio = 0.0;
};

// One seeded pass through probing, quantisation, reconciliation, amplification
// and the PLE link. Never throws: module errors land in TrialOutcome::error.
TrialOutcome run_trial(const ExperimentConfig& point_cfg, std::size_t trial_index,
                       const std::optional<probing::PartyRecords>& recorded = std::nullopt);

// Runs every sweep point; trials are spread over jobs threads. The result does
// not depend on jobs.
MetricsReport run_experiment(const ExperimentConfig& cfg, unsigned jobs = 1);

}  // namespace physec::harness
