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
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "physec/probing.hpp"

namespace physec::harness {

// A recorded measurement campaign: one probing round per CSV row.
struct RecordedTrace {
    probing::PartyRecords records;
    std::size_t rows = 0;
    // t_a - t_b for each row carrying both timestamps, in row order.
    std::vector<std::int64_t> row_delays;
};

// Header "timestamp_a,rss_a,timestamp_b,rss_b" is mandatory. Empty cells mark a
// lost probe; a side contributes a record only when both of its cells are set.
// Errors (ParameterError) cite the 1-based data row and the file line.
RecordedTrace parse_trace_csv(std::string_view text);
RecordedTrace read_trace_csv(const std::filesystem::path& path);

// Most frequent t_a - t_b over rows where both timestamps are present.
std::optional<std::int64_t> infer_sampling_delay(const RecordedTrace& trace);

// Reads the file and aligns the two record lists with the timestamp exchange.
probing::AlignedMeasurements load_trace_csv(const std::filesystem::path& path, std::int64_t tau);

}  // namespace physec::harness
