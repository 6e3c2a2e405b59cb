// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/harness/trace_csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "physec/error.hpp"

namespace physec::harness {

namespace {

constexpr std::string_view kHeader = "timestamp_a,rss_a,timestamp_b,rss_b";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

[[noreturn]] void row_error(std::size_t row, std::size_t line, const std::string& what) {
    throw ParameterError("trace row " + std::to_string(row) + " (line " + std::to_string(line) + "): " + what);
}

std::int64_t parse_timestamp(std::string_view cell, std::size_t row, std::size_t line, const char* column) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        row_error(row, line, std::string(column) + " '" + std::string(cell) + "' is not an integer");
    }
    return v;
}

double parse_value(std::string_view cell, std::size_t row, std::size_t line, const char* column) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        row_error(row, line, std::string(column) + " '" + std::string(cell) + "' is not a finite number");
    }
    return v;
}

// Both cells of a side present: a record; both empty: a lost probe.
std::optional<probing::ProbeRecord> parse_side(std::string_view ts, std::string_view value, std::size_t row,
                                               std::size_t line, const char* ts_name, const char* value_name) {
    if (ts.empty() && value.empty()) {
        return std::nullopt;
    }
    if (ts.empty()) {
        row_error(row, line, std::string(value_name) + " present without " + ts_name);
    }
    if (value.empty()) {
        parse_timestamp(ts, row, line, ts_name);
        return std::nullopt;
    }
    return probing::ProbeRecord{parse_timestamp(ts, row, line, ts_name), parse_value(value, row, line, value_name)};
}

}  // namespace

RecordedTrace parse_trace_csv(std::string_view text) {
    if (trim(text).empty()) {
        throw ParameterError("trace file is empty");
    }
    RecordedTrace out;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const auto line = trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (!header_seen) {
            std::string_view h = line;
            if (h.starts_with("\xEF\xBB\xBF")) h.remove_prefix(3);
            if (h != kHeader) {
                throw ParameterError("trace header must be '" + std::string(kHeader) + "', found '" + std::string(h) +
                                     "'");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const std::size_t row = out.rows + 1;
        const auto cells = split(line);
        if (cells.size() != 4) {
            row_error(row, line_no, "expected 4 cells, found " + std::to_string(cells.size()));
        }
        if (auto a = parse_side(cells[0], cells[1], row, line_no, "timestamp_a", "rss_a")) {
            out.records.alice.push_back(*a);
        }
        if (auto b = parse_side(cells[2], cells[3], row, line_no, "timestamp_b", "rss_b")) {
            out.records.bob.push_back(*b);
        }
        if (!cells[0].empty() && !cells[2].empty()) {
            out.row_delays.push_back(parse_timestamp(cells[0], row, line_no, "timestamp_a") -
                                     parse_timestamp(cells[2], row, line_no, "timestamp_b"));
        }
        ++out.rows;
    }
    if (out.rows == 0) {
        throw ParameterError("trace file has no data rows");
    }
    return out;
}

RecordedTrace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParameterError("cannot read trace file '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_trace_csv(ss.str());
}

std::optional<std::int64_t> infer_sampling_delay(const RecordedTrace& trace) {
    std::map<std::int64_t, std::size_t> counts;
    for (auto d : trace.row_delays) ++counts[d];
    if (counts.empty()) {
        return std::nullopt;
    }
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        if (it->second > best->second) best = it;
    }
    return best->first;
}

probing::AlignedMeasurements load_trace_csv(const std::filesystem::path& path, std::int64_t tau) {
    const auto trace = read_trace_csv(path);
    return probing::align_timestamps(trace.records.alice, trace.records.bob, tau);
}

}  // namespace physec::harness
