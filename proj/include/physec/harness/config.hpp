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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "physec/channel_model.hpp"
#include "physec/error.hpp"
#include "physec/ple/codec.hpp"
#include "physec/probing.hpp"

namespace physec::harness {

enum class QuantizerKind { mean_sigma, cdf };

struct QuantizerSpec {
    QuantizerKind kind = QuantizerKind::mean_sigma;
    double alpha = 0.5;
    unsigned quantization_level = 1;
};

enum class LinkKind { awgn, flat };

struct PleSpec {
    std::vector<ple::Scheme> schemes;
    ple::OfdmConfig ofdm = ple::OfdmConfig::wifi_default();
    ple::PleOptions options;
    std::optional<double> ebn0_db = 8.0;  // nullopt: noiseless link
    LinkKind link = LinkKind::awgn;
    bool preamble_encrypted = false;      // Eve cannot estimate the channel
    std::size_t symbols_per_trial = 20;   // 0 disables the BER stage
};

struct SweepAxis {
    std::string parameter;
    std::vector<double> values;
};

struct ExperimentConfig {
    std::string scenario = "unnamed";
    channel::ChannelParams channel;
    std::optional<std::filesystem::path> trace_file;
    probing::LossModel loss;
    QuantizerSpec quantizer;
    std::string code_id = "hamming74";
    std::size_t out_len = 128;
    PleSpec ple;
    SweepAxis sweep;
    std::size_t trials = 50;
    std::uint64_t seed = 1;

    // Exact bytes the config was parsed from; empty for programmatic configs.
    std::string source_text;
};

// Every schema violation found in one pass, each naming its field path.
class ConfigLoadError : public ConfigError {
public:
    explicit ConfigLoadError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

// Parameters accepted as sweep axes.
const std::vector<std::string>& sweep_parameters();
bool is_channel_parameter(std::string_view parameter);

// Parses and validates; trace_file is resolved relative to base_dir and must exist.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
// Reads path; throws ConfigLoadError (with a single violation) when unreadable.
ExperimentConfig load_config(const std::filesystem::path& path);

// Config with every default filled in, as echoed in reports.
nlohmann::json to_json(const ExperimentConfig& cfg);

// Copy of cfg with one sweep parameter set to value.
ExperimentConfig with_parameter(const ExperimentConfig& cfg, std::string_view parameter, double value);

// SHA-256 of source_text, or of the canonical JSON echo when source_text is empty.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace physec::harness
