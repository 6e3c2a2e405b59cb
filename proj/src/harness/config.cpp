// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "physec/block_code.hpp"
#include "physec/quantization.hpp"
#include "physec/sha256.hpp"

namespace physec::harness {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string join_lines(const std::vector<std::string>& items) {
    std::string s = "invalid experiment config:";
    for (const auto& v : items) {
        s += "\n  - " + v;
    }
    return s;
}

// Typed field access that records violations instead of throwing.
class Reader {
public:
    explicit Reader(std::vector<std::string>& violations) : violations_(violations) {}

    void fail(const std::string& path, const std::string& what) { violations_.push_back(path + ": " + what); }

    // Reports keys of obj not in allowed.
    void allow_only(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
        for (const auto& [key, value] : obj.items()) {
            bool ok = false;
            for (auto a : allowed) {
                ok = ok || key == a;
            }
            if (!ok) {
                fail(path.empty() ? key : path + "." + key, "unknown field");
            }
        }
    }

    const json* object(const json& parent, const std::string& key, const std::string& path) {
        if (!parent.contains(key)) {
            return nullptr;
        }
        const auto& v = parent.at(key);
        if (!v.is_object()) {
            fail(path, "must be an object");
            return nullptr;
        }
        return &v;
    }

    void number(const json& obj, const std::string& key, const std::string& path, double& out) {
        if (!obj.contains(key)) return;
        const auto& v = obj.at(key);
        if (!v.is_number()) {
            fail(path, "must be a number");
            return;
        }
        out = v.get<double>();
    }

    // Accepts a number, "inf" or null (both meaning +inf).
    void number_or_inf(const json& obj, const std::string& key, const std::string& path, double& out) {
        if (!obj.contains(key)) return;
        const auto& v = obj.at(key);
        if (v.is_null() || (v.is_string() && v.get<std::string>() == "inf")) {
            out = kInf;
        } else if (v.is_number()) {
            out = v.get<double>();
        } else {
            fail(path, "must be a number, \"inf\" or null");
        }
    }

    template <typename Int>
    void integer(const json& obj, const std::string& key, const std::string& path, Int& out, long long min_value) {
        if (!obj.contains(key)) return;
        const auto& v = obj.at(key);
        if (!v.is_number_integer()) {
            fail(path, "must be an integer");
            return;
        }
        if (v.is_number_unsigned()) {
            const auto u = v.get<std::uint64_t>();
            if (min_value > 0 && u < static_cast<std::uint64_t>(min_value)) {
                fail(path, "must be >= " + std::to_string(min_value));
                return;
            }
            out = static_cast<Int>(u);
            return;
        }
        const auto i = v.get<long long>();
        if (i < min_value) {
            fail(path, "must be >= " + std::to_string(min_value));
            return;
        }
        out = static_cast<Int>(i);
    }

    void string(const json& obj, const std::string& key, const std::string& path, std::string& out) {
        if (!obj.contains(key)) return;
        const auto& v = obj.at(key);
        if (!v.is_string()) {
            fail(path, "must be a string");
            return;
        }
        out = v.get<std::string>();
    }

    void boolean(const json& obj, const std::string& key, const std::string& path, bool& out) {
        if (!obj.contains(key)) return;
        const auto& v = obj.at(key);
        if (!v.is_boolean()) {
            fail(path, "must be a boolean");
            return;
        }
        out = v.get<bool>();
    }

    void index_list(const json& obj, const std::string& key, const std::string& path, std::vector<std::size_t>& out) {
        if (!obj.contains(key)) return;
        const auto& v = obj.at(key);
        if (!v.is_array()) {
            fail(path, "must be an array of non-negative integers");
            return;
        }
        std::vector<std::size_t> values;
        for (const auto& e : v) {
            if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0)) {
                fail(path, "must be an array of non-negative integers");
                return;
            }
            values.push_back(e.get<std::size_t>());
        }
        out = std::move(values);
    }

private:
    std::vector<std::string>& violations_;
};

bool is_integral_parameter(std::string_view p) {
    return p == "sampling_delay" || p == "n_probes" || p == "quantization_level" || p == "out_len";
}

void validate_semantics(const ExperimentConfig& cfg, Reader& r, const std::string& where) {
    auto check = [&](const std::string& path, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            r.fail(path, e.what());
        }
    };
    if (!cfg.trace_file) {
        check(where + "channel", [&] { cfg.channel.validate(); });
    }
    check(where + "loss.loss_probability", [&] { cfg.loss.validate(); });
    if (cfg.quantizer.kind == QuantizerKind::mean_sigma) {
        check(where + "quantizer.alpha", [&] { quant::MeanSigmaConfig{cfg.quantizer.alpha}.validate(); });
    } else {
        check(where + "quantizer.quantization_level",
              [&] { quant::CdfConfig{cfg.quantizer.quantization_level}.validate(); });
    }
    if (cfg.out_len < 1) {
        r.fail(where + "amplify.out_len", "must be >= 1");
    }
    check(where + "ple", [&] { ple::PleCodec(cfg.ple.ofdm, cfg.ple.schemes, cfg.ple.options); });
    if (cfg.ple.ebn0_db && std::isnan(*cfg.ple.ebn0_db)) {
        r.fail(where + "ple.ebn0_db", "must be a number or null");
    }
}

}  // namespace

ConfigLoadError::ConfigLoadError(std::vector<std::string> violations)
    : ConfigError(join_lines(violations)), violations_(std::move(violations)) {}

const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> params = {
        "snr_db",           "temporal_correlation", "sampling_delay", "eve_correlation",    "n_probes",
        "loss_probability", "alpha",                "quantization_level", "out_len", "ple_ebn0_db"};
    return params;
}

bool is_channel_parameter(std::string_view p) {
    return p == "snr_db" || p == "temporal_correlation" || p == "eve_correlation" || p == "n_probes";
}

ExperimentConfig with_parameter(const ExperimentConfig& cfg, std::string_view parameter, double value) {
    ExperimentConfig out = cfg;
    if (is_integral_parameter(parameter) && (value != std::floor(value) || value < 0.0)) {
        throw ParameterError(std::string(parameter) + " must be a non-negative integer");
    }
    if (parameter == "snr_db") {
        out.channel.snr_db = value;
    } else if (parameter == "temporal_correlation") {
        out.channel.temporal_correlation = value;
    } else if (parameter == "sampling_delay") {
        out.channel.sampling_delay = static_cast<std::int64_t>(value);
    } else if (parameter == "eve_correlation") {
        out.channel.eve_correlation = value;
    } else if (parameter == "n_probes") {
        out.channel.n_probes = static_cast<std::size_t>(value);
    } else if (parameter == "loss_probability") {
        out.loss.loss_probability = value;
    } else if (parameter == "alpha") {
        out.quantizer.alpha = value;
    } else if (parameter == "quantization_level") {
        out.quantizer.quantization_level = static_cast<unsigned>(value);
    } else if (parameter == "out_len") {
        out.out_len = static_cast<std::size_t>(value);
    } else if (parameter == "ple_ebn0_db") {
        out.ple.ebn0_db = value;
    } else {
        throw ParameterError("unknown sweep parameter '" + std::string(parameter) + "'");
    }
    return out;
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigLoadError({std::string("parse error: ") + e.what()});
    }
    if (!doc.is_object()) {
        throw ConfigLoadError({"top level must be a JSON object"});
    }

    std::vector<std::string> violations;
    Reader r(violations);
    ExperimentConfig cfg;
    cfg.source_text = std::string(text);

    r.allow_only(doc, "", {"scenario", "channel", "loss", "quantizer", "code_id", "amplify", "ple", "sweep", "trials", "seed"});
    r.string(doc, "scenario", "scenario", cfg.scenario);
    r.integer(doc, "trials", "trials", cfg.trials, 1);
    r.integer(doc, "seed", "seed", cfg.seed, 0);

    if (const auto* ch = r.object(doc, "channel", "channel")) {
        r.allow_only(*ch, "channel",
                     {"temporal_correlation", "sampling_delay", "snr_db", "eve_correlation", "n_probes", "trace_file"});
        r.number(*ch, "temporal_correlation", "channel.temporal_correlation", cfg.channel.temporal_correlation);
        r.integer(*ch, "sampling_delay", "channel.sampling_delay", cfg.channel.sampling_delay, 0);
        r.number_or_inf(*ch, "snr_db", "channel.snr_db", cfg.channel.snr_db);
        r.number(*ch, "eve_correlation", "channel.eve_correlation", cfg.channel.eve_correlation);
        r.integer(*ch, "n_probes", "channel.n_probes", cfg.channel.n_probes, 1);
        std::string trace;
        r.string(*ch, "trace_file", "channel.trace_file", trace);
        if (!trace.empty()) {
            std::filesystem::path p(trace);
            if (p.is_relative() && !base_dir.empty()) {
                p = base_dir / p;
            }
            if (!std::filesystem::exists(p)) {
                r.fail("channel.trace_file", "file '" + p.string() + "' does not exist");
            }
            cfg.trace_file = p;
        }
    }

    if (const auto* loss = r.object(doc, "loss", "loss")) {
        r.allow_only(*loss, "loss", {"loss_probability"});
        r.number(*loss, "loss_probability", "loss.loss_probability", cfg.loss.loss_probability);
    }

    if (const auto* q = r.object(doc, "quantizer", "quantizer")) {
        r.allow_only(*q, "quantizer", {"algorithm", "alpha", "quantization_level"});
        std::string algo = "mean_sigma";
        r.string(*q, "algorithm", "quantizer.algorithm", algo);
        if (algo == "mean_sigma") {
            cfg.quantizer.kind = QuantizerKind::mean_sigma;
        } else if (algo == "cdf") {
            cfg.quantizer.kind = QuantizerKind::cdf;
        } else {
            r.fail("quantizer.algorithm", "must be \"mean_sigma\" or \"cdf\"");
        }
        r.number(*q, "alpha", "quantizer.alpha", cfg.quantizer.alpha);
        r.integer(*q, "quantization_level", "quantizer.quantization_level", cfg.quantizer.quantization_level, 1);
    }

    r.string(doc, "code_id", "code_id", cfg.code_id);
    try {
        distill::make_block_code(cfg.code_id);
    } catch (const std::exception&) {
        r.fail("code_id", "unknown block code '" + cfg.code_id + "'");
    }

    if (const auto* a = r.object(doc, "amplify", "amplify")) {
        r.allow_only(*a, "amplify", {"out_len"});
        r.integer(*a, "out_len", "amplify.out_len", cfg.out_len, 1);
    }

    if (const auto* p = r.object(doc, "ple", "ple")) {
        r.allow_only(*p, "ple",
                     {"schemes", "mapping", "n_fft", "cp_len", "data_carriers", "dummy_carriers", "bits_per_angle",
                      "noise_enabled", "noise_scale", "interleave_threshold", "ebn0_db", "link", "preamble_encrypted",
                      "symbols_per_trial"});
        if (p->contains("schemes")) {
            const auto& s = p->at("schemes");
            if (!s.is_array()) {
                r.fail("ple.schemes", "must be an array of scheme names");
            } else {
                for (std::size_t i = 0; i < s.size(); ++i) {
                    const std::string path = "ple.schemes[" + std::to_string(i) + "]";
                    if (!s[i].is_string()) {
                        r.fail(path, "must be a string");
                        continue;
                    }
                    try {
                        cfg.ple.schemes.push_back(ple::parse_scheme(s[i].get<std::string>()));
                    } catch (const std::exception& e) {
                        r.fail(path, e.what());
                    }
                }
            }
        }
        std::string mapping = std::string(ple::to_string(cfg.ple.ofdm.mapping));
        r.string(*p, "mapping", "ple.mapping", mapping);
        try {
            cfg.ple.ofdm.mapping = ple::parse_mapping(mapping);
        } catch (const std::exception& e) {
            r.fail("ple.mapping", e.what());
        }
        r.integer(*p, "n_fft", "ple.n_fft", cfg.ple.ofdm.n_fft, 2);
        r.integer(*p, "cp_len", "ple.cp_len", cfg.ple.ofdm.cp_len, 0);
        r.index_list(*p, "data_carriers", "ple.data_carriers", cfg.ple.ofdm.data_carriers);
        r.index_list(*p, "dummy_carriers", "ple.dummy_carriers", cfg.ple.ofdm.dummy_carriers);
        r.integer(*p, "bits_per_angle", "ple.bits_per_angle", cfg.ple.options.phase.bits_per_angle, 1);
        r.boolean(*p, "noise_enabled", "ple.noise_enabled", cfg.ple.options.phase.noise_enabled);
        r.number(*p, "noise_scale", "ple.noise_scale", cfg.ple.options.phase.noise_scale);
        r.number(*p, "interleave_threshold", "ple.interleave_threshold", cfg.ple.options.interleave_threshold);
        if (p->contains("ebn0_db")) {
            const auto& v = p->at("ebn0_db");
            if (v.is_null()) {
                cfg.ple.ebn0_db.reset();
            } else if (v.is_number()) {
                cfg.ple.ebn0_db = v.get<double>();
            } else {
                r.fail("ple.ebn0_db", "must be a number or null");
            }
        }
        std::string link = "awgn";
        r.string(*p, "link", "ple.link", link);
        if (link == "awgn") {
            cfg.ple.link = LinkKind::awgn;
        } else if (link == "flat") {
            cfg.ple.link = LinkKind::flat;
        } else {
            r.fail("ple.link", "must be \"awgn\" or \"flat\"");
        }
        r.boolean(*p, "preamble_encrypted", "ple.preamble_encrypted", cfg.ple.preamble_encrypted);
        r.integer(*p, "symbols_per_trial", "ple.symbols_per_trial", cfg.ple.symbols_per_trial, 0);
    }

    if (!doc.contains("sweep")) {
        r.fail("sweep", "required: exactly one sweep axis");
    } else if (!doc["sweep"].is_object()) {
        r.fail("sweep", "must be an object with exactly one axis");
    } else {
        const auto& sw = doc["sweep"];
        if (sw.size() != 1) {
            r.fail("sweep", "must name exactly one sweep axis, found " + std::to_string(sw.size()));
        }
        if (!sw.empty()) {
            const auto it = sw.begin();
            cfg.sweep.parameter = it.key();
            const auto& known = sweep_parameters();
            if (std::find(known.begin(), known.end(), cfg.sweep.parameter) == known.end()) {
                r.fail("sweep." + it.key(), "unknown sweep parameter");
            } else if (cfg.trace_file && is_channel_parameter(cfg.sweep.parameter)) {
                r.fail("sweep." + it.key(), "channel parameters cannot be swept when replaying a trace file");
            }
            if (!it->is_array() || it->empty()) {
                r.fail("sweep." + it.key(), "must be a non-empty array of numbers");
            } else {
                for (const auto& v : *it) {
                    if (!v.is_number()) {
                        r.fail("sweep." + it.key(), "must be a non-empty array of numbers");
                        cfg.sweep.values.clear();
                        break;
                    }
                    cfg.sweep.values.push_back(v.get<double>());
                }
            }
        }
    }

    if (violations.empty()) {
        validate_semantics(cfg, r, "");
        for (std::size_t i = 0; i < cfg.sweep.values.size() && violations.empty(); ++i) {
            const std::string where = "sweep." + cfg.sweep.parameter + "[" + std::to_string(i) + "] -> ";
            try {
                validate_semantics(with_parameter(cfg, cfg.sweep.parameter, cfg.sweep.values[i]), r, where);
            } catch (const std::exception& e) {
                r.fail(where.substr(0, where.size() - 4), e.what());
            }
        }
    }

    if (!violations.empty()) {
        throw ConfigLoadError(std::move(violations));
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigLoadError({"cannot read config file '" + path.string() + "'"});
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

json to_json(const ExperimentConfig& cfg) {
    json channel;
    if (cfg.trace_file) {
        channel["trace_file"] = cfg.trace_file->string();
        channel["sampling_delay"] = cfg.channel.sampling_delay;
    } else {
        channel = {{"temporal_correlation", cfg.channel.temporal_correlation},
                   {"sampling_delay", cfg.channel.sampling_delay},
                   {"eve_correlation", cfg.channel.eve_correlation},
                   {"n_probes", cfg.channel.n_probes}};
        if (std::isinf(cfg.channel.snr_db)) {
            channel["snr_db"] = "inf";
        } else {
            channel["snr_db"] = cfg.channel.snr_db;
        }
    }
    json quantizer;
    if (cfg.quantizer.kind == QuantizerKind::mean_sigma) {
        quantizer = {{"algorithm", "mean_sigma"}, {"alpha", cfg.quantizer.alpha}};
    } else {
        quantizer = {{"algorithm", "cdf"}, {"quantization_level", cfg.quantizer.quantization_level}};
    }
    json schemes = json::array();
    for (auto s : cfg.ple.schemes) {
        schemes.push_back(std::string(ple::to_string(s)));
    }
    json ple = {{"schemes", schemes},
                {"mapping", std::string(ple::to_string(cfg.ple.ofdm.mapping))},
                {"n_fft", cfg.ple.ofdm.n_fft},
                {"cp_len", cfg.ple.ofdm.cp_len},
                {"data_carriers", cfg.ple.ofdm.data_carriers},
                {"dummy_carriers", cfg.ple.ofdm.dummy_carriers},
                {"bits_per_angle", cfg.ple.options.phase.bits_per_angle},
                {"noise_enabled", cfg.ple.options.phase.noise_enabled},
                {"noise_scale", cfg.ple.options.phase.noise_scale},
                {"interleave_threshold", cfg.ple.options.interleave_threshold},
                {"ebn0_db", cfg.ple.ebn0_db ? json(*cfg.ple.ebn0_db) : json(nullptr)},
                {"link", cfg.ple.link == LinkKind::awgn ? "awgn" : "flat"},
                {"preamble_encrypted", cfg.ple.preamble_encrypted},
                {"symbols_per_trial", cfg.ple.symbols_per_trial}};
    return {{"scenario", cfg.scenario},
            {"channel", channel},
            {"loss", {{"loss_probability", cfg.loss.loss_probability}}},
            {"quantizer", quantizer},
            {"code_id", cfg.code_id},
            {"amplify", {{"out_len", cfg.out_len}}},
            {"ple", ple},
            {"sweep", {{cfg.sweep.parameter, cfg.sweep.values}}},
            {"trials", cfg.trials},
            {"seed", cfg.seed}};
}

std::string config_hash(const ExperimentConfig& cfg) {
    if (!cfg.source_text.empty()) {
        return to_hex(sha256(cfg.source_text));
    }
    return to_hex(sha256(to_json(cfg).dump()));
}

}  // namespace physec::harness
