// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
// physec command-line driver.
//
//   physec run <config> [--seed N] [--out PATH] [--format json|csv] [--jobs N]
//   physec validate <config>
//   physec trace-stats <csv> [--tau N]
//   physec selftest
//
// PHYSEC_OUT_DIR and PHYSEC_JOBS override the output directory and job count.
// Exit status: 0 success, 1 config error, 2 runtime error.

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "physec/block_code.hpp"
#include "physec/channel_model.hpp"
#include "physec/error.hpp"
#include "physec/harness/config.hpp"
#include "physec/harness/experiment.hpp"
#include "physec/harness/report.hpp"
#include "physec/harness/trace_csv.hpp"
#include "physec/quantization.hpp"
#include "physec/secure_sketch.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

using namespace physec;

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
}

unsigned resolve_jobs(std::optional<unsigned> flag) {
    if (flag) return std::max(1u, *flag);
    if (auto v = env("PHYSEC_JOBS")) {
        try {
            const long j = std::stol(*v);
            if (j >= 1) return static_cast<unsigned>(j);
        } catch (const std::exception&) {
        }
        throw ConfigError("PHYSEC_JOBS must be a positive integer, got '" + *v + "'");
    }
    return 1;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, std::optional<std::string> out,
            const std::string& format_name, std::optional<unsigned> jobs) {
    const auto format = harness::parse_format(format_name);
    auto cfg = harness::load_config(path);
    if (seed) cfg.seed = *seed;
    const auto report = harness::run_experiment(cfg, resolve_jobs(jobs));

    // --out names the file; PHYSEC_OUT_DIR is the directory for relative or default names.
    std::optional<std::filesystem::path> target;
    const auto out_dir = env("PHYSEC_OUT_DIR");
    if (out) {
        if (out->empty()) throw ConfigError("--out must not be empty");
        target = out_dir && std::filesystem::path(*out).is_relative() ? std::filesystem::path(*out_dir) / *out
                                                                     : std::filesystem::path(*out);
    } else if (out_dir) {
        target = std::filesystem::path(*out_dir) /
                 (cfg.scenario + (format == harness::ReportFormat::json ? ".json" : ".csv"));
    }
    if (target) {
        harness::emit_report(report, format, *target);
        std::cerr << "wrote " << target->string() << "\n";
    } else {
        std::cout << harness::render_report(report, format);
    }
    for (const auto& p : report.results) {
        if (p.trial_errors > 0) {
            std::cerr << "warning: " << p.trial_errors << " trial error(s) at " << report.sweep_parameter << " = "
                      << p.sweep_value << ": " << p.error_messages.front() << "\n";
        }
    }
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    const auto cfg = harness::load_config(path);
    std::cout << "ok: scenario '" << cfg.scenario << "', sweep " << cfg.sweep.parameter << " over "
              << cfg.sweep.values.size() << " point(s) x " << cfg.trials << " trial(s), config hash "
              << harness::config_hash(cfg) << "\n";
    return kExitOk;
}

int cmd_trace_stats(const std::string& path, std::optional<std::int64_t> tau_flag) {
    const auto trace = harness::read_trace_csv(path);
    const auto inferred = harness::infer_sampling_delay(trace);
    const std::int64_t tau = tau_flag ? *tau_flag : inferred.value_or(0);
    const auto aligned = probing::align_timestamps(trace.records.alice, trace.records.bob, tau);
    std::cout << "rows: " << trace.rows << "\n"
              << "alice records: " << trace.records.alice.size() << "\n"
              << "bob records: " << trace.records.bob.size() << "\n"
              << "inferred sampling delay: " << (inferred ? std::to_string(*inferred) : std::string("n/a")) << "\n"
              << "sampling delay used: " << tau << "\n"
              << "aligned rounds: " << aligned.size() << "\n";
    try {
        std::cout << "pearson correlation: " << channel::pearson_correlation(aligned.x_a, aligned.x_b) << "\n";
    } catch (const std::exception& e) {
        std::cout << "pearson correlation: n/a (" << e.what() << ")\n";
    }
    return kExitOk;
}

// Exhaustive oracle: every block and every correctable error pattern survives
// sketch -> recover unchanged.
bool check_reconciliation(const distill::BlockCode& code) {
    const std::size_t n = code.n();
    std::vector<BitVector> patterns{BitVector(n, 0)};
    for (std::size_t i = 0; i < n && code.t() >= 1; ++i) {
        BitVector e(n, 0);
        e[i] = 1;
        patterns.push_back(e);
    }
    for (std::uint64_t w = 0; w < (1ULL << n); ++w) {
        BitVector block;
        append_word(block, w, static_cast<unsigned>(n));
        const BitKey ka(block);
        const auto sk = distill::sketch(ka, code, w);
        for (const auto& e : patterns) {
            const auto rb = distill::recover(BitKey(xor_bits(block, e)), sk, code);
            if (!rb || rb->bits() != block) return false;
        }
    }
    return true;
}

bool check_distance(const distill::BlockCode& code) {
    std::vector<BitVector> words;
    for (std::uint64_t m = 0; m < (1ULL << code.k()); ++m) {
        BitVector msg;
        append_word(msg, m, static_cast<unsigned>(code.k()));
        words.push_back(code.encode(msg));
    }
    std::size_t d_min = code.n();
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = 0; j < words.size(); ++j) {
            const auto sum = xor_bits(words[i], words[j]);
            if (std::find(words.begin(), words.end(), sum) == words.end()) return false;
            if (i != j) d_min = std::min(d_min, hamming_distance(words[i], words[j]));
        }
    }
    return d_min == 2 * code.t() + (code.n() % 2 == 0 ? 2 : 1);
}

bool check_gray() {
    for (unsigned ql = 1; ql <= 8; ++ql) {
        for (std::uint32_t j = 0; j + 1 < (1u << ql); ++j) {
            if (std::popcount(quant::gray_code(j, ql) ^ quant::gray_code(j + 1, ql)) != 1) return false;
        }
    }
    return true;
}

int cmd_selftest() {
    bool all = true;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        all = all && ok;
    };
    for (const auto& id : distill::available_codes()) {
        const auto code = distill::make_block_code(id);
        report(id + " exhaustive sketch/recover", check_reconciliation(*code));
        report(id + " linearity and minimum distance", check_distance(*code));
    }
    report("gray code adjacency QL 1..8", check_gray());
    return all ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"physec: physical-layer key generation and encryption simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::string format = "json";
    std::optional<unsigned> jobs;
    auto* run = app.add_subcommand("run", "Run an experiment sweep and emit a metrics report");
    run->add_option("config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--seed", seed, "Override the master seed");
    run->add_option("--out", out, "Report path (default: stdout, or $PHYSEC_OUT_DIR/<scenario>.<format>)");
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--jobs", jobs, "Worker threads (default: $PHYSEC_JOBS or 1)")->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "Check a config and list every violation");
    validate->add_option("config", config_path, "Experiment config (JSON)")->required();

    std::string trace_path;
    std::optional<std::int64_t> tau;
    auto* stats = app.add_subcommand("trace-stats", "Summarise a recorded measurement trace");
    stats->add_option("csv", trace_path, "Trace file (timestamp_a,rss_a,timestamp_b,rss_b)")->required();
    stats->add_option("--tau", tau, "Sampling delay used for alignment (default: inferred)");

    auto* selftest = app.add_subcommand("selftest", "Run the exhaustive block-code and sketch oracles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(config_path, seed, out, format, jobs);
        if (*validate) return cmd_validate(config_path);
        if (*stats) return cmd_trace_stats(trace_path, tau);
        if (*selftest) return cmd_selftest();
    } catch (const harness::ConfigLoadError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitRuntime;
}
