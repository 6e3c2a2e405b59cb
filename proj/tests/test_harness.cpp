// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "physec/error.hpp"
#include "physec/harness/config.hpp"
#include "physec/harness/experiment.hpp"
#include "physec/harness/report.hpp"
#include "physec/harness/trace_csv.hpp"
#include "physec/sha256.hpp"

using namespace physec;
using namespace physec::harness;

namespace {

const std::filesystem::path kData = PHYSEC_TEST_DATA;

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> violations_of(std::string_view text) {
    try {
        parse_config(text, kData);
    } catch (const ConfigLoadError& e) {
        return e.violations();
    }
    return {};
}

bool mentions(const std::vector<std::string>& v, std::string_view needle) {
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

ExperimentConfig small_config(std::string_view sweep, std::size_t trials = 20) {
    auto cfg = parse_config(R"({"sweep": )" + std::string(sweep) + R"(, "trials": )" + std::to_string(trials) +
                            R"(, "ple": {"schemes": ["xor", "phase"], "symbols_per_trial": 4}})");
    return cfg;
}

void check_rates(const MetricsReport& r) {
    for (const auto& p : r.results) {
        for (std::size_t m = 0; m < metric_names().size(); ++m) {
            const auto& s = p.metrics[m];
            if (metric_names()[m] == "key_to_data_ratio" || metric_names()[m] == "kgr" || s.count == 0) continue;
            CHECK(s.mean >= 0.0);
            CHECK(s.mean <= 1.0);
        }
    }
}

}  // namespace

TEST_CASE("minimal config loads with defaults") {
    const auto cfg = load_config(kData / "minimal.json");
    CHECK(cfg.scenario == "unnamed");
    CHECK(cfg.trials == 50);
    CHECK(cfg.seed == 1);
    CHECK(cfg.code_id == "hamming74");
    CHECK(cfg.out_len == 128);
    CHECK(cfg.quantizer.kind == QuantizerKind::mean_sigma);
    CHECK(cfg.quantizer.alpha == 0.5);
    CHECK(cfg.channel.temporal_correlation == 0.99);
    CHECK(cfg.channel.sampling_delay == 1);
    CHECK(cfg.channel.n_probes == 1024);
    CHECK(cfg.loss.loss_probability == 0.0);
    CHECK_FALSE(cfg.trace_file.has_value());
    CHECK(cfg.ple.schemes.empty());
    CHECK(cfg.ple.ofdm.data_carriers.size() == 48);
    CHECK(cfg.sweep.parameter == "snr_db");
    CHECK(cfg.sweep.values == std::vector<double>{30});
}

TEST_CASE("schema violations are collected and named") {
    CHECK(mentions(violations_of(R"({"sweep": {"snr_db": [1]}, "trials": 0})"), "trials"));
    CHECK(mentions(violations_of(R"({"sweep": {"snr_db": [1], "alpha": [0.1]}})"), "exactly one"));
    CHECK(mentions(violations_of(R"({"sweep": {}})"), "exactly one"));
    CHECK(mentions(violations_of(R"({"trials": 3})"), "sweep"));
    CHECK(mentions(violations_of(R"({"sweep": {"colour": [1]}})"), "unknown sweep parameter"));
    CHECK(mentions(violations_of(R"({"sweep": {"snr_db": []}})"), "non-empty"));

    const auto many = violations_of(R"({
        "sweep": {"snr_db": [1], "alpha": [2]}, "trials": 0, "code_id": "golay",
        "quantizer": {"algorithm": "lloyd"}, "extra": true, "channel": {"n_probes": "many"}})");
    CHECK(many.size() >= 6);
    CHECK(mentions(many, "trials"));
    CHECK(mentions(many, "code_id"));
    CHECK(mentions(many, "quantizer.algorithm"));
    CHECK(mentions(many, "extra"));
    CHECK(mentions(many, "channel.n_probes"));
}

TEST_CASE("semantic checks cover every sweep value") {
    CHECK(mentions(violations_of(R"({"sweep": {"alpha": [0.5, -1]}})"), "sweep.alpha[1]"));
    CHECK(mentions(violations_of(R"({"sweep": {"sampling_delay": [1.5]}})"), "sampling_delay"));
    CHECK(mentions(violations_of(R"({"sweep": {"temporal_correlation": [1.2]}})"), "temporal_correlation"));
    CHECK(mentions(violations_of(R"({"sweep": {"snr_db": [1]}, "ple": {"schemes": ["rot13"]}})"), "ple.schemes[0]"));
    CHECK(mentions(violations_of(R"({"sweep": {"snr_db": [1]}, "loss": {"loss_probability": 1}})"), "loss"));
}

TEST_CASE("parse errors and referenced files") {
    CHECK(mentions(violations_of("{not json"), "parse error"));
    CHECK(mentions(violations_of("[1, 2]"), "object"));
    CHECK(mentions(violations_of(R"({"sweep": {"alpha": [1]}, "channel": {"trace_file": "missing.csv"}})"),
                   "does not exist"));
    CHECK(mentions(violations_of(R"({"sweep": {"snr_db": [1]}, "channel": {"trace_file": "trace_recorded.csv"}})"),
                   "cannot be swept"));
    CHECK_THROWS_AS(load_config(kData / "no_such_config.json"), ConfigLoadError);
}

TEST_CASE("infinite snr spellings") {
    CHECK(std::isinf(parse_config(R"({"sweep": {"alpha": [1]}, "channel": {"snr_db": "inf"}})").channel.snr_db));
    CHECK(std::isinf(parse_config(R"({"sweep": {"alpha": [1]}, "channel": {"snr_db": null}})").channel.snr_db));
}

TEST_CASE("sweep parameters override the right field") {
    const auto cfg = parse_config(R"({"sweep": {"snr_db": [1]}})");
    CHECK(with_parameter(cfg, "snr_db", 7).channel.snr_db == 7);
    CHECK(with_parameter(cfg, "n_probes", 64).channel.n_probes == 64);
    CHECK(with_parameter(cfg, "loss_probability", 0.25).loss.loss_probability == 0.25);
    CHECK(with_parameter(cfg, "quantization_level", 3).quantizer.quantization_level == 3);
    CHECK(with_parameter(cfg, "ple_ebn0_db", 5).ple.ebn0_db == 5.0);
    CHECK(with_parameter(cfg, "out_len", 64).out_len == 64);
    CHECK_THROWS_AS(with_parameter(cfg, "nope", 1), ParameterError);
    CHECK_THROWS_AS(with_parameter(cfg, "n_probes", 1.5), ParameterError);
    CHECK(sweep_parameters().size() == 10);
}

TEST_CASE("trace csv parsing") {
    SECTION("three complete rows") {
        const auto t = read_trace_csv(kData / "trace_three_rows.csv");
        CHECK(t.rows == 3);
        CHECK(t.records.alice.size() == 3);
        CHECK(t.records.bob.size() == 3);
        const auto a = load_trace_csv(kData / "trace_three_rows.csv", 1);
        CHECK(a.size() == 3);
        CHECK(a.x_a == std::vector<double>{-50.25, -51.0, -49.75});
        CHECK(a.x_b == std::vector<double>{-50.5, -51.25, -49.5});
    }
    SECTION("an empty rss cell removes that round") {
        const auto a = load_trace_csv(kData / "trace_lost_probe.csv", 1);
        CHECK(a.size() == 3);
        CHECK(a.base_times == std::vector<std::int64_t>{0, 2, 3});
    }
    SECTION("non-numeric cell cites its row") {
        try {
            read_trace_csv(kData / "trace_bad_row7.csv");
            FAIL("expected a parse error");
        } catch (const ParameterError& e) {
            CHECK(std::string(e.what()).find("row 7") != std::string::npos);
        }
    }
    SECTION("structural errors") {
        CHECK_THROWS_AS(parse_trace_csv(""), ParameterError);
        CHECK_THROWS_AS(parse_trace_csv("timestamp_a,rss_a,timestamp_b,rss_b\n"), ParameterError);
        CHECK_THROWS_AS(parse_trace_csv("a,b,c,d\n1,2,3,4\n"), ParameterError);
        CHECK_THROWS_AS(parse_trace_csv("timestamp_a,rss_a,timestamp_b,rss_b\n1,2,3\n"), ParameterError);
        CHECK_THROWS_AS(parse_trace_csv("timestamp_a,rss_a,timestamp_b,rss_b\n,2,3,4\n"), ParameterError);
        CHECK_THROWS_AS(read_trace_csv(kData / "absent.csv"), ParameterError);
    }
    SECTION("lost probes on either side") {
        const auto t = parse_trace_csv("timestamp_a,rss_a,timestamp_b,rss_b\n1,0.5,0,0.25\n,,1,0.75\n3,1.5,,\n");
        CHECK(t.rows == 3);
        CHECK(t.records.alice.size() == 2);
        CHECK(t.records.bob.size() == 2);
    }
    SECTION("sampling delay inference") {
        CHECK(infer_sampling_delay(read_trace_csv(kData / "trace_recorded.csv")) == 1);
    }
}

TEST_CASE("key disagreement falls as snr rises") {
    const auto cfg = load_config(kData / "snr_sweep.json");
    const auto r = run_experiment(cfg, 4);
    REQUIRE(r.results.size() == 4);
    for (std::size_t p = 1; p < 4; ++p) {
        CHECK(r.metric(p, "kdr").mean <= r.metric(p - 1, "kdr").mean);
    }
    for (std::size_t p = 0; p < 4; ++p) {
        CHECK(r.metric(p, "eve_kdr").mean >= r.metric(p, "kdr").mean);
        CHECK(r.metric(p, "kdr").count == 50);
    }
    CHECK(r.metric(3, "key_agreement_rate").mean >= 0.95);
    CHECK(r.metric(0, "key_agreement_rate").mean < r.metric(3, "key_agreement_rate").mean);
    CHECK(r.metric(3, "kgr").mean == Catch::Approx(r.metric(3, "key_agreement_rate").mean * 128.0 / 1024.0));
    // xor 96 + phase 96 + frequency scrambling 256 keystream bits per 96 payload bits
    CHECK(r.metric(3, "key_to_data_ratio").mean == Catch::Approx((96.0 + 96.0 + 256.0) / 96.0));
    CHECK(r.metric(3, "eve_ber").mean > 0.4);
    check_rates(r);
}

TEST_CASE("eve stays worse than bob across her correlation") {
    auto cfg = small_config(R"({"eve_correlation": [0.0, 0.25, 0.5]})", 50);
    const auto r = run_experiment(cfg, 4);
    for (std::size_t p = 0; p < r.results.size(); ++p) {
        CHECK(r.metric(p, "eve_kdr").mean >= r.metric(p, "kdr").mean);
    }
}

TEST_CASE("noiseless zero-delay channel always agrees") {
    auto cfg = parse_config(R"({"channel": {"snr_db": "inf"}, "sweep": {"sampling_delay": [0]}, "trials": 20})");
    const auto r = run_experiment(cfg);
    CHECK(r.metric(0, "key_agreement_rate").mean == 1.0);
    CHECK(r.metric(0, "kdr").mean == 0.0);
    CHECK(r.metric(0, "reconcile_failure_rate").mean == 0.0);
}

TEST_CASE("reports are deterministic and independent of parallelism") {
    const auto cfg = small_config(R"({"snr_db": [5, 25]})", 16);
    const auto a = render_report(run_experiment(cfg, 1), ReportFormat::json);
    const auto b = render_report(run_experiment(cfg, 1), ReportFormat::json);
    const auto c = render_report(run_experiment(cfg, 7), ReportFormat::json);
    CHECK(a == b);
    CHECK(a == c);
    auto reseeded = cfg;
    reseeded.seed = 99;
    CHECK(render_report(run_experiment(reseeded, 1), ReportFormat::json) != a);
}

TEST_CASE("per-trial failures are data") {
    SECTION("too few samples for the requested key") {
        auto cfg = small_config(R"({"n_probes": [64]})", 5);
        const auto r = run_experiment(cfg);
        CHECK(r.results[0].trial_errors == 0);
        CHECK(r.metric(0, "reconcile_failure_rate").mean == 1.0);
        CHECK(r.metric(0, "key_agreement_rate").mean == 0.0);
    }
    SECTION("a degenerate quantizer input") {
        auto cfg = parse_config(R"({"quantizer": {"algorithm": "cdf", "quantization_level": 3},
                                    "sweep": {"n_probes": [4]}, "trials": 3})");
        const auto r = run_experiment(cfg);
        CHECK(r.results[0].trial_errors == 3);
        REQUIRE_FALSE(r.results[0].error_messages.empty());
        CHECK(r.metric(0, "reconcile_failure_rate").mean == 1.0);
        CHECK(std::isnan(r.metric(0, "kdr").mean));
        CHECK(r.metric(0, "kdr").count == 0);
    }
}

TEST_CASE("cdf quantizer and other codes run end to end") {
    auto cfg = parse_config(R"({"quantizer": {"algorithm": "cdf"}, "code_id": "hamming84",
                                "channel": {"snr_db": 40}, "sweep": {"quantization_level": [1, 2]}, "trials": 10})");
    const auto r = run_experiment(cfg, 2);
    CHECK(r.results.size() == 2);
    CHECK(r.metric(0, "kdr").count == 10);
    CHECK(r.metric(1, "kdr").mean >= r.metric(0, "kdr").mean);
    check_rates(r);
}

TEST_CASE("recorded traces replay through the pipeline") {
    const auto cfg = load_config(kData / "recorded_trace.json");
    REQUIRE(cfg.trace_file.has_value());
    const auto r = run_experiment(cfg, 2);
    REQUIRE(r.results.size() == 3);
    for (std::size_t p = 0; p < 3; ++p) {
        CHECK(r.results[p].trial_errors == 0);
        CHECK(r.metric(p, "eve_kdr").count == 0);
        CHECK(r.metric(p, "kdr").count == 5);
    }
    CHECK(r.metric(0, "key_agreement_rate").mean == 1.0);
}

TEST_CASE("report round trips and shapes") {
    const auto path = kData / "snr_sweep.json";
    auto cfg = load_config(path);
    cfg.trials = 4;
    const auto report = run_experiment(cfg, 2);
    SECTION("json reload") {
        const auto doc = report_to_json(report);
        for (auto key : {"config", "config_hash", "seed", "results"}) CHECK(doc.contains(key));
        const auto back = report_from_json(nlohmann::json::parse(render_report(report, ReportFormat::json)));
        CHECK(report_to_json(back) == doc);
        CHECK(back.results.size() == report.results.size());
        CHECK(back.results[1].metrics == report.results[1].metrics);
    }
    SECTION("csv shape") {
        const auto csv = report_to_csv(report);
        const auto lines = std::count(csv.begin(), csv.end(), '\n');
        CHECK(lines == static_cast<long>(report.results.size() * metric_names().size() + 1));
        CHECK(csv.starts_with("scenario,sweep_parameter,sweep_value,metric,mean,stderr,n\n"));
    }
    SECTION("config hash is the hash of the file bytes") {
        CHECK(report.config_hash == to_hex(sha256(read_file(path))));
        CHECK(report.seed == 2024);
    }
    SECTION("written reports match the rendering") {
        const auto out = std::filesystem::temp_directory_path() / "physec_report_test" / "r.csv";
        emit_report(report, ReportFormat::csv, out);
        CHECK(read_file(out) == report_to_csv(report));
        std::filesystem::remove_all(out.parent_path());
    }
    CHECK(parse_format("csv") == ReportFormat::csv);
    CHECK_THROWS_AS(parse_format("xml"), ParameterError);
    CHECK_THROWS_AS(report.metric(0, "nope"), ParameterError);
}
