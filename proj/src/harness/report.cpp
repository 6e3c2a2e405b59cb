// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#include "physec/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace physec::harness {

using nlohmann::json;

namespace {

constexpr int kReportVersion = 1;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

ReportFormat parse_format(std::string_view name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    throw ParameterError("unknown report format '" + std::string(name) + "' (expected json or csv)");
}

json report_to_json(const MetricsReport& report) {
    const auto& names = metric_names();
    json results = json::array();
    for (const auto& p : report.results) {
        json metrics = json::object();
        for (std::size_t m = 0; m < names.size(); ++m) {
            const auto& s = p.metrics.at(m);
            metrics[names[m]] = {{"mean", number_or_null(s.mean)},
                                 {"stderr", number_or_null(s.std_error)},
                                 {"n", s.count}};
        }
        results.push_back({{"sweep_value", number_or_null(p.sweep_value)},
                           {"trials", p.trials},
                           {"trial_errors", p.trial_errors},
                           {"error_messages", p.error_messages},
                           {"metrics", metrics}});
    }
    return {{"report_version", kReportVersion},
            {"scenario", report.scenario},
            {"config", report.config},
            {"config_hash", report.config_hash},
            {"seed", report.seed},
            {"sweep_parameter", report.sweep_parameter},
            {"metric_names", names},
            {"results", results}};
}

MetricsReport report_from_json(const json& doc) {
    try {
        MetricsReport r;
        r.config = doc.at("config");
        r.config_hash = doc.at("config_hash").get<std::string>();
        r.seed = doc.at("seed").get<std::uint64_t>();
        r.scenario = doc.at("scenario").get<std::string>();
        r.sweep_parameter = doc.at("sweep_parameter").get<std::string>();
        for (const auto& p : doc.at("results")) {
            PointResult pr;
            pr.sweep_value = number_from(p.at("sweep_value"));
            pr.trials = p.at("trials").get<std::size_t>();
            pr.trial_errors = p.at("trial_errors").get<std::size_t>();
            pr.error_messages = p.at("error_messages").get<std::vector<std::string>>();
            const auto& metrics = p.at("metrics");
            for (const auto& name : metric_names()) {
                const auto& m = metrics.at(name);
                pr.metrics.push_back({number_from(m.at("mean")), number_from(m.at("stderr")),
                                      m.at("n").get<std::size_t>()});
            }
            r.results.push_back(std::move(pr));
        }
        return r;
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed report: ") + e.what());
    }
}

std::string report_to_csv(const MetricsReport& report) {
    std::string out = "scenario,sweep_parameter,sweep_value,metric,mean,stderr,n\n";
    const auto& names = metric_names();
    for (const auto& p : report.results) {
        for (std::size_t m = 0; m < names.size(); ++m) {
            const auto& s = p.metrics.at(m);
            out += csv_cell(report.scenario) + ',' + csv_cell(report.sweep_parameter) + ',' +
                   format_double(p.sweep_value) + ',' + names[m] + ',' + format_double(s.mean) + ',' +
                   format_double(s.std_error) + ',' + std::to_string(s.count) + '\n';
        }
    }
    return out;
}

std::string render_report(const MetricsReport& report, ReportFormat format) {
    if (format == ReportFormat::csv) {
        return report_to_csv(report);
    }
    return report_to_json(report).dump(2) + "\n";
}

void emit_report(const MetricsReport& report, ReportFormat format, const std::filesystem::path& path) {
    const auto text = render_report(report, format);
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

}  // namespace physec::harness
