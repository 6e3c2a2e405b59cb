// SPDX-License-Identifier: Apache-2.0
//
// physec: physical-layer key generation and encryption simulator
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "physec/harness/experiment.hpp"

namespace physec::harness {

enum class ReportFormat { json, csv };

ReportFormat parse_format(std::string_view name);

// JSON: {"config", "config_hash", "seed", "scenario", "sweep_parameter", "results": [...]}.
nlohmann::json report_to_json(const MetricsReport& report);
MetricsReport report_from_json(const nlohmann::json& doc);

// Columns: scenario,sweep_parameter,sweep_value,metric,mean,stderr,n; one row
// per (sweep value, metric), metrics in metric_names() order.
std::string report_to_csv(const MetricsReport& report);

std::string render_report(const MetricsReport& report, ReportFormat format);
// Throws std::runtime_error on I/O failure.
void emit_report(const MetricsReport& report, ReportFormat format, const std::filesystem::path& path);

}  // namespace physec::harness
