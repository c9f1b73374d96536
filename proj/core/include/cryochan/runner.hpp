// SPDX-License-Identifier: Apache-2.0
//
// cryochan - geometric multipath channel simulation for metallic enclosures
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cryochan/scenario.hpp"

namespace cryochan {

/// CLI-level overrides of scenario values; every applied override is
/// recorded in the run manifest.
struct RunOverrides {
    std::optional<EngineKind> engine;
    std::optional<long> ray_count;
    std::optional<int> max_bounces;
};

struct LinkResult {
    std::string label;
    double distance_m = 0.0;
    std::size_t path_count = 0;
    LinkMetrics metrics;
    bool received = false; // false marks an empty link
};

struct RunResult {
    std::vector<LinkResult> links;
    std::vector<std::string> warnings;
    std::filesystem::path output_dir;
};

/// Executes a scenario end to end: trace every TX-RX link, synthesize CIRs,
/// evaluate metrics, and write the artifact set into output_dir:
///   paths_<label>.csv, cir_<label>.csv, hf_<label>.csv, metrics.csv,
///   manifest.json.
/// Output is deterministic: identical inputs produce byte-identical files.
/// A link with zero received paths produces a warning and an empty-link
/// marker row instead of failing.
RunResult run_scenario(const Scenario& scenario, const std::filesystem::path& output_dir,
                       const RunOverrides& overrides = {});

/// FNV-1a hash of the resolved scenario serialization; recorded in the
/// manifest as the run seed / fingerprint.
std::uint64_t scenario_seed(const Scenario& s);

// Formatting helpers shared by every exporter: full double precision,
// scientific notation, '.' separator, LF line endings.
std::string format_double(double v);
void write_paths_csv(const std::filesystem::path& file, const std::vector<PathComponent>& paths);
void write_cir_csv(const std::filesystem::path& file, const ChannelImpulseResponse& cir);
void write_frequency_response_csv(const std::filesystem::path& file, const FrequencyResponse& fr);
void write_metrics_csv(const std::filesystem::path& file, const std::vector<LinkMetrics>& rows,
                       double p_tx_w);

} // namespace cryochan
