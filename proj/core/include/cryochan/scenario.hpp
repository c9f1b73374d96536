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

#include <optional>
#include <string>
#include <vector>

#include "cryochan/metrics.hpp"
#include "cryochan/propagation.hpp"

namespace cryochan {

enum class EngineKind { Images, Rays };

/// Which geometry the scenario instantiates. Freespace is an empty scene;
/// Custom carries an explicit surface list from the config.
enum class SceneKind { Freespace, Box, Cryostat, Custom };

struct SceneSpec {
    SceneKind kind = SceneKind::Cryostat;
    CryostatParams cryostat;      // kind == Cryostat
    Vec3 box_size{0.3, 0.3, 0.3}; // kind == Box
    Material box_material = Material::pec();
    std::vector<Surface> custom_surfaces; // kind == Custom

    Scene build() const;
};

struct RxSpec {
    std::string label;
    Vec3 position;
    /// Per-receiver dipole axis; unset means the shared (co-polarized) axis.
    std::optional<Vec3> axis;
};

struct AntennaSpec {
    PatternKind pattern = PatternKind::HalfWaveDipole;
    Vec3 axis = kDefaultDipoleAxis;
    double substrate_relative_permittivity = 3.9;
    std::optional<double> explicit_length_m; // overrides the sizing estimate
    /// Explicit layout; empty TX/RX with a cryostat scene resolves to the
    /// default A/B1..B6 layout.
    std::optional<Vec3> tx_position;
    std::string tx_label = "A";
    std::vector<RxSpec> rx;
};

struct FrequencyGridSpec {
    std::optional<double> start_hz; // default f_c - bandwidth/2
    std::optional<double> stop_hz;  // default f_c + bandwidth/2
    int count = 201;
};

/// One fully described simulation run, loadable from a JSON scenario file.
struct Scenario {
    std::string name = "scenario";
    double frequency_hz = 28e9;
    double p_tx_w = 1e-6; // -30 dBm
    EngineKind engine = EngineKind::Rays;

    RayLaunchParams tracer;
    int max_order = 4; // image engine reflection order

    CirParams cir;                       // duration_s == 0 -> auto per link
    FrequencyGridSpec frequency_grid;
    std::vector<double> bandwidths_hz;   // SNR sweep
    std::vector<NoiseModel> noise_models;
    PdpOptions metrics;

    SceneSpec scene;
    AntennaSpec antennas;

    std::string output_dir; // empty -> resolved by the CLI

    /// Resolved antenna layout (explicit or cryostat default).
    AntennaLayout layout() const;
    TraceContext trace_context() const;
    /// One receive antenna model per resolved RX position, honoring
    /// per-receiver axis overrides.
    std::vector<AntennaModel> rx_antenna_models() const;
};

struct Diagnostic {
    std::string field;
    std::string message;
};

/// Parses a scenario file. Throws ScenarioError with field context on
/// malformed JSON or schema violations.
Scenario load_scenario(const std::string& path);

/// Serializes a scenario with every default materialized; the exact content
/// embedded in run manifests. The string is canonical: equal scenarios
/// produce byte-equal output.
std::string scenario_to_json(const Scenario& s);

/// Full schema + cross-module invariant check (geometry constructible,
/// antennas inside the enclosure and on the antenna plane, separations in
/// the 0.75-2.6 lambda band for cryostat layouts, tracer/cir parameter
/// ranges). Returns every violation; empty means valid.
std::vector<Diagnostic> validate_scenario(const Scenario& s);

} // namespace cryochan
