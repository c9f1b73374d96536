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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cryochan/errors.hpp"
#include "cryochan/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

std::filesystem::path resolve_output_dir(const std::string& flag_dir,
                                         const cryochan::Scenario& scenario) {
    if (!flag_dir.empty()) return flag_dir;
    if (!scenario.output_dir.empty()) return scenario.output_dir;
    if (const char* env = std::getenv("CRYOCHAN_OUT")) {
        if (*env) return std::filesystem::path(env) / scenario.name;
    }
    return std::filesystem::path(scenario.name + "_out");
}

int cmd_run(const std::string& file, const std::string& out_dir, const std::string& engine,
            long rays, int bounces) {
    cryochan::Scenario scenario;
    try {
        scenario = cryochan::load_scenario(file);
    } catch (const cryochan::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    cryochan::RunOverrides overrides;
    if (engine == "rays") overrides.engine = cryochan::EngineKind::Rays;
    else if (engine == "images") overrides.engine = cryochan::EngineKind::Images;
    if (rays > 0) overrides.ray_count = rays;
    if (bounces >= 0) overrides.max_bounces = bounces;

    const auto out = resolve_output_dir(out_dir, scenario);
    try {
        const auto result = cryochan::run_scenario(scenario, out, overrides);
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
        for (const auto& link : result.links) {
            std::cout << link.label << ": " << link.path_count << " paths";
            if (link.received) {
                std::cout << ", ds_rms = " << link.metrics.rms_delay_spread_s * 1e9 << " ns"
                          << ", rx_energy = " << link.metrics.received_energy;
            } else {
                std::cout << " (empty link)";
            }
            std::cout << "\n";
        }
        std::cout << "artifacts written to " << result.output_dir.string() << "\n";
        return kExitOk;
    } catch (const cryochan::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const cryochan::SceneConstructionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_validate(const std::string& file) {
    try {
        const auto scenario = cryochan::load_scenario(file);
        const auto diags = cryochan::validate_scenario(scenario);
        for (const auto& d : diags) std::cout << d.field << ": " << d.message << "\n";
        if (diags.empty()) {
            std::cout << "ok: " << file << " is valid\n";
            return kExitOk;
        }
        return kExitValidation;
    } catch (const cryochan::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

int cmd_describe(const std::string& file) {
    try {
        const auto scenario = cryochan::load_scenario(file);
        const auto scene = scenario.scene.build();
        const auto layout = scenario.layout();
        const auto ctx = scenario.trace_context();

        std::cout << "scenario: " << scenario.name << "\n"
                  << "frequency: " << scenario.frequency_hz / 1e9 << " GHz, p_tx "
                  << scenario.p_tx_w << " W\n"
                  << "engine: " << (scenario.engine == cryochan::EngineKind::Rays ? "rays" : "images")
                  << "\n\n";

        const auto& design = ctx.tx_antenna.design;
        std::cout << "dipole design: lambda0 = " << design.free_space_wavelength_m * 1e3
                  << " mm, eps_eff = " << design.effective_permittivity
                  << ", estimated length = " << design.estimated_length_m * 1e3 << " mm";
        if (design.optimized_length_m)
            std::cout << ", optimized length = " << *design.optimized_length_m * 1e3 << " mm ("
                      << design.optimized_length_note << ")";
        std::cout << "\n\n";

        std::cout << "TX " << scenario.antennas.tx_label << " at (" << layout.tx_position.x << ", "
                  << layout.tx_position.y << ", " << layout.tx_position.z << ")\n";
        for (const auto& r : layout.rx_positions)
            std::cout << "RX " << r.label << " at (" << r.position.x << ", " << r.position.y
                      << ", " << r.position.z << "), distance "
                      << cryochan::distance(r.position, layout.tx_position) << " m\n";
        std::cout << "\nscene: " << scene.describe();
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cryochan - geometric multipath channel simulator for cryostat enclosures"};
    app.require_subcommand(1);

    std::string file, out_dir, engine;
    long rays = 0;
    int bounces = -1;

    auto* run = app.add_subcommand("run", "trace a scenario and write CSV artifacts");
    run->add_option("file", file, "scenario file (JSON)")->required();
    run->add_option("--out", out_dir, "output directory (default: scenario/env CRYOCHAN_OUT)");
    run->add_option("--engine", engine, "override the engine: images|rays")
        ->check(CLI::IsMember({"images", "rays"}));
    run->add_option("--rays", rays, "override tracer.ray_count");
    run->add_option("--bounces", bounces, "override tracer.max_bounces");

    auto* validate = app.add_subcommand("validate", "check a scenario file, list violations");
    validate->add_option("file", file, "scenario file (JSON)")->required();

    auto* describe = app.add_subcommand("describe", "dump the resolved scene and antenna layout");
    describe->add_option("file", file, "scenario file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (run->parsed()) return cmd_run(file, out_dir, engine, rays, bounces);
    if (validate->parsed()) return cmd_validate(file);
    return cmd_describe(file);
}
