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

#include "cryochan/runner.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cryochan/constants.hpp"
#include "cryochan/errors.hpp"

namespace cryochan {

namespace {

// Serialized writer per file; all numeric cells in full double precision so
// reruns are byte-comparable.
class CsvFile {
public:
    explicit CsvFile(const std::filesystem::path& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file '" + path.string() + "'");
    }
    void line(const std::string& text) { out_ << text << "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

std::string sanitize_label(const std::string& label) {
    std::string s = label;
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return s;
}

std::string format_bandwidth(double b) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", b);
    return buf;
}

std::vector<double> build_grid(const Scenario& s) {
    const double start = s.frequency_grid.start_hz.value_or(s.frequency_hz - s.cir.bandwidth_hz / 2.0);
    const double stop = s.frequency_grid.stop_hz.value_or(s.frequency_hz + s.cir.bandwidth_hz / 2.0);
    const int count = s.frequency_grid.count;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        grid.push_back(start);
        return grid;
    }
    for (int i = 0; i < count; ++i)
        grid.push_back(start + (stop - start) * double(i) / double(count - 1));
    return grid;
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

void write_paths_csv(const std::filesystem::path& file, const std::vector<PathComponent>& paths) {
    CsvFile csv(file);
    csv.line("delay_s,amp_real,amp_imag,bounces,dep_x,dep_y,dep_z,arr_x,arr_y,arr_z");
    for (const auto& p : paths) {
        csv.row({format_double(p.delay_s), format_double(p.amplitude.real()),
                 format_double(p.amplitude.imag()), std::to_string(p.bounce_count),
                 format_double(p.departure.x), format_double(p.departure.y),
                 format_double(p.departure.z), format_double(p.arrival.x),
                 format_double(p.arrival.y), format_double(p.arrival.z)});
    }
}

void write_cir_csv(const std::filesystem::path& file, const ChannelImpulseResponse& cir) {
    CsvFile csv(file);
    csv.line("# complex baseband about fc_hz; passband h(t) = Re{ h_bb(t) exp(+j 2 pi fc_hz t) }");
    csv.line("fc_hz,bandwidth_hz,dt_s");
    csv.row({format_double(cir.center_frequency_hz), format_double(cir.bandwidth_hz),
             format_double(cir.sample_interval_s)});
    csv.line("t_s,re,im");
    for (std::size_t i = 0; i < cir.samples.size(); ++i) {
        csv.row({format_double(cir.time_at(i)), format_double(cir.samples[i].real()),
                 format_double(cir.samples[i].imag())});
    }
}

void write_frequency_response_csv(const std::filesystem::path& file, const FrequencyResponse& fr) {
    CsvFile csv(file);
    csv.line("f_hz,re,im");
    for (std::size_t i = 0; i < fr.grid_hz.size(); ++i) {
        csv.row({format_double(fr.grid_hz[i]), format_double(fr.values[i].real()),
                 format_double(fr.values[i].imag())});
    }
}

void write_metrics_csv(const std::filesystem::path& file, const std::vector<LinkMetrics>& rows,
                       double p_tx_w) {
    CsvFile csv(file);
    std::ostringstream header;
    header << "link_label,distance_m,path_count,mean_delay_s,ds_rms_s,rx_energy,p_rx_dbm,"
              "coherence_bw_hz";
    if (!rows.empty()) {
        for (const auto& entry : rows.front().snr)
            header << ",snr_db_" << entry.model.describe() << "_bw" << format_bandwidth(entry.bandwidth_hz);
    }
    csv.line(header.str());
    for (const auto& m : rows) {
        std::vector<std::string> cells{
            m.label,
            format_double(m.distance_m),
            std::to_string(m.path_count),
            format_double(m.mean_delay_s),
            format_double(m.rms_delay_spread_s),
            format_double(m.received_energy),
            format_double(watts_to_dbm(received_power_w(m.received_energy, p_tx_w))),
            format_double(m.coherence_bandwidth_hz)};
        for (const auto& entry : m.snr) cells.push_back(format_double(entry.snr_db));
        csv.row(cells);
    }
}

std::uint64_t scenario_seed(const Scenario& s) {
    const std::string text = scenario_to_json(s);
    std::uint64_t hash = 1469598103934665603ull; // FNV-1a 64
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

RunResult run_scenario(const Scenario& scenario, const std::filesystem::path& output_dir,
                       const RunOverrides& overrides) {
    Scenario s = scenario;
    if (overrides.engine) s.engine = *overrides.engine;
    if (overrides.ray_count) s.tracer.ray_count = *overrides.ray_count;
    if (overrides.max_bounces) s.tracer.max_bounces = *overrides.max_bounces;

    const auto diags = validate_scenario(s);
    if (!diags.empty()) {
        std::string msg = "scenario invalid:";
        for (const auto& d : diags) msg += "\n  " + d.field + ": " + d.message;
        throw ScenarioError(msg);
    }

    const Scene scene = s.scene.build();
    const AntennaLayout layout = s.layout();
    const TraceContext ctx = s.trace_context();

    std::filesystem::create_directories(output_dir);

    RunResult result;
    result.output_dir = output_dir;

    // Trace every link. The ray engine shares one launch over all receivers.
    const auto rx_models = s.rx_antenna_models();
    std::vector<std::vector<PathComponent>> per_link(layout.rx_positions.size());
    if (s.engine == EngineKind::Rays) {
        std::vector<Vec3> rx;
        rx.reserve(layout.rx_positions.size());
        for (const auto& r : layout.rx_positions) rx.push_back(r.position);
        per_link = trace_rays_multi(scene, ctx, layout.tx_position, rx, rx_models, s.tracer);
    } else {
        for (std::size_t i = 0; i < layout.rx_positions.size(); ++i) {
            TraceContext link_ctx = ctx;
            link_ctx.rx_antenna = rx_models[i];
            per_link[i] = trace_images(scene, link_ctx, layout.tx_position,
                                       layout.rx_positions[i].position, s.max_order);
        }
    }

    std::vector<LinkMetrics> metric_rows;
    nlohmann::ordered_json manifest_links = nlohmann::ordered_json::array();

    for (std::size_t i = 0; i < layout.rx_positions.size(); ++i) {
        const auto& rx = layout.rx_positions[i];
        const auto& paths = per_link[i];
        const double dist = distance(rx.position, layout.tx_position);
        const std::string tag = sanitize_label(rx.label);

        write_paths_csv(output_dir / ("paths_" + tag + ".csv"), paths);

        ChannelImpulseResponse cir;
        cir.sample_interval_s = s.cir.sample_interval_s;
        cir.bandwidth_hz = s.cir.bandwidth_hz;
        cir.center_frequency_hz = s.frequency_hz;
        double duration = 0.0;
        if (!paths.empty()) {
            CirParams cp = s.cir;
            cp.center_frequency_hz = s.frequency_hz;
            duration = cp.duration_s > 0.0 ? cp.duration_s : minimum_cir_duration(paths, cp);
            cp.duration_s = duration;
            cir = synthesize_cir(paths, cp);
        } else {
            result.warnings.push_back("link " + rx.label + ": 0 received paths with " +
                                      std::to_string(s.tracer.ray_count) +
                                      " rays; writing empty-link marker");
        }
        write_cir_csv(output_dir / ("cir_" + tag + ".csv"), cir);

        FrequencyResponse fr;
        if (!paths.empty()) {
            const auto grid = build_grid(s);
            fr = frequency_response(strip_carrier_phase(paths, s.frequency_hz), grid);
        }
        write_frequency_response_csv(output_dir / ("hf_" + tag + ".csv"), fr);

        LinkMetrics metrics = compute_link_metrics(rx.label, dist, paths, s.p_tx_w,
                                                   s.noise_models, s.bandwidths_hz, s.metrics);
        metric_rows.push_back(metrics);

        LinkResult lr;
        lr.label = rx.label;
        lr.distance_m = dist;
        lr.path_count = paths.size();
        lr.metrics = metrics;
        lr.received = !paths.empty();
        result.links.push_back(lr);

        manifest_links.push_back(nlohmann::ordered_json{
            {"label", rx.label},
            {"rx_position", {rx.position.x, rx.position.y, rx.position.z}},
            {"distance_m", dist},
            {"path_count", paths.size()},
            {"cir_duration_s", duration},
            {"received", !paths.empty()}});
    }

    write_metrics_csv(output_dir / "metrics.csv", metric_rows, s.p_tx_w);

    nlohmann::ordered_json manifest;
    manifest["tool"] = nlohmann::ordered_json{{"name", "cryochan"}, {"version", "0.1.0"}};
    manifest["seed"] = scenario_seed(s);
    nlohmann::ordered_json ov = nlohmann::ordered_json::object();
    if (overrides.engine)
        ov["engine"] = *overrides.engine == EngineKind::Rays ? "rays" : "images";
    if (overrides.ray_count) ov["ray_count"] = *overrides.ray_count;
    if (overrides.max_bounces) ov["max_bounces"] = *overrides.max_bounces;
    manifest["overrides"] = ov;
    manifest["scenario"] = nlohmann::ordered_json::parse(scenario_to_json(s));
    manifest["links"] = manifest_links;

    std::ofstream mf(output_dir / "manifest.json", std::ios::binary);
    if (!mf) throw std::runtime_error("cannot open manifest.json for writing");
    mf << manifest.dump(2) << "\n";

    return result;
}

} // namespace cryochan
