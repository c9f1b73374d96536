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

#include "cryochan/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cryochan/constants.hpp"
#include "cryochan/errors.hpp"

namespace cryochan {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw ScenarioError(field + ": " + message);
}

void expect_object(const json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "expected an object");
}

void check_keys(const json& j, const std::string& field, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) { known = true; break; }
        if (!known) fail(field + "." + key, "unknown field");
    }
}

double get_number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    return j.get<double>();
}

double opt_number(const json& j, const std::string& field, const char* key, double fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    return get_number(j.at(key), field + "." + key);
}

long opt_integer(const json& j, const std::string& field, const char* key, long fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(field + "." + key, "expected an integer");
    return v.get<long>();
}

bool opt_bool(const json& j, const std::string& field, const char* key, bool fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) fail(field + "." + key, "expected a boolean");
    return v.get<bool>();
}

std::string opt_string(const json& j, const std::string& field, const char* key,
                       const std::string& fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) fail(field + "." + key, "expected a string");
    return v.get<std::string>();
}

std::optional<double> opt_number_or_null(const json& j, const std::string& field, const char* key,
                                         std::optional<double> fallback) {
    if (!j.contains(key)) return fallback;
    if (j.at(key).is_null()) return std::nullopt;
    return get_number(j.at(key), field + "." + key);
}

Vec3 parse_vec3(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3) fail(field, "expected an array of 3 numbers");
    return {get_number(j[0], field + "[0]"), get_number(j[1], field + "[1]"),
            get_number(j[2], field + "[2]")};
}

Material parse_material(const json& j, const std::string& field) {
    expect_object(j, field);
    if (j.contains("preset")) {
        check_keys(j, field, {"preset"});
        const std::string name = j.at("preset").get<std::string>();
        auto m = Material::preset(name);
        if (!m) fail(field + ".preset", "unknown material preset '" + name + "'");
        return *m;
    }
    check_keys(j, field,
               {"name", "relative_permittivity", "conductivity_s_per_m", "temperature_k",
                "perfect_conductor"});
    Material m;
    m.name = opt_string(j, field, "name", "unnamed");
    m.relative_permittivity = opt_number(j, field, "relative_permittivity", 1.0);
    m.conductivity_s_per_m = opt_number(j, field, "conductivity_s_per_m", 0.0);
    m.temperature_k = opt_number(j, field, "temperature_k", 4.0);
    m.perfect_conductor = opt_bool(j, field, "perfect_conductor", false);
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        fail(field, e.what());
    }
    return m;
}

ordered_json material_to_json(const Material& m) {
    return ordered_json{{"name", m.name},
                        {"relative_permittivity", m.relative_permittivity},
                        {"conductivity_s_per_m", m.conductivity_s_per_m},
                        {"temperature_k", m.temperature_k},
                        {"perfect_conductor", m.perfect_conductor}};
}

Shape parse_shape(const json& j, const std::string& field) {
    expect_object(j, field);
    const std::string type = opt_string(j, field, "type", "");
    if (type == "cylinder") {
        check_keys(j, field, {"type", "axis_point", "axis_dir", "radius", "span_min", "span_max"});
        CylinderShell c;
        c.axis_point = parse_vec3(j.at("axis_point"), field + ".axis_point");
        c.axis_dir = normalized(parse_vec3(j.at("axis_dir"), field + ".axis_dir"));
        c.radius = get_number(j.at("radius"), field + ".radius");
        c.span_min = get_number(j.at("span_min"), field + ".span_min");
        c.span_max = get_number(j.at("span_max"), field + ".span_max");
        return c;
    }
    if (type == "disc") {
        check_keys(j, field, {"type", "center", "normal", "outer_radius", "aperture_radius"});
        Disc d;
        d.center = parse_vec3(j.at("center"), field + ".center");
        d.normal = normalized(parse_vec3(j.at("normal"), field + ".normal"));
        d.outer_radius = get_number(j.at("outer_radius"), field + ".outer_radius");
        d.aperture_radius = opt_number(j, field, "aperture_radius", 0.0);
        return d;
    }
    if (type == "rect") {
        check_keys(j, field, {"type", "corner", "edge_u", "edge_v"});
        Rectangle r;
        r.corner = parse_vec3(j.at("corner"), field + ".corner");
        r.edge_u = parse_vec3(j.at("edge_u"), field + ".edge_u");
        r.edge_v = parse_vec3(j.at("edge_v"), field + ".edge_v");
        return r;
    }
    fail(field + ".type", "expected 'cylinder', 'disc' or 'rect'");
}

ordered_json vec3_to_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

ordered_json shape_to_json(const Shape& shape) {
    return std::visit(
        [](const auto& s) -> ordered_json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CylinderShell>) {
                return ordered_json{{"type", "cylinder"},
                                    {"axis_point", vec3_to_json(s.axis_point)},
                                    {"axis_dir", vec3_to_json(s.axis_dir)},
                                    {"radius", s.radius},
                                    {"span_min", s.span_min},
                                    {"span_max", s.span_max}};
            } else if constexpr (std::is_same_v<T, Disc>) {
                return ordered_json{{"type", "disc"},
                                    {"center", vec3_to_json(s.center)},
                                    {"normal", vec3_to_json(s.normal)},
                                    {"outer_radius", s.outer_radius},
                                    {"aperture_radius", s.aperture_radius}};
            } else {
                return ordered_json{{"type", "rect"},
                                    {"corner", vec3_to_json(s.corner)},
                                    {"edge_u", vec3_to_json(s.edge_u)},
                                    {"edge_v", vec3_to_json(s.edge_v)}};
            }
        },
        shape);
}

CryostatParams parse_cryostat(const json& j, const std::string& field) {
    CryostatParams p;
    check_keys(j, field,
               {"kind", "shell_radius_m", "height_m", "top_plate_z_m", "plate_separations_m",
                "plate_outer_radius_m", "plate_aperture_radius_m", "tube_radius_m",
                "antenna_plane_z_m", "antenna_plane_offset_m", "include_pcb", "pcb_size_x_m",
                "pcb_size_y_m", "pcb_center_x_m", "pcb_center_y_m", "pcb_standoff_m", "materials"});
    p.shell_radius_m = opt_number(j, field, "shell_radius_m", p.shell_radius_m);
    p.height_m = opt_number(j, field, "height_m", p.height_m);
    p.top_plate_z_m = opt_number_or_null(j, field, "top_plate_z_m", p.top_plate_z_m);
    if (j.contains("plate_separations_m")) {
        const json& seps = j.at("plate_separations_m");
        if (!seps.is_array()) fail(field + ".plate_separations_m", "expected an array");
        p.plate_separations_m.clear();
        for (std::size_t i = 0; i < seps.size(); ++i)
            p.plate_separations_m.push_back(
                get_number(seps[i], field + ".plate_separations_m[" + std::to_string(i) + "]"));
    }
    p.plate_outer_radius_m = opt_number(j, field, "plate_outer_radius_m", p.plate_outer_radius_m);
    p.plate_aperture_radius_m =
        opt_number(j, field, "plate_aperture_radius_m", p.plate_aperture_radius_m);
    p.tube_radius_m = opt_number(j, field, "tube_radius_m", p.tube_radius_m);
    p.antenna_plane_z_m = opt_number_or_null(j, field, "antenna_plane_z_m", p.antenna_plane_z_m);
    p.antenna_plane_offset_m =
        opt_number(j, field, "antenna_plane_offset_m", p.antenna_plane_offset_m);
    p.include_pcb = opt_bool(j, field, "include_pcb", p.include_pcb);
    p.pcb_size_x_m = opt_number(j, field, "pcb_size_x_m", p.pcb_size_x_m);
    p.pcb_size_y_m = opt_number(j, field, "pcb_size_y_m", p.pcb_size_y_m);
    p.pcb_center_x_m = opt_number(j, field, "pcb_center_x_m", p.pcb_center_x_m);
    p.pcb_center_y_m = opt_number(j, field, "pcb_center_y_m", p.pcb_center_y_m);
    p.pcb_standoff_m = opt_number(j, field, "pcb_standoff_m", p.pcb_standoff_m);
    if (j.contains("materials")) {
        const json& mats = j.at("materials");
        expect_object(mats, field + ".materials");
        check_keys(mats, field + ".materials", {"shield", "plate", "tube", "pcb"});
        if (mats.contains("shield"))
            p.shield_material = parse_material(mats.at("shield"), field + ".materials.shield");
        if (mats.contains("plate"))
            p.plate_material = parse_material(mats.at("plate"), field + ".materials.plate");
        if (mats.contains("tube"))
            p.tube_material = parse_material(mats.at("tube"), field + ".materials.tube");
        if (mats.contains("pcb"))
            p.pcb_material = parse_material(mats.at("pcb"), field + ".materials.pcb");
    }
    return p;
}

SceneSpec parse_scene(const json& j, const std::string& field) {
    expect_object(j, field);
    SceneSpec spec;
    const std::string kind = opt_string(j, field, "kind", "cryostat");
    if (kind == "freespace") {
        check_keys(j, field, {"kind"});
        spec.kind = SceneKind::Freespace;
    } else if (kind == "box") {
        check_keys(j, field, {"kind", "size_m", "material"});
        spec.kind = SceneKind::Box;
        if (j.contains("size_m")) spec.box_size = parse_vec3(j.at("size_m"), field + ".size_m");
        if (j.contains("material"))
            spec.box_material = parse_material(j.at("material"), field + ".material");
    } else if (kind == "cryostat") {
        spec.kind = SceneKind::Cryostat;
        spec.cryostat = parse_cryostat(j, field);
    } else if (kind == "custom") {
        check_keys(j, field, {"kind", "surfaces"});
        spec.kind = SceneKind::Custom;
        if (!j.contains("surfaces") || !j.at("surfaces").is_array())
            fail(field + ".surfaces", "expected an array of surfaces");
        const json& surfaces = j.at("surfaces");
        for (std::size_t i = 0; i < surfaces.size(); ++i) {
            const std::string sfield = field + ".surfaces[" + std::to_string(i) + "]";
            const json& sj = surfaces[i];
            expect_object(sj, sfield);
            check_keys(sj, sfield, {"label", "material", "shape"});
            Surface s;
            s.label = opt_string(sj, sfield, "label", "surface_" + std::to_string(i));
            if (!sj.contains("shape")) fail(sfield + ".shape", "required");
            s.shape = parse_shape(sj.at("shape"), sfield + ".shape");
            s.material = sj.contains("material")
                             ? parse_material(sj.at("material"), sfield + ".material")
                             : Material::pec();
            spec.custom_surfaces.push_back(std::move(s));
        }
    } else {
        fail(field + ".kind", "expected 'freespace', 'box', 'cryostat' or 'custom'");
    }
    return spec;
}

AntennaSpec parse_antennas(const json& j, const std::string& field) {
    expect_object(j, field);
    check_keys(j, field,
               {"pattern", "axis", "substrate_relative_permittivity", "explicit_length_m", "tx",
                "rx"});
    AntennaSpec a;
    const std::string pattern = opt_string(j, field, "pattern", "half_wave_dipole");
    if (pattern == "isotropic") a.pattern = PatternKind::Isotropic;
    else if (pattern == "half_wave_dipole") a.pattern = PatternKind::HalfWaveDipole;
    else fail(field + ".pattern", "expected 'isotropic' or 'half_wave_dipole'");
    if (j.contains("axis")) a.axis = parse_vec3(j.at("axis"), field + ".axis");
    a.substrate_relative_permittivity =
        opt_number(j, field, "substrate_relative_permittivity", a.substrate_relative_permittivity);
    a.explicit_length_m = opt_number_or_null(j, field, "explicit_length_m", a.explicit_length_m);
    if (j.contains("tx") && !j.at("tx").is_null()) {
        const json& tx = j.at("tx");
        expect_object(tx, field + ".tx");
        check_keys(tx, field + ".tx", {"label", "position"});
        if (!tx.contains("position")) fail(field + ".tx.position", "required");
        a.tx_position = parse_vec3(tx.at("position"), field + ".tx.position");
        a.tx_label = opt_string(tx, field + ".tx", "label", "A");
    }
    if (j.contains("rx") && !j.at("rx").is_null()) {
        const json& rx = j.at("rx");
        if (!rx.is_array()) fail(field + ".rx", "expected an array");
        for (std::size_t i = 0; i < rx.size(); ++i) {
            const std::string rfield = field + ".rx[" + std::to_string(i) + "]";
            expect_object(rx[i], rfield);
            check_keys(rx[i], rfield, {"label", "position", "axis"});
            if (!rx[i].contains("position")) fail(rfield + ".position", "required");
            RxSpec spec;
            spec.label = opt_string(rx[i], rfield, "label", "B" + std::to_string(i + 1));
            spec.position = parse_vec3(rx[i].at("position"), rfield + ".position");
            if (rx[i].contains("axis") && !rx[i].at("axis").is_null())
                spec.axis = parse_vec3(rx[i].at("axis"), rfield + ".axis");
            a.rx.push_back(std::move(spec));
        }
    }
    return a;
}

} // namespace

Scene SceneSpec::build() const {
    switch (kind) {
    case SceneKind::Freespace:
        return Scene{};
    case SceneKind::Box:
        return build_box_scene(box_size, box_material);
    case SceneKind::Cryostat:
        return build_cryostat_scene(cryostat);
    case SceneKind::Custom: {
        Scene s;
        s.surfaces = custom_surfaces;
        for (const Surface& surf : s.surfaces) surf.material.validate();
        return s;
    }
    }
    throw ScenarioError("scene.kind: invalid");
}

AntennaLayout Scenario::layout() const {
    const bool has_tx = antennas.tx_position.has_value();
    const bool has_rx = !antennas.rx.empty();
    if (has_tx != has_rx)
        throw ScenarioError("antennas: tx and rx must be given together (or both omitted for the "
                            "cryostat default layout)");
    AntennaLayout l;
    if (has_tx) {
        l.tx_position = *antennas.tx_position;
        for (const RxSpec& r : antennas.rx) l.rx_positions.push_back({r.label, r.position});
    } else {
        if (scene.kind != SceneKind::Cryostat)
            throw ScenarioError("antennas.tx/antennas.rx: required for non-cryostat scenes");
        l = default_cryostat_layout(scene.cryostat, frequency_hz);
    }
    l.orientation = normalized(antennas.axis);
    return l;
}

TraceContext Scenario::trace_context() const {
    DipoleDesign design = design_dipole(frequency_hz, antennas.substrate_relative_permittivity);
    if (antennas.explicit_length_m) {
        design.optimized_length_m = antennas.explicit_length_m;
        design.optimized_length_note = "explicit length from scenario config (externally optimized)";
    }
    const Vec3 axis = normalized(antennas.axis);
    const AntennaModel model = antennas.pattern == PatternKind::Isotropic
                                   ? AntennaModel::isotropic(design)
                                   : AntennaModel::half_wave_dipole(design, axis);
    return {frequency_hz, model, model};
}

std::vector<AntennaModel> Scenario::rx_antenna_models() const {
    const TraceContext ctx = trace_context();
    const AntennaLayout l = layout();
    std::vector<AntennaModel> models;
    models.reserve(l.rx_positions.size());
    for (std::size_t i = 0; i < l.rx_positions.size(); ++i) {
        AntennaModel m = ctx.rx_antenna;
        if (i < antennas.rx.size() && antennas.rx[i].axis)
            m.axis = normalized(*antennas.rx[i].axis);
        models.push_back(m);
    }
    return models;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioError("parse error in '" + path + "': " + e.what());
    }

    expect_object(j, "scenario");
    check_keys(j, "scenario",
               {"name", "frequency_hz", "p_tx_w", "engine", "tracer", "cir", "frequency_grid",
                "bandwidths_hz", "noise_models", "metrics", "scene", "antennas", "output_dir"});

    Scenario s;
    s.name = opt_string(j, "scenario", "name", "scenario");
    s.frequency_hz = opt_number(j, "scenario", "frequency_hz", s.frequency_hz);
    s.p_tx_w = opt_number(j, "scenario", "p_tx_w", s.p_tx_w);

    const std::string engine = opt_string(j, "scenario", "engine", "rays");
    if (engine == "rays") s.engine = EngineKind::Rays;
    else if (engine == "images") s.engine = EngineKind::Images;
    else fail("engine", "expected 'rays' or 'images'");

    if (j.contains("tracer")) {
        const json& t = j.at("tracer");
        expect_object(t, "tracer");
        check_keys(t, "tracer", {"ray_count", "max_bounces", "rx_radius_m", "max_order"});
        s.tracer.ray_count = opt_integer(t, "tracer", "ray_count", s.tracer.ray_count);
        s.tracer.max_bounces =
            static_cast<int>(opt_integer(t, "tracer", "max_bounces", s.tracer.max_bounces));
        s.tracer.rx_radius_m = opt_number_or_null(t, "tracer", "rx_radius_m", std::nullopt)
                                   .value_or(0.0);
        s.max_order = static_cast<int>(opt_integer(t, "tracer", "max_order", s.max_order));
    }

    s.cir.center_frequency_hz = s.frequency_hz;
    if (j.contains("cir")) {
        const json& c = j.at("cir");
        expect_object(c, "cir");
        check_keys(c, "cir", {"bandwidth_hz", "duration_s", "sample_interval_s", "pulse"});
        s.cir.bandwidth_hz = opt_number(c, "cir", "bandwidth_hz", s.cir.bandwidth_hz);
        s.cir.duration_s = opt_number_or_null(c, "cir", "duration_s", std::nullopt).value_or(0.0);
        s.cir.sample_interval_s =
            opt_number(c, "cir", "sample_interval_s", s.cir.sample_interval_s);
        const std::string pulse = opt_string(c, "cir", "pulse", "rrc");
        if (pulse == "rrc") s.cir.pulse = PulseShape::RootRaisedCosine;
        else if (pulse == "gaussian") s.cir.pulse = PulseShape::Gaussian;
        else fail("cir.pulse", "expected 'rrc' or 'gaussian'");
    }

    if (j.contains("frequency_grid")) {
        const json& g = j.at("frequency_grid");
        expect_object(g, "frequency_grid");
        check_keys(g, "frequency_grid", {"start_hz", "stop_hz", "count"});
        s.frequency_grid.start_hz = opt_number_or_null(g, "frequency_grid", "start_hz", std::nullopt);
        s.frequency_grid.stop_hz = opt_number_or_null(g, "frequency_grid", "stop_hz", std::nullopt);
        s.frequency_grid.count =
            static_cast<int>(opt_integer(g, "frequency_grid", "count", s.frequency_grid.count));
    }

    if (j.contains("bandwidths_hz")) {
        const json& b = j.at("bandwidths_hz");
        if (!b.is_array()) fail("bandwidths_hz", "expected an array");
        s.bandwidths_hz.clear();
        for (std::size_t i = 0; i < b.size(); ++i)
            s.bandwidths_hz.push_back(get_number(b[i], "bandwidths_hz[" + std::to_string(i) + "]"));
    } else {
        s.bandwidths_hz = {1e8, 2.5e8, 5e8, 1e9, 2.5e9, 5e9, 1e10};
    }

    if (j.contains("noise_models")) {
        const json& nm = j.at("noise_models");
        if (!nm.is_array()) fail("noise_models", "expected an array");
        for (std::size_t i = 0; i < nm.size(); ++i) {
            const std::string nfield = "noise_models[" + std::to_string(i) + "]";
            expect_object(nm[i], nfield);
            check_keys(nm[i], nfield, {"kind", "temperature_k"});
            NoiseModel model;
            const std::string kind = opt_string(nm[i], nfield, "kind", "planck_nyquist");
            if (kind == "classical_ktb") model.kind = NoiseModel::Kind::ClassicalKtb;
            else if (kind == "planck_nyquist") model.kind = NoiseModel::Kind::PlanckNyquist;
            else fail(nfield + ".kind", "expected 'classical_ktb' or 'planck_nyquist'");
            model.temperature_k = opt_number(nm[i], nfield, "temperature_k", 4.0);
            model.center_frequency_hz = s.frequency_hz;
            s.noise_models.push_back(model);
        }
    } else {
        s.noise_models = {{NoiseModel::Kind::PlanckNyquist, 4.0, s.frequency_hz},
                          {NoiseModel::Kind::ClassicalKtb, 4.0, s.frequency_hz},
                          {NoiseModel::Kind::PlanckNyquist, 300.0, s.frequency_hz},
                          {NoiseModel::Kind::ClassicalKtb, 300.0, s.frequency_hz}};
    }

    if (j.contains("metrics")) {
        const json& m = j.at("metrics");
        expect_object(m, "metrics");
        check_keys(m, "metrics", {"pdp_threshold_db"});
        s.metrics.threshold_db = opt_number(m, "metrics", "pdp_threshold_db", s.metrics.threshold_db);
    }

    if (j.contains("scene")) s.scene = parse_scene(j.at("scene"), "scene");
    if (j.contains("antennas")) s.antennas = parse_antennas(j.at("antennas"), "antennas");
    s.output_dir = opt_string(j, "scenario", "output_dir", "");
    return s;
}

std::string scenario_to_json(const Scenario& s) {
    ordered_json j;
    j["name"] = s.name;
    j["frequency_hz"] = s.frequency_hz;
    j["p_tx_w"] = s.p_tx_w;
    j["engine"] = s.engine == EngineKind::Rays ? "rays" : "images";

    j["tracer"] = ordered_json{
        {"ray_count", s.tracer.ray_count},
        {"max_bounces", s.tracer.max_bounces},
        {"rx_radius_m",
         s.tracer.rx_radius_m > 0.0 ? s.tracer.rx_radius_m : default_rx_radius(s.frequency_hz)},
        {"max_order", s.max_order}};

    j["cir"] = ordered_json{
        {"bandwidth_hz", s.cir.bandwidth_hz},
        {"duration_s", s.cir.duration_s > 0.0 ? ordered_json(s.cir.duration_s) : ordered_json()},
        {"sample_interval_s", s.cir.sample_interval_s},
        {"pulse", s.cir.pulse == PulseShape::RootRaisedCosine ? "rrc" : "gaussian"}};

    j["frequency_grid"] = ordered_json{
        {"start_hz", s.frequency_grid.start_hz.value_or(s.frequency_hz - s.cir.bandwidth_hz / 2.0)},
        {"stop_hz", s.frequency_grid.stop_hz.value_or(s.frequency_hz + s.cir.bandwidth_hz / 2.0)},
        {"count", s.frequency_grid.count}};

    j["bandwidths_hz"] = s.bandwidths_hz;

    ordered_json noise = ordered_json::array();
    for (const NoiseModel& m : s.noise_models)
        noise.push_back(ordered_json{
            {"kind", m.kind == NoiseModel::Kind::ClassicalKtb ? "classical_ktb" : "planck_nyquist"},
            {"temperature_k", m.temperature_k}});
    j["noise_models"] = noise;

    j["metrics"] = ordered_json{{"pdp_threshold_db", s.metrics.threshold_db}};

    ordered_json scene;
    switch (s.scene.kind) {
    case SceneKind::Freespace:
        scene["kind"] = "freespace";
        break;
    case SceneKind::Box:
        scene["kind"] = "box";
        scene["size_m"] = vec3_to_json(s.scene.box_size);
        scene["material"] = material_to_json(s.scene.box_material);
        break;
    case SceneKind::Cryostat: {
        const CryostatParams& p = s.scene.cryostat;
        scene["kind"] = "cryostat";
        scene["shell_radius_m"] = p.shell_radius_m;
        scene["height_m"] = p.height_m;
        scene["top_plate_z_m"] =
            p.top_plate_z_m ? ordered_json(*p.top_plate_z_m) : ordered_json();
        scene["plate_separations_m"] = p.plate_separations_m;
        scene["plate_outer_radius_m"] = p.plate_outer_radius_m;
        scene["plate_aperture_radius_m"] = p.plate_aperture_radius_m;
        scene["tube_radius_m"] = p.tube_radius_m;
        scene["antenna_plane_z_m"] = p.antenna_plane_z(); // resolved
        scene["antenna_plane_offset_m"] = p.antenna_plane_offset_m;
        scene["include_pcb"] = p.include_pcb;
        scene["pcb_size_x_m"] = p.pcb_size_x_m;
        scene["pcb_size_y_m"] = p.pcb_size_y_m;
        scene["pcb_center_x_m"] = p.pcb_center_x_m;
        scene["pcb_center_y_m"] = p.pcb_center_y_m;
        scene["pcb_standoff_m"] = p.pcb_standoff_m;
        scene["materials"] = ordered_json{{"shield", material_to_json(p.shield_material)},
                                          {"plate", material_to_json(p.plate_material)},
                                          {"tube", material_to_json(p.tube_material)},
                                          {"pcb", material_to_json(p.pcb_material)}};
        break;
    }
    case SceneKind::Custom: {
        scene["kind"] = "custom";
        ordered_json surfaces = ordered_json::array();
        for (const Surface& surf : s.scene.custom_surfaces)
            surfaces.push_back(ordered_json{{"label", surf.label},
                                            {"material", material_to_json(surf.material)},
                                            {"shape", shape_to_json(surf.shape)}});
        scene["surfaces"] = surfaces;
        break;
    }
    }
    j["scene"] = scene;

    const AntennaLayout layout = s.layout(); // resolved positions
    ordered_json antennas;
    antennas["pattern"] =
        s.antennas.pattern == PatternKind::Isotropic ? "isotropic" : "half_wave_dipole";
    antennas["axis"] = vec3_to_json(layout.orientation);
    antennas["substrate_relative_permittivity"] = s.antennas.substrate_relative_permittivity;
    antennas["explicit_length_m"] = s.antennas.explicit_length_m
                                        ? ordered_json(*s.antennas.explicit_length_m)
                                        : ordered_json();
    antennas["tx"] =
        ordered_json{{"label", s.antennas.tx_label}, {"position", vec3_to_json(layout.tx_position)}};
    const auto rx_models = s.rx_antenna_models();
    ordered_json rx = ordered_json::array();
    for (std::size_t i = 0; i < layout.rx_positions.size(); ++i)
        rx.push_back(ordered_json{{"label", layout.rx_positions[i].label},
                                  {"position", vec3_to_json(layout.rx_positions[i].position)},
                                  {"axis", vec3_to_json(rx_models[i].axis)}});
    antennas["rx"] = rx;
    j["antennas"] = antennas;

    return j.dump(2);
}

std::vector<Diagnostic> validate_scenario(const Scenario& s) {
    std::vector<Diagnostic> diags;
    auto add = [&](const std::string& field, const std::string& message) {
        diags.push_back({field, message});
    };

    if (!(s.frequency_hz > 0.0)) add("frequency_hz", "must be > 0");
    if (!(s.p_tx_w > 0.0)) add("p_tx_w", "must be > 0");

    if (s.engine == EngineKind::Rays) {
        if (s.tracer.ray_count < 10000) add("tracer.ray_count", "must be >= 1e4");
        if (s.tracer.max_bounces < 0) add("tracer.max_bounces", "must be >= 0");
    } else {
        if (s.max_order < 0 || s.max_order > 6) add("tracer.max_order", "must lie in [0, 6]");
    }

    if (!(s.cir.bandwidth_hz > 0.0)) add("cir.bandwidth_hz", "must be > 0");
    else if (!(s.cir.sample_interval_s > 0.0) ||
             s.cir.sample_interval_s > 0.5 / s.cir.bandwidth_hz * (1.0 + 1e-12))
        add("cir.sample_interval_s", "must lie in (0, 1/(2 bandwidth)]");
    if (s.cir.duration_s < 0.0) add("cir.duration_s", "must be > 0 (or null for automatic)");

    if (s.frequency_grid.count < 1) add("frequency_grid.count", "must be >= 1");
    const double grid_start =
        s.frequency_grid.start_hz.value_or(s.frequency_hz - s.cir.bandwidth_hz / 2.0);
    const double grid_stop =
        s.frequency_grid.stop_hz.value_or(s.frequency_hz + s.cir.bandwidth_hz / 2.0);
    if (!(grid_start > 0.0)) add("frequency_grid.start_hz", "must be > 0");
    if (grid_stop < grid_start) add("frequency_grid.stop_hz", "must be >= start");

    for (std::size_t i = 0; i < s.bandwidths_hz.size(); ++i)
        if (!(s.bandwidths_hz[i] > 0.0))
            add("bandwidths_hz[" + std::to_string(i) + "]", "must be > 0");
    for (std::size_t i = 0; i < s.noise_models.size(); ++i)
        if (!(s.noise_models[i].temperature_k > 0.0))
            add("noise_models[" + std::to_string(i) + "].temperature_k", "must be > 0");

    std::optional<Scene> scene;
    try {
        scene = s.scene.build();
    } catch (const SceneConstructionError& e) {
        // one diagnostic per reported fault line
        std::istringstream is(e.what());
        std::string line;
        std::getline(is, line); // header
        bool any = false;
        while (std::getline(is, line)) {
            const auto pos = line.find("- ");
            add("scene", pos == std::string::npos ? line : line.substr(pos + 2));
            any = true;
        }
        if (!any) add("scene", e.what());
    } catch (const std::exception& e) {
        add("scene", e.what());
    }

    if (s.engine == EngineKind::Images && scene && !scene->all_planar())
        add("engine", "image engine requires a planar scene (discs/rectangles only)");

    if (s.engine == EngineKind::Rays && scene) {
        const double radius = s.tracer.rx_radius_m > 0.0 ? s.tracer.rx_radius_m
                                                         : default_rx_radius(s.frequency_hz);
        const double diameter = scene->diameter();
        if (diameter > 0.0 && radius > 0.1 * diameter)
            add("tracer.rx_radius_m", "reception sphere too coarse (above 10% of scene diameter)");
    }

    if (!is_unit(normalized(s.antennas.axis)) || norm(s.antennas.axis) < 1e-12)
        add("antennas.axis", "must be a nonzero vector");
    if (!(s.antennas.substrate_relative_permittivity >= 1.0))
        add("antennas.substrate_relative_permittivity", "must be >= 1");
    if (s.antennas.explicit_length_m && !(*s.antennas.explicit_length_m > 0.0))
        add("antennas.explicit_length_m", "must be > 0");

    for (std::size_t i = 0; i < s.antennas.rx.size(); ++i)
        if (s.antennas.rx[i].axis && norm(*s.antennas.rx[i].axis) < 1e-12)
            add("antennas.rx[" + std::to_string(i) + "].axis", "must be a nonzero vector");

    std::optional<AntennaLayout> layout;
    try {
        layout = s.layout();
    } catch (const ScenarioError& e) {
        add("antennas", e.what());
    } catch (const std::exception& e) {
        add("antennas", e.what());
    }

    if (layout) {
        std::set<std::string> labels;
        for (const auto& r : layout->rx_positions) {
            if (r.label.empty()) add("antennas.rx", "labels must be non-empty");
            if (!labels.insert(r.label).second)
                add("antennas.rx", "duplicate label '" + r.label + "'");
        }

        if (s.scene.kind == SceneKind::Cryostat) {
            const CryostatParams& p = s.scene.cryostat;
            const double za = p.antenna_plane_z();
            const double lambda = wavelength_m(s.frequency_hz);
            auto check_antenna = [&](const std::string& who, const Vec3& pos) {
                if (!inside_cryostat(p, pos, kGeometricEpsilon))
                    add(who, "position outside the cryostat cavity");
                if (std::abs(pos.z - za) > 1e-9)
                    add(who, "position must lie on the antenna plane z=" + std::to_string(za));
            };
            check_antenna("antennas.tx", layout->tx_position);
            for (const auto& r : layout->rx_positions) {
                check_antenna("antennas.rx." + r.label, r.position);
                const Vec3 d = r.position - layout->tx_position;
                const double sep = std::sqrt(d.x * d.x + d.y * d.y);
                if (sep < 0.75 * lambda * (1.0 - 1e-9) || sep > 2.6 * lambda * (1.0 + 1e-9))
                    add("antennas.rx." + r.label,
                        "in-plane TX separation outside the 0.75-2.6 lambda band");
            }
        } else if (s.scene.kind == SceneKind::Box) {
            auto inside_box = [&](const Vec3& pos) {
                return pos.x > 0.0 && pos.x < s.scene.box_size.x && pos.y > 0.0 &&
                       pos.y < s.scene.box_size.y && pos.z > 0.0 && pos.z < s.scene.box_size.z;
            };
            if (!inside_box(layout->tx_position)) add("antennas.tx", "position outside the box");
            for (const auto& r : layout->rx_positions)
                if (!inside_box(r.position))
                    add("antennas.rx." + r.label, "position outside the box");
        }

        for (const auto& r : layout->rx_positions)
            if (distance(r.position, layout->tx_position) < kGeometricEpsilon)
                add("antennas.rx." + r.label, "coincides with TX");
    }

    return diags;
}

} // namespace cryochan
