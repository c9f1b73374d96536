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

#include "cryochan/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cryochan/constants.hpp"
#include "cryochan/errors.hpp"

namespace cryochan {

namespace {

struct ShapeHit {
    double distance;
    Vec3 point;
    Vec3 geometric_normal; // orientation arbitrary; flipped against the ray later
};

// Nearest intersection beyond kGeometricEpsilon, if any.

std::optional<ShapeHit> hit_cylinder(const CylinderShell& c, const Vec3& o, const Vec3& d) {
    // Solve |perp(o + t d - p)|^2 = r^2 with axial components projected off.
    const Vec3 rel = o - c.axis_point;
    const double rel_ax = dot(rel, c.axis_dir);
    const double d_ax = dot(d, c.axis_dir);
    const Vec3 rel_perp = rel - rel_ax * c.axis_dir;
    const Vec3 d_perp = d - d_ax * c.axis_dir;

    const double a = norm_squared(d_perp);
    if (a < 1e-30) return std::nullopt; // ray parallel to the axis
    const double b = 2.0 * dot(rel_perp, d_perp);
    const double cc = norm_squared(rel_perp) - c.radius * c.radius;
    const double disc = b * b - 4.0 * a * cc;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);

    for (const double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
        if (t <= kGeometricEpsilon) continue;
        const double axial = rel_ax + t * d_ax;
        if (axial < c.span_min || axial > c.span_max) continue;
        const Vec3 p = o + t * d;
        const Vec3 radial = (p - c.axis_point) - axial * c.axis_dir;
        return ShapeHit{t, p, normalized(radial)};
    }
    return std::nullopt;
}

std::optional<ShapeHit> hit_plane(const Vec3& point_on_plane, const Vec3& n, const Vec3& o,
                                  const Vec3& d) {
    const double denom = dot(d, n);
    if (std::abs(denom) < 1e-15) return std::nullopt;
    const double t = dot(point_on_plane - o, n) / denom;
    if (t <= kGeometricEpsilon) return std::nullopt;
    return ShapeHit{t, o + t * d, n};
}

std::optional<ShapeHit> hit_disc(const Disc& disc, const Vec3& o, const Vec3& d) {
    auto h = hit_plane(disc.center, disc.normal, o, d);
    if (!h) return std::nullopt;
    const double rho = norm(h->point - disc.center);
    if (rho > disc.outer_radius || rho < disc.aperture_radius) return std::nullopt;
    return h;
}

std::optional<ShapeHit> hit_rectangle(const Rectangle& r, const Vec3& o, const Vec3& d) {
    const Vec3 n = normalized(cross(r.edge_u, r.edge_v));
    auto h = hit_plane(r.corner, n, o, d);
    if (!h) return std::nullopt;
    // Solve p - corner = alpha u + beta v in the plane basis.
    const Vec3 w = h->point - r.corner;
    const double uu = norm_squared(r.edge_u), vv = norm_squared(r.edge_v);
    const double uv = dot(r.edge_u, r.edge_v);
    const double wu = dot(w, r.edge_u), wv = dot(w, r.edge_v);
    const double det = uu * vv - uv * uv;
    if (std::abs(det) < 1e-30) return std::nullopt;
    const double alpha = (wu * vv - wv * uv) / det;
    const double beta = (wv * uu - wu * uv) / det;
    if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0) return std::nullopt;
    return h;
}

std::optional<ShapeHit> hit_shape(const Shape& shape, const Vec3& o, const Vec3& d) {
    return std::visit(
        [&](const auto& s) -> std::optional<ShapeHit> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CylinderShell>) return hit_cylinder(s, o, d);
            else if constexpr (std::is_same_v<T, Disc>) return hit_disc(s, o, d);
            else return hit_rectangle(s, o, d);
        },
        shape);
}

void extend_bounds(Vec3& lo, Vec3& hi, const Vec3& p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
}

void shape_bounds(const Shape& shape, Vec3& lo, Vec3& hi) {
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CylinderShell>) {
                for (double span : {s.span_min, s.span_max}) {
                    const Vec3 c = s.axis_point + span * s.axis_dir;
                    extend_bounds(lo, hi, c + Vec3{s.radius, s.radius, s.radius});
                    extend_bounds(lo, hi, c - Vec3{s.radius, s.radius, s.radius});
                }
            } else if constexpr (std::is_same_v<T, Disc>) {
                extend_bounds(lo, hi, s.center + Vec3{s.outer_radius, s.outer_radius, s.outer_radius});
                extend_bounds(lo, hi, s.center - Vec3{s.outer_radius, s.outer_radius, s.outer_radius});
            } else {
                extend_bounds(lo, hi, s.corner);
                extend_bounds(lo, hi, s.corner + s.edge_u);
                extend_bounds(lo, hi, s.corner + s.edge_v);
                extend_bounds(lo, hi, s.corner + s.edge_u + s.edge_v);
            }
        },
        shape);
}

std::string shape_summary(const Shape& shape) {
    std::ostringstream os;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CylinderShell>) {
                os << "cylinder r=" << s.radius << " span=[" << s.span_min << ", " << s.span_max
                   << "] axis=(" << s.axis_dir.x << ", " << s.axis_dir.y << ", " << s.axis_dir.z
                   << ")";
            } else if constexpr (std::is_same_v<T, Disc>) {
                os << "disc r=" << s.outer_radius;
                if (s.aperture_radius > 0.0) os << " aperture=" << s.aperture_radius;
                os << " center=(" << s.center.x << ", " << s.center.y << ", " << s.center.z << ")";
            } else {
                os << "rect " << norm(s.edge_u) << " x " << norm(s.edge_v) << " at ("
                   << s.corner.x << ", " << s.corner.y << ", " << s.corner.z << ")";
            }
        },
        shape);
    return os.str();
}

} // namespace

std::optional<Hit> Scene::intersect(const Vec3& origin, const Vec3& direction) const {
    if (!is_unit(direction))
        throw std::invalid_argument("intersect: direction must be normalized within 1e-9");

    std::optional<Hit> best;
    for (int i = 0; i < static_cast<int>(surfaces.size()); ++i) {
        auto h = hit_shape(surfaces[i].shape, origin, direction);
        if (!h) continue;
        if (best && h->distance >= best->distance) continue; // earlier surface wins ties
        Vec3 n = h->geometric_normal;
        if (dot(n, direction) > 0.0) n = -n;
        best = Hit{i, h->point, h->distance, n};
    }
    return best;
}

bool Scene::all_planar() const {
    return std::all_of(surfaces.begin(), surfaces.end(),
                       [](const Surface& s) { return s.is_planar(); });
}

double Scene::diameter() const {
    if (surfaces.empty()) return 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    Vec3 lo{inf, inf, inf}, hi{-inf, -inf, -inf};
    for (const Surface& s : surfaces) shape_bounds(s.shape, lo, hi);
    return norm(hi - lo);
}

std::string Scene::describe() const {
    std::ostringstream os;
    os << surfaces.size() << " surfaces\n";
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
        const Surface& s = surfaces[i];
        os << "  [" << i << "] " << s.label << ": " << shape_summary(s.shape) << "; material "
           << s.material.name << " (eps_r=" << s.material.relative_permittivity
           << ", sigma=" << s.material.conductivity_s_per_m << " S/m, T=" << s.material.temperature_k
           << " K" << (s.material.perfect_conductor ? ", PEC" : "") << ")\n";
    }
    return os.str();
}

std::vector<double> CryostatParams::plate_zs() const {
    std::vector<double> zs;
    if (!top_plate_z_m) return zs;
    double z = *top_plate_z_m;
    zs.push_back(z);
    for (double gap : plate_separations_m) {
        z -= gap;
        zs.push_back(z);
    }
    return zs;
}

double CryostatParams::antenna_plane_z() const {
    if (antenna_plane_z_m) return *antenna_plane_z_m;
    const auto zs = plate_zs();
    if (zs.size() >= 2) return zs[1] + antenna_plane_offset_m;
    if (zs.size() == 1) return zs[0] + antenna_plane_offset_m;
    return height_m / 2.0;
}

void CryostatParams::validate() const {
    std::vector<std::string> faults;
    if (!(shell_radius_m > 0.0)) faults.push_back("shell: radius must be > 0");
    if (!(height_m > 0.0)) faults.push_back("shell: height must be > 0");
    if (plate_outer_radius_m > shell_radius_m)
        faults.push_back("plates: outer radius exceeds the shell radius");
    if (!(plate_outer_radius_m > 0.0)) faults.push_back("plates: outer radius must be > 0");
    if (plate_aperture_radius_m < 0.0) faults.push_back("plates: aperture radius must be >= 0");
    if (plate_aperture_radius_m >= plate_outer_radius_m && !plate_zs().empty())
        faults.push_back("plates: aperture radius must stay below the outer radius");
    if (tube_radius_m < 0.0) faults.push_back("tube: radius must be >= 0");
    if (tube_radius_m >= shell_radius_m) faults.push_back("tube: radius must stay below the shell radius");

    const auto zs = plate_zs();
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (zs[i] <= 0.0 || zs[i] >= height_m)
            faults.push_back("plate_" + std::to_string(i + 1) + ": z outside the enclosure");
        if (i > 0 && zs[i] >= zs[i - 1])
            faults.push_back("plate_" + std::to_string(i + 1) + ": overlaps plate_" + std::to_string(i) +
                             " (separation must be > 0)");
    }

    const double za = antenna_plane_z();
    if (za <= 0.0 || za >= height_m) faults.push_back("antenna_plane: z outside the enclosure");
    if (include_pcb) {
        if (!(pcb_size_x_m > 0.0) || !(pcb_size_y_m > 0.0)) faults.push_back("pcb: size must be > 0");
        if (!(pcb_standoff_m > 0.0)) faults.push_back("pcb: standoff must be > 0");
        const double zp = za - pcb_standoff_m;
        if (zp <= 0.0 || zp >= height_m) faults.push_back("pcb: face outside the enclosure");
        const double rx = pcb_size_x_m / 2.0, ry = pcb_size_y_m / 2.0;
        const double cx = std::abs(pcb_center_x_m) + rx, cy = std::abs(pcb_center_y_m) + ry;
        if (std::sqrt(cx * cx + cy * cy) >= shell_radius_m)
            faults.push_back("pcb: corner reaches outside the shell");
    }

    if (!faults.empty()) {
        std::string msg = "cryostat construction failed:";
        for (const auto& f : faults) msg += "\n  - " + f;
        throw SceneConstructionError(msg);
    }
}

Scene build_cryostat_scene(const CryostatParams& p) {
    p.validate();
    Scene scene;
    const Vec3 axis{0.0, 0.0, 1.0};

    scene.surfaces.push_back({CylinderShell{{0, 0, 0}, axis, p.shell_radius_m, 0.0, p.height_m},
                              p.shield_material, "shell"});
    scene.surfaces.push_back({Disc{{0, 0, p.height_m}, axis, p.shell_radius_m, 0.0},
                              p.shield_material, "top_cap"});
    scene.surfaces.push_back({Disc{{0, 0, 0.0}, axis, p.shell_radius_m, 0.0},
                              p.shield_material, "bottom_cap"});

    const auto zs = p.plate_zs();
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const double aperture = p.tube_radius_m > 0.0
                                    ? std::max(p.plate_aperture_radius_m, p.tube_radius_m)
                                    : p.plate_aperture_radius_m;
        scene.surfaces.push_back({Disc{{0, 0, zs[i]}, axis, p.plate_outer_radius_m, aperture},
                                  p.plate_material, "plate_" + std::to_string(i + 1)});
    }

    if (p.tube_radius_m > 0.0) {
        scene.surfaces.push_back({CylinderShell{{0, 0, 0}, axis, p.tube_radius_m, 0.0, p.height_m},
                                  p.tube_material, "tube"});
    }

    if (p.include_pcb) {
        const double zp = p.antenna_plane_z() - p.pcb_standoff_m;
        const Vec3 corner{p.pcb_center_x_m - p.pcb_size_x_m / 2.0,
                          p.pcb_center_y_m - p.pcb_size_y_m / 2.0, zp};
        scene.surfaces.push_back({Rectangle{corner, {p.pcb_size_x_m, 0, 0}, {0, p.pcb_size_y_m, 0}},
                                  p.pcb_material, "pcb"});
    }
    return scene;
}

Scene build_box_scene(const Vec3& size, const Material& material) {
    if (!(size.x > 0.0 && size.y > 0.0 && size.z > 0.0))
        throw SceneConstructionError("box: all dimensions must be > 0");
    Scene scene;
    const Vec3 ex{size.x, 0, 0}, ey{0, size.y, 0}, ez{0, 0, size.z};
    scene.surfaces.push_back({Rectangle{{0, 0, 0}, ex, ey}, material, "floor"});
    scene.surfaces.push_back({Rectangle{{0, 0, size.z}, ex, ey}, material, "ceiling"});
    scene.surfaces.push_back({Rectangle{{0, 0, 0}, ey, ez}, material, "wall_x0"});
    scene.surfaces.push_back({Rectangle{{size.x, 0, 0}, ey, ez}, material, "wall_x1"});
    scene.surfaces.push_back({Rectangle{{0, 0, 0}, ex, ez}, material, "wall_y0"});
    scene.surfaces.push_back({Rectangle{{0, size.y, 0}, ex, ez}, material, "wall_y1"});
    return scene;
}

bool inside_cryostat(const CryostatParams& p, const Vec3& point, double margin) {
    const double rho = std::sqrt(point.x * point.x + point.y * point.y);
    if (rho >= p.shell_radius_m - margin) return false;
    if (point.z <= margin || point.z >= p.height_m - margin) return false;
    if (p.tube_radius_m > 0.0 && rho <= p.tube_radius_m + margin) return false;
    return true;
}

AntennaLayout default_cryostat_layout(const CryostatParams& params, double frequency_hz) {
    if (!(frequency_hz > 0.0)) throw std::invalid_argument("frequency must be > 0");
    const double lambda = wavelength_m(frequency_hz);
    const double z = params.antenna_plane_z();

    AntennaLayout layout;
    layout.tx_position = {0.06, 0.0, z};
    layout.orientation = kDefaultDipoleAxis;
    // Near receivers along +x (close to the dipole axis, reduced direct
    // gain), the rest along +y near broadside. The gain split keeps the
    // direct-path budget comparable across the 0.75-2.6 lambda range.
    layout.rx_positions = {
        {"B1", layout.tx_position + Vec3{0.75 * lambda, 0, 0}},
        {"B2", layout.tx_position + Vec3{1.1 * lambda, 0, 0}},
        {"B3", layout.tx_position + Vec3{0, 1.5 * lambda, 0}},
        {"B4", layout.tx_position + Vec3{0, 1.9 * lambda, 0}},
        {"B5", layout.tx_position + Vec3{0, 2.25 * lambda, 0}},
        {"B6", layout.tx_position + Vec3{0, 2.6 * lambda, 0}},
    };
    return layout;
}

} // namespace cryochan
