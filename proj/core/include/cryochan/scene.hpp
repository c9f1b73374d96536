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
#include <variant>
#include <vector>

#include "cryochan/material.hpp"
#include "cryochan/vec3.hpp"

namespace cryochan {

/// Hits closer than this along a ray are ignored, so a reflected ray never
/// re-hits its own bounce point. Well below all feature sizes, well above
/// double-precision noise.
inline constexpr double kGeometricEpsilon = 1e-6; // meters

/// Finite open cylinder (side wall only). Points on the axis are
/// axis_point + t * axis_dir with t in [span_min, span_max].
struct CylinderShell {
    Vec3 axis_point;
    Vec3 axis_dir{0.0, 0.0, 1.0}; // unit length
    double radius = 1.0;
    double span_min = 0.0;
    double span_max = 1.0;
};

/// Planar disc, optionally with a concentric circular aperture
/// (aperture_radius = 0 means solid).
struct Disc {
    Vec3 center;
    Vec3 normal{0.0, 0.0, 1.0}; // unit length
    double outer_radius = 1.0;
    double aperture_radius = 0.0;
};

/// Planar parallelogram spanned by two edge vectors from a corner.
struct Rectangle {
    Vec3 corner;
    Vec3 edge_u;
    Vec3 edge_v;
};

using Shape = std::variant<CylinderShell, Disc, Rectangle>;

/// All surfaces are two-sided reflectors.
struct Surface {
    Shape shape;
    Material material;
    std::string label;

    bool is_planar() const { return !std::holds_alternative<CylinderShell>(shape); }
};

struct Hit {
    int surface_index = -1;
    Vec3 point;
    double distance = 0.0;
    /// Unit surface normal oriented against the incoming ray
    /// (dot(normal, ray_dir) < 0).
    Vec3 normal;
};

/// Immutable surface collection; concurrent read-only queries are safe.
struct Scene {
    std::vector<Surface> surfaces;

    /// Nearest intersection with distance > kGeometricEpsilon, or empty if
    /// the ray escapes. Ties at exactly equal distance go to the surface
    /// earlier in the list. Throws std::invalid_argument when direction is
    /// not normalized within 1e-9.
    std::optional<Hit> intersect(const Vec3& origin, const Vec3& direction) const;

    bool all_planar() const;

    /// Diagonal of the axis-aligned bounding box of all surfaces; 0 for an
    /// empty scene.
    double diameter() const;

    /// Human-readable surface/material listing for audit.
    std::string describe() const;
};

/// Cryostat geometry parameters. Defaults model a 30 cm diameter, 70 cm
/// tall enclosure with three cooling plates hanging 0.15 m / 0.10 m apart
/// from the top plate, a central cooling tube, and the antenna PCB 6 cm
/// above the second plate.
struct CryostatParams {
    double shell_radius_m = 0.15;
    double height_m = 0.70;

    /// z of the highest cooling plate, then successive downward gaps.
    /// Empty separations + top_plate omitted = plain closed cylinder.
    std::optional<double> top_plate_z_m = 0.50;
    std::vector<double> plate_separations_m = {0.15, 0.10};
    /// Plates leave a 1 cm annular clearance to the shield by default.
    double plate_outer_radius_m = 0.14;
    /// Annular opening around the tube; equal to the tube radius by default
    /// so plates and tube close the stage.
    double plate_aperture_radius_m = 0.02;

    double tube_radius_m = 0.02; // 0 disables the central tube

    /// Height of the plane carrying the antennas. When unset it resolves to
    /// second plate + antenna_plane_offset_m (or mid-height without plates).
    std::optional<double> antenna_plane_z_m;
    double antenna_plane_offset_m = 0.06;

    bool include_pcb = true;
    double pcb_size_x_m = 0.10;
    double pcb_size_y_m = 0.10;
    double pcb_center_x_m = 0.075;
    double pcb_center_y_m = 0.0;
    /// The PCB face sits this far below the antenna plane; antennas stand
    /// slightly proud of the board so rays can leave the plane.
    double pcb_standoff_m = 0.001;

    Material shield_material = Material::copper_4k();
    Material plate_material = Material::copper_4k();
    Material tube_material = Material::copper_4k();
    Material pcb_material{"pcb_dielectric", 3.9, 0.0, 4.0};

    /// Plate heights, highest first.
    std::vector<double> plate_zs() const;
    double antenna_plane_z() const;

    /// Throws SceneConstructionError listing every offending surface.
    void validate() const;
};

/// Assembles the cryostat: shell, two caps, plates, tube, PCB. Surfaces are
/// labeled ("shell", "top_cap", "plate_1", ...) for audit and path
/// signatures.
Scene build_cryostat_scene(const CryostatParams& params);

/// Closed axis-aligned box [0,size.x]x[0,size.y]x[0,size.z] of one
/// material; all faces planar, usable by both engines.
Scene build_box_scene(const Vec3& size, const Material& material);

/// True when the point lies strictly inside the cryostat cavity (inside
/// shell and caps, outside the tube), with a clearance margin.
bool inside_cryostat(const CryostatParams& params, const Vec3& point, double margin = 0.0);

struct LabeledPosition {
    std::string label;
    Vec3 position;
};

/// Default shared dipole axis, in-plane at 34 degrees from +x. Calibrated
/// together with the default layout so the direct-path budget stays
/// comparable across all six links.
inline const Vec3 kDefaultDipoleAxis{0.8290375725550416, 0.5591929034707469, 0.0};

/// TX antenna A plus labeled RX positions, all on the antenna plane and
/// sharing one dipole axis.
struct AntennaLayout {
    Vec3 tx_position;
    std::vector<LabeledPosition> rx_positions;
    Vec3 orientation{1.0, 0.0, 0.0}; // shared dipole axis, unit length
};

/// Default A/B1..B6 layout: separations {0.75, 1.1} lambda along +x and
/// {1.5, 1.9, 2.25, 2.6} lambda along +y from A, spanning the 0.75-2.6
/// lambda range, dipole axes along kDefaultDipoleAxis.
AntennaLayout default_cryostat_layout(const CryostatParams& params, double frequency_hz);

} // namespace cryochan
