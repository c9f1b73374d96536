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

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace cryochan {

/// Temperature-tagged electromagnetic material properties.
///
/// Losses enter through the DC conductivity; the model is non-dispersive,
/// so a material is valid at a single temperature point and the cryogenic
/// presets carry the 4 K values.
struct Material {
    std::string name;
    double relative_permittivity = 1.0; // >= 1
    double conductivity_s_per_m = 0.0;  // >= 0
    double temperature_k = 293.0;       // > 0
    /// Idealized sigma -> infinity limit; reflection coefficients are exact.
    bool perfect_conductor = false;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    /// True when conductivity / (2 pi f eps0 eps_r) > 100 at frequency f.
    bool is_good_conductor(double frequency_hz) const;

    // Built-in presets. The cryogenic conductivity/permittivity set:
    // copper 2.9e8 S/m, silicon 4.26e-7 S/m / eps_r 11.45, SiO2 eps_r 3.9.
    static Material vacuum();
    static Material pec();
    static Material copper_4k();
    static Material silicon_4k();
    static Material sio2_4k();

    /// Lookup by preset name ("copper_4K", "silicon_4K", "sio2_4K", "pec",
    /// "vacuum"); empty when unknown.
    static std::optional<Material> preset(std::string_view preset_name);
};

enum class Polarization { TE, TM };

/// Relative complex permittivity eps_r - j sigma/(2 pi f eps0) under the
/// exp(+j w t) engineering convention. Throws std::invalid_argument for
/// f <= 0.
std::complex<double> complex_permittivity(const Material& m, double frequency_hz);

/// Fresnel reflection coefficient for a plane wave in vacuum hitting the
/// material half-space, per polarization.
///
/// incidence_angle is measured from the surface normal and must lie in
/// [0, pi/2); exactly grazing input throws std::invalid_argument. |result|
/// is <= 1 for every physical material. Sign convention: TE tends to -1
/// and TM to +1 in the perfect-conductor limit.
std::complex<double> reflection_coefficient(const Material& m, double frequency_hz,
                                            double incidence_angle_rad, Polarization pol);

} // namespace cryochan
