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

#include "cryochan/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cryochan/constants.hpp"

namespace cryochan {

DipoleDesign design_dipole(double center_frequency_hz, double substrate_relative_permittivity) {
    if (!(center_frequency_hz > 0.0))
        throw std::invalid_argument("center frequency must be > 0");
    if (!(substrate_relative_permittivity >= 1.0))
        throw std::invalid_argument("substrate relative permittivity must be >= 1");

    DipoleDesign d;
    d.center_frequency_hz = center_frequency_hz;
    d.substrate_relative_permittivity = substrate_relative_permittivity;
    d.free_space_wavelength_m = wavelength_m(center_frequency_hz);
    d.effective_permittivity = (substrate_relative_permittivity + 1.0) / 2.0;
    d.estimated_length_m = d.free_space_wavelength_m / (2.0 * std::sqrt(d.effective_permittivity));
    return d;
}

DipoleDesign reference_dipole_28ghz() {
    DipoleDesign d = design_dipole(28e9, 3.9);
    d.optimized_length_m = 3.06e-3;
    d.optimized_length_note =
        "length refined by external full-wave optimization of the enclosure-integrated dipole; "
        "not derived from the closed-form estimate";
    return d;
}

AntennaModel AntennaModel::isotropic(DipoleDesign design) {
    return {std::move(design), Vec3{0.0, 0.0, 1.0}, PatternKind::Isotropic, 1.0};
}

AntennaModel AntennaModel::half_wave_dipole(DipoleDesign design, const Vec3& axis) {
    if (!is_unit(axis)) throw std::invalid_argument("dipole axis must be a unit vector");
    return {std::move(design), axis, PatternKind::HalfWaveDipole, kHalfWaveDipolePeakGain};
}

double gain(const AntennaModel& model, const Vec3& direction) {
    if (!is_unit(direction)) throw std::invalid_argument("direction must be a unit vector");
    if (model.pattern == PatternKind::Isotropic) return model.peak_gain;

    // G(theta) = peak * [cos(pi/2 cos theta) / sin theta]^2 about the axis.
    const double cos_t = std::clamp(dot(direction, model.axis), -1.0, 1.0);
    const double sin2_t = 1.0 - cos_t * cos_t;
    if (sin2_t < 1e-18) return 0.0; // axial null
    const double num = std::cos(kPi / 2.0 * cos_t);
    return model.peak_gain * num * num / sin2_t;
}

} // namespace cryochan
