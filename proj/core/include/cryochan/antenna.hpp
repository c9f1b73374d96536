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

#include "cryochan/vec3.hpp"

namespace cryochan {

/// Closed-form sizing record for an on-chip differential dipole.
///
/// The estimate chain is exact by construction:
///   lambda0 = c / f_c,  eps_eff = (eps_r + 1) / 2,
///   L = lambda0 / (2 sqrt(eps_eff)).
/// A full-wave-optimized length, when known, is carried alongside the
/// estimate rather than recomputed.
struct DipoleDesign {
    double center_frequency_hz = 0.0;
    double substrate_relative_permittivity = 1.0;
    double free_space_wavelength_m = 0.0;
    double effective_permittivity = 1.0;
    double estimated_length_m = 0.0;
    std::optional<double> optimized_length_m;
    std::string optimized_length_note; // provenance of the optimized value
};

/// Evaluates the sizing chain. Throws std::invalid_argument for f_c <= 0
/// or eps_r < 1.
DipoleDesign design_dipole(double center_frequency_hz, double substrate_relative_permittivity);

/// The bundled 28 GHz / SiO2 design record: 3.420 mm closed-form estimate
/// plus the 3.06 mm length supplied by external full-wave optimization.
DipoleDesign reference_dipole_28ghz();

enum class PatternKind { Isotropic, HalfWaveDipole };

/// Peak linear gain of the canonical half-wave dipole pattern.
inline constexpr double kHalfWaveDipolePeakGain = 1.643;

struct AntennaModel {
    DipoleDesign design;
    Vec3 axis{0.0, 0.0, 1.0}; // dipole axis, unit length
    PatternKind pattern = PatternKind::Isotropic;
    double peak_gain = 1.0;

    static AntennaModel isotropic(DipoleDesign design = {});
    static AntennaModel half_wave_dipole(DipoleDesign design, const Vec3& axis);
};

/// Linear power gain toward a unit direction. Rotationally symmetric about
/// the axis; the dipole pattern is zero along the axis and peaks broadside.
/// Throws std::invalid_argument for an unnormalized direction.
double gain(const AntennaModel& model, const Vec3& direction);

} // namespace cryochan
