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

#include "cryochan/material.hpp"

#include <cmath>
#include <stdexcept>

#include "cryochan/constants.hpp"

namespace cryochan {

void Material::validate() const {
    if (!(relative_permittivity >= 1.0))
        throw std::invalid_argument("material '" + name + "': relative_permittivity must be >= 1");
    if (!(conductivity_s_per_m >= 0.0))
        throw std::invalid_argument("material '" + name + "': conductivity must be >= 0");
    if (!(temperature_k > 0.0))
        throw std::invalid_argument("material '" + name + "': temperature must be > 0");
}

bool Material::is_good_conductor(double frequency_hz) const {
    if (perfect_conductor) return true;
    if (!(frequency_hz > 0.0)) throw std::invalid_argument("frequency must be > 0");
    const double loss_ratio = conductivity_s_per_m /
        (2.0 * kPi * frequency_hz * kVacuumPermittivity * relative_permittivity);
    return loss_ratio > 100.0;
}

Material Material::vacuum() { return {"vacuum", 1.0, 0.0, 4.0, false}; }

Material Material::pec() { return {"pec", 1.0, 0.0, 4.0, true}; }

Material Material::copper_4k() { return {"copper_4K", 1.0, 2.9e8, 4.0, false}; }

Material Material::silicon_4k() { return {"silicon_4K", 11.45, 4.26e-7, 4.0, false}; }

Material Material::sio2_4k() { return {"sio2_4K", 3.9, 0.0, 4.0, false}; }

std::optional<Material> Material::preset(std::string_view preset_name) {
    if (preset_name == "vacuum") return vacuum();
    if (preset_name == "pec") return pec();
    if (preset_name == "copper_4K") return copper_4k();
    if (preset_name == "silicon_4K") return silicon_4k();
    if (preset_name == "sio2_4K") return sio2_4k();
    return std::nullopt;
}

std::complex<double> complex_permittivity(const Material& m, double frequency_hz) {
    if (!(frequency_hz > 0.0)) throw std::invalid_argument("frequency must be > 0");
    const double loss = m.conductivity_s_per_m /
        (2.0 * kPi * frequency_hz * kVacuumPermittivity);
    return {m.relative_permittivity, -loss};
}

std::complex<double> reflection_coefficient(const Material& m, double frequency_hz,
                                            double incidence_angle_rad, Polarization pol) {
    if (!(incidence_angle_rad >= 0.0) || incidence_angle_rad >= kPi / 2.0)
        throw std::invalid_argument("incidence angle must lie in [0, pi/2)");
    if (m.perfect_conductor)
        return pol == Polarization::TE ? std::complex<double>{-1.0, 0.0}
                                       : std::complex<double>{1.0, 0.0};

    const std::complex<double> eps_c = complex_permittivity(m, frequency_hz);
    const double cos_i = std::cos(incidence_angle_rad);
    const double sin2_i = 1.0 - cos_i * cos_i;
    // Transmitted-wave factor sqrt(eps_c - sin^2); principal branch keeps
    // the wave decaying into the lossy half-space under exp(+jwt).
    const std::complex<double> root = std::sqrt(eps_c - sin2_i);
    if (pol == Polarization::TE)
        return (cos_i - root) / (cos_i + root);
    return (eps_c * cos_i - root) / (eps_c * cos_i + root);
}

} // namespace cryochan
