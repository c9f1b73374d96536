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

#include "cryochan/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cryochan/constants.hpp"
#include "cryochan/errors.hpp"

namespace cryochan {

namespace {

constexpr double kRollOff = 0.25;
constexpr double kPulseHalfWidthSymbols = 4.0;

// Dimensionless pulse shapes g(x) with x = t / T; support [-4, 4].
double rrc_shape(double x) {
    const double ax = std::abs(x);
    if (ax > kPulseHalfWidthSymbols) return 0.0;
    if (ax < 1e-8) return 1.0 - kRollOff + 4.0 * kRollOff / kPi;
    if (std::abs(ax - 1.0 / (4.0 * kRollOff)) < 1e-8) {
        const double a = (1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * kRollOff));
        const double b = (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * kRollOff));
        return kRollOff / std::sqrt(2.0) * (a + b);
    }
    const double num = std::sin(kPi * x * (1.0 - kRollOff)) +
                       4.0 * kRollOff * x * std::cos(kPi * x * (1.0 + kRollOff));
    const double den = kPi * x * (1.0 - std::pow(4.0 * kRollOff * x, 2));
    return num / den;
}

double gaussian_shape(double x) {
    if (std::abs(x) > kPulseHalfWidthSymbols) return 0.0;
    return std::exp(-2.0 * x * x); // sigma = 1/2 in symbol units
}

double shape_value(double x, PulseShape shape) {
    return shape == PulseShape::RootRaisedCosine ? rrc_shape(x) : gaussian_shape(x);
}

// Energy of g(x) over the truncated support; scale-invariant, computed once
// per shape by Simpson quadrature.
double shape_energy(PulseShape shape) {
    static const double cache[2] = {
        [] {
            double e = 0.0;
            const int n = 1 << 16;
            const double h = 2.0 * kPulseHalfWidthSymbols / n;
            for (int i = 0; i <= n; ++i) {
                const double x = -kPulseHalfWidthSymbols + i * h;
                const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                e += w * std::pow(rrc_shape(x), 2);
            }
            return e * h / 3.0;
        }(),
        [] {
            double e = 0.0;
            const int n = 1 << 16;
            const double h = 2.0 * kPulseHalfWidthSymbols / n;
            for (int i = 0; i <= n; ++i) {
                const double x = -kPulseHalfWidthSymbols + i * h;
                const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                e += w * std::pow(gaussian_shape(x), 2);
            }
            return e * h / 3.0;
        }(),
    };
    return cache[shape == PulseShape::RootRaisedCosine ? 0 : 1];
}

} // namespace

double sounding_pulse(double t, double bandwidth_hz, PulseShape shape) {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
    const double symbol = 1.0 / bandwidth_hz;
    return shape_value(t / symbol, shape) / std::sqrt(symbol * shape_energy(shape));
}

double ChannelImpulseResponse::energy() const {
    double e = 0.0;
    for (const auto& s : samples) e += std::norm(s);
    return e * sample_interval_s;
}

double minimum_cir_duration(const std::vector<PathComponent>& paths, const CirParams& params) {
    if (paths.empty()) return 0.0;
    double max_delay = 0.0;
    for (const auto& p : paths) max_delay = std::max(max_delay, p.delay_s);
    return max_delay + kPulseHalfWidthSymbols / params.bandwidth_hz;
}

ChannelImpulseResponse synthesize_cir(const std::vector<PathComponent>& paths,
                                      const CirParams& params) {
    if (paths.empty()) throw std::invalid_argument("synthesize_cir: empty path list");
    if (!(params.bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
    if (!(params.sample_interval_s > 0.0) ||
        params.sample_interval_s > 0.5 / params.bandwidth_hz * (1.0 + 1e-12))
        throw std::invalid_argument("sample_interval must lie in (0, 1/(2 bandwidth)]");

    const double symbol = 1.0 / params.bandwidth_hz;
    const double half_width = kPulseHalfWidthSymbols * symbol;

    double min_delay = paths[0].delay_s;
    double max_delay = paths[0].delay_s;
    std::size_t max_index = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        min_delay = std::min(min_delay, paths[i].delay_s);
        if (paths[i].delay_s > max_delay) {
            max_delay = paths[i].delay_s;
            max_index = i;
        }
    }
    const double required = max_delay + half_width;
    if (params.duration_s < required * (1.0 - 1e-12)) {
        std::ostringstream os;
        os << "synthesize_cir: duration " << params.duration_s << " s clips path " << max_index
           << " (delay " << max_delay << " s); record must extend to " << required << " s";
        throw TruncationError(os.str());
    }

    ChannelImpulseResponse cir;
    cir.sample_interval_s = params.sample_interval_s;
    cir.start_time_s = min_delay - half_width;
    cir.bandwidth_hz = params.bandwidth_hz;
    cir.center_frequency_hz = params.center_frequency_hz;
    cir.source_paths = paths;

    const std::size_t n =
        static_cast<std::size_t>(std::ceil((params.duration_s - cir.start_time_s) /
                                           params.sample_interval_s)) + 1;
    cir.samples.assign(n, {0.0, 0.0});

    const double norm_factor = 1.0 / std::sqrt(symbol * shape_energy(params.pulse));
    for (const auto& path : paths) {
        const double lo = path.delay_s - half_width;
        const double hi = path.delay_s + half_width;
        const auto i_lo = static_cast<std::size_t>(
            std::max(0.0, std::floor((lo - cir.start_time_s) / params.sample_interval_s)));
        const auto i_hi = std::min(n - 1, static_cast<std::size_t>(std::max(
                                              0.0, std::ceil((hi - cir.start_time_s) /
                                                             params.sample_interval_s))));
        for (std::size_t i = i_lo; i <= i_hi; ++i) {
            const double t = cir.time_at(i) - path.delay_s;
            cir.samples[i] += path.amplitude * (shape_value(t / symbol, params.pulse) * norm_factor);
        }
    }
    return cir;
}

FrequencyResponse frequency_response(const std::vector<PathComponent>& paths,
                                     std::span<const double> grid_hz) {
    if (grid_hz.empty()) throw std::invalid_argument("frequency_response: empty grid");
    FrequencyResponse fr;
    fr.grid_hz.assign(grid_hz.begin(), grid_hz.end());
    fr.values.reserve(grid_hz.size());
    for (double f : grid_hz) {
        if (!(f > 0.0)) throw std::invalid_argument("frequency_response: grid must be positive");
        std::complex<double> h{0.0, 0.0};
        for (const auto& p : paths) h += p.amplitude * std::polar(1.0, -2.0 * kPi * f * p.delay_s);
        fr.values.push_back(h);
    }
    return fr;
}

std::vector<PathComponent> strip_carrier_phase(std::vector<PathComponent> paths,
                                               double center_frequency_hz) {
    for (auto& p : paths)
        p.amplitude *= std::polar(1.0, 2.0 * kPi * center_frequency_hz * p.delay_s);
    return paths;
}

} // namespace cryochan
