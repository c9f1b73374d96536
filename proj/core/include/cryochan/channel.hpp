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
#include <span>
#include <vector>

#include "cryochan/propagation.hpp"

namespace cryochan {

enum class PulseShape { RootRaisedCosine, Gaussian };

/// CIR synthesis parameters. The sounding pulse is unit-energy with symbol
/// period T = 1/bandwidth, truncated at +-4 T (root-raised-cosine roll-off
/// 0.25, or a Gaussian of sigma = T/2).
struct CirParams {
    double center_frequency_hz = 28e9;
    double bandwidth_hz = 5e9;
    /// Record end time; must cover max path delay + 4 pulse widths.
    double duration_s = 0.0;
    double sample_interval_s = 20e-12; // <= 1/(2 bandwidth)
    PulseShape pulse = PulseShape::RootRaisedCosine;
};

/// Band-limited sampled h(t) at complex baseband about center_frequency_hz:
/// the passband response is Re{ h(t) exp(+j 2 pi f_c t) }. Path amplitudes
/// already carry the carrier phase exp(-j 2 pi f_c tau), so synthesis is a
/// plain pulse sum.
struct ChannelImpulseResponse {
    std::vector<std::complex<double>> samples;
    double sample_interval_s = 0.0;
    double start_time_s = 0.0;
    double bandwidth_hz = 0.0;
    double center_frequency_hz = 0.0;
    std::vector<PathComponent> source_paths;

    double time_at(std::size_t i) const { return start_time_s + sample_interval_s * double(i); }
    /// sum |h|^2 dt
    double energy() const;
};

/// h(t) = sum_k a_k p(t - tau_k). Throws TruncationError naming the clipped
/// path when duration_s is too short, std::invalid_argument for bad
/// bandwidth/sampling.
ChannelImpulseResponse synthesize_cir(const std::vector<PathComponent>& paths,
                                      const CirParams& params);

/// Record end time that covers every path with full pulse support.
double minimum_cir_duration(const std::vector<PathComponent>& paths, const CirParams& params);

struct FrequencyResponse {
    std::vector<double> grid_hz;
    std::vector<std::complex<double>> values;
};

/// Exact discrete sum H(f) = sum_k a_k exp(-j 2 pi f tau_k) over the given
/// grid (no FFT leakage). Grid frequencies must be positive. Pass
/// carrier-stripped amplitudes (see strip_carrier_phase) with an absolute
/// frequency grid to obtain the passband transfer function.
FrequencyResponse frequency_response(const std::vector<PathComponent>& paths,
                                     std::span<const double> grid_hz);

/// Returns paths with a_k replaced by a_k exp(+j 2 pi f_c tau_k), undoing
/// the carrier phase the tracer accumulated.
std::vector<PathComponent> strip_carrier_phase(std::vector<PathComponent> paths,
                                               double center_frequency_hz);

/// Unit-energy sounding pulse value at time t (exposed for tests).
double sounding_pulse(double t, double bandwidth_hz, PulseShape shape);

} // namespace cryochan
