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

#include <string>
#include <vector>

#include "cryochan/channel.hpp"

namespace cryochan {

struct NoiseModel {
    enum class Kind { ClassicalKtb, PlanckNyquist };
    Kind kind = Kind::PlanckNyquist;
    double temperature_k = 4.0;
    double center_frequency_hz = 28e9;

    std::string describe() const;
};

/// Thermal noise power in watts over the given bandwidth.
///   classical_ktb:   N = kB T B
///   planck_nyquist:  N = h f_c B / (exp(h f_c / (kB T)) - 1)
/// The Planck form is always below kTB and reduces to it for
/// h f_c << kB T. Throws std::invalid_argument for bandwidth <= 0.
double noise_power_w(const NoiseModel& model, double bandwidth_hz);

/// Delay statistics exclude components below this threshold relative to the
/// strongest (power dB, negative).
struct PdpOptions {
    double threshold_db = -40.0;
};

// Power-weighted delay moments. Each has a discrete-path form (exact sums
// over |a_k|^2) and a sampled-CIR form (sums over |h_n|^2 dt). Zero energy
// throws UndefinedMetricError.
double mean_delay_s(const std::vector<PathComponent>& paths, const PdpOptions& opts = {});
double mean_delay_s(const ChannelImpulseResponse& cir, const PdpOptions& opts = {});
double rms_delay_spread_s(const std::vector<PathComponent>& paths, const PdpOptions& opts = {});
double rms_delay_spread_s(const ChannelImpulseResponse& cir, const PdpOptions& opts = {});

/// Channel energy for unit TX energy: sum |a_k|^2 (no threshold).
double received_energy(const std::vector<PathComponent>& paths);
/// Integral |h|^2 dt.
double received_energy(const ChannelImpulseResponse& cir);

/// P_RX = P_TX * energy.
double received_power_w(double channel_energy, double p_tx_w);

double watts_to_dbm(double power_w);

/// SNR in dB: P_TX * energy / N(bandwidth). Zero channel energy yields
/// -infinity as the explicit no-signal marker. Throws std::invalid_argument
/// for p_tx <= 0, negative energy, or bandwidth <= 0.
double snr_db(double channel_energy, double p_tx_w, const NoiseModel& model,
              double bandwidth_hz);

/// 1/DS estimate; +infinity when the spread is zero.
double coherence_bandwidth_hz(double rms_delay_spread);

struct SnrEntry {
    NoiseModel model;
    double bandwidth_hz = 0.0;
    double snr_db = 0.0;
};

struct LinkMetrics {
    std::string label;
    double distance_m = 0.0;
    std::size_t path_count = 0;
    double mean_delay_s = 0.0;
    double rms_delay_spread_s = 0.0;
    double received_energy = 0.0;
    double coherence_bandwidth_hz = 0.0;
    std::vector<SnrEntry> snr;
};

/// Discrete-path metrics bundle for one link; the SNR table covers every
/// (noise model, bandwidth) pair. An empty path list yields the no-signal
/// marker row (NaN delays, zero energy, -inf SNR).
LinkMetrics compute_link_metrics(const std::string& label, double distance_m,
                                 const std::vector<PathComponent>& paths, double p_tx_w,
                                 const std::vector<NoiseModel>& noise_models,
                                 const std::vector<double>& bandwidths_hz,
                                 const PdpOptions& opts = {});

} // namespace cryochan
