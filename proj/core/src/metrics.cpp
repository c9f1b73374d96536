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

#include "cryochan/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cryochan/constants.hpp"
#include "cryochan/errors.hpp"

namespace cryochan {

namespace {

struct Moments {
    double mean = 0.0;
    double spread = 0.0;
};

// Power-weighted first/second central delay moments over (delay, power)
// samples, excluding entries below the relative threshold.
template <typename Delay, typename Power>
Moments weighted_moments(std::size_t n, Delay delay, Power power, double threshold_db,
                         const char* what) {
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, power(i));
    if (peak <= 0.0) throw UndefinedMetricError(std::string(what) + ": zero-energy response");

    const double cut = peak * std::pow(10.0, threshold_db / 10.0);
    double w_sum = 0.0, t_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = power(i);
        if (w < cut) continue;
        w_sum += w;
        t_sum += w * delay(i);
    }
    Moments m;
    m.mean = t_sum / w_sum;
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = power(i);
        if (w < cut) continue;
        var += w * (delay(i) - m.mean) * (delay(i) - m.mean);
    }
    m.spread = std::sqrt(var / w_sum);
    return m;
}

Moments path_moments(const std::vector<PathComponent>& paths, const PdpOptions& opts) {
    if (paths.empty()) throw UndefinedMetricError("delay moments: empty path list");
    return weighted_moments(
        paths.size(), [&](std::size_t i) { return paths[i].delay_s; },
        [&](std::size_t i) { return std::norm(paths[i].amplitude); }, opts.threshold_db,
        "path delay moments");
}

Moments cir_moments(const ChannelImpulseResponse& cir, const PdpOptions& opts) {
    if (cir.samples.empty()) throw UndefinedMetricError("delay moments: empty CIR");
    return weighted_moments(
        cir.samples.size(), [&](std::size_t i) { return cir.time_at(i); },
        [&](std::size_t i) { return std::norm(cir.samples[i]); }, opts.threshold_db,
        "CIR delay moments");
}

} // namespace

std::string NoiseModel::describe() const {
    std::ostringstream os;
    os << (kind == Kind::ClassicalKtb ? "classical_ktb" : "planck_nyquist") << "_"
       << temperature_k << "K";
    return os.str();
}

double noise_power_w(const NoiseModel& model, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("noise_power: bandwidth must be > 0");
    if (!(model.temperature_k > 0.0))
        throw std::invalid_argument("noise_power: temperature must be > 0");
    if (model.kind == NoiseModel::Kind::ClassicalKtb)
        return kBoltzmann * model.temperature_k * bandwidth_hz;
    if (!(model.center_frequency_hz > 0.0))
        throw std::invalid_argument("noise_power: center frequency must be > 0");
    const double x = kPlanck * model.center_frequency_hz / (kBoltzmann * model.temperature_k);
    return kPlanck * model.center_frequency_hz * bandwidth_hz / std::expm1(x);
}

double mean_delay_s(const std::vector<PathComponent>& paths, const PdpOptions& opts) {
    return path_moments(paths, opts).mean;
}

double mean_delay_s(const ChannelImpulseResponse& cir, const PdpOptions& opts) {
    return cir_moments(cir, opts).mean;
}

double rms_delay_spread_s(const std::vector<PathComponent>& paths, const PdpOptions& opts) {
    return path_moments(paths, opts).spread;
}

double rms_delay_spread_s(const ChannelImpulseResponse& cir, const PdpOptions& opts) {
    return cir_moments(cir, opts).spread;
}

double received_energy(const std::vector<PathComponent>& paths) {
    double e = 0.0;
    for (const auto& p : paths) e += std::norm(p.amplitude);
    return e;
}

double received_energy(const ChannelImpulseResponse& cir) { return cir.energy(); }

double received_power_w(double channel_energy, double p_tx_w) {
    if (!(p_tx_w > 0.0)) throw std::invalid_argument("received_power: p_tx must be > 0");
    if (channel_energy < 0.0) throw std::invalid_argument("received_power: negative energy");
    return p_tx_w * channel_energy;
}

double watts_to_dbm(double power_w) {
    if (power_w <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(power_w / 1e-3);
}

double snr_db(double channel_energy, double p_tx_w, const NoiseModel& model,
              double bandwidth_hz) {
    if (!(p_tx_w > 0.0)) throw std::invalid_argument("snr: p_tx must be > 0");
    if (channel_energy < 0.0) throw std::invalid_argument("snr: negative channel energy");
    const double noise = noise_power_w(model, bandwidth_hz);
    if (channel_energy == 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(p_tx_w * channel_energy / noise);
}

double coherence_bandwidth_hz(double rms_delay_spread) {
    if (rms_delay_spread < 0.0) throw std::invalid_argument("coherence bandwidth: negative spread");
    if (rms_delay_spread == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / rms_delay_spread;
}

LinkMetrics compute_link_metrics(const std::string& label, double distance_m,
                                 const std::vector<PathComponent>& paths, double p_tx_w,
                                 const std::vector<NoiseModel>& noise_models,
                                 const std::vector<double>& bandwidths_hz,
                                 const PdpOptions& opts) {
    LinkMetrics m;
    m.label = label;
    m.distance_m = distance_m;
    m.path_count = paths.size();

    if (paths.empty() || received_energy(paths) == 0.0) {
        m.mean_delay_s = std::numeric_limits<double>::quiet_NaN();
        m.rms_delay_spread_s = std::numeric_limits<double>::quiet_NaN();
        m.received_energy = 0.0;
        m.coherence_bandwidth_hz = std::numeric_limits<double>::quiet_NaN();
    } else {
        const Moments mom = path_moments(paths, opts);
        m.mean_delay_s = mom.mean;
        m.rms_delay_spread_s = mom.spread;
        m.received_energy = received_energy(paths);
        m.coherence_bandwidth_hz = coherence_bandwidth_hz(mom.spread);
    }

    for (const NoiseModel& model : noise_models) {
        for (double b : bandwidths_hz) {
            m.snr.push_back({model, b, snr_db(m.received_energy, p_tx_w, model, b)});
        }
    }
    return m;
}

} // namespace cryochan
