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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "cryochan/constants.hpp"
#include "cryochan/propagation.hpp"

namespace cryochan {

Vec3 fibonacci_direction(long i, long n) {
    const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
    const double z = 1.0 - (2.0 * double(i) + 1.0) / double(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * double(i);
    return {r * std::cos(phi), r * std::sin(phi), z};
}

namespace {

struct Candidate {
    std::vector<int> signature; // bounce surface indices
    double path_length = 0.0;   // unfolded distance to closest approach
    double miss = 0.0;          // closest-approach distance to RX
    long ray_index = 0;
    Vec3 departure;
    Vec3 arrival;
    std::complex<double> gamma{1.0, 0.0};
};

struct LaunchConfig {
    const Scene* scene;
    const TraceContext* ctx;
    Vec3 tx;
    std::span<const Vec3> rx;
    long ray_count;
    int max_bounces;
    double rx_radius;
};

// Traces rays [begin, end) and appends capture candidates per receiver.
void trace_batch(const LaunchConfig& cfg, long begin, long end,
                 std::vector<std::vector<Candidate>>& per_rx) {
    const double radius2 = cfg.rx_radius * cfg.rx_radius;
    std::vector<int> signature;
    signature.reserve(static_cast<std::size_t>(cfg.max_bounces));

    for (long i = begin; i < end; ++i) {
        const Vec3 launch_dir = fibonacci_direction(i, cfg.ray_count);
        if (gain(cfg.ctx->tx_antenna, launch_dir) == 0.0) continue; // pattern null

        Vec3 p = cfg.tx;
        Vec3 d = launch_dir;
        double travelled = 0.0;
        std::complex<double> gamma{1.0, 0.0};
        signature.clear();

        for (int bounce = 0;; ++bounce) {
            const auto hit = cfg.scene->intersect(p, d);
            const double seg_end = hit ? hit->distance : std::numeric_limits<double>::infinity();

            for (std::size_t r = 0; r < cfg.rx.size(); ++r) {
                const Vec3 to_rx = cfg.rx[r] - p;
                const double s = dot(to_rx, d);
                if (s < 0.0 || s >= seg_end) continue;
                const double miss2 = norm_squared(to_rx - s * d);
                if (miss2 >= radius2) continue;
                const double length = travelled + s;
                if (length < kGeometricEpsilon) continue;
                per_rx[r].push_back(Candidate{signature, length, std::sqrt(miss2), i,
                                              launch_dir, d, gamma});
            }

            if (!hit || bounce == cfg.max_bounces) break;
            const double cos_inc = -dot(d, hit->normal);
            gamma *= bounce_coefficient(
                cfg.scene->surfaces[static_cast<std::size_t>(hit->surface_index)].material,
                cfg.ctx->frequency_hz, cos_inc);
            travelled += hit->distance;
            p = hit->point;
            d = normalized(reflect(d, hit->normal));
            signature.push_back(hit->surface_index);
        }
    }
}

std::vector<PathComponent> merge_candidates(std::vector<Candidate>& cands, const TraceContext& ctx,
                                            const AntennaModel& rx_antenna, double lambda) {
    // Captures sharing a bounce signature are duplicates of one specular
    // path; the geometrically closest wins. The surviving set is stable
    // under growing ray counts since the reachable signature set is fixed
    // by the geometry.
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.signature != b.signature) return a.signature < b.signature;
        if (a.miss != b.miss) return a.miss < b.miss;
        return a.ray_index < b.ray_index;
    });

    std::vector<PathComponent> out;
    std::size_t i = 0;
    while (i < cands.size()) {
        const Candidate& c = cands[i];
        std::size_t j = i + 1;
        while (j < cands.size() && cands[j].signature == c.signature) ++j;

        const double g = gain(ctx.tx_antenna, c.departure) * gain(rx_antenna, c.arrival);
        const double spreading = lambda / (4.0 * kPi * c.path_length);
        const double phase = -2.0 * kPi * ctx.frequency_hz * c.path_length / kSpeedOfLight;

        PathComponent pc;
        pc.delay_s = c.path_length / kSpeedOfLight;
        pc.amplitude = c.gamma * spreading * std::sqrt(g) * std::polar(1.0, phase);
        pc.bounce_count = static_cast<int>(c.signature.size());
        pc.departure = c.departure;
        pc.arrival = c.arrival;
        pc.bounce_surfaces = c.signature;
        i = j;
        if (std::abs(pc.amplitude) == 0.0) continue; // fully nulled, not a physical path
        out.push_back(std::move(pc));
    }

    std::sort(out.begin(), out.end(), [](const PathComponent& a, const PathComponent& b) {
        if (a.delay_s != b.delay_s) return a.delay_s < b.delay_s;
        if (a.bounce_count != b.bounce_count) return a.bounce_count < b.bounce_count;
        return a.bounce_surfaces < b.bounce_surfaces;
    });
    return out;
}

} // namespace

std::vector<std::vector<PathComponent>> trace_rays_multi(const Scene& scene,
                                                         const TraceContext& ctx,
                                                         const Vec3& tx,
                                                         std::span<const Vec3> rx,
                                                         const RayLaunchParams& params) {
    const std::vector<AntennaModel> models(rx.size(), ctx.rx_antenna);
    return trace_rays_multi(scene, ctx, tx, rx, models, params);
}

std::vector<std::vector<PathComponent>> trace_rays_multi(const Scene& scene,
                                                         const TraceContext& ctx,
                                                         const Vec3& tx,
                                                         std::span<const Vec3> rx,
                                                         std::span<const AntennaModel> rx_antennas,
                                                         const RayLaunchParams& params) {
    if (rx_antennas.size() != rx.size())
        throw std::invalid_argument("trace_rays: one antenna model per receiver required");
    if (params.ray_count < 10000)
        throw std::invalid_argument("trace_rays: ray_count must be >= 1e4");
    if (params.max_bounces < 0)
        throw std::invalid_argument("trace_rays: max_bounces must be >= 0");
    const double radius = params.rx_radius_m > 0.0 ? params.rx_radius_m
                                                   : default_rx_radius(ctx.frequency_hz);
    const double diameter = scene.diameter();
    if (diameter > 0.0 && radius > 0.1 * diameter)
        throw std::invalid_argument("trace_rays: reception sphere too coarse (rx_radius above "
                                    "10% of the scene diameter)");

    LaunchConfig cfg{&scene, &ctx, tx, rx, params.ray_count, params.max_bounces, radius};

    // Fixed batch decomposition keeps the candidate set independent of the
    // worker count and of scheduling.
    const long batch_count = std::min<long>(256, std::max<long>(1, params.ray_count / 4096));
    const long batch_size = (params.ray_count + batch_count - 1) / batch_count;

    std::vector<std::vector<std::vector<Candidate>>> batch_results(
        static_cast<std::size_t>(batch_count),
        std::vector<std::vector<Candidate>>(rx.size()));

    unsigned hw = std::thread::hardware_concurrency();
    const unsigned worker_count = std::clamp(hw == 0 ? 1u : hw, 1u, 16u);
    std::atomic<long> next_batch{0};
    auto work = [&]() {
        for (;;) {
            const long b = next_batch.fetch_add(1);
            if (b >= batch_count) return;
            const long begin = b * batch_size;
            const long end = std::min(params.ray_count, begin + batch_size);
            if (begin < end) trace_batch(cfg, begin, end, batch_results[static_cast<std::size_t>(b)]);
        }
    };
    std::vector<std::thread> workers;
    for (unsigned w = 1; w < worker_count; ++w) workers.emplace_back(work);
    work();
    for (auto& t : workers) t.join();

    const double lambda = wavelength_m(ctx.frequency_hz);
    std::vector<std::vector<PathComponent>> result(rx.size());
    for (std::size_t r = 0; r < rx.size(); ++r) {
        std::vector<Candidate> all;
        for (auto& batch : batch_results)
            all.insert(all.end(), std::make_move_iterator(batch[r].begin()),
                       std::make_move_iterator(batch[r].end()));
        result[r] = merge_candidates(all, ctx, rx_antennas[r], lambda);
    }
    return result;
}

std::vector<PathComponent> trace_rays(const Scene& scene, const TraceContext& ctx, const Vec3& tx,
                                      const Vec3& rx, const RayLaunchParams& params) {
    const Vec3 rx_array[] = {rx};
    return trace_rays_multi(scene, ctx, tx, rx_array, params)[0];
}

} // namespace cryochan
