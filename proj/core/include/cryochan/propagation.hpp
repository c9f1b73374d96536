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

#include "cryochan/antenna.hpp"
#include "cryochan/constants.hpp"
#include "cryochan/scene.hpp"

namespace cryochan {

/// One resolved specular multipath component.
///
/// amplitude is the complex field-transfer coefficient: spreading loss
/// lambda/(4 pi d), sqrt of both antenna gains, the per-bounce reflection
/// product, and the propagation phase exp(-j 2 pi f d / c).
struct PathComponent {
    double delay_s = 0.0;
    std::complex<double> amplitude;
    int bounce_count = 0;
    Vec3 departure; // unit propagation direction leaving TX
    Vec3 arrival;   // unit propagation direction entering RX
    /// Scene surface index per bounce, in order (the bounce signature).
    std::vector<int> bounce_surfaces;
};

struct TraceContext {
    double frequency_hz = 28e9;
    AntennaModel tx_antenna;
    AntennaModel rx_antenna;
};

/// Scalar per-bounce reflection coefficient used by both engines:
/// unpolarized power average of the TE/TM Fresnel coefficients with the TE
/// phase as reference. cos_incidence in (0, 1].
std::complex<double> bounce_coefficient(const Material& m, double frequency_hz,
                                        double cos_incidence);

/// Exact image-source enumeration over planar scenes (discs and rectangles
/// are treated as infinite planes; any cylinder raises
/// UnsupportedSceneError). Returns every valid specular path up to
/// max_order reflections (max_order <= 6), occlusion-checked segment by
/// segment, sorted by delay.
std::vector<PathComponent> trace_images(const Scene& scene, const TraceContext& ctx,
                                        const Vec3& tx, const Vec3& rx, int max_order);

struct RayLaunchParams {
    long ray_count = 1000000; // >= 1e4
    int max_bounces = 12;
    /// Reception sphere radius; <= 0 resolves to lambda/2 at the trace
    /// frequency, and must stay below 10% of the scene diameter.
    double rx_radius_m = 0.0;
};

inline double default_rx_radius(double frequency_hz) {
    return 0.5 * kSpeedOfLight / frequency_hz;
}

/// Shooting-and-bouncing rays on a deterministic Fibonacci-sphere launch
/// grid. Rays reflect specularly with per-bounce Fresnel products; a ray
/// segment passing within rx_radius of RX contributes a path. Captures
/// sharing a bounce signature are duplicates of one specular path and the
/// geometrically closest is kept. Results are sorted by delay and
/// independent of thread scheduling.
std::vector<PathComponent> trace_rays(const Scene& scene, const TraceContext& ctx,
                                      const Vec3& tx, const Vec3& rx,
                                      const RayLaunchParams& params);

/// Same launch grid shared across several receivers (one tracing pass).
std::vector<std::vector<PathComponent>> trace_rays_multi(const Scene& scene,
                                                         const TraceContext& ctx,
                                                         const Vec3& tx,
                                                         std::span<const Vec3> rx,
                                                         const RayLaunchParams& params);

/// Variant with one antenna model per receiver (cross-polarization
/// studies); rx_antennas must match rx in length.
std::vector<std::vector<PathComponent>> trace_rays_multi(const Scene& scene,
                                                         const TraceContext& ctx,
                                                         const Vec3& tx,
                                                         std::span<const Vec3> rx,
                                                         std::span<const AntennaModel> rx_antennas,
                                                         const RayLaunchParams& params);

/// Direction of launch ray i on the Fibonacci sphere grid of n points.
Vec3 fibonacci_direction(long i, long n);

} // namespace cryochan
