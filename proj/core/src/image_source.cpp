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
#include <cmath>
#include <stdexcept>

#include "cryochan/constants.hpp"
#include "cryochan/errors.hpp"
#include "cryochan/propagation.hpp"

namespace cryochan {

std::complex<double> bounce_coefficient(const Material& m, double frequency_hz,
                                        double cos_incidence) {
    if (m.perfect_conductor) return {-1.0, 0.0};
    cos_incidence = std::clamp(cos_incidence, 1e-12, 1.0);
    const double theta = std::acos(cos_incidence);
    const std::complex<double> te = reflection_coefficient(m, frequency_hz, theta, Polarization::TE);
    const std::complex<double> tm = reflection_coefficient(m, frequency_hz, theta, Polarization::TM);
    // Unpolarized power average, phased like the TE coefficient. Keeps the
    // bounce factor reciprocal and |.| <= 1 without vector polarization
    // tracking.
    const double mag = std::sqrt(0.5 * (std::norm(te) + std::norm(tm)));
    return std::polar(mag, std::arg(te));
}

namespace {

struct Plane {
    Vec3 point;
    Vec3 normal; // unit
    int surface_index;
};

Vec3 mirror_point(const Vec3& p, const Plane& pl) {
    return p - 2.0 * dot(p - pl.point, pl.normal) * pl.normal;
}

Plane plane_of(const Surface& s, int index) {
    if (const auto* disc = std::get_if<Disc>(&s.shape))
        return {disc->center, normalized(disc->normal), index};
    const auto& r = std::get<Rectangle>(s.shape);
    return {r.corner, normalized(cross(r.edge_u, r.edge_v)), index};
}

// Fraction along a->b where the segment crosses the plane, if it does.
std::optional<double> crossing_parameter(const Vec3& a, const Vec3& b, const Plane& pl) {
    const double da = dot(a - pl.point, pl.normal);
    const double db = dot(b - pl.point, pl.normal);
    const double denom = da - db;
    if (std::abs(denom) < 1e-18) return std::nullopt; // segment parallel / in plane
    const double t = da / denom;
    if (t < 0.0 || t > 1.0) return std::nullopt;
    return t;
}

struct PathAccumulator {
    const Scene& scene;
    const TraceContext& ctx;
    Vec3 tx, rx;
    double lambda;
    std::vector<Plane> planes;
    std::vector<PathComponent> out;

    // Back-traces the image sequence into reflection points and validates
    // each segment against every plane (visibility in the infinite-plane
    // model: a blocked crossing kills the path).
    void try_sequence(const std::vector<int>& seq, const std::vector<Vec3>& images) {
        const int k = static_cast<int>(seq.size());
        std::vector<Vec3> points(static_cast<std::size_t>(k) + 2);
        points[static_cast<std::size_t>(k) + 1] = rx;
        Vec3 target = rx;
        for (int j = k; j >= 1; --j) {
            const Plane& pl = planes[static_cast<std::size_t>(seq[static_cast<std::size_t>(j) - 1])];
            const auto t = crossing_parameter(images[static_cast<std::size_t>(j)], target, pl);
            constexpr double t_margin = 1e-9;
            if (!t || *t < t_margin || *t > 1.0 - t_margin) return;
            const Vec3 hit = images[static_cast<std::size_t>(j)] +
                             *t * (target - images[static_cast<std::size_t>(j)]);
            points[static_cast<std::size_t>(j)] = hit;
            target = hit;
        }
        points[0] = tx;

        // Occlusion: no interior crossing of any plane on any segment.
        for (int j = 0; j <= k; ++j) {
            const Vec3& a = points[static_cast<std::size_t>(j)];
            const Vec3& b = points[static_cast<std::size_t>(j) + 1];
            for (const Plane& pl : planes) {
                const auto t = crossing_parameter(a, b, pl);
                if (t && *t > 1e-9 && *t < 1.0 - 1e-9) return;
            }
        }

        double total = 0.0;
        for (int j = 0; j <= k; ++j)
            total += distance(points[static_cast<std::size_t>(j)], points[static_cast<std::size_t>(j) + 1]);
        if (total < kGeometricEpsilon) return;

        std::complex<double> gamma{1.0, 0.0};
        for (int j = 1; j <= k; ++j) {
            const Plane& pl = planes[static_cast<std::size_t>(seq[static_cast<std::size_t>(j) - 1])];
            const Vec3 dir = normalized(points[static_cast<std::size_t>(j)] -
                                        points[static_cast<std::size_t>(j) - 1]);
            const double cos_inc = std::abs(dot(dir, pl.normal));
            gamma *= bounce_coefficient(scene.surfaces[static_cast<std::size_t>(pl.surface_index)].material,
                                        ctx.frequency_hz, cos_inc);
        }

        const Vec3 departure = normalized(points[1] - points[0]);
        const Vec3 arrival = normalized(points[static_cast<std::size_t>(k) + 1] -
                                        points[static_cast<std::size_t>(k)]);
        const double g = gain(ctx.tx_antenna, departure) * gain(ctx.rx_antenna, arrival);
        const double spreading = lambda / (4.0 * kPi * total);
        const double phase = -2.0 * kPi * ctx.frequency_hz * total / kSpeedOfLight;

        PathComponent pc;
        pc.delay_s = total / kSpeedOfLight;
        pc.amplitude = gamma * spreading * std::sqrt(g) * std::polar(1.0, phase);
        pc.bounce_count = k;
        pc.departure = departure;
        pc.arrival = arrival;
        if (std::abs(pc.amplitude) == 0.0) return; // fully nulled, not a physical path
        pc.bounce_surfaces.reserve(seq.size());
        for (int s : seq) pc.bounce_surfaces.push_back(planes[static_cast<std::size_t>(s)].surface_index);
        out.push_back(std::move(pc));
    }

    void enumerate(std::vector<int>& seq, std::vector<Vec3>& images, int remaining) {
        try_sequence(seq, images);
        if (remaining == 0) return;
        for (int i = 0; i < static_cast<int>(planes.size()); ++i) {
            if (!seq.empty() && seq.back() == i) continue; // no immediate re-reflection
            seq.push_back(i);
            images.push_back(mirror_point(images.back(), planes[static_cast<std::size_t>(i)]));
            enumerate(seq, images, remaining - 1);
            images.pop_back();
            seq.pop_back();
        }
    }
};

} // namespace

std::vector<PathComponent> trace_images(const Scene& scene, const TraceContext& ctx,
                                        const Vec3& tx, const Vec3& rx, int max_order) {
    if (max_order < 0 || max_order > 6)
        throw std::invalid_argument("trace_images: max_order must lie in [0, 6]");
    if (distance(tx, rx) < kGeometricEpsilon)
        throw std::invalid_argument("trace_images: TX and RX coincide");
    for (const Surface& s : scene.surfaces) {
        if (!s.is_planar())
            throw UnsupportedSceneError("trace_images: non-planar surface '" + s.label +
                                        "' (image engine handles planar scenes only)");
    }

    PathAccumulator acc{scene, ctx, tx, rx, wavelength_m(ctx.frequency_hz), {}, {}};
    acc.planes.reserve(scene.surfaces.size());
    for (int i = 0; i < static_cast<int>(scene.surfaces.size()); ++i)
        acc.planes.push_back(plane_of(scene.surfaces[static_cast<std::size_t>(i)], i));

    std::vector<int> seq;
    std::vector<Vec3> images{tx};
    acc.enumerate(seq, images, max_order);

    std::sort(acc.out.begin(), acc.out.end(), [](const PathComponent& a, const PathComponent& b) {
        if (a.delay_s != b.delay_s) return a.delay_s < b.delay_s;
        if (a.bounce_count != b.bounce_count) return a.bounce_count < b.bounce_count;
        return a.bounce_surfaces < b.bounce_surfaces;
    });
    return acc.out;
}

} // namespace cryochan
