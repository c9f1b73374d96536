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

#include <benchmark/benchmark.h>

#include <random>

#include "cryochan/channel.hpp"
#include "cryochan/metrics.hpp"
#include "cryochan/propagation.hpp"

using namespace cryochan;

namespace {

TraceContext isotropic_ctx() {
    TraceContext ctx;
    ctx.frequency_hz = 28e9;
    ctx.tx_antenna = AntennaModel::isotropic();
    ctx.rx_antenna = AntennaModel::isotropic();
    return ctx;
}

void BM_SceneIntersect(benchmark::State& state) {
    const Scene scene = build_cryostat_scene(CryostatParams{});
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::pair<Vec3, Vec3>> rays;
    for (int i = 0; i < 1024; ++i) {
        Vec3 p{0.1 * u(rng), 0.1 * u(rng), 0.35 + 0.05 * u(rng)};
        rays.emplace_back(p, normalized(Vec3{u(rng), u(rng), u(rng) + 1e-3}));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [p, d] = rays[i++ & 1023];
        benchmark::DoNotOptimize(scene.intersect(p, d));
    }
}
BENCHMARK(BM_SceneIntersect);

void BM_FresnelBounce(benchmark::State& state) {
    const Material cu = Material::copper_4k();
    double cos_inc = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bounce_coefficient(cu, 28e9, cos_inc));
        cos_inc += 1e-4;
        if (cos_inc > 1.0) cos_inc = 0.1;
    }
}
BENCHMARK(BM_FresnelBounce);

void BM_TraceImagesBox(benchmark::State& state) {
    const Scene box = build_box_scene({0.3, 0.3, 0.15}, Material::pec());
    const auto ctx = isotropic_ctx();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            trace_images(box, ctx, {0.081, 0.093, 0.052}, {0.211, 0.177, 0.094},
                         static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_TraceImagesBox)->Arg(2)->Arg(3)->Arg(4);

void BM_TraceRaysCryostat(benchmark::State& state) {
    const Scene scene = build_cryostat_scene(CryostatParams{});
    const auto ctx = isotropic_ctx();
    const auto layout = default_cryostat_layout(CryostatParams{}, 28e9);
    std::vector<Vec3> rx;
    for (const auto& r : layout.rx_positions) rx.push_back(r.position);
    RayLaunchParams params;
    params.ray_count = state.range(0);
    params.max_bounces = 12;
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_rays_multi(scene, ctx, layout.tx_position, rx, params));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TraceRaysCryostat)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SynthesizeCir(benchmark::State& state) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> delay(0.0, 10e-9);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::vector<PathComponent> paths;
    for (int i = 0; i < 64; ++i) {
        PathComponent p;
        p.delay_s = delay(rng);
        p.amplitude = std::polar(1e-3, phase(rng));
        paths.push_back(p);
    }
    CirParams params;
    params.center_frequency_hz = 28e9;
    params.bandwidth_hz = 5e9;
    params.sample_interval_s = 20e-12;
    params.duration_s = minimum_cir_duration(paths, params);
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize_cir(paths, params));
    }
}
BENCHMARK(BM_SynthesizeCir);

} // namespace

BENCHMARK_MAIN();
