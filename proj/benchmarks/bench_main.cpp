// SPDX-License-Identifier: Apache-2.0
//
// risisac: RIS-assisted ISAC sensing-accuracy optimization toolkit
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

#include "risisac/metrics.hpp"
#include "risisac/optimizer.hpp"
#include "risisac/sdp.hpp"

#include <benchmark/benchmark.h>

using namespace risisac;

namespace
{
    Instance instance(int ris_elements)
    {
        ScenarioConfig c;
        c.ris_elements = ris_elements;
        return make_instance(c, 1);
    }

    void BM_Fim(benchmark::State &state)
    {
        const LinkBudget b = LinkBudget::from_config(ScenarioConfig{});
        double alpha = 0.0;
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(fim(alpha, 8.0, 2e-5, 8, b));
            alpha = alpha < 1.0 ? alpha + 0.01 : 0.0;
        }
    }
    BENCHMARK(BM_Fim);

    void BM_FimByIntegration(benchmark::State &state)
    {
        const LinkBudget b = LinkBudget::from_config(ScenarioConfig{});
        for (auto _ : state)
            benchmark::DoNotOptimize(fim_by_integration(0.37, 8.0, 2e-5, 8, b));
    }
    BENCHMARK(BM_FimByIntegration);

    void BM_BeamformingSdp(benchmark::State &state)
    {
        const Instance inst = instance(32);
        const SdpProblem p = build_p22(inst.channels, RisPhase::zeros(32), 0.5, inst.budget);
        for (auto _ : state)
            benchmark::DoNotOptimize(solve(p));
    }
    BENCHMARK(BM_BeamformingSdp)->Unit(benchmark::kMillisecond);

    void BM_PhaseSdp(benchmark::State &state)
    {
        const int m = static_cast<int>(state.range(0));
        const Instance inst = instance(m);
        const CVector f = inst.channels.a_ap_s / inst.channels.a_ap_s.norm();
        const SdpProblem p = build_p43(inst.channels, f, 0.5, inst.budget);
        for (auto _ : state)
            benchmark::DoNotOptimize(solve(p));
    }
    BENCHMARK(BM_PhaseSdp)->Arg(8)->Arg(18)->Arg(32)->Arg(50)->Unit(benchmark::kMillisecond);

    void BM_AlternatingOptimization(benchmark::State &state)
    {
        const Instance inst = instance(static_cast<int>(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(run_ao(inst, Scheme::Proposed, 1));
    }
    BENCHMARK(BM_AlternatingOptimization)->Arg(18)->Arg(32)->Unit(benchmark::kMillisecond)->Iterations(2);
} // namespace

BENCHMARK_MAIN();
