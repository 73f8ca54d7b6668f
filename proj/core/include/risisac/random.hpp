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

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace risisac
{
    /// Seeded generator with distribution code that is fixed here rather than left to the
    /// standard library, so streams reproduce bit-for-bit across toolchains.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        // Independent stream `stream` of run seed `seed`.
        static Rng stream(std::uint64_t seed, std::uint64_t stream);

        // Uniform on [0, 1).
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        // Standard normal (Box-Muller, no caching).
        double normal();

        // Circularly symmetric CN(0, 1).
        std::complex<double> complex_normal();

    private:
        std::mt19937_64 engine_;
    };

    // Fixed stream ids so every scheme sees the same draws for a given seed.
    namespace streams
    {
        inline constexpr std::uint64_t kDevicePlacement = 1;
        inline constexpr std::uint64_t kInitialPhase = 2;
        inline constexpr std::uint64_t kRandomization = 3;
    } // namespace streams
} // namespace risisac
