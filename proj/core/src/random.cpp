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

#include "risisac/random.hpp"

#include <array>
#include <cmath>

namespace risisac
{
    Rng Rng::stream(std::uint64_t seed, std::uint64_t stream)
    {
        const std::array<std::uint32_t, 4> words{
            static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        std::seed_seq seq(words.begin(), words.end());
        std::array<std::uint32_t, 2> out{};
        seq.generate(out.begin(), out.end());
        return Rng((static_cast<std::uint64_t>(out[0]) << 32) | out[1]);
    }

    double Rng::normal()
    {
        constexpr double two_pi = 6.28318530717958647692;
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    std::complex<double> Rng::complex_normal()
    {
        const double re = normal();
        const double im = normal();
        return {re * M_SQRT1_2, im * M_SQRT1_2};
    }
} // namespace risisac
