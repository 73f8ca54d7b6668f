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

#include "risisac/config.hpp"
#include "risisac/geometry_types.hpp"
#include "risisac/random.hpp"

#include <span>
#include <vector>

namespace risisac
{
    inline constexpr double kSpeedOfLight = 299792458.0;

    /// Element coordinates of the AP uniform linear array and the RIS planar grid.
    ///
    /// The AP array lies along z, centred on the AP position, with N elements at offsets
    /// (n - (N-1)/2) d, so the aperture is exactly (N-1) d. The RIS grid lies in the
    /// horizontal plane through the RIS centre; element m = r * cols + c sits at
    /// x + (c - (cols-1)/2) w, y + (r - (rows-1)/2) w.
    struct ArrayLayout
    {
        std::vector<Position> ap_antennas;
        std::vector<Position> ris_elements;
        Position ap_center;
        Position ris_center;
        int ris_rows = 1;
        int ris_cols = 1;
        double ap_spacing = 0.0;  // d
        double ris_spacing = 0.0; // w
        double aperture = 0.0;    // D = (N-1) d
        double wavelength = 0.0;
    };

    ArrayLayout element_positions(const ScenarioConfig &config);

    double distance(const Position &a, const Position &b);

    /// 2 D^2 / lambda
    double rayleigh_distance(double aperture, double wavelength);

    /// NearField iff center_distance < rayleigh; the boundary itself is far field.
    FieldRegime classify_link(double center_distance, double rayleigh);

    const char *to_string(FieldRegime regime);

    /// Places the IIoT-(II) devices on the z = 0 plane at the configured ground radius
    /// around the AP, azimuth uniform on the configured arc. Draws that land within the
    /// minimum separation of the AP, target, RIS or an earlier device are redrawn.
    std::vector<Position> place_devices(const ScenarioConfig &config, Rng &rng);
} // namespace risisac
