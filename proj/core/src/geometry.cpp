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

#include "risisac/geometry.hpp"
#include "risisac/error.hpp"
#include "risisac/linalg.hpp"

#include <cmath>

namespace risisac
{
    ArrayLayout element_positions(const ScenarioConfig &config)
    {
        if (config.ap_antennas < 1)
            throw Error(ErrorCode::InvalidConfig, "AP needs at least one antenna");
        const auto shape = ris_grid_shape(config.ris_elements);
        if (!shape)
            throw Error(ErrorCode::InvalidConfig,
                        "RIS element count " + std::to_string(config.ris_elements) + " is not a perfect square");

        ArrayLayout layout;
        layout.wavelength = config.wavelength();
        layout.ap_center = config.ap;
        layout.ris_center = config.ris;
        layout.ris_rows = shape->first;
        layout.ris_cols = shape->second;
        layout.ris_spacing = config.ris_spacing();

        const int n_ap = config.ap_antennas;
        layout.ap_spacing = n_ap > 1 ? config.ap_aperture_m / (n_ap - 1) : 0.0;
        layout.aperture = n_ap > 1 ? config.ap_aperture_m : 0.0;

        layout.ap_antennas.reserve(n_ap);
        const double ap_mid = 0.5 * (n_ap - 1);
        for (int n = 0; n < n_ap; ++n)
            layout.ap_antennas.push_back(
                {config.ap.x, config.ap.y, config.ap.z + (n - ap_mid) * layout.ap_spacing});

        layout.ris_elements.reserve(config.ris_elements);
        const double row_mid = 0.5 * (layout.ris_rows - 1);
        const double col_mid = 0.5 * (layout.ris_cols - 1);
        for (int r = 0; r < layout.ris_rows; ++r)
            for (int c = 0; c < layout.ris_cols; ++c)
                layout.ris_elements.push_back({config.ris.x + (c - col_mid) * layout.ris_spacing,
                                               config.ris.y + (r - row_mid) * layout.ris_spacing, config.ris.z});
        return layout;
    }

    double distance(const Position &a, const Position &b)
    {
        return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
    }

    double rayleigh_distance(double aperture, double wavelength)
    {
        return 2.0 * aperture * aperture / wavelength;
    }

    FieldRegime classify_link(double center_distance, double rayleigh)
    {
        return center_distance < rayleigh ? FieldRegime::NearField : FieldRegime::FarField;
    }

    const char *to_string(FieldRegime regime)
    {
        return regime == FieldRegime::NearField ? "near" : "far";
    }

    std::vector<Position> place_devices(const ScenarioConfig &config, Rng &rng)
    {
        constexpr int kMaxDraws = 10000;
        const double deg = kPi / 180.0;
        std::vector<Position> occupied{{config.ap.x, config.ap.y, 0.0},
                                       {config.target.x, config.target.y, 0.0},
                                       {config.ris.x, config.ris.y, 0.0}};
        std::vector<Position> devices;
        devices.reserve(config.devices);
        for (int k = 0; k < config.devices; ++k)
        {
            bool placed = false;
            for (int attempt = 0; attempt < kMaxDraws && !placed; ++attempt)
            {
                const double phi = rng.uniform(config.device_arc_start_deg, config.device_arc_end_deg) * deg;
                const Position p{config.ap.x + config.device_radius_m * std::cos(phi),
                                 config.ap.y + config.device_radius_m * std::sin(phi), 0.0};
                bool clear = true;
                for (const auto &q : occupied)
                    clear = clear && distance(p, q) >= config.device_min_separation_m;
                if (clear)
                {
                    devices.push_back(p);
                    occupied.push_back(p);
                    placed = true;
                }
            }
            if (!placed)
                throw Error(ErrorCode::InvalidConfig, "could not place device " + std::to_string(k) +
                                                          " with the requested minimum separation");
        }
        return devices;
    }
} // namespace risisac
