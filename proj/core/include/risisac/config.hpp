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

#include "risisac/geometry_types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace risisac
{
    enum class Scheme
    {
        Proposed,
        RandomRis,
        FullIsac,   // alpha pinned to 0
        EqualSplit, // alpha pinned to 0.5
        FullSo      // alpha pinned to 1, rate constraints dropped
    };

    std::string to_string(Scheme s);
    std::optional<Scheme> parse_scheme(const std::string &name);

    // How the IIoT-(II) interference enters the IIoT-(I) SINR.
    enum class InterferenceSum
    {
        Coherent,  // |f^H sum_k hbar_k|^2 p_1, the printed form
        Incoherent // sum_k |f^H hbar_k|^2 p_k
    };

    // N-dependence of the FIM prefactor.
    enum class FimScaling
    {
        PerAntenna,      // 8 pi^2 beta^2 |f^H a|^2 T B / (3 N sigma^2)
        SquaredAntennas // 8 pi^2 N^2 beta^2 |f^H a|^2 T B / (3 sigma^2)
    };

    enum class SweepVariable
    {
        None,
        RisElements,  // M
        DevicePower,  // p_k in dBm
        DeviceRate,   // R_k^th in bit/s
        RisX          // x coordinate of the RIS center
    };

    std::string to_string(SweepVariable v);
    std::optional<SweepVariable> parse_sweep_variable(const std::string &name);

    struct AlgorithmKnobs
    {
        double grid_step = 0.01;
        double epsilon = 1e-3;
        int max_iterations = 50;
        int randomization_samples = 200;
        double rank_one_threshold = 0.99;
        double sdp_tolerance = 1e-9;
        int sdp_max_iterations = 200;
        double feasibility_tolerance = 1e-6;
        double psd_tolerance = 1e-7;
        InterferenceSum interference = InterferenceSum::Coherent;
        FimScaling fim_scaling = FimScaling::PerAntenna;
    };

    /// Complete description of one simulation scenario. Defaults reproduce the
    /// reference industrial set-up (28 GHz, 8-antenna AP, 32-element RIS, 3 far devices).
    struct ScenarioConfig
    {
        // radio
        double carrier_hz = 28e9;
        double bandwidth_hz = 50e6;
        double band_offset_hz = 5e7;
        double rho_so = 1e-9;   // W/Hz
        double rho_isac = 1e-10; // W/Hz
        double sigma2_dbm = -75.0;
        double sigma_tau2 = 1.2e-18; // s^2
        double beta_s = 2e-5;
        double duration_s = 0.1e-6;

        // link budget
        double p_s_dbm = 15.0;
        std::vector<double> p_k_dbm{15.0}; // one entry broadcast to all devices, or one per device
        double rate_s_th = 5e6;
        double rate_k_th = 2e6;

        // arrays
        int ap_antennas = 8;
        double ap_aperture_m = 0.5;
        int ris_elements = 32;
        std::optional<double> ris_spacing_m; // half wavelength when unset

        // geometry
        Position ap{0.0, 0.0, 5.0};
        Position target{20.0, 10.0, 0.0};
        Position ris{25.0, 0.0, 10.0};
        int devices = 3;
        double device_radius_m = 80.0;
        double device_arc_start_deg = 0.0;
        double device_arc_end_deg = 360.0;
        double device_min_separation_m = 1.0;

        // experiment
        std::vector<Scheme> schemes{Scheme::Proposed};
        SweepVariable sweep = SweepVariable::None;
        std::vector<double> sweep_values;
        std::vector<std::uint64_t> seeds{1};

        AlgorithmKnobs knobs;

        double wavelength() const;
        double ris_spacing() const;
        double device_power_w(std::size_t k) const;

        /// Throws Error{ValidationError} naming the first violated invariant.
        void validate() const;

        /// Copy with the sweep variable set to `value`.
        ScenarioConfig at_sweep_value(double value) const;

        /// Canonical key=value text covering every field; stable across runs.
        std::string canonical_text() const;
    };

    /// Rows x cols of the RIS grid: sqrt(M) x sqrt(M), or s x 2s when M = 2 s^2.
    std::optional<std::pair<int, int>> ris_grid_shape(int elements);
} // namespace risisac
