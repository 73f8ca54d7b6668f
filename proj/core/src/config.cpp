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

#include "risisac/config.hpp"
#include "risisac/error.hpp"
#include "risisac/geometry.hpp"
#include "risisac/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace risisac
{
    namespace
    {
        void require(bool condition, const std::string &what)
        {
            if (!condition)
                throw Error(ErrorCode::ValidationError, what);
        }

        bool finite(double v) { return std::isfinite(v); }

        std::string fmt_double(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }
    } // namespace

    std::string to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::Proposed:
            return "Proposed";
        case Scheme::RandomRis:
            return "RandomRis";
        case Scheme::FullIsac:
            return "FullIsac";
        case Scheme::EqualSplit:
            return "EqualSplit";
        case Scheme::FullSo:
            return "FullSo";
        }
        return "Unknown";
    }

    std::optional<Scheme> parse_scheme(const std::string &name)
    {
        for (auto s : {Scheme::Proposed, Scheme::RandomRis, Scheme::FullIsac, Scheme::EqualSplit, Scheme::FullSo})
            if (to_string(s) == name)
                return s;
        return std::nullopt;
    }

    std::string to_string(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::None:
            return "none";
        case SweepVariable::RisElements:
            return "M";
        case SweepVariable::DevicePower:
            return "p_k";
        case SweepVariable::DeviceRate:
            return "R_k_th";
        case SweepVariable::RisX:
            return "x_RIS";
        }
        return "none";
    }

    std::optional<SweepVariable> parse_sweep_variable(const std::string &name)
    {
        for (auto v : {SweepVariable::None, SweepVariable::RisElements, SweepVariable::DevicePower,
                       SweepVariable::DeviceRate, SweepVariable::RisX})
            if (to_string(v) == name)
                return v;
        return std::nullopt;
    }

    std::optional<std::pair<int, int>> ris_grid_shape(int elements)
    {
        if (elements < 1)
            return std::nullopt;
        const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(elements))));
        if (root * root == elements)
            return std::make_pair(root, root);
        if (elements % 2 == 0)
        {
            const int half = elements / 2;
            const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(half))));
            if (s * s == half)
                return std::make_pair(s, 2 * s);
        }
        return std::nullopt;
    }

    double ScenarioConfig::wavelength() const
    {
        return kSpeedOfLight / carrier_hz;
    }

    double ScenarioConfig::ris_spacing() const
    {
        return ris_spacing_m.value_or(0.5 * wavelength());
    }

    double ScenarioConfig::device_power_w(std::size_t k) const
    {
        const double dbm = p_k_dbm.size() == 1 ? p_k_dbm.front() : p_k_dbm.at(k);
        return dbm_to_watt(dbm);
    }

    void ScenarioConfig::validate() const
    {
        require(finite(carrier_hz) && carrier_hz > 0.0, "carrier_frequency_hz must be positive");
        require(finite(bandwidth_hz) && bandwidth_hz > 0.0, "band.bandwidth_hz must be positive");
        require(finite(band_offset_hz), "band.offset_hz must be finite");
        require(finite(rho_so) && rho_so >= 0.0, "band.rho_so must be nonnegative");
        require(finite(rho_isac) && rho_isac >= 0.0, "band.rho_isac must be nonnegative");
        require(finite(sigma2_dbm), "noise.sigma2_dbm must be finite");
        require(finite(sigma_tau2) && sigma_tau2 >= 0.0, "sensing.sigma_tau2 must be nonnegative");
        require(finite(beta_s), "sensing.beta_s must be finite");
        require(finite(duration_s) && duration_s > 0.0, "sensing.duration_s must be positive");
        require(finite(p_s_dbm), "power.p_s_dbm must be finite");
        require(!p_k_dbm.empty(), "power.p_k_dbm must not be empty");
        for (double p : p_k_dbm)
            require(finite(p), "power.p_k_dbm entries must be finite");
        require(p_k_dbm.size() == 1 || static_cast<int>(p_k_dbm.size()) == devices,
                "power.p_k_dbm must hold one value or one per device");
        require(finite(rate_s_th) && rate_s_th >= 0.0, "rate.s_th_bps must be nonnegative");
        require(finite(rate_k_th) && rate_k_th >= 0.0, "rate.k_th_bps must be nonnegative");

        require(ap_antennas >= 1, "ap.antennas must be at least 1");
        require(finite(ap_aperture_m) && ap_aperture_m >= 0.0, "ap.aperture_m must be nonnegative");
        require(ap_antennas == 1 || ap_aperture_m > 0.0, "ap.aperture_m must be positive for N > 1");
        require(ris_grid_shape(ris_elements).has_value(),
                "ris.elements = " + std::to_string(ris_elements) +
                    " is not a perfect square (or twice one)");
        if (ris_spacing_m)
            require(finite(*ris_spacing_m) && *ris_spacing_m > 0.0, "ris.spacing_m must be positive");

        for (const Position &p : {ap, target, ris})
            require(finite(p.x) && finite(p.y) && finite(p.z), "positions must be finite");
        require(devices >= 0, "devices.count must be nonnegative");
        require(finite(device_radius_m) && device_radius_m > 0.0, "devices.radius_m must be positive");
        require(finite(device_arc_start_deg) && finite(device_arc_end_deg) &&
                    device_arc_end_deg > device_arc_start_deg &&
                    device_arc_end_deg - device_arc_start_deg <= 360.0,
                "devices.arc_deg must be an increasing pair spanning at most 360 degrees");
        require(finite(device_min_separation_m) && device_min_separation_m >= 0.0,
                "devices.min_separation_m must be nonnegative");

        require(!schemes.empty(), "schemes must not be empty");
        require(!seeds.empty(), "seeds must not be empty");
        if (sweep != SweepVariable::None)
        {
            require(!sweep_values.empty(), "sweep.values must not be empty when sweep.variable is set");
            for (double v : sweep_values)
            {
                require(finite(v), "sweep.values entries must be finite");
                if (sweep == SweepVariable::RisElements)
                    require(v == std::floor(v) && ris_grid_shape(static_cast<int>(v)).has_value(),
                            "sweep value " + fmt_double(v) + " is not a valid RIS element count");
                if (sweep == SweepVariable::DeviceRate)
                    require(v >= 0.0, "rate sweep values must be nonnegative");
            }
        }

        require(finite(knobs.grid_step) && knobs.grid_step > 0.0 && knobs.grid_step <= 0.25,
                "algorithm.grid_step must lie in (0, 0.25]");
        require(finite(knobs.epsilon) && knobs.epsilon > 0.0, "algorithm.epsilon must be positive");
        require(knobs.max_iterations >= 1, "algorithm.max_iterations must be at least 1");
        require(knobs.randomization_samples >= 1, "algorithm.randomization_samples must be at least 1");
        require(knobs.rank_one_threshold > 0.0 && knobs.rank_one_threshold <= 1.0,
                "algorithm.rank_one_threshold must lie in (0, 1]");
        require(knobs.sdp_tolerance > 0.0, "algorithm.sdp_tolerance must be positive");
        require(knobs.sdp_max_iterations >= 1, "algorithm.sdp_max_iterations must be at least 1");
        require(knobs.feasibility_tolerance > 0.0, "algorithm.feasibility_tolerance must be positive");
        require(knobs.psd_tolerance > 0.0, "algorithm.psd_tolerance must be positive");
    }

    ScenarioConfig ScenarioConfig::at_sweep_value(double value) const
    {
        ScenarioConfig out = *this;
        switch (sweep)
        {
        case SweepVariable::None:
            break;
        case SweepVariable::RisElements:
            out.ris_elements = static_cast<int>(std::lround(value));
            break;
        case SweepVariable::DevicePower:
            out.p_k_dbm = {value};
            break;
        case SweepVariable::DeviceRate:
            out.rate_k_th = value;
            break;
        case SweepVariable::RisX:
            out.ris.x = value;
            break;
        }
        out.sweep = SweepVariable::None;
        out.sweep_values.clear();
        return out;
    }

    std::string ScenarioConfig::canonical_text() const
    {
        std::ostringstream os;
        auto kv = [&os](const char *key, double v) { os << key << '=' << fmt_double(v) << '\n'; };
        auto pos = [&os](const char *key, const Position &p) {
            os << key << "=[" << fmt_double(p.x) << ',' << fmt_double(p.y) << ',' << fmt_double(p.z) << "]\n";
        };
        kv("carrier_frequency_hz", carrier_hz);
        kv("band.bandwidth_hz", bandwidth_hz);
        kv("band.offset_hz", band_offset_hz);
        kv("band.rho_so", rho_so);
        kv("band.rho_isac", rho_isac);
        kv("noise.sigma2_dbm", sigma2_dbm);
        kv("sensing.sigma_tau2", sigma_tau2);
        kv("sensing.beta_s", beta_s);
        kv("sensing.duration_s", duration_s);
        kv("power.p_s_dbm", p_s_dbm);
        os << "power.p_k_dbm=[";
        for (std::size_t i = 0; i < p_k_dbm.size(); ++i)
            os << (i ? "," : "") << fmt_double(p_k_dbm[i]);
        os << "]\n";
        kv("rate.s_th_bps", rate_s_th);
        kv("rate.k_th_bps", rate_k_th);
        kv("ap.antennas", ap_antennas);
        kv("ap.aperture_m", ap_aperture_m);
        kv("ris.elements", ris_elements);
        kv("ris.spacing_m", ris_spacing());
        pos("ap.position", ap);
        pos("target.position", target);
        pos("ris.position", ris);
        kv("devices.count", devices);
        kv("devices.radius_m", device_radius_m);
        os << "devices.arc_deg=[" << fmt_double(device_arc_start_deg) << ',' << fmt_double(device_arc_end_deg)
           << "]\n";
        kv("devices.min_separation_m", device_min_separation_m);
        kv("algorithm.grid_step", knobs.grid_step);
        kv("algorithm.epsilon", knobs.epsilon);
        kv("algorithm.max_iterations", knobs.max_iterations);
        kv("algorithm.randomization_samples", knobs.randomization_samples);
        kv("algorithm.rank_one_threshold", knobs.rank_one_threshold);
        kv("algorithm.sdp_tolerance", knobs.sdp_tolerance);
        kv("algorithm.sdp_max_iterations", knobs.sdp_max_iterations);
        kv("algorithm.feasibility_tolerance", knobs.feasibility_tolerance);
        kv("algorithm.psd_tolerance", knobs.psd_tolerance);
        os << "model.interference_sum=" << (knobs.interference == InterferenceSum::Coherent ? "coherent" : "incoherent")
           << '\n';
        os << "model.fim_scaling=" << (knobs.fim_scaling == FimScaling::PerAntenna ? "per_antenna" : "squared_antennas")
           << '\n';
        return os.str();
    }
} // namespace risisac
