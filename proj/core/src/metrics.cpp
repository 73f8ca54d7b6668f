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
#include "risisac/error.hpp"
#include "risisac/geometry.hpp"

#include <array>
#include <cmath>
#include <string>

namespace risisac
{
    namespace
    {
        void check_alpha_open(double alpha)
        {
            if (!(alpha >= 0.0 && alpha < 1.0))
                throw Error(ErrorCode::InvalidAlpha,
                            "SINR needs a nonempty ISAC band, got alpha = " + std::to_string(alpha));
        }

        double cube(double x) { return x * x * x; }

        double echo_floor(double alpha, const LinkGains &gains, const LinkBudget &budget)
        {
            const BandSplit split = band_split(alpha, budget);
            const double eta = eta_isac(alpha, budget.bandwidth, budget.sigma_tau2);
            return gains.target_response * gains.beta2 * eta * split.p_isac + (1.0 - alpha) * budget.sigma2;
        }
    } // namespace

    LinkBudget LinkBudget::from_config(const ScenarioConfig &config)
    {
        LinkBudget b;
        b.p_s = dbm_to_watt(config.p_s_dbm);
        for (int k = 0; k < config.devices; ++k)
            b.p_k.push_back(config.device_power_w(static_cast<std::size_t>(k)));
        b.sigma2 = dbm_to_watt(config.sigma2_dbm);
        b.sigma_tau2 = config.sigma_tau2;
        b.rho_so = config.rho_so;
        b.rho_isac = config.rho_isac;
        b.bandwidth = config.bandwidth_hz;
        b.band_offset = config.band_offset_hz;
        b.duration = config.duration_s;
        b.rate_s_th = config.rate_s_th;
        b.rate_k_th = config.rate_k_th;
        return b;
    }

    BandSplit band_split(double alpha, const LinkBudget &budget)
    {
        BandSplit s;
        s.alpha = alpha;
        s.b_so = alpha * budget.bandwidth;
        s.b_isac = (1.0 - alpha) * budget.bandwidth;
        s.p_so = s.b_so * budget.rho_so;
        s.p_isac = s.b_isac * budget.rho_isac;
        return s;
    }

    double dbm_to_watt(double dbm)
    {
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    double eta_isac(double alpha, double bandwidth, double sigma_tau2)
    {
        const double b_isac = (1.0 - alpha) * bandwidth;
        return 4.0 * kPi * kPi * b_isac * b_isac * sigma_tau2 / 12.0;
    }

    LinkGains link_gains(const CVector &f, const ChannelSet &channels, const RisPhase &phase)
    {
        LinkGains g;
        g.target_comm = std::norm(f.dot(channels.h_ap_s));
        g.target_response = std::norm(f.dot(channels.a_ap_s));
        g.beta2 = std::norm(channels.beta_s);
        CVector sum = CVector::Zero(f.size());
        for (const auto &h : channels.h_ris_k)
        {
            const CVector hbar = cascade(h, phase, channels.h_ap_ris);
            g.device.push_back(std::norm(f.dot(hbar)));
            sum += hbar;
        }
        g.coherent_sum = std::norm(f.dot(sum));
        return g;
    }

    double sinr_s(double alpha, const LinkGains &gains, const LinkBudget &budget, const ModelOptions &model)
    {
        check_alpha_open(alpha);
        double interference = 0.0;
        if (model.interference == InterferenceSum::Coherent)
            interference = budget.p_k.empty() ? 0.0 : gains.coherent_sum * budget.p_k.front();
        else
            for (std::size_t k = 0; k < gains.device.size(); ++k)
                interference += gains.device[k] * budget.p_k.at(k);
        return gains.target_comm * budget.p_s / (interference + echo_floor(alpha, gains, budget));
    }

    double sinr_s(double alpha, const CVector &f, const ChannelSet &channels, const RisPhase &phase,
                  const LinkBudget &budget, const ModelOptions &model)
    {
        return sinr_s(alpha, link_gains(f, channels, phase), budget, model);
    }

    double sinr_k(std::size_t k, double alpha, const LinkGains &gains, const LinkBudget &budget)
    {
        check_alpha_open(alpha);
        if (k >= gains.device.size())
            throw Error(ErrorCode::DimensionMismatch, "device index out of range");
        double interference = 0.0;
        for (std::size_t i = 0; i < gains.device.size(); ++i)
            if (i != k)
                interference += gains.device[i] * budget.p_k.at(i);
        return gains.device[k] * budget.p_k.at(k) / (interference + echo_floor(alpha, gains, budget));
    }

    double sinr_k(std::size_t k, double alpha, const CVector &f, const ChannelSet &channels, const RisPhase &phase,
                  const LinkBudget &budget)
    {
        return sinr_k(k, alpha, link_gains(f, channels, phase), budget);
    }

    double rate(double alpha, double bandwidth, double sinr)
    {
        return (1.0 - alpha) * bandwidth * std::log2(1.0 + sinr);
    }

    std::vector<double> all_rates(double alpha, const LinkGains &gains, const LinkBudget &budget,
                                  const ModelOptions &model)
    {
        std::vector<double> rates(gains.device.size() + 1, 0.0);
        if (alpha >= 1.0)
            return rates;
        rates[0] = rate(alpha, budget.bandwidth, sinr_s(alpha, gains, budget, model));
        for (std::size_t k = 0; k < gains.device.size(); ++k)
            rates[k + 1] = rate(alpha, budget.bandwidth, sinr_k(k, alpha, gains, budget));
        return rates;
    }

    double fim_bracket(double alpha, const LinkBudget &budget)
    {
        const double b = budget.bandwidth;
        const double lower = budget.band_offset - 0.5 * b;
        const double upper = budget.band_offset + 0.5 * b;
        const double split = lower + alpha * b;
        return alpha * budget.rho_so * (cube(split) - cube(lower)) -
               (1.0 - alpha) * budget.rho_isac * (cube(split) - cube(upper));
    }

    double fim_bracket_second_derivative(double alpha, const LinkBudget &budget)
    {
        const double b = budget.bandwidth;
        const double u = budget.band_offset - 0.5 * b + alpha * b;
        return 6.0 * b * budget.rho_so * u * u + 6.0 * alpha * b * b * budget.rho_so * u +
               6.0 * b * budget.rho_isac * u * u - 6.0 * (1.0 - alpha) * b * b * budget.rho_isac * u;
    }

    double fim_scale(double beta_magnitude, Eigen::Index antennas, const LinkBudget &budget,
                     const ModelOptions &model)
    {
        const double n = static_cast<double>(antennas);
        const double base = 8.0 * kPi * kPi * beta_magnitude * beta_magnitude * budget.duration * budget.bandwidth /
                            (3.0 * budget.sigma2);
        return model.fim_scaling == FimScaling::PerAntenna ? base / n : base * n * n;
    }

    double fim(double alpha, double target_response, double beta_magnitude, Eigen::Index antennas,
               const LinkBudget &budget, const ModelOptions &model)
    {
        return fim_scale(beta_magnitude, antennas, budget, model) * target_response * fim_bracket(alpha, budget);
    }

    double fim(double alpha, const CVector &f, const ChannelSet &channels, const LinkBudget &budget,
               const ModelOptions &model)
    {
        return fim(alpha, std::norm(f.dot(channels.a_ap_s)), std::abs(channels.beta_s), channels.antennas(), budget,
                   model);
    }

    double crb_from_fim(double fim_value)
    {
        if (!(fim_value > 0.0) || !std::isfinite(fim_value))
            throw Error(ErrorCode::SingularFim, "Fisher information " + std::to_string(fim_value) + " is not positive");
        return 1.0 / fim_value;
    }

    double crb(double alpha, const CVector &f, const ChannelSet &channels, const LinkBudget &budget,
               const ModelOptions &model)
    {
        return crb_from_fim(fim(alpha, f, channels, budget, model));
    }

    double range_error_m(double crb_s2)
    {
        return std::sqrt(crb_s2) * kSpeedOfLight / 2.0;
    }

    double fim_by_integration(double alpha, double target_response, double beta_magnitude, Eigen::Index antennas,
                              const LinkBudget &budget, int panels)
    {
        // 5-point Gauss-Legendre nodes/weights on [-1, 1].
        static constexpr std::array<double, 5> nodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                                     0.5384693101056831, 0.9061798459386640};
        static constexpr std::array<double, 5> weights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                       0.4786286704993665, 0.2369268850561891};
        auto integrate = [&](double lo, double hi) {
            double total = 0.0;
            const double h = (hi - lo) / panels;
            for (int p = 0; p < panels; ++p)
            {
                const double mid = lo + (p + 0.5) * h;
                for (std::size_t i = 0; i < nodes.size(); ++i)
                {
                    const double freq = mid + 0.5 * h * nodes[i];
                    const double omega = 2.0 * kPi * freq;
                    total += weights[i] * 0.5 * h * omega * omega;
                }
            }
            return total;
        };

        const BandSplit split = band_split(alpha, budget);
        const double lower = budget.band_offset - 0.5 * budget.bandwidth;
        const double edge = lower + split.b_so;
        const double upper = budget.band_offset + 0.5 * budget.bandwidth;
        // Echo amplitude beta f^H a / sqrt(N); each band carries energy p T spread across it.
        const double amplitude2 = beta_magnitude * beta_magnitude * target_response / static_cast<double>(antennas);
        const double so = split.p_so * budget.duration * integrate(lower, edge);
        const double isac = split.p_isac * budget.duration * integrate(edge, upper);
        return 2.0 * amplitude2 * (so + isac) / budget.sigma2;
    }
} // namespace risisac
