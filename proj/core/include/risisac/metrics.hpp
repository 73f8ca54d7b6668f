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

#include "risisac/channel.hpp"
#include "risisac/config.hpp"
#include "risisac/linalg.hpp"

#include <vector>

namespace risisac
{
    /// Powers and thresholds in linear units (W, W/Hz, Hz, s, bit/s).
    struct LinkBudget
    {
        double p_s = 0.0;
        std::vector<double> p_k;
        double sigma2 = 0.0;     // noise power over the full band B
        double sigma_tau2 = 0.0; // delay-prediction error variance
        double rho_so = 0.0;
        double rho_isac = 0.0;
        double bandwidth = 0.0;   // B
        double band_offset = 0.0; // B_O
        double duration = 0.0;    // T
        double rate_s_th = 0.0;
        double rate_k_th = 0.0;

        static LinkBudget from_config(const ScenarioConfig &config);
    };

    struct ModelOptions
    {
        InterferenceSum interference = InterferenceSum::Coherent;
        FimScaling fim_scaling = FimScaling::PerAntenna;
    };

    struct BandSplit
    {
        double alpha = 0.0;
        double b_so = 0.0;
        double b_isac = 0.0;
        double p_so = 0.0;
        double p_isac = 0.0;
    };

    BandSplit band_split(double alpha, const LinkBudget &budget);

    double dbm_to_watt(double dbm);

    /// Residual echo power fraction after delay pre-subtraction: (2 pi)^2 ((1-alpha) B)^2 sigma_tau^2 / 12.
    double eta_isac(double alpha, double bandwidth, double sigma_tau2);

    /// Beamformed gains |f^H x|^2 for a fixed (f, Phi); everything the SINRs and the FIM need.
    struct LinkGains
    {
        double target_comm = 0.0;     // |f^H h_AP,s|^2
        double target_response = 0.0; // |f^H a_AP,s|^2
        double coherent_sum = 0.0;    // |f^H sum_k hbar_k|^2
        std::vector<double> device;   // |f^H hbar_k|^2
        double beta2 = 0.0;           // |beta_s|^2
    };

    LinkGains link_gains(const CVector &f, const ChannelSet &channels, const RisPhase &phase);

    /// Echo-SINR of the IIoT-(I) signal. Throws Error{InvalidAlpha} for alpha outside [0, 1).
    double sinr_s(double alpha, const LinkGains &gains, const LinkBudget &budget, const ModelOptions &model = {});
    double sinr_s(double alpha, const CVector &f, const ChannelSet &channels, const RisPhase &phase,
                  const LinkBudget &budget, const ModelOptions &model = {});

    /// SINR of IIoT-(II) device k after the IIoT-(I) signal is cancelled.
    double sinr_k(std::size_t k, double alpha, const LinkGains &gains, const LinkBudget &budget);
    double sinr_k(std::size_t k, double alpha, const CVector &f, const ChannelSet &channels, const RisPhase &phase,
                  const LinkBudget &budget);

    /// (1 - alpha) B log2(1 + sinr)
    double rate(double alpha, double bandwidth, double sinr);

    /// Rates of the IIoT-(I) device followed by every IIoT-(II) device. Zero at alpha = 1.
    std::vector<double> all_rates(double alpha, const LinkGains &gains, const LinkBudget &budget,
                                  const ModelOptions &model = {});

    /// alpha rho_SO ((B_O - B/2 + alpha B)^3 - (B_O - B/2)^3)
    ///   - (1 - alpha) rho_ISAC ((B_O - B/2 + alpha B)^3 - (B_O + B/2)^3)
    double fim_bracket(double alpha, const LinkBudget &budget);

    /// Analytic d^2/d alpha^2 of fim_bracket.
    double fim_bracket_second_derivative(double alpha, const LinkBudget &budget);

    /// Everything in J except |f^H a|^2 and the bracket: 8 pi^2 |beta|^2 T B / (3 N sigma^2).
    double fim_scale(double beta_magnitude, Eigen::Index antennas, const LinkBudget &budget,
                     const ModelOptions &model = {});

    /// Time-delay Fisher information J(alpha, f).
    double fim(double alpha, const CVector &f, const ChannelSet &channels, const LinkBudget &budget,
               const ModelOptions &model = {});
    double fim(double alpha, double target_response, double beta_magnitude, Eigen::Index antennas,
               const LinkBudget &budget, const ModelOptions &model = {});

    /// 1 / J; throws Error{SingularFim} when J is not positive.
    double crb(double alpha, const CVector &f, const ChannelSet &channels, const LinkBudget &budget,
               const ModelOptions &model = {});
    double crb_from_fim(double fim_value);

    /// Round-trip range error sqrt(CRB) c / 2 in meters.
    double range_error_m(double crb_s2);

    /// Fisher information obtained by integrating the echo spectrum (2 pi f)^2 weighted band
    /// densities over the SO and ISAC bands with Gauss-Legendre quadrature. Independent of the
    /// closed form; used for auditing it.
    double fim_by_integration(double alpha, double target_response, double beta_magnitude, Eigen::Index antennas,
                              const LinkBudget &budget, int panels = 64);
} // namespace risisac
