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

#include "risisac/geometry.hpp"
#include "risisac/linalg.hpp"

#include <span>
#include <utility>
#include <vector>

namespace risisac
{
    /// RIS reflection coefficients v_m = exp(j theta_m); Phi = diag(v).
    class RisPhase
    {
    public:
        RisPhase() = default;

        /// Throws Error{InvalidConfig} unless every |v_m| = 1 within 1e-12.
        explicit RisPhase(CVector v);

        static RisPhase from_angles(std::span<const double> theta);
        static RisPhase zeros(Eigen::Index m); // all theta_m = 0
        static RisPhase random(Eigen::Index m, Rng &rng);

        const CVector &v() const noexcept { return v_; }
        Eigen::Index size() const noexcept { return v_.size(); }

        RisPhase rotated(double psi) const;

    private:
        CVector v_;
    };

    /// Every channel object of one scenario instance. h_ap_ris is M x N (rows indexed by
    /// RIS elements) so the cascade reads H^H Phi h.
    struct ChannelSet
    {
        CVector a_ap_s;   // near-field array response towards the target, N
        CMatrix g_ap_s;   // beta_s a a^T, N x N
        CVector h_ap_s;   // IIoT-(I) uplink, N
        CMatrix h_ap_ris; // M x N
        std::vector<CVector> h_ris_k;
        Complex beta_s{0.0, 0.0};
        FieldRegime regime_ap_s = FieldRegime::NearField;
        FieldRegime regime_ap_ris = FieldRegime::NearField;
        std::vector<FieldRegime> regime_ris_k;

        Eigen::Index antennas() const noexcept { return a_ap_s.size(); }
        Eigen::Index ris_elements() const noexcept { return h_ap_ris.rows(); }
        std::size_t devices() const noexcept { return h_ris_k.size(); }
    };

    /// sqrt(lambda / (4 pi d^2))
    double path_gain(double center_distance, double wavelength);

    /// Spherical-wave response: entry i is exp(-j 2 pi d_i / lambda) with d_i the exact
    /// distance from element i to `point`.
    CVector nf_response(std::span<const Position> elements, const Position &point, double wavelength);

    /// Planar-wave response of the same elements towards a far point in direction `towards`
    /// (need not be normalized): exp(+j 2 pi (p_i - center) . u / lambda). Removing the common
    /// phase exp(-j 2 pi |point - center| / lambda) from nf_response converges to this.
    CVector ff_steering(std::span<const Position> elements, const Position &center, const Position &towards,
                        double wavelength);

    /// beta_s a a^T (plain transpose).
    CMatrix build_sensing_channel(const ArrayLayout &layout, const Position &target, Complex beta_s);

    /// alpha * nf_response with alpha from the centre-to-centre distance.
    CVector build_comm_channel_nf(std::span<const Position> elements, const Position &center, const Position &q,
                                  double wavelength);

    /// alpha exp(-j 2 pi d / lambda) * ff_steering.
    CVector build_comm_channel_ff(std::span<const Position> elements, const Position &center, const Position &q,
                                  double wavelength);

    /// M x N AP-RIS matrix, spherical per element pair or rank-one planar.
    CMatrix build_ap_ris_channel(const ArrayLayout &layout, FieldRegime regime);

    /// hbar = H^H Phi h, length N.
    CVector cascade(const CVector &h_ris_k, const RisPhase &phase, const CMatrix &h_ap_ris);

    /// Transmit beams sqrt(p/N) conj(a)/||a|| for the SO and ISAC bands.
    std::pair<CVector, CVector> transmit_beamformers(const CVector &a_ap_s, double p_so, double p_isac);

    /// Builds every channel for a layout, target and device set; link regimes are classified
    /// against the Rayleigh distance of the AP aperture.
    ChannelSet build_channels(const ArrayLayout &layout, const Position &target, std::span<const Position> devices,
                              Complex beta_s);
} // namespace risisac
