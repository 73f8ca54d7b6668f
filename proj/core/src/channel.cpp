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

#include "risisac/channel.hpp"
#include "risisac/error.hpp"

#include <cmath>

namespace risisac
{
    namespace
    {
        constexpr double kUnitTol = 1e-12;

        Complex phasor(double phase) { return std::polar(1.0, phase); }

        Position minus(const Position &a, const Position &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

        double dot(const Position &a, const Position &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    } // namespace

    RisPhase::RisPhase(CVector v) : v_(std::move(v))
    {
        for (Eigen::Index m = 0; m < v_.size(); ++m)
            if (!(std::abs(std::abs(v_(m)) - 1.0) <= kUnitTol))
                throw Error(ErrorCode::InvalidConfig, "RIS coefficient " + std::to_string(m) + " is not unit modulus");
    }

    RisPhase RisPhase::from_angles(std::span<const double> theta)
    {
        CVector v(static_cast<Eigen::Index>(theta.size()));
        for (std::size_t m = 0; m < theta.size(); ++m)
            v(static_cast<Eigen::Index>(m)) = phasor(theta[m]);
        return RisPhase(std::move(v));
    }

    RisPhase RisPhase::zeros(Eigen::Index m)
    {
        return RisPhase(CVector::Ones(m));
    }

    RisPhase RisPhase::random(Eigen::Index m, Rng &rng)
    {
        CVector v(m);
        for (Eigen::Index i = 0; i < m; ++i)
            v(i) = phasor(2.0 * kPi * rng.uniform());
        return RisPhase(std::move(v));
    }

    RisPhase RisPhase::rotated(double psi) const
    {
        CVector v = v_ * phasor(psi);
        for (Eigen::Index m = 0; m < v.size(); ++m)
            v(m) /= std::abs(v(m));
        return RisPhase(std::move(v));
    }

    double path_gain(double center_distance, double wavelength)
    {
        if (!(center_distance > 0.0))
            throw Error(ErrorCode::DegenerateGeometry, "zero link distance");
        return std::sqrt(wavelength / (4.0 * kPi * center_distance * center_distance));
    }

    CVector nf_response(std::span<const Position> elements, const Position &point, double wavelength)
    {
        CVector a(static_cast<Eigen::Index>(elements.size()));
        for (std::size_t i = 0; i < elements.size(); ++i)
        {
            const double d = distance(elements[i], point);
            if (!(d > 0.0))
                throw Error(ErrorCode::DegenerateGeometry, "point coincides with array element " + std::to_string(i));
            // Reduce before multiplying out to keep the phase accurate at tens of metres.
            const double cycles = d / wavelength;
            a(static_cast<Eigen::Index>(i)) = phasor(-2.0 * kPi * (cycles - std::floor(cycles)));
        }
        return a;
    }

    CVector ff_steering(std::span<const Position> elements, const Position &center, const Position &towards,
                        double wavelength)
    {
        const double len = std::sqrt(dot(towards, towards));
        if (!(len > 0.0))
            throw Error(ErrorCode::DegenerateGeometry, "far-field direction has zero length");
        const Position u{towards.x / len, towards.y / len, towards.z / len};
        CVector b(static_cast<Eigen::Index>(elements.size()));
        for (std::size_t i = 0; i < elements.size(); ++i)
            b(static_cast<Eigen::Index>(i)) = phasor(2.0 * kPi * dot(minus(elements[i], center), u) / wavelength);
        return b;
    }

    CMatrix build_sensing_channel(const ArrayLayout &layout, const Position &target, Complex beta_s)
    {
        const CVector a = nf_response(layout.ap_antennas, target, layout.wavelength);
        return beta_s * a * a.transpose();
    }

    CVector build_comm_channel_nf(std::span<const Position> elements, const Position &center, const Position &q,
                                  double wavelength)
    {
        return path_gain(distance(center, q), wavelength) * nf_response(elements, q, wavelength);
    }

    CVector build_comm_channel_ff(std::span<const Position> elements, const Position &center, const Position &q,
                                  double wavelength)
    {
        const double d = distance(center, q);
        const double cycles = d / wavelength;
        const Complex common = path_gain(d, wavelength) * phasor(-2.0 * kPi * (cycles - std::floor(cycles)));
        return common * ff_steering(elements, center, minus(q, center), wavelength);
    }

    CMatrix build_ap_ris_channel(const ArrayLayout &layout, FieldRegime regime)
    {
        const auto n = static_cast<Eigen::Index>(layout.ap_antennas.size());
        const auto m = static_cast<Eigen::Index>(layout.ris_elements.size());
        const double lambda = layout.wavelength;
        const double d = distance(layout.ap_center, layout.ris_center);
        const double gain = path_gain(d, lambda);

        CMatrix h(m, n);
        if (regime == FieldRegime::NearField)
        {
            for (Eigen::Index r = 0; r < m; ++r)
                h.row(r) = gain * nf_response(layout.ap_antennas, layout.ris_elements[r], lambda).transpose();
            return h;
        }
        const double cycles = d / lambda;
        const Complex common = gain * phasor(-2.0 * kPi * (cycles - std::floor(cycles)));
        const CVector b_ap =
            ff_steering(layout.ap_antennas, layout.ap_center, minus(layout.ris_center, layout.ap_center), lambda);
        const CVector b_ris =
            ff_steering(layout.ris_elements, layout.ris_center, minus(layout.ap_center, layout.ris_center), lambda);
        h = common * b_ris * b_ap.transpose();
        return h;
    }

    CVector cascade(const CVector &h_ris_k, const RisPhase &phase, const CMatrix &h_ap_ris)
    {
        if (h_ris_k.size() != phase.size() || h_ap_ris.rows() != h_ris_k.size())
            throw Error(ErrorCode::DimensionMismatch, "cascade: RIS dimensions disagree");
        return h_ap_ris.adjoint() * phase.v().cwiseProduct(h_ris_k);
    }

    std::pair<CVector, CVector> transmit_beamformers(const CVector &a_ap_s, double p_so, double p_isac)
    {
        const double n = static_cast<double>(a_ap_s.size());
        const CVector dir = a_ap_s.conjugate() / a_ap_s.norm();
        return {std::sqrt(p_so / n) * dir, std::sqrt(p_isac / n) * dir};
    }

    ChannelSet build_channels(const ArrayLayout &layout, const Position &target, std::span<const Position> devices,
                              Complex beta_s)
    {
        const double lambda = layout.wavelength;
        const double rayleigh = rayleigh_distance(layout.aperture, lambda);

        ChannelSet ch;
        ch.beta_s = beta_s;
        ch.a_ap_s = nf_response(layout.ap_antennas, target, lambda);
        ch.g_ap_s = beta_s * ch.a_ap_s * ch.a_ap_s.transpose();
        ch.h_ap_s = path_gain(distance(layout.ap_center, target), lambda) * ch.a_ap_s;
        ch.regime_ap_s = classify_link(distance(layout.ap_center, target), rayleigh);

        ch.regime_ap_ris = classify_link(distance(layout.ap_center, layout.ris_center), rayleigh);
        ch.h_ap_ris = build_ap_ris_channel(layout, ch.regime_ap_ris);

        for (const auto &q : devices)
        {
            const FieldRegime regime = classify_link(distance(layout.ris_center, q), rayleigh);
            ch.regime_ris_k.push_back(regime);
            ch.h_ris_k.push_back(regime == FieldRegime::NearField
                                     ? build_comm_channel_nf(layout.ris_elements, layout.ris_center, q, lambda)
                                     : build_comm_channel_ff(layout.ris_elements, layout.ris_center, q, lambda));
        }
        return ch;
    }
} // namespace risisac
