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
#include "risisac/metrics.hpp"
#include "risisac/sdp.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace risisac
{
    /// Everything one AO run needs: channels of a placed scenario plus the budget and knobs.
    struct Instance
    {
        ChannelSet channels;
        LinkBudget budget;
        ModelOptions model;
        AlgorithmKnobs knobs;
        std::vector<Position> device_positions;
    };

    /// Places devices from the seed's placement stream and builds the channels.
    Instance make_instance(const ScenarioConfig &config, std::uint64_t seed);

    struct DesignVariables
    {
        double alpha = 0.0;
        CVector f;
        RisPhase phase;
    };

    /// One lifted constraint  tr(Q X) - [slack] >= rhs  before real embedding. `slack` names
    /// the auxiliary scalar subtracted on the left, if any.
    struct LiftedRow
    {
        std::string name;
        CMatrix q;
        double rhs = 0.0;
        std::optional<Eigen::Index> slack;
    };

    /// SINR threshold 2^{R / ((1 - alpha) B)} - 1.
    double sinr_threshold(double rate_th, double alpha, double bandwidth);

    /// Rate rows of the receive-beamforming relaxation in F = f f^H: one for the IIoT-(I)
    /// device, then one per IIoT-(II) device. Throws Error{InvalidAlpha} for alpha >= 1.
    std::vector<LiftedRow> beamforming_rows(const ChannelSet &channels, const RisPhase &phase, double alpha,
                                            const LinkBudget &budget, const ModelOptions &model = {});

    /// maximize tr(F a a^H) s.t. the rate rows and tr(F) = 1, embedded as a real SDP of size 2N.
    /// Each row is divided by its largest coefficient magnitude.
    SdpProblem build_p22(const ChannelSet &channels, const RisPhase &phase, double alpha, const LinkBudget &budget,
                         const ModelOptions &model = {});

    /// r_k with f^H hbar_k = r_k^H v: r_k,m = (H_AP,RIS f)_m conj(h_RIS,k,m).
    CVector phase_direction(const CVector &f, const CMatrix &h_ap_ris, const CVector &h_ris_k);

    /// Rate rows of the phase relaxation in V = v v^H, each carrying its own slack delta.
    std::vector<LiftedRow> phase_rows(const ChannelSet &channels, const CVector &f, double alpha,
                                      const LinkBudget &budget, const ModelOptions &model = {});

    /// maximize delta_s + sum_k delta_k over the phase rows, V_mm = 1, embedded as a real SDP
    /// of size 2M with K + 1 slack scalars. All rows share one scale factor so the objective
    /// keeps its meaning.
    SdpProblem build_p43(const ChannelSet &channels, const CVector &f, double alpha, const LinkBudget &budget,
                         const ModelOptions &model = {});

    /// Grid used by the bandwidth step: {0, nu, 2 nu, ..., 1}.
    std::vector<double> alpha_grid(double step);

    struct AlphaChoice
    {
        double alpha = 0.0;
        double crb = 0.0;
        std::size_t feasible_points = 0;
    };

    /// argmin of the CRB over the feasible grid points for fixed (f, Phi). alpha = 1 is
    /// feasible only when every rate threshold is nonpositive, or when `drop_rates`.
    /// Throws Error{EmptyFeasibleSet} when no grid point is feasible.
    AlphaChoice solve_alpha(const ChannelSet &channels, const CVector &f, const RisPhase &phase,
                            const LinkBudget &budget, double step, const ModelOptions &model = {},
                            double rate_tolerance = 1e-6, bool drop_rates = false);

    struct Evaluation
    {
        double crb = 0.0;
        double range_error_m = 0.0;
        std::vector<double> rates; // IIoT-(I) first
        bool feasible = false;
        std::vector<std::string> violations;
    };

    /// Recomputes every metric from the design variables alone.
    Evaluation evaluate(const DesignVariables &vars, const ChannelSet &channels, const LinkBudget &budget,
                        const ModelOptions &model = {}, bool rate_constraints = true, double rate_tolerance = 1e-6);

    /// Solver and recovery record of one relaxation solve.
    struct SdpAudit
    {
        int iteration = 0;
        std::string step; // "beamforming" or "phase"
        double alpha = 0.0;
        SdpStatus status = SdpStatus::NumericalFailure;
        double max_eq_residual = 0.0;
        double max_ineq_violation = 0.0;
        double min_eigenvalue = 0.0;
        int ipm_iterations = 0;
        bool recovered = false;
        bool accepted = false;
        double eigen_mass = 0.0;
        double structure_error = 0.0;  // | ||f|| - 1 | or max_m | |v_m| - 1 |
        double rate_shortfall = 0.0;   // worst relative rate shortfall of the recovered vector
        double relaxation_bound = 0.0; // SDR objective
        double recovered_value = 0.0;  // same objective at the recovered vector
    };

    struct IterationRecord
    {
        int iteration = 0;
        double crb = 0.0;
        double alpha = 0.0;
        std::vector<double> rates;
        bool feasible = false;
        std::optional<SdpStatus> beamforming_status;
        std::optional<SdpStatus> phase_status;
    };

    struct AoTrace
    {
        std::vector<IterationRecord> iterations; // entry 0 is the initial point
        std::vector<SdpAudit> audits;
        std::vector<std::string> events;
    };

    enum class AoStatus
    {
        Converged,
        IterationCap,
        Infeasible // no feasible initial point
    };

    const char *to_string(AoStatus status);

    struct AoResult
    {
        DesignVariables vars;
        AoTrace trace;
        Evaluation evaluation;
        AoStatus status = AoStatus::Infeasible;
        int iterations = 0; // AO iterations performed, excluding the initial point
    };

    /// Alternating optimization for one scheme. Schemes that pin alpha skip the bandwidth
    /// step; RandomRis skips the phase step; FullSo keeps the sensing beam at alpha = 1 and
    /// ignores the rate constraints. A scenario without a feasible initial point returns
    /// status Infeasible instead of throwing.
    AoResult run_ao(const Instance &instance, Scheme scheme, std::uint64_t seed);
    AoResult run_ao(const ScenarioConfig &config, Scheme scheme, std::uint64_t seed);

    /// Same, starting from the given phase shifts instead of the seed's random draw.
    AoResult run_ao(const Instance &instance, Scheme scheme, std::uint64_t seed, const RisPhase &initial_phase);
} // namespace risisac
