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

#include "risisac/linalg.hpp"
#include "risisac/random.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace risisac
{
    /// One linear constraint tr(A X) + coeffs . s  (= or >=)  rhs over the PSD matrix X and
    /// the nonnegative auxiliary scalars s.
    struct SdpConstraint
    {
        RMatrix matrix;      // symmetric, dim x dim
        RVector scalar_coeffs; // length num_scalars, or empty for all zeros
        double rhs = 0.0;
    };

    enum class Sense
    {
        Minimize,
        Maximize
    };

    /// Real symmetric SDP in trace form:
    ///
    ///     opt   tr(C X) + c . s
    ///     s.t.  tr(A_i X) + a_i . s  = b_i   (equalities)
    ///           tr(A_j X) + a_j . s >= b_j   (inequalities)
    ///           X PSD, s >= 0
    struct SdpProblem
    {
        Eigen::Index dim = 0;
        Eigen::Index num_scalars = 0;
        Sense sense = Sense::Minimize;
        RMatrix objective;
        RVector objective_scalars; // empty for all zeros
        std::vector<SdpConstraint> equalities;
        std::vector<SdpConstraint> inequalities;

        /// Throws Error{DimensionMismatch} or Error{NonHermitian} on malformed input.
        void validate() const;
    };

    enum class SdpStatus
    {
        Optimal,
        Infeasible,
        NumericalFailure
    };

    const char *to_string(SdpStatus status);

    struct SdpSolution
    {
        RMatrix x;
        RVector scalars;
        double objective_value = 0.0;
        SdpStatus status = SdpStatus::NumericalFailure;
        double max_eq_residual = 0.0;     // max |lhs - b| / (1 + |b|)
        double max_ineq_violation = 0.0;  // max max(0, b - lhs) / (1 + |b|)
        double min_eigenvalue = 0.0;
        int iterations = 0;
    };

    struct SdpOptions
    {
        double tolerance = 1e-9;            // relative gap and infeasibility target
        int max_iterations = 200;
        Eigen::Index max_dim = 256;
        double feasibility_tolerance = 1e-6; // relative residual accepted as feasible
        double psd_tolerance = 1e-7;         // accepted min eigenvalue slack
    };

    /// Anything able to solve an SdpProblem; the interior-point solver below is the default.
    class SdpBackend
    {
    public:
        virtual ~SdpBackend() = default;
        virtual SdpSolution solve(const SdpProblem &problem, const SdpOptions &options) const = 0;
    };

    /// Primal-dual path-following method with Nesterov-Todd scaling on the PSD block,
    /// the usual x/z scaling on the nonnegative scalars (auxiliary variables and inequality
    /// surpluses) and Mehrotra predictor-corrector steps. Dense factorizations throughout;
    /// constraint matrices with few nonzeros take a sparse path when forming the Schur
    /// complement. Infeasibility is confirmed by an elastic phase-one solve whose optimum
    /// is the smallest achievable total violation.
    class InteriorPointSolver final : public SdpBackend
    {
    public:
        SdpSolution solve(const SdpProblem &problem, const SdpOptions &options) const override;
    };

    /// Solves with the default backend.
    SdpSolution solve(const SdpProblem &problem, const SdpOptions &options = {});

    /// [[Re H, -Im H], [Im H, Re H]]. tr(embed(A) embed(X)) = 2 Re tr(A X), and X is PSD
    /// iff embed(X) is. Throws Error{NonHermitian} for non-Hermitian input.
    RMatrix embed_complex(const CMatrix &h);

    /// Hermitian matrix whose embedding is closest to `y`: averages the two diagonal blocks
    /// and the two off-diagonal blocks. PSD whenever y is.
    CMatrix deembed(const RMatrix &y);

    /// Recovers a structured vector from an SDR solution.
    enum class RecoveryMode
    {
        Eigen,    // principal eigenvector when it carries enough of the trace, else Randomize
        Randomize // Gaussian randomization only
    };

    enum class Projection
    {
        UnitNorm,   // x / ||x||
        UnitModulus // exp(j arg x_m) entrywise
    };

    struct RecoveryOptions
    {
        RecoveryMode mode = RecoveryMode::Eigen;
        Projection projection = Projection::UnitNorm;
        double rank_one_threshold = 0.99;
        int samples = 200;
        double psd_tolerance = 1e-7;
    };

    /// Scores a projected candidate: std::nullopt when infeasible, otherwise larger is better.
    using CandidateScore = std::function<std::optional<double>(const CVector &)>;

    struct Recovery
    {
        CVector x;
        double score = 0.0;
        bool from_eigenvector = false;
        int candidates = 0;
        double eigen_mass = 0.0; // lambda_1 / sum(lambda)
    };

    /// Throws Error{RecoveryFailed} if no candidate passes the score callback.
    Recovery rank_one_recover(const CMatrix &x, const RecoveryOptions &options, const CandidateScore &score,
                              Rng &rng);

    CVector project(const CVector &x, Projection projection);
} // namespace risisac
