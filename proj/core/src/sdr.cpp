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

#include "risisac/error.hpp"
#include "risisac/sdp.hpp"

#include <cmath>

namespace risisac
{
    CVector project(const CVector &x, Projection projection)
    {
        if (projection == Projection::UnitNorm)
        {
            const double n = x.norm();
            if (!(n > 0.0))
                return CVector::Constant(x.size(), Complex(1.0 / std::sqrt(static_cast<double>(x.size())), 0.0));
            return x / n;
        }
        CVector out(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out(i) = std::abs(x(i)) > 0.0 ? x(i) / std::abs(x(i)) : Complex(1.0, 0.0);
        return out;
    }

    Recovery rank_one_recover(const CMatrix &x, const RecoveryOptions &options, const CandidateScore &score,
                              Rng &rng)
    {
        const HermEig eig = hermitian_eig(hermitian_part(x));
        const RVector lambda = eig.values.cwiseMax(0.0);
        const double total = lambda.sum();
        if (!(total > 0.0))
            throw Error(ErrorCode::RecoveryFailed, "SDR solution has no positive eigenvalue");

        Recovery best;
        best.eigen_mass = lambda(0) / total;
        bool found = false;

        auto consider = [&](const CVector &candidate, bool from_eigen) {
            ++best.candidates;
            const std::optional<double> s = score(candidate);
            if (s && std::isfinite(*s) && (!found || *s > best.score))
            {
                best.x = candidate;
                best.score = *s;
                best.from_eigenvector = from_eigen;
                found = true;
            }
        };

        consider(project(std::sqrt(lambda(0)) * eig.vectors.col(0), options.projection), true);
        if (options.mode == RecoveryMode::Eigen && best.eigen_mass >= options.rank_one_threshold && found)
            return best;

        // xi = U Lambda^{1/2} r with r ~ CN(0, I), so E[xi xi^H] = X.
        const Eigen::Index n = x.rows();
        const CMatrix factor = eig.vectors * lambda.cwiseSqrt().asDiagonal();
        CVector r(n);
        for (int l = 0; l < options.samples; ++l)
        {
            for (Eigen::Index i = 0; i < n; ++i)
                r(i) = rng.complex_normal();
            consider(project(factor * r, options.projection), false);
        }
        if (!found)
            throw Error(ErrorCode::RecoveryFailed,
                        "none of " + std::to_string(best.candidates) + " rank-one candidates is feasible");
        return best;
    }
} // namespace risisac
