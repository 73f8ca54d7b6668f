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

#include <Eigen/Dense>

#include <complex>

namespace risisac
{
    using Complex = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;
    using RVector = Eigen::VectorXd;
    using RMatrix = Eigen::MatrixXd;

    inline constexpr double kPi = 3.14159265358979323846;

    // Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.
    struct HermEig
    {
        RVector values;
        CMatrix vectors; // column i belongs to values(i)
    };

    struct SymEig
    {
        RVector values; // descending
        RMatrix vectors;
    };

    /// Decomposes a Hermitian matrix. The input is symmetrized as (m + m^H)/2 after the
    /// Hermitian check, so accumulated roundoff in products does not leak into the result.
    /// Throws Error{NonHermitian} when ||m - m^H||_F > tol * ||m||_F and Error{NonFinite}
    /// on NaN/Inf entries.
    HermEig hermitian_eig(const CMatrix &m, double tol = 1e-10);

    /// Real symmetric counterpart of hermitian_eig.
    SymEig symmetric_eig(const RMatrix &m, double tol = 1e-10);

    /// Real part of x^H m x for Hermitian m.
    double quad_form(const CVector &x, const CMatrix &m);

    /// x x^H
    CMatrix outer(const CVector &x);

    bool all_finite(const CMatrix &m);
    bool all_finite(const CVector &v);

    // Hermitian part (m + m^H)/2.
    CMatrix hermitian_part(const CMatrix &m);
} // namespace risisac
