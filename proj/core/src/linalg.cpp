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

#include "risisac/linalg.hpp"
#include "risisac/error.hpp"

#include <cmath>
#include <string>

namespace risisac
{
    bool all_finite(const CMatrix &m)
    {
        for (Eigen::Index i = 0; i < m.size(); ++i)
            if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag()))
                return false;
        return true;
    }

    bool all_finite(const CVector &v)
    {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag()))
                return false;
        return true;
    }

    CMatrix hermitian_part(const CMatrix &m)
    {
        return (m + m.adjoint()) * 0.5;
    }

    HermEig hermitian_eig(const CMatrix &m, double tol)
    {
        if (m.rows() != m.cols())
            throw Error(ErrorCode::DimensionMismatch, "hermitian_eig expects a square matrix");
        if (!all_finite(m))
            throw Error(ErrorCode::NonFinite, "hermitian_eig input has NaN/Inf entries");

        const double scale = m.norm();
        const double asym = (m - m.adjoint()).norm();
        if (asym > tol * std::max(scale, 1e-300) && asym > 0.0)
            throw Error(ErrorCode::NonHermitian,
                        "relative asymmetry " + std::to_string(asym / scale) + " exceeds tolerance");

        Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m));
        if (solver.info() != Eigen::Success)
            throw Error(ErrorCode::NonFinite, "Hermitian eigensolver did not converge");

        // Eigen returns ascending order.
        const Eigen::Index n = m.rows();
        HermEig out{RVector(n), CMatrix(n, n)};
        for (Eigen::Index i = 0; i < n; ++i)
        {
            out.values(i) = solver.eigenvalues()(n - 1 - i);
            out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
        }
        return out;
    }

    SymEig symmetric_eig(const RMatrix &m, double tol)
    {
        if (m.rows() != m.cols())
            throw Error(ErrorCode::DimensionMismatch, "symmetric_eig expects a square matrix");
        if (!m.allFinite())
            throw Error(ErrorCode::NonFinite, "symmetric_eig input has NaN/Inf entries");
        const double scale = m.norm();
        const double asym = (m - m.transpose()).norm();
        if (asym > tol * std::max(scale, 1e-300) && asym > 0.0)
            throw Error(ErrorCode::NonHermitian, "matrix is not symmetric within tolerance");

        Eigen::SelfAdjointEigenSolver<RMatrix> solver((m + m.transpose()) * 0.5);
        if (solver.info() != Eigen::Success)
            throw Error(ErrorCode::NonFinite, "symmetric eigensolver did not converge");
        const Eigen::Index n = m.rows();
        SymEig out{RVector(n), RMatrix(n, n)};
        for (Eigen::Index i = 0; i < n; ++i)
        {
            out.values(i) = solver.eigenvalues()(n - 1 - i);
            out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
        }
        return out;
    }

    double quad_form(const CVector &x, const CMatrix &m)
    {
        if (m.rows() != m.cols() || m.cols() != x.size())
            throw Error(ErrorCode::DimensionMismatch, "quad_form: vector length does not match matrix");
        const Complex value = x.dot(m * x); // dot() conjugates its first argument
        return value.real();
    }

    CMatrix outer(const CVector &x)
    {
        return x * x.adjoint();
    }
} // namespace risisac
