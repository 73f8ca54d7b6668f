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

#include "risisac/sdp.hpp"
#include "risisac/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace risisac
{
    namespace
    {
        constexpr double kInf = std::numeric_limits<double>::infinity();

        struct Entry
        {
            Eigen::Index r;
            Eigen::Index c;
            double v;
        };

        // A constraint row of the internal standard form  <A, X> + a . x = b.
        struct Row
        {
            RMatrix dense;
            std::vector<Entry> entries; // every nonzero, both triangles
            bool sparse = false;
            RVector lin;
            double rhs = 0.0;
        };

        struct StandardForm
        {
            Eigen::Index n = 0;
            Eigen::Index p = 0; // scalar variables: user scalars followed by surpluses
            RMatrix c_mat;
            RVector c_lin;
            std::vector<Row> rows;
        };

        Row make_row(const RMatrix &a, RVector lin, double rhs)
        {
            Row row;
            row.lin = std::move(lin);
            row.rhs = rhs;
            const Eigen::Index n = a.rows();
            for (Eigen::Index c = 0; c < n; ++c)
                for (Eigen::Index r = 0; r < n; ++r)
                    if (a(r, c) != 0.0)
                        row.entries.push_back({r, c, a(r, c)});
            row.sparse = static_cast<Eigen::Index>(row.entries.size()) <= 2 * n;
            if (!row.sparse)
            {
                row.dense = 0.5 * (a + a.transpose());
                row.entries.clear();
            }
            return row;
        }

        double inner(const Row &row, const RMatrix &x)
        {
            if (row.sparse)
            {
                double s = 0.0;
                for (const auto &e : row.entries)
                    s += e.v * x(e.r, e.c);
                return s;
            }
            return row.dense.cwiseProduct(x).sum();
        }

        void accumulate(const Row &row, double coeff, RMatrix &out)
        {
            if (row.sparse)
            {
                for (const auto &e : row.entries)
                    out(e.r, e.c) += coeff * e.v;
                return;
            }
            out.noalias() += coeff * row.dense;
        }

        // W A W
        RMatrix sandwich(const Row &row, const RMatrix &w)
        {
            if (row.sparse)
            {
                RMatrix out = RMatrix::Zero(w.rows(), w.cols());
                for (const auto &e : row.entries)
                    out.noalias() += e.v * w.col(e.r) * w.col(e.c).transpose();
                return 0.5 * (out + out.transpose());
            }
            RMatrix out = w * row.dense * w;
            return 0.5 * (out + out.transpose());
        }

        RMatrix sym(const RMatrix &m) { return 0.5 * (m + m.transpose()); }

        // Largest t with x + t dx PSD (infinity if unbounded).
        double max_step_psd(const RMatrix &x, const RMatrix &dx)
        {
            Eigen::LLT<RMatrix> llt(x);
            if (llt.info() != Eigen::Success)
                return 0.0;
            const RMatrix t = llt.matrixL().solve(dx);
            const RMatrix s = llt.matrixL().solve(t.transpose());
            Eigen::SelfAdjointEigenSolver<RMatrix> eig(sym(s), Eigen::EigenvaluesOnly);
            const double lmin = eig.eigenvalues()(0);
            return lmin >= 0.0 ? kInf : -1.0 / lmin;
        }

        double max_step_lp(const RVector &x, const RVector &dx)
        {
            double t = kInf;
            for (Eigen::Index i = 0; i < x.size(); ++i)
                if (dx(i) < 0.0)
                    t = std::min(t, -x(i) / dx(i));
            return t;
        }

        struct IpmResult
        {
            RMatrix x;
            RVector lin;
            RVector y;
            bool converged = false;
            bool breakdown = false;
            int iterations = 0;
            double pinf = kInf;
            double dinf = kInf;
            double gap = kInf;
        };

        // Infeasible-start primal-dual path following on  min <C,X> + c.x  s.t. rows, X PSD, x >= 0.
        IpmResult run_ipm(const StandardForm &sf, const SdpOptions &opt)
        {
            const Eigen::Index n = sf.n;
            const Eigen::Index p = sf.p;
            const auto m = static_cast<Eigen::Index>(sf.rows.size());

            RVector b(m);
            double a_norm_max = 0.0;
            double b_ratio = 0.0;
            for (Eigen::Index i = 0; i < m; ++i)
            {
                const Row &row = sf.rows[i];
                b(i) = row.rhs;
                double an = row.sparse ? 0.0 : row.dense.norm();
                if (row.sparse)
                    for (const auto &e : row.entries)
                        an += e.v * e.v;
                an = row.sparse ? std::sqrt(an) : an;
                an = std::sqrt(an * an + row.lin.squaredNorm());
                a_norm_max = std::max(a_norm_max, an);
                b_ratio = std::max(b_ratio, (1.0 + std::abs(row.rhs)) / (1.0 + an));
            }
            const double c_norm = std::sqrt(sf.c_mat.squaredNorm() + sf.c_lin.squaredNorm());
            const double b_norm = b.norm();
            const double dim = static_cast<double>(n + p);

            const double xi = std::max({10.0, std::sqrt(dim), dim * b_ratio});
            const double eta = std::max({10.0, std::sqrt(dim), a_norm_max, c_norm});

            IpmResult res;
            RMatrix x = xi * RMatrix::Identity(n, n);
            RMatrix z = eta * RMatrix::Identity(n, n);
            RVector xl = RVector::Constant(p, xi);
            RVector zl = RVector::Constant(p, eta);
            RVector y = RVector::Zero(m);

            RMatrix lin_mat(p, m); // column i is a_i
            for (Eigen::Index i = 0; i < m; ++i)
                lin_mat.col(i) = sf.rows[i].lin;

            std::vector<RMatrix> b_j(static_cast<std::size_t>(m));
            double best_pinf_window = kInf;

            for (int iter = 0; iter < opt.max_iterations; ++iter)
            {
                res.iterations = iter;
                // Residuals.
                RVector rp(m);
                for (Eigen::Index i = 0; i < m; ++i)
                    rp(i) = b(i) - inner(sf.rows[i], x) - sf.rows[i].lin.dot(xl);
                RMatrix rd = sf.c_mat - z;
                for (Eigen::Index i = 0; i < m; ++i)
                    accumulate(sf.rows[i], -y(i), rd);
                rd = sym(rd);
                const RVector rdl = sf.c_lin - lin_mat * y - zl;

                const double pobj = sf.c_mat.cwiseProduct(x).sum() + sf.c_lin.dot(xl);
                const double dobj = b.dot(y);
                const double mu = (x.cwiseProduct(z).sum() + xl.dot(zl)) / dim;
                res.pinf = rp.norm() / (1.0 + b_norm);
                res.dinf = std::sqrt(rd.squaredNorm() + rdl.squaredNorm()) / (1.0 + c_norm);
                res.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
                res.x = x;
                res.lin = xl;
                res.y = y;

                if (res.pinf <= opt.tolerance && res.dinf <= opt.tolerance && res.gap <= opt.tolerance)
                {
                    res.converged = true;
                    return res;
                }
                if (!std::isfinite(mu) || (m > 0 && y.cwiseAbs().maxCoeff() > 1e14))
                {
                    res.breakdown = true;
                    return res;
                }
                // Stagnating primal infeasibility signals an infeasible problem.
                if (iter % 25 == 0)
                {
                    if (iter >= 50 && res.pinf > opt.tolerance && res.pinf > 0.5 * best_pinf_window)
                    {
                        res.breakdown = true;
                        return res;
                    }
                    best_pinf_window = res.pinf;
                }

                // Nesterov-Todd scaling point W = G G^T with G^T Z G = G^{-1} X G^{-T} = D.
                Eigen::LLT<RMatrix> llt_x(x);
                if (llt_x.info() != Eigen::Success)
                {
                    res.breakdown = true;
                    return res;
                }
                const RMatrix l = llt_x.matrixL();
                Eigen::SelfAdjointEigenSolver<RMatrix> eig(sym(l.transpose() * z * l));
                RVector d = eig.eigenvalues().cwiseMax(1e-300).cwiseSqrt();
                const RMatrix &v = eig.eigenvectors();
                const RVector d_isqrt = d.cwiseSqrt().cwiseInverse();
                const RMatrix g = l * v * d_isqrt.asDiagonal();
                const RMatrix l_inv = llt_x.matrixL().solve(RMatrix::Identity(n, n));
                const RMatrix g_inv = d.cwiseSqrt().asDiagonal() * v.transpose() * l_inv;
                const RMatrix w = g * g.transpose();

                const RVector ratio = xl.cwiseQuotient(zl);

                // Schur complement.
                RMatrix schur(m, m);
                for (Eigen::Index j = 0; j < m; ++j)
                    b_j[j] = sandwich(sf.rows[j], w);
                for (Eigen::Index i = 0; i < m; ++i)
                    for (Eigen::Index j = i; j < m; ++j)
                    {
                        const double v_ij = inner(sf.rows[i], b_j[j]);
                        schur(i, j) = v_ij;
                        schur(j, i) = v_ij;
                    }
                if (p > 0)
                    schur.noalias() += lin_mat.transpose() * ratio.asDiagonal() * lin_mat;
                schur = sym(schur);

                Eigen::LLT<RMatrix> llt_m(schur);
                Eigen::LDLT<RMatrix> ldlt_m;
                const bool use_llt = llt_m.info() == Eigen::Success;
                if (!use_llt)
                {
                    const double reg = 1e-14 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
                    ldlt_m.compute(schur + reg * RMatrix::Identity(m, m));
                    if (ldlt_m.info() != Eigen::Success)
                    {
                        res.breakdown = true;
                        return res;
                    }
                }
                const RMatrix wrdw = sym(w * rd * w);

                struct Direction
                {
                    RMatrix dx, dz;
                    RVector dxl, dzl, dy;
                };

                auto direction = [&](const RMatrix &k_scaled, const RVector &rc) {
                    Direction dir;
                    const RMatrix gkg = sym(g * k_scaled * g.transpose());
                    const RMatrix t = gkg - wrdw;
                    RVector rhs(m);
                    const RVector lp_part = rc.cwiseQuotient(zl) - ratio.cwiseProduct(rdl);
                    for (Eigen::Index i = 0; i < m; ++i)
                        rhs(i) = rp(i) - inner(sf.rows[i], t) - sf.rows[i].lin.dot(lp_part);
                    dir.dy = use_llt ? RVector(llt_m.solve(rhs)) : RVector(ldlt_m.solve(rhs));
                    dir.dz = rd;
                    dir.dx = t;
                    for (Eigen::Index i = 0; i < m; ++i)
                    {
                        accumulate(sf.rows[i], -dir.dy(i), dir.dz);
                        dir.dx.noalias() += dir.dy(i) * b_j[i];
                    }
                    dir.dz = sym(dir.dz);
                    dir.dx = sym(dir.dx);
                    dir.dzl = rdl - lin_mat * dir.dy;
                    dir.dxl = rc.cwiseQuotient(zl) - ratio.cwiseProduct(dir.dzl);
                    return dir;
                };

                auto steps = [&](const Direction &dir, double tau) {
                    double ap = std::min(max_step_psd(x, dir.dx), max_step_lp(xl, dir.dxl));
                    double ad = std::min(max_step_psd(z, dir.dz), max_step_lp(zl, dir.dzl));
                    return std::make_pair(std::min(1.0, tau * ap), std::min(1.0, tau * ad));
                };

                // Predictor.
                const RMatrix k_aff = -RMatrix(d.asDiagonal());
                const RVector rc_aff = -xl.cwiseProduct(zl);
                const Direction aff = direction(k_aff, rc_aff);
                const auto [ap_aff, ad_aff] = steps(aff, 1.0);
                const double mu_aff = ((x + ap_aff * aff.dx).cwiseProduct(z + ad_aff * aff.dz).sum() +
                                       (xl + ap_aff * aff.dxl).dot(zl + ad_aff * aff.dzl)) /
                                      dim;
                const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

                // Corrector with second-order term in the scaled space.
                const RMatrix dx_s = g_inv * aff.dx * g_inv.transpose();
                const RMatrix dz_s = g.transpose() * aff.dz * g;
                RMatrix r_s = -sym(dx_s * dz_s);
                r_s.diagonal().array() += sigma * mu;
                r_s.diagonal() -= d.cwiseProduct(d);
                RMatrix k_cor(n, n);
                for (Eigen::Index c = 0; c < n; ++c)
                    for (Eigen::Index r = 0; r < n; ++r)
                        k_cor(r, c) = 2.0 * r_s(r, c) / (d(r) + d(c));
                const RVector rc_cor =
                    RVector::Constant(p, sigma * mu) - xl.cwiseProduct(zl) - aff.dxl.cwiseProduct(aff.dzl);
                const Direction dir = direction(k_cor, rc_cor);

                const auto [ap, ad] = steps(dir, 0.98);
                if (!(ap > 0.0) || !(ad > 0.0) || !std::isfinite(ap) || !std::isfinite(ad))
                {
                    res.breakdown = true;
                    return res;
                }
                x = sym(x + ap * dir.dx);
                xl += ap * dir.dxl;
                y += ad * dir.dy;
                z = sym(z + ad * dir.dz);
                zl += ad * dir.dzl;
            }
            res.iterations = opt.max_iterations;
            return res;
        }

        // Rank check on the stacked constraint data; returns rows to keep, or nullopt if the
        // dependent rows are inconsistent.
        struct Reduction
        {
            std::vector<Eigen::Index> keep;
            bool consistent = true;
            double inconsistency = 0.0;
        };

        Reduction reduce_rows(const StandardForm &sf)
        {
            const Eigen::Index n = sf.n;
            const auto m = static_cast<Eigen::Index>(sf.rows.size());
            RMatrix stacked(n * n + sf.p, m);
            RVector b(m);
            for (Eigen::Index i = 0; i < m; ++i)
            {
                RMatrix a = RMatrix::Zero(n, n);
                accumulate(sf.rows[i], 1.0, a);
                stacked.col(i).head(n * n) = Eigen::Map<const RVector>(a.data(), n * n);
                stacked.col(i).tail(sf.p) = sf.rows[i].lin;
                b(i) = sf.rows[i].rhs;
            }
            Reduction red;
            Eigen::ColPivHouseholderQR<RMatrix> qr(stacked);
            qr.setThreshold(1e-12);
            if (qr.rank() == m)
            {
                for (Eigen::Index i = 0; i < m; ++i)
                    red.keep.push_back(i);
                return red;
            }
            // Keep the pivot columns; check b against the least-squares fit of the rest.
            const auto perm = qr.colsPermutation().indices();
            for (Eigen::Index i = 0; i < qr.rank(); ++i)
                red.keep.push_back(perm(i));
            std::sort(red.keep.begin(), red.keep.end());
            RMatrix basis(stacked.rows(), static_cast<Eigen::Index>(red.keep.size()));
            RVector b_keep(static_cast<Eigen::Index>(red.keep.size()));
            for (std::size_t k = 0; k < red.keep.size(); ++k)
            {
                basis.col(static_cast<Eigen::Index>(k)) = stacked.col(red.keep[k]);
                b_keep(static_cast<Eigen::Index>(k)) = b(red.keep[k]);
            }
            // Each dependent row i: A_i = basis * coeff  =>  b_i must equal b_keep . coeff.
            Eigen::ColPivHouseholderQR<RMatrix> qr_keep(basis);
            for (Eigen::Index i = 0; i < m; ++i)
            {
                if (std::find(red.keep.begin(), red.keep.end(), i) != red.keep.end())
                    continue;
                const RVector coeff = qr_keep.solve(RVector(stacked.col(i)));
                const double mismatch = std::abs(b(i) - b_keep.dot(coeff)) / (1.0 + std::abs(b(i)));
                red.inconsistency = std::max(red.inconsistency, mismatch);
            }
            red.consistent = red.inconsistency <= 1e-9;
            return red;
        }

        StandardForm to_standard(const SdpProblem &pr)
        {
            StandardForm sf;
            sf.n = pr.dim;
            const Eigen::Index ns = pr.num_scalars;
            const auto ni = static_cast<Eigen::Index>(pr.inequalities.size());
            sf.p = ns + ni;
            const double sign = pr.sense == Sense::Minimize ? 1.0 : -1.0;
            sf.c_mat = sign * sym(pr.objective);
            sf.c_lin = RVector::Zero(sf.p);
            if (pr.objective_scalars.size() == ns && ns > 0)
                sf.c_lin.head(ns) = sign * pr.objective_scalars;

            auto lin_of = [&](const SdpConstraint &c) {
                RVector lin = RVector::Zero(sf.p);
                if (c.scalar_coeffs.size() == ns && ns > 0)
                    lin.head(ns) = c.scalar_coeffs;
                return lin;
            };
            for (const auto &c : pr.equalities)
                sf.rows.push_back(make_row(c.matrix, lin_of(c), c.rhs));
            for (Eigen::Index j = 0; j < ni; ++j)
            {
                const auto &c = pr.inequalities[static_cast<std::size_t>(j)];
                RVector lin = lin_of(c);
                lin(ns + j) = -1.0; // surplus
                sf.rows.push_back(make_row(c.matrix, std::move(lin), c.rhs));
            }
            return sf;
        }

        void fill_report(const SdpProblem &pr, SdpSolution &sol)
        {
            const Eigen::Index ns = pr.num_scalars;
            auto lhs = [&](const SdpConstraint &c) {
                double v = c.matrix.cwiseProduct(sol.x).sum();
                if (c.scalar_coeffs.size() == ns && ns > 0)
                    v += c.scalar_coeffs.dot(sol.scalars);
                return v;
            };
            sol.max_eq_residual = 0.0;
            for (const auto &c : pr.equalities)
                sol.max_eq_residual =
                    std::max(sol.max_eq_residual, std::abs(lhs(c) - c.rhs) / (1.0 + std::abs(c.rhs)));
            sol.max_ineq_violation = 0.0;
            for (const auto &c : pr.inequalities)
                sol.max_ineq_violation =
                    std::max(sol.max_ineq_violation, std::max(0.0, c.rhs - lhs(c)) / (1.0 + std::abs(c.rhs)));
            if (sol.x.size() > 0)
            {
                Eigen::SelfAdjointEigenSolver<RMatrix> eig(sym(sol.x), Eigen::EigenvaluesOnly);
                sol.min_eigenvalue = eig.eigenvalues()(0);
            }
            sol.objective_value = pr.objective.cwiseProduct(sol.x).sum();
            if (pr.objective_scalars.size() == ns && ns > 0)
                sol.objective_value += pr.objective_scalars.dot(sol.scalars);
        }

        // Smallest total violation sum |e| over  A(X) + a.x + e+ - e- = b.
        double phase_one_violation(const StandardForm &sf, const SdpOptions &opt, const RVector &row_scale)
        {
            StandardForm ph;
            const auto m = static_cast<Eigen::Index>(sf.rows.size());
            ph.n = sf.n;
            ph.p = sf.p + 2 * m;
            ph.c_mat = RMatrix::Zero(sf.n, sf.n);
            ph.c_lin = RVector::Zero(ph.p);
            ph.c_lin.tail(2 * m).setOnes();
            // A tiny trace weight keeps X bounded when the violation optimum is not unique.
            ph.c_mat.diagonal().setConstant(1e-10);
            for (Eigen::Index i = 0; i < m; ++i)
            {
                Row row = sf.rows[i];
                RVector lin = RVector::Zero(ph.p);
                lin.head(sf.p) = row.lin;
                lin(sf.p + i) = 1.0;
                lin(sf.p + m + i) = -1.0;
                row.lin = std::move(lin);
                ph.rows.push_back(std::move(row));
            }
            SdpOptions o = opt;
            o.tolerance = std::max(opt.tolerance, 1e-10);
            const IpmResult r = run_ipm(ph, o);
            double worst = 0.0;
            for (Eigen::Index i = 0; i < m; ++i)
            {
                const double e = r.lin(sf.p + i) - r.lin(sf.p + m + i);
                worst = std::max(worst, std::abs(e) / row_scale(i));
            }
            return worst;
        }
    } // namespace

    const char *to_string(SdpStatus status)
    {
        switch (status)
        {
        case SdpStatus::Optimal:
            return "Optimal";
        case SdpStatus::Infeasible:
            return "Infeasible";
        case SdpStatus::NumericalFailure:
            return "NumericalFailure";
        }
        return "Unknown";
    }

    void SdpProblem::validate() const
    {
        if (dim < 1)
            throw Error(ErrorCode::DimensionMismatch, "SDP dimension must be positive");
        auto check_matrix = [&](const RMatrix &a, const char *what) {
            if (a.rows() != dim || a.cols() != dim)
                throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has the wrong size");
            if (!a.allFinite())
                throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN/Inf entries");
            const double asym = (a - a.transpose()).norm();
            if (asym > 1e-10 * std::max(1.0, a.norm()))
                throw Error(ErrorCode::NonHermitian, std::string(what) + " is not symmetric");
        };
        auto check_scalars = [&](const RVector &v, const char *what) {
            if (v.size() != 0 && v.size() != num_scalars)
                throw Error(ErrorCode::DimensionMismatch, std::string(what) + " scalar coefficients have the wrong size");
        };
        check_matrix(objective, "objective");
        check_scalars(objective_scalars, "objective");
        for (const auto &c : equalities)
        {
            check_matrix(c.matrix, "equality constraint");
            check_scalars(c.scalar_coeffs, "equality constraint");
        }
        for (const auto &c : inequalities)
        {
            check_matrix(c.matrix, "inequality constraint");
            check_scalars(c.scalar_coeffs, "inequality constraint");
        }
    }

    SdpSolution InteriorPointSolver::solve(const SdpProblem &problem, const SdpOptions &options) const
    {
        problem.validate();
        if (problem.dim > options.max_dim)
            throw Error(ErrorCode::DimensionMismatch, "SDP dimension " + std::to_string(problem.dim) +
                                                          " exceeds the configured cap");

        StandardForm sf = to_standard(problem);
        SdpSolution sol;
        sol.x = RMatrix::Zero(problem.dim, problem.dim);
        sol.scalars = RVector::Zero(problem.num_scalars);

        RVector row_scale(static_cast<Eigen::Index>(sf.rows.size()));
        for (std::size_t i = 0; i < sf.rows.size(); ++i)
            row_scale(static_cast<Eigen::Index>(i)) = 1.0 + std::abs(sf.rows[i].rhs);

        if (!sf.rows.empty())
        {
            const Reduction red = reduce_rows(sf);
            if (!red.consistent)
            {
                sol.status = SdpStatus::Infeasible;
                sol.max_eq_residual = red.inconsistency;
                return sol;
            }
            if (red.keep.size() != sf.rows.size())
            {
                std::vector<Row> kept;
                RVector scale(static_cast<Eigen::Index>(red.keep.size()));
                for (std::size_t k = 0; k < red.keep.size(); ++k)
                {
                    kept.push_back(sf.rows[static_cast<std::size_t>(red.keep[k])]);
                    scale(static_cast<Eigen::Index>(k)) = row_scale(red.keep[k]);
                }
                sf.rows = std::move(kept);
                row_scale = scale;
            }
        }

        const IpmResult r = run_ipm(sf, options);
        sol.iterations = r.iterations;
        sol.x = r.x;
        sol.scalars = r.lin.head(problem.num_scalars);
        fill_report(problem, sol);

        const bool feasible_enough = sol.max_eq_residual <= options.feasibility_tolerance &&
                                     sol.max_ineq_violation <= options.feasibility_tolerance &&
                                     sol.min_eigenvalue >= -options.psd_tolerance;
        const bool near_optimal = r.gap <= std::max(options.tolerance, 1e-7) && r.dinf <= 1e-6;
        if ((r.converged || near_optimal) && feasible_enough)
        {
            sol.status = SdpStatus::Optimal;
            return sol;
        }

        const double violation = sf.rows.empty() ? 0.0 : phase_one_violation(sf, options, row_scale);
        if (violation > options.feasibility_tolerance)
        {
            sol.status = SdpStatus::Infeasible;
            sol.max_eq_residual = std::max(sol.max_eq_residual, violation);
        }
        else
        {
            sol.status = SdpStatus::NumericalFailure;
        }
        return sol;
    }

    SdpSolution solve(const SdpProblem &problem, const SdpOptions &options)
    {
        static const InteriorPointSolver backend;
        return backend.solve(problem, options);
    }

    RMatrix embed_complex(const CMatrix &h)
    {
        if (h.rows() != h.cols())
            throw Error(ErrorCode::DimensionMismatch, "embed_complex expects a square matrix");
        const double asym = (h - h.adjoint()).norm();
        if (asym > 1e-10 * std::max(1.0, h.norm()))
            throw Error(ErrorCode::NonHermitian, "embed_complex expects a Hermitian matrix");
        const Eigen::Index n = h.rows();
        const CMatrix herm = hermitian_part(h);
        RMatrix out(2 * n, 2 * n);
        out.topLeftCorner(n, n) = herm.real();
        out.bottomRightCorner(n, n) = herm.real();
        out.topRightCorner(n, n) = -herm.imag();
        out.bottomLeftCorner(n, n) = herm.imag();
        return out;
    }

    CMatrix deembed(const RMatrix &y)
    {
        if (y.rows() != y.cols() || y.rows() % 2 != 0)
            throw Error(ErrorCode::DimensionMismatch, "deembed expects an even square matrix");
        const Eigen::Index n = y.rows() / 2;
        const RMatrix re = 0.5 * (y.topLeftCorner(n, n) + y.bottomRightCorner(n, n));
        const RMatrix im = 0.5 * (y.bottomLeftCorner(n, n) - y.topRightCorner(n, n));
        CMatrix out(n, n);
        out.real() = re;
        out.imag() = im;
        return hermitian_part(out);
    }
} // namespace risisac
