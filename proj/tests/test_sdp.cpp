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
#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace risisac;
using Catch::Approx;

namespace
{
    SdpConstraint trace_equals(Eigen::Index n, double value)
    {
        return {RMatrix::Identity(n, n), RVector(), value};
    }

    double min_eig(const RMatrix &x)
    {
        return Eigen::SelfAdjointEigenSolver<RMatrix>(0.5 * (x + x.transpose())).eigenvalues()(0);
    }

    // Random strictly feasible minimization: C positive definite, constraints built around
    // an interior point x0 so the feasible set has nonempty interior.
    struct Random
    {
        SdpProblem problem;
        RMatrix x0;
    };

    Random random_problem(gen::Engine &eng, Eigen::Index n, int eqs, int ineqs)
    {
        Random r;
        RMatrix b(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                b(i, j) = gen::uniform(eng, -1, 1);
        r.x0 = b * b.transpose() / n + 0.5 * RMatrix::Identity(n, n);

        SdpProblem &p = r.problem;
        p.dim = n;
        RMatrix c = gen::symmetric(eng, n);
        p.objective = c * c.transpose() + 0.1 * RMatrix::Identity(n, n);
        p.equalities.push_back(trace_equals(n, r.x0.trace()));
        for (int i = 1; i < eqs; ++i)
        {
            const RMatrix a = gen::symmetric(eng, n);
            p.equalities.push_back({a, RVector(), (a.cwiseProduct(r.x0)).sum()});
        }
        for (int i = 0; i < ineqs; ++i)
        {
            const RMatrix a = gen::symmetric(eng, n);
            p.inequalities.push_back({a, RVector(), (a.cwiseProduct(r.x0)).sum() - gen::uniform(eng, 0.1, 1.0)});
        }
        return r;
    }

    bool feasible(const SdpProblem &p, const RMatrix &x, double tol)
    {
        if (min_eig(x) < -tol)
            return false;
        for (const auto &c : p.equalities)
            if (std::abs((c.matrix.cwiseProduct(x)).sum() - c.rhs) > tol * (1 + std::abs(c.rhs)))
                return false;
        for (const auto &c : p.inequalities)
            if ((c.matrix.cwiseProduct(x)).sum() < c.rhs - tol * (1 + std::abs(c.rhs)))
                return false;
        return true;
    }
} // namespace

TEST_CASE("embed_complex examples", "[sdp]")
{
    const RMatrix e = embed_complex(CMatrix::Identity(2, 2));
    CHECK((e - RMatrix::Identity(4, 4)).norm() == 0.0);

    CMatrix h(2, 2);
    h << 0.0, Complex(0, 1), Complex(0, -1), 0.0;
    RMatrix expected(4, 4);
    expected << 0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0;
    CHECK((embed_complex(h) - expected).norm() == 0.0);

    CMatrix bad(2, 2);
    bad << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS(embed_complex(bad), Error);
}

TEST_CASE("embedding doubles every eigenvalue and round-trips", "[sdp][property]")
{
    gen::Engine eng(51);
    for (int c = 0; c < 50; ++c)
    {
        const Eigen::Index n = gen::integer(eng, 1, 8);
        const CMatrix h = gen::hermitian(eng, n);
        const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(h).eigenvalues();
        const RVector ee = Eigen::SelfAdjointEigenSolver<RMatrix>(embed_complex(h)).eigenvalues();
        for (Eigen::Index i = 0; i < n; ++i)
        {
            CHECK(std::abs(ee(2 * i) - ev(i)) <= 1e-10);
            CHECK(std::abs(ee(2 * i + 1) - ev(i)) <= 1e-10);
        }
        CHECK((deembed(embed_complex(h)) - h).norm() <= 1e-12);

        const CMatrix a = gen::hermitian(eng, n);
        const double direct = (a * h).trace().real();
        CHECK(std::abs((embed_complex(a).cwiseProduct(embed_complex(h))).sum() - 2.0 * direct) <=
              1e-10 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("solve: smallest eigenvalue problem", "[sdp]")
{
    SdpProblem p;
    p.dim = 2;
    p.objective = RMatrix::Zero(2, 2);
    p.objective(0, 0) = 1.0;
    p.objective(1, 1) = 2.0;
    p.equalities.push_back(trace_equals(2, 1.0));
    const SdpSolution s = solve(p);
    REQUIRE(s.status == SdpStatus::Optimal);
    CHECK(s.objective_value == Approx(1.0).margin(1e-7));
    CHECK(s.x(0, 0) == Approx(1.0).margin(1e-6));
    CHECK(std::abs(s.x(1, 1)) <= 1e-6);
}

TEST_CASE("solve: Rayleigh quotient maximum", "[sdp]")
{
    gen::Engine eng(52);
    const Eigen::Index n = 6;
    RVector a(n);
    for (Eigen::Index i = 0; i < n; ++i)
        a(i) = gen::uniform(eng, 0, 1) < 0.5 ? -1.0 : 1.0;
    SdpProblem p;
    p.dim = n;
    p.sense = Sense::Maximize;
    p.objective = a * a.transpose();
    p.equalities.push_back(trace_equals(n, 1.0));
    const SdpSolution s = solve(p);
    REQUIRE(s.status == SdpStatus::Optimal);
    CHECK(s.objective_value == Approx(static_cast<double>(n)).epsilon(1e-7));
    CHECK((s.x - a * a.transpose() / static_cast<double>(n)).norm() <= 1e-5);
    const SymEig e = symmetric_eig(s.x);
    CHECK(e.values(0) == Approx(1.0).margin(1e-6));
}

TEST_CASE("solve: contradictory equalities are infeasible", "[sdp]")
{
    SdpProblem p;
    p.dim = 3;
    p.objective = RMatrix::Identity(3, 3);
    p.equalities.push_back(trace_equals(3, 1.0));
    p.equalities.push_back(trace_equals(3, 2.0));
    CHECK(solve(p).status == SdpStatus::Infeasible);

    // a repeated row is redundant, not contradictory
    SdpProblem q = p;
    q.equalities[1].rhs = 1.0;
    CHECK(solve(q).status == SdpStatus::Optimal);
}

TEST_CASE("solve: infeasible inequality against PSD cone", "[sdp]")
{
    // tr(X) = 1 and -X_00 - X_11 >= 0.5 cannot both hold for PSD X
    SdpProblem p;
    p.dim = 2;
    p.objective = RMatrix::Identity(2, 2);
    p.equalities.push_back(trace_equals(2, 1.0));
    p.inequalities.push_back({-RMatrix::Identity(2, 2), RVector(), 0.5});
    CHECK(solve(p).status == SdpStatus::Infeasible);
}

TEST_CASE("solve: auxiliary scalars", "[sdp]")
{
    // max t  s.t. tr(X) = 1, X_00 - t >= 0, X_11 - t >= 0  ->  t = 1/2
    SdpProblem p;
    p.dim = 2;
    p.num_scalars = 1;
    p.sense = Sense::Maximize;
    p.objective = RMatrix::Zero(2, 2);
    p.objective_scalars = RVector::Ones(1);
    p.equalities.push_back({RMatrix::Identity(2, 2), RVector::Zero(1), 1.0});
    RMatrix e00 = RMatrix::Zero(2, 2), e11 = RMatrix::Zero(2, 2);
    e00(0, 0) = 1.0;
    e11(1, 1) = 1.0;
    p.inequalities.push_back({e00, -RVector::Ones(1), 0.0});
    p.inequalities.push_back({e11, -RVector::Ones(1), 0.0});
    const SdpSolution s = solve(p);
    REQUIRE(s.status == SdpStatus::Optimal);
    CHECK(s.scalars(0) == Approx(0.5).margin(1e-7));
    CHECK(s.objective_value == Approx(0.5).margin(1e-7));
}

TEST_CASE("solve validates its input", "[sdp]")
{
    SdpProblem p;
    p.dim = 2;
    p.objective = RMatrix::Identity(3, 3);
    CHECK_THROWS_AS(solve(p), Error);

    SdpProblem q;
    q.dim = 2;
    q.objective = RMatrix::Identity(2, 2);
    RMatrix asym = RMatrix::Zero(2, 2);
    asym(0, 1) = 1.0;
    q.equalities.push_back({asym, RVector(), 0.0});
    CHECK_THROWS_AS(solve(q), Error);

    CHECK(std::string(to_string(SdpStatus::Infeasible)) == "Infeasible");
}

TEST_CASE("random strictly feasible problems reach a local-improvement-free optimum", "[sdp][property]")
{
    gen::Engine eng(53);
    for (int c = 0; c < 30; ++c)
    {
        INFO("case " << c);
        const Eigen::Index n = gen::integer(eng, 2, 16);
        const int eqs = gen::integer(eng, 1, static_cast<int>(n));
        const int ineqs = gen::integer(eng, 0, 4);
        const Random r = random_problem(eng, n, eqs, ineqs);
        const SdpSolution s = solve(r.problem);
        REQUIRE(s.status == SdpStatus::Optimal);
        CHECK(s.min_eigenvalue >= -1e-7);
        CHECK(s.max_eq_residual <= 1e-6);
        CHECK(feasible(r.problem, s.x, 1e-6));

        const double obj = (r.problem.objective.cwiseProduct(s.x)).sum();
        CHECK(std::abs(obj - s.objective_value) <= 1e-8 * (1.0 + std::abs(obj)));

        // Feasible directions: towards x0 and towards PSD perturbations of it that keep
        // every constraint, each scaled to norm 1e-4.
        for (int d = 0; d < 10; ++d)
        {
            RMatrix target = r.x0;
            if (d > 0)
            {
                // drop the components along the equality rows so they stay satisfied
                const auto &rows = r.problem.equalities;
                RMatrix basis(n * n, static_cast<Eigen::Index>(rows.size()));
                for (std::size_t k = 0; k < rows.size(); ++k)
                    basis.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const RVector>(rows[k].matrix.data(), n * n);
                const RMatrix sym = gen::symmetric(eng, n);
                const RVector flat = Eigen::Map<const RVector>(sym.data(), n * n);
                const RVector rest = flat - basis * basis.colPivHouseholderQr().solve(flat);
                const RMatrix e = Eigen::Map<const RMatrix>(rest.data(), n, n);
                target = r.x0 + 0.05 * e / std::max(1e-12, e.norm());
                if (!feasible(r.problem, target, 1e-12))
                    continue;
            }
            RMatrix dir = target - s.x;
            if (dir.norm() < 1e-3)
                continue;
            dir *= 1e-4 / dir.norm();
            const double moved = (r.problem.objective.cwiseProduct(s.x + dir)).sum();
            CHECK(moved >= obj - 1e-6 * (1.0 + std::abs(obj)));
        }
    }
}

TEST_CASE("complex problems solved through the embedding de-embed to PSD matrices", "[sdp][property]")
{
    gen::Engine eng(54);
    for (int c = 0; c < 20; ++c)
    {
        const Eigen::Index n = gen::integer(eng, 2, 8);
        const CMatrix q = gen::hermitian(eng, n);
        SdpProblem p;
        p.dim = 2 * n;
        p.objective = 0.5 * embed_complex(q);
        p.equalities.push_back({0.5 * embed_complex(CMatrix::Identity(n, n)), RVector(), 1.0});
        const SdpSolution s = solve(p);
        REQUIRE(s.status == SdpStatus::Optimal);
        const CMatrix x = deembed(s.x);
        CHECK((x - x.adjoint()).norm() <= 1e-12);
        const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(x).eigenvalues();
        CHECK(ev(0) >= -1e-7);
        CHECK(x.trace().real() == Approx(1.0).margin(1e-6));
        const double lmin = Eigen::SelfAdjointEigenSolver<CMatrix>(q).eigenvalues()(0);
        CHECK((q * x).trace().real() == Approx(lmin).margin(1e-6 * (1.0 + std::abs(lmin))));
    }
}

TEST_CASE("project enforces its structure", "[sdp][property]")
{
    gen::Engine eng(55);
    for (int c = 0; c < 100; ++c)
    {
        const CVector x = gen::cvector(eng, gen::integer(eng, 1, 20));
        CHECK(std::abs(project(x, Projection::UnitNorm).norm() - 1.0) <= 1e-14);
        const CVector u = project(x, Projection::UnitModulus);
        for (Eigen::Index i = 0; i < u.size(); ++i)
            CHECK(std::abs(std::abs(u(i)) - 1.0) <= 1e-14);
    }
    CHECK(std::abs(project(CVector::Zero(4), Projection::UnitNorm).norm() - 1.0) <= 1e-14);
    CHECK(project(CVector::Zero(2), Projection::UnitModulus)(0) == Complex(1.0, 0.0));
}

TEST_CASE("rank_one_recover examples", "[sdp]")
{
    gen::Engine eng(56);
    const auto any = [](const CVector &) -> std::optional<double> { return 0.0; };

    SECTION("exactly rank one recovers v up to a global phase")
    {
        const CVector v = gen::unit_modulus(eng, 8);
        Rng rng(1);
        RecoveryOptions o;
        o.projection = Projection::UnitModulus;
        const Recovery r = rank_one_recover(outer(v), o, any, rng);
        CHECK(r.from_eigenvector);
        CHECK(r.eigen_mass == Approx(1.0));
        const Complex g = r.x.dot(v) / 8.0;
        CHECK(std::abs(std::abs(g) - 1.0) <= 1e-10);
        CHECK((r.x * g - v).norm() <= 1e-8);
    }
    SECTION("scaled identity falls back to randomization")
    {
        Rng rng(2);
        RecoveryOptions o;
        o.projection = Projection::UnitModulus;
        const Recovery r = rank_one_recover(CMatrix::Identity(6, 6) / 6.0, o, any, rng);
        CHECK(r.eigen_mass < 0.99);
        CHECK(r.candidates == 201);
        for (Eigen::Index i = 0; i < 6; ++i)
            CHECK(std::abs(std::abs(r.x(i)) - 1.0) <= 1e-14);
    }
    SECTION("dominant eigenvector with a small complement")
    {
        const Eigen::Index n = 8;
        const CVector v = gen::unit_modulus(eng, n);
        const CMatrix pv = outer(v) / static_cast<double>(n);
        const CMatrix complement = CMatrix::Identity(n, n) - pv;
        const CMatrix x = 0.99 * outer(v) + 0.01 * complement / static_cast<double>(n - 1);
        Rng rng(3);
        RecoveryOptions o;
        o.projection = Projection::UnitModulus;
        const Recovery r = rank_one_recover(x, o, any, rng);
        CHECK(r.from_eigenvector);
        const Complex g = r.x.dot(v);
        for (Eigen::Index i = 0; i < n; ++i)
            CHECK(std::abs(std::arg(r.x(i) * g / std::abs(g) * std::conj(v(i)))) <= 0.1);
    }
    SECTION("no feasible candidate throws")
    {
        Rng rng(4);
        const auto none = [](const CVector &) -> std::optional<double> { return std::nullopt; };
        CHECK_THROWS_AS(rank_one_recover(CMatrix::Identity(3, 3), {}, none, rng), Error);
    }
    SECTION("the best scoring candidate wins")
    {
        Rng rng(5);
        RecoveryOptions o;
        o.mode = RecoveryMode::Randomize;
        const auto first = [](const CVector &x) -> std::optional<double> { return std::norm(x(0)); };
        const Recovery r = rank_one_recover(CMatrix::Identity(4, 4), o, first, rng);
        CHECK(r.score == Approx(std::norm(r.x(0))));
        CHECK(r.score > 0.5);
    }
}

TEST_CASE("rank_one_recover keeps structure for arbitrary PSD input", "[sdp][property]")
{
    gen::Engine eng(57);
    const auto any = [](const CVector &) -> std::optional<double> { return 0.0; };
    for (int c = 0; c < 30; ++c)
    {
        const Eigen::Index n = gen::integer(eng, 1, 12);
        const CMatrix x = gen::psd(eng, n, gen::integer(eng, 1, static_cast<int>(n)));
        Rng rng(c);
        RecoveryOptions o;
        o.samples = 20;
        o.projection = c % 2 ? Projection::UnitNorm : Projection::UnitModulus;
        const Recovery r = rank_one_recover(x, o, any, rng);
        if (o.projection == Projection::UnitNorm)
            CHECK(std::abs(r.x.norm() - 1.0) <= 1e-14);
        else
            for (Eigen::Index i = 0; i < n; ++i)
                CHECK(std::abs(std::abs(r.x(i)) - 1.0) <= 1e-14);
    }
}
