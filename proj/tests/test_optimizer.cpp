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
#include "risisac/optimizer.hpp"
#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace risisac;
using Catch::Approx;

namespace
{
    Instance default_instance(std::uint64_t seed, double rate_k = 2e6)
    {
        ScenarioConfig cfg;
        cfg.rate_k_th = rate_k;
        return make_instance(cfg, seed);
    }

    CVector matched_beam(const ChannelSet &ch)
    {
        return ch.a_ap_s / ch.a_ap_s.norm();
    }

    double min_eig(const RMatrix &x)
    {
        return Eigen::SelfAdjointEigenSolver<RMatrix>(0.5 * (x + x.transpose())).eigenvalues()(0);
    }

    ErrorCode code_of(const std::function<void()> &f)
    {
        try
        {
            f();
        }
        catch (const Error &e)
        {
            return e.code();
        }
        FAIL("no exception");
        return ErrorCode::IoError;
    }
} // namespace

TEST_CASE("sinr_threshold", "[optimizer]")
{
    CHECK(sinr_threshold(0.0, 0.3, 5e7) == 0.0);
    CHECK(sinr_threshold(2.5e7, 0.5, 5e7) == Approx(1.0));
    CHECK(sinr_threshold(5e7, 0.5, 5e7) == Approx(3.0));
}

TEST_CASE("alpha_grid", "[optimizer]")
{
    const auto g = alpha_grid(0.01);
    REQUIRE(g.size() == 101);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK(std::find(g.begin(), g.end(), 0.5) != g.end());
    CHECK(alpha_grid(0.25) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    const auto odd = alpha_grid(0.15);
    CHECK(odd.back() == 1.0);
    CHECK(std::is_sorted(odd.begin(), odd.end()));
}

TEST_CASE("beamforming rows encode the SINR constraints", "[optimizer][property]")
{
    // f^H Q f - rhs = (denominator) (SINR - threshold)
    const Instance inst = default_instance(3);
    gen::Engine eng(61);
    for (int c = 0; c < 40; ++c)
    {
        const double alpha = gen::uniform(eng, 0.0, 0.95);
        const RisPhase v(gen::unit_modulus(eng, 32));
        CVector f = gen::cvector(eng, 8);
        f.normalize();
        const auto rows = beamforming_rows(inst.channels, v, alpha, inst.budget);
        REQUIRE(rows.size() == 4);
        const LinkGains g = link_gains(f, inst.channels, v);
        const double eta = eta_isac(alpha, inst.budget.bandwidth, inst.budget.sigma_tau2);
        const double floor =
            g.target_response * g.beta2 * eta * band_split(alpha, inst.budget).p_isac + (1 - alpha) * inst.budget.sigma2;

        const double cs = sinr_threshold(inst.budget.rate_s_th, alpha, inst.budget.bandwidth);
        const double denom_s = g.coherent_sum * inst.budget.p_k[0] + floor;
        const double lhs_s = quad_form(f, rows[0].q) - rows[0].rhs;
        CHECK(lhs_s == Approx(denom_s * (sinr_s(alpha, g, inst.budget) - cs)).epsilon(1e-8).margin(1e-25));

        const double dk = sinr_threshold(inst.budget.rate_k_th, alpha, inst.budget.bandwidth);
        for (std::size_t k = 0; k < 3; ++k)
        {
            double others = 0.0;
            for (std::size_t i = 0; i < 3; ++i)
                if (i != k)
                    others += g.device[i] * inst.budget.p_k[i];
            const double lhs = quad_form(f, rows[k + 1].q) - rows[k + 1].rhs;
            CHECK(lhs == Approx((others + floor) * (sinr_k(k, alpha, g, inst.budget) - dk)).epsilon(1e-8).margin(1e-25));
        }
    }
    CHECK(code_of([&] { beamforming_rows(inst.channels, RisPhase::zeros(32), 1.0, inst.budget); }) ==
          ErrorCode::InvalidAlpha);
}

TEST_CASE("phase rows encode the SINR constraints", "[optimizer][property]")
{
    const Instance inst = default_instance(4);
    gen::Engine eng(62);
    for (int c = 0; c < 40; ++c)
    {
        const double alpha = gen::uniform(eng, 0.0, 0.95);
        const RisPhase v(gen::unit_modulus(eng, 32));
        CVector f = gen::cvector(eng, 8);
        f.normalize();
        const auto rows = phase_rows(inst.channels, f, alpha, inst.budget);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].slack == Eigen::Index{0});
        CHECK(rows[3].slack == Eigen::Index{3});

        // direction identity f^H hbar_k = r_k^H v
        for (std::size_t k = 0; k < 3; ++k)
        {
            const CVector r = phase_direction(f, inst.channels.h_ap_ris, inst.channels.h_ris_k[k]);
            const Complex viaphase = r.dot(v.v());
            const Complex direct = f.dot(cascade(inst.channels.h_ris_k[k], v, inst.channels.h_ap_ris));
            CHECK(std::abs(viaphase - direct) <= 1e-12 * std::max(1e-30, std::abs(direct)));
        }

        const LinkGains g = link_gains(f, inst.channels, v);
        const double eta = eta_isac(alpha, inst.budget.bandwidth, inst.budget.sigma_tau2);
        const double floor =
            g.target_response * g.beta2 * eta * band_split(alpha, inst.budget).p_isac + (1 - alpha) * inst.budget.sigma2;
        const double cs = sinr_threshold(inst.budget.rate_s_th, alpha, inst.budget.bandwidth);
        const double lhs_s = quad_form(v.v(), rows[0].q) - rows[0].rhs;
        const double denom_s = g.coherent_sum * inst.budget.p_k[0] + floor;
        CHECK(lhs_s == Approx(denom_s * (sinr_s(alpha, g, inst.budget) - cs)).epsilon(1e-8).margin(1e-25));
    }
}

TEST_CASE("build_p22 without devices or rates is a Rayleigh quotient", "[optimizer]")
{
    ScenarioConfig cfg;
    cfg.devices = 0;
    cfg.rate_s_th = 0.0;
    cfg.rate_k_th = 0.0;
    const Instance inst = make_instance(cfg, 1);
    const SdpProblem p = build_p22(inst.channels, RisPhase::zeros(32), 0.3, inst.budget);
    CHECK(p.dim == 16);
    const SdpSolution s = solve(p);
    REQUIRE(s.status == SdpStatus::Optimal);
    CHECK(s.objective_value == Approx(8.0).epsilon(1e-7));
    const CMatrix f_mat = deembed(s.x);
    CHECK(f_mat.trace().real() == Approx(1.0).margin(1e-6));
    CHECK(s.min_eigenvalue >= -1e-7);

    const HermEig e = hermitian_eig(f_mat);
    const CVector f = e.vectors.col(0);
    CHECK(std::norm(f.dot(inst.channels.a_ap_s)) == Approx(8.0).epsilon(1e-6));
    CHECK((f_mat - outer(matched_beam(inst.channels))).norm() <= 1e-5);
}

TEST_CASE("build_p22 with an impossible rate is infeasible", "[optimizer]")
{
    ScenarioConfig cfg;
    cfg.rate_k_th = 5e9;
    const Instance inst = make_instance(cfg, 1);
    const SdpSolution s = solve(build_p22(inst.channels, RisPhase::zeros(32), 0.2, inst.budget));
    CHECK(s.status == SdpStatus::Infeasible);
}

TEST_CASE("solved beamforming relaxations echo their constraints", "[optimizer]")
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
    {
        ScenarioConfig cfg;
        cfg.rate_k_th = 2e5;
        cfg.rate_s_th = 1e6;
        const Instance inst = make_instance(cfg, seed);
        const SdpSolution s = solve(build_p22(inst.channels, RisPhase::zeros(32), 0.3, inst.budget));
        if (s.status != SdpStatus::Optimal)
            continue;
        CHECK(deembed(s.x).trace().real() == Approx(1.0).margin(1e-6));
        CHECK(min_eig(s.x) >= -1e-7);
        CHECK(s.max_eq_residual <= 1e-6);
    }
}

TEST_CASE("solve_alpha with zero thresholds picks the sensing-only end", "[optimizer]")
{
    ScenarioConfig cfg;
    cfg.rate_s_th = 0.0;
    cfg.rate_k_th = 0.0;
    const Instance inst = make_instance(cfg, 2);
    const AlphaChoice a =
        solve_alpha(inst.channels, matched_beam(inst.channels), RisPhase::zeros(32), inst.budget, 0.01);
    CHECK(a.alpha == 1.0);
    CHECK(a.feasible_points == 101);
    const double j1 = fim(1.0, matched_beam(inst.channels), inst.channels, inst.budget);
    const double j0 = fim(0.0, matched_beam(inst.channels), inst.channels, inst.budget);
    CHECK(j1 / j0 == Approx(10.0));
    CHECK(a.crb == Approx(1.0 / j1));
}

TEST_CASE("solve_alpha with unreachable rates reports an empty set", "[optimizer]")
{
    ScenarioConfig cfg;
    cfg.rate_k_th = 5e9;
    const Instance inst = make_instance(cfg, 2);
    CHECK(code_of([&] {
              solve_alpha(inst.channels, matched_beam(inst.channels), RisPhase::zeros(32), inst.budget, 0.01);
          }) == ErrorCode::EmptyFeasibleSet);
}

TEST_CASE("solve_alpha is invariant to a common power scale", "[optimizer][property]")
{
    gen::Engine eng(63);
    for (std::uint64_t seed = 1; seed <= 6; ++seed)
    {
        ScenarioConfig cfg;
        cfg.rate_k_th = 5e5;
        cfg.rate_s_th = 1e6;
        Instance inst = make_instance(cfg, seed);
        const RisPhase v(gen::unit_modulus(eng, 32));
        CVector f = gen::cvector(eng, 8);
        f = (0.2 * f / f.norm() + matched_beam(inst.channels)).normalized();
        AlphaChoice base;
        try
        {
            base = solve_alpha(inst.channels, f, v, inst.budget, 0.01);
        }
        catch (const Error &)
        {
            continue;
        }
        for (double scale : {1e-3, 7.0, 1e4})
        {
            LinkBudget b = inst.budget;
            b.sigma2 *= scale;
            b.p_s *= scale;
            for (double &p : b.p_k)
                p *= scale;
            b.rho_so *= scale;
            b.rho_isac *= scale;
            const AlphaChoice scaled = solve_alpha(inst.channels, f, v, b, 0.01);
            CHECK(scaled.alpha == base.alpha);
            CHECK(scaled.feasible_points == base.feasible_points);
        }
    }
}

TEST_CASE("build_p43 structure", "[optimizer]")
{
    SECTION("M = 1 leaves scalar constraints on the slacks")
    {
        ScenarioConfig cfg;
        cfg.ris_elements = 1;
        const Instance inst = make_instance(cfg, 1);
        const SdpProblem p = build_p43(inst.channels, matched_beam(inst.channels), 0.3, inst.budget);
        CHECK(p.dim == 2);
        CHECK(p.num_scalars == 4);
        const SdpSolution s = solve(p);
        if (s.status == SdpStatus::Optimal)
        {
            const CMatrix v = deembed(s.x);
            CHECK(v(0, 0).real() == Approx(1.0).margin(1e-6));
        }
    }
    SECTION("no devices leaves delta_s alone")
    {
        ScenarioConfig cfg;
        cfg.devices = 0;
        cfg.rate_s_th = 1e6;
        const Instance inst = make_instance(cfg, 1);
        const SdpProblem p = build_p43(inst.channels, matched_beam(inst.channels), 0.3, inst.budget);
        CHECK(p.num_scalars == 1);
        CHECK(p.objective_scalars.size() == 1);
        CHECK(p.objective.norm() == 0.0);
    }
    SECTION("solved phase relaxations have unit diagonal")
    {
        const Instance inst = default_instance(5, 1e5);
        const SdpSolution s = solve(build_p43(inst.channels, matched_beam(inst.channels), 0.5, inst.budget));
        REQUIRE(s.status == SdpStatus::Optimal);
        const CMatrix v = deembed(s.x);
        for (Eigen::Index m = 0; m < v.rows(); ++m)
            CHECK(std::abs(v(m, m).real() - 1.0) <= 1e-6);
        CHECK(min_eig(s.x) >= -1e-7);
    }
}

TEST_CASE("evaluate names violated constraints", "[optimizer]")
{
    const Instance inst = default_instance(1, 4e6);
    DesignVariables vars;
    vars.alpha = 0.95;
    vars.f = matched_beam(inst.channels);
    Rng rng(3);
    vars.phase = RisPhase::random(32, rng);
    const Evaluation e = evaluate(vars, inst.channels, inst.budget);
    CHECK_FALSE(e.feasible);
    REQUIRE_FALSE(e.violations.empty());
    for (const auto &v : e.violations)
        CHECK(v.find("below threshold") != std::string::npos);
    CHECK(e.crb == Approx(1.0 / fim(0.95, vars.f, inst.channels, inst.budget)));
    CHECK(e.range_error_m == Approx(range_error_m(e.crb)));

    DesignVariables bad = vars;
    bad.f *= 2.0;
    CHECK_FALSE(evaluate(bad, inst.channels, inst.budget).feasible);
}

TEST_CASE("FullSo sits at alpha = 1 with the matched beam", "[optimizer]")
{
    const Instance inst = default_instance(7);
    const AoResult r = run_ao(inst, Scheme::FullSo, 7);
    CHECK(r.status == AoStatus::Converged);
    CHECK(r.vars.alpha == 1.0);
    const double best = 1.0 / fim(1.0, matched_beam(inst.channels), inst.channels, inst.budget);
    CHECK(r.evaluation.crb == Approx(best).epsilon(1e-12));
    CHECK(r.evaluation.feasible);
    for (double rate : r.evaluation.rates)
        CHECK(rate == 0.0);
}

TEST_CASE("Proposed run: monotone trace, feasible output, dominance", "[optimizer][slow]")
{
    const Instance inst = default_instance(2);
    const AoResult p = run_ao(inst, Scheme::Proposed, 2);
    REQUIRE(p.status != AoStatus::Infeasible);
    CHECK(static_cast<int>(p.trace.iterations.size()) <= inst.knobs.max_iterations + 1);
    for (std::size_t i = 1; i < p.trace.iterations.size(); ++i)
        CHECK(p.trace.iterations[i].crb <= p.trace.iterations[i - 1].crb * (1.0 + 1e-6));
    CHECK(p.evaluation.feasible);
    CHECK(p.evaluation.rates[0] >= inst.budget.rate_s_th * (1.0 - 1e-6));
    for (std::size_t k = 1; k < p.evaluation.rates.size(); ++k)
        CHECK(p.evaluation.rates[k] >= inst.budget.rate_k_th * (1.0 - 1e-6));
    CHECK(std::abs(p.vars.f.norm() - 1.0) <= 1e-12);
    for (Eigen::Index m = 0; m < p.vars.phase.size(); ++m)
        CHECK(std::abs(std::abs(p.vars.phase.v()(m)) - 1.0) <= 1e-12);

    const AoResult isac = run_ao(inst, Scheme::FullIsac, 2);
    if (isac.status != AoStatus::Infeasible)
        CHECK(p.evaluation.crb <= isac.evaluation.crb * (1.0 + 1e-6));
    const AoResult so = run_ao(inst, Scheme::FullSo, 2);
    CHECK(so.evaluation.crb <= p.evaluation.crb);

    // audits carry what the hygiene checks need
    for (const SdpAudit &a : p.trace.audits)
        if (a.status == SdpStatus::Optimal)
            CHECK(a.min_eigenvalue >= -1e-7);
}

TEST_CASE("a global rotation of the initial phases leaves the result unchanged", "[optimizer][slow]")
{
    const Instance inst = default_instance(3);
    Rng rng = Rng::stream(3, streams::kInitialPhase);
    const RisPhase start = RisPhase::random(32, rng);
    const AoResult a = run_ao(inst, Scheme::Proposed, 3, start);
    const AoResult b = run_ao(inst, Scheme::Proposed, 3, start.rotated(1.234));
    CHECK(a.status == b.status);
    CHECK(std::abs(a.evaluation.crb - b.evaluation.crb) <= 1e-8 * a.evaluation.crb);
    CHECK(a.vars.alpha == b.vars.alpha);
}

TEST_CASE("run_ao is deterministic per seed", "[optimizer][slow]")
{
    const Instance inst = default_instance(4);
    const AoResult a = run_ao(inst, Scheme::EqualSplit, 4);
    const AoResult b = run_ao(inst, Scheme::EqualSplit, 4);
    CHECK(a.evaluation.crb == b.evaluation.crb);
    CHECK(a.evaluation.rates == b.evaluation.rates);
    CHECK(a.vars.alpha == 0.5);
}

TEST_CASE("an unreachable rate target yields an infeasible status, not an exception", "[optimizer]")
{
    const Instance inst = default_instance(1, 5e9);
    const AoResult r = run_ao(inst, Scheme::EqualSplit, 1);
    CHECK(r.status == AoStatus::Infeasible);
    CHECK_FALSE(r.evaluation.feasible);
    CHECK_FALSE(r.trace.events.empty());
}
