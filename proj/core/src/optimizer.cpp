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

#include "risisac/optimizer.hpp"
#include "risisac/error.hpp"
#include "risisac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace risisac
{
    namespace
    {
        // Worst relative shortfall of the rates against their thresholds (0 when all met).
        double rate_shortfall(const std::vector<double> &rates, const LinkBudget &budget)
        {
            double worst = 0.0;
            for (std::size_t i = 0; i < rates.size(); ++i)
            {
                const double th = i == 0 ? budget.rate_s_th : budget.rate_k_th;
                if (th > 0.0)
                    worst = std::max(worst, (th - rates[i]) / th);
            }
            return worst;
        }

        bool thresholds_nonpositive(const LinkBudget &budget, std::size_t devices)
        {
            return budget.rate_s_th <= 0.0 && (devices == 0 || budget.rate_k_th <= 0.0);
        }

        bool rates_feasible(double alpha, const LinkGains &gains, const LinkBudget &budget,
                            const ModelOptions &model, double tol)
        {
            if (alpha >= 1.0)
                return thresholds_nonpositive(budget, gains.device.size());
            return rate_shortfall(all_rates(alpha, gains, budget, model), budget) <= tol;
        }

        double max_abs(const CMatrix &q) { return q.size() ? q.cwiseAbs().maxCoeff() : 0.0; }

        // Real-embedded coefficient whose trace against Y equals Re tr(q deembed(Y)).
        RMatrix lifted(const CMatrix &q) { return 0.5 * embed_complex(hermitian_part(q)); }

        SdpOptions sdp_options(const AlgorithmKnobs &knobs)
        {
            SdpOptions o;
            o.tolerance = knobs.sdp_tolerance;
            o.max_iterations = knobs.sdp_max_iterations;
            o.feasibility_tolerance = knobs.feasibility_tolerance;
            o.psd_tolerance = knobs.psd_tolerance;
            return o;
        }

        RecoveryOptions recovery_options(const AlgorithmKnobs &knobs, Projection projection)
        {
            RecoveryOptions o;
            o.mode = RecoveryMode::Eigen;
            o.projection = projection;
            o.rank_one_threshold = knobs.rank_one_threshold;
            o.samples = knobs.randomization_samples;
            o.psd_tolerance = knobs.psd_tolerance;
            return o;
        }

        SdpAudit audit_of(int iteration, const char *step, double alpha, const SdpSolution &sol)
        {
            SdpAudit a;
            a.iteration = iteration;
            a.step = step;
            a.alpha = alpha;
            a.status = sol.status;
            a.max_eq_residual = sol.max_eq_residual;
            a.max_ineq_violation = sol.max_ineq_violation;
            a.min_eigenvalue = sol.min_eigenvalue;
            a.ipm_iterations = sol.iterations;
            return a;
        }

        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.6g", v);
            return buf;
        }

        double row_norm(const LiftedRow &row) { return std::max(std::abs(row.rhs), 1e-300); }

        double min_relative_margin(const std::vector<LiftedRow> &rows, const CVector &v)
        {
            double worst = std::numeric_limits<double>::infinity();
            for (const auto &r : rows)
                worst = std::min(worst, (quad_form(v, r.q) - r.rhs) / row_norm(r));
            return worst;
        }

        // Element-wise ascent on the smallest relative margin: with every other element fixed,
        // each row is c + 2 Re(conj(v_m) w_m), so v_m is chosen on a fine angle grid.
        CVector ascend_min_margin(const std::vector<LiftedRow> &rows, CVector v, int sweeps)
        {
            constexpr int kAngles = 256;
            const Eigen::Index m_count = v.size();
            std::vector<CVector> qv;
            std::vector<double> quad;
            for (const auto &r : rows)
            {
                qv.push_back(r.q * v);
                quad.push_back(v.dot(qv.back()).real());
            }
            double current = min_relative_margin(rows, v);
            for (int sweep = 0; sweep < sweeps; ++sweep)
            {
                const double start = current;
                for (Eigen::Index m = 0; m < m_count; ++m)
                {
                    const Complex old = v(m);
                    std::vector<Complex> w(rows.size());
                    std::vector<double> base(rows.size());
                    for (std::size_t i = 0; i < rows.size(); ++i)
                    {
                        w[i] = qv[i](m) - rows[i].q(m, m) * old;
                        base[i] = quad[i] - 2.0 * (std::conj(old) * w[i]).real();
                    }
                    double best_value = -std::numeric_limits<double>::infinity();
                    Complex best = old;
                    for (int k = 0; k < kAngles; ++k)
                    {
                        const Complex cand = std::polar(1.0, 2.0 * kPi * k / kAngles);
                        double worst = std::numeric_limits<double>::infinity();
                        for (std::size_t i = 0; i < rows.size(); ++i)
                            worst = std::min(worst, (base[i] + 2.0 * (std::conj(cand) * w[i]).real() - rows[i].rhs) /
                                                        row_norm(rows[i]));
                        if (worst > best_value)
                        {
                            best_value = worst;
                            best = cand;
                        }
                    }
                    if (best_value <= current)
                        continue;
                    v(m) = best;
                    for (std::size_t i = 0; i < rows.size(); ++i)
                    {
                        qv[i] += rows[i].q.col(m) * (best - old);
                        quad[i] = base[i] + 2.0 * (std::conj(best) * w[i]).real();
                    }
                    current = best_value;
                }
                if (current - start <= 1e-9 * std::max(1.0, std::abs(start)))
                    break;
            }
            return v;
        }

        // maximize t s.t. (tr(Q_i X) - b_i) / |b_i| >= t over X = V (V_mm = 1) or X = F (tr F = 1).
        // The margin t may be negative, so the solver variable is t - t_low >= 0 with t_low
        // below any attainable margin (tr(Q X) >= tr(X) lambda_min(Q)).
        SdpProblem build_margin_problem(Eigen::Index n, const std::vector<LiftedRow> &rows, bool unit_diagonal)
        {
            const double trace = unit_diagonal ? static_cast<double>(n) : 1.0;
            double t_low = 0.0;
            for (const auto &row : rows)
            {
                const HermEig eig = hermitian_eig(hermitian_part(row.q));
                const double lmin = eig.values(eig.values.size() - 1);
                t_low = std::min(t_low, (trace * lmin - row.rhs) / row_norm(row));
            }
            t_low -= 1.0;

            SdpProblem p;
            p.dim = 2 * n;
            p.num_scalars = 1;
            p.sense = Sense::Maximize;
            p.objective = RMatrix::Zero(2 * n, 2 * n);
            p.objective_scalars = RVector::Ones(1);
            if (unit_diagonal)
                for (Eigen::Index i = 0; i < n; ++i)
                {
                    RMatrix e = RMatrix::Zero(2 * n, 2 * n);
                    e(i, i) = 0.5;
                    e(i + n, i + n) = 0.5;
                    p.equalities.push_back({std::move(e), {}, 1.0});
                }
            else
                p.equalities.push_back({lifted(CMatrix::Identity(n, n)), {}, 1.0});
            for (const auto &row : rows)
                p.inequalities.push_back(
                    {lifted(row.q / row_norm(row)), -RVector::Ones(1), row.rhs / row_norm(row) + t_low});
            return p;
        }

        struct Step
        {
            bool accepted = false;
            std::optional<SdpStatus> status;
        };

        class AoRun
        {
        public:
            AoRun(const Instance &inst, Scheme scheme, std::uint64_t seed)
                : inst_(inst), scheme_(scheme), rng_(Rng::stream(seed, streams::kRandomization)),
                  sdp_(sdp_options(inst.knobs)), tol_(inst.knobs.feasibility_tolerance)
            {
            }

            AoResult run(const RisPhase &initial_phase);

        private:
            bool feasible(double alpha, const CVector &f, const RisPhase &phase) const
            {
                return rates_feasible(alpha, link_gains(f, inst_.channels, phase), inst_.budget, inst_.model, tol_);
            }

            double sensing_gain(const CVector &f) const { return std::norm(f.dot(inst_.channels.a_ap_s)); }

            // Sum of the phase-row margins at v, in units of the row scale.
            double phase_margin(const std::vector<LiftedRow> &rows, const CVector &v, double scale) const
            {
                double total = 0.0;
                for (const auto &r : rows)
                    total += (quad_form(v, r.q) - r.rhs) / scale;
                return total;
            }

            std::optional<CVector> beamforming_sdr(int iteration, double alpha, const RisPhase &phase,
                                                   double floor_gain, Step &step);
            Step phase_step(int iteration);
            RisPhase margin_phase(double alpha, const CVector &f, const RisPhase &fallback);
            CVector margin_beam(double alpha, const RisPhase &phase, const CVector &fallback);
            std::optional<DesignVariables> restore_feasibility(double alpha, const CVector &f0,
                                                               const RisPhase &phase0, bool phase_free);
            void record(int iteration, const Step &bf, const Step &ph);

            const Instance &inst_;
            Scheme scheme_;
            Rng rng_;
            SdpOptions sdp_;
            double tol_;
            DesignVariables vars_;
            AoResult out_;
        };

        std::optional<CVector> AoRun::beamforming_sdr(int iteration, double alpha, const RisPhase &phase,
                                                      double floor_gain, Step &step)
        {
            const SdpProblem problem = build_p22(inst_.channels, phase, alpha, inst_.budget, inst_.model);
            const SdpSolution sol = solve(problem, sdp_);
            SdpAudit audit = audit_of(iteration, "beamforming", alpha, sol);
            step.status = sol.status;
            std::optional<CVector> result;
            if (sol.status == SdpStatus::Optimal)
            {
                audit.relaxation_bound = sol.objective_value;
                const CMatrix f_lift = deembed(sol.x);
                auto score = [&](const CVector &f) -> std::optional<double> {
                    if (!feasible(alpha, f, phase))
                        return std::nullopt;
                    return sensing_gain(f);
                };
                try
                {
                    const Recovery rec = rank_one_recover(
                        f_lift, recovery_options(inst_.knobs, Projection::UnitNorm), score, rng_);
                    audit.recovered = true;
                    audit.eigen_mass = rec.eigen_mass;
                    audit.recovered_value = rec.score;
                    audit.structure_error = std::abs(rec.x.norm() - 1.0);
                    audit.rate_shortfall = std::max(
                        0.0, rate_shortfall(all_rates(alpha, link_gains(rec.x, inst_.channels, phase), inst_.budget,
                                                      inst_.model),
                                            inst_.budget));
                    if (rec.score > floor_gain)
                    {
                        result = rec.x;
                        audit.accepted = true;
                    }
                }
                catch (const Error &e)
                {
                    if (e.code() != ErrorCode::RecoveryFailed)
                        throw;
                    out_.trace.events.push_back("iteration " + std::to_string(iteration) +
                                                ": no feasible beamformer among the recovery candidates");
                }
            }
            else if (sol.status == SdpStatus::NumericalFailure)
            {
                out_.trace.events.push_back("iteration " + std::to_string(iteration) +
                                            ": beamforming relaxation did not converge at alpha " + fmt(alpha));
            }
            out_.trace.audits.push_back(audit);
            return result;
        }

        Step AoRun::phase_step(int iteration)
        {
            Step step;
            const double alpha = vars_.alpha;
            const SdpProblem problem = build_p43(inst_.channels, vars_.f, alpha, inst_.budget, inst_.model);
            const SdpSolution sol = solve(problem, sdp_);
            SdpAudit audit = audit_of(iteration, "phase", alpha, sol);
            step.status = sol.status;
            if (sol.status != SdpStatus::Optimal)
            {
                out_.trace.events.push_back("iteration " + std::to_string(iteration) + ": phase relaxation " +
                                            to_string(sol.status) + ", phase shifts retained");
                out_.trace.audits.push_back(audit);
                return step;
            }

            const std::vector<LiftedRow> rows = phase_rows(inst_.channels, vars_.f, alpha, inst_.budget, inst_.model);
            const double scale = (1.0 - alpha) * inst_.budget.sigma2;
            audit.relaxation_bound = sol.objective_value;
            const double current = phase_margin(rows, vars_.phase.v(), scale);
            auto score = [&](const CVector &v) -> std::optional<double> {
                if (!feasible(alpha, vars_.f, RisPhase(v)))
                    return std::nullopt;
                return phase_margin(rows, v, scale);
            };
            try
            {
                const Recovery rec = rank_one_recover(deembed(sol.x),
                                                      recovery_options(inst_.knobs, Projection::UnitModulus), score,
                                                      rng_);
                audit.recovered = true;
                audit.eigen_mass = rec.eigen_mass;
                audit.recovered_value = rec.score;
                double err = 0.0;
                for (Eigen::Index m = 0; m < rec.x.size(); ++m)
                    err = std::max(err, std::abs(std::abs(rec.x(m)) - 1.0));
                audit.structure_error = err;
                const RisPhase candidate(rec.x);
                audit.rate_shortfall = std::max(
                    0.0, rate_shortfall(all_rates(alpha, link_gains(vars_.f, inst_.channels, candidate), inst_.budget,
                                                  inst_.model),
                                        inst_.budget));
                if (rec.score >= current)
                {
                    vars_.phase = candidate;
                    audit.accepted = true;
                    step.accepted = true;
                }
                else
                {
                    out_.trace.events.push_back("iteration " + std::to_string(iteration) +
                                                ": recovered phase shifts lower the rate margins, previous retained");
                }
            }
            catch (const Error &e)
            {
                if (e.code() != ErrorCode::RecoveryFailed)
                    throw;
                out_.trace.events.push_back("iteration " + std::to_string(iteration) +
                                            ": no recovered phase vector meets the rate constraints, previous retained");
            }
            out_.trace.audits.push_back(audit);
            return step;
        }

        // Phase shifts maximizing the smallest relative rate margin at (alpha, f). Used only to
        // find a feasible starting point; returns `fallback` if the relaxation fails.
        RisPhase AoRun::margin_phase(double alpha, const CVector &f, const RisPhase &fallback)
        {
            const std::vector<LiftedRow> rows = phase_rows(inst_.channels, f, alpha, inst_.budget, inst_.model);
            const SdpProblem problem = build_margin_problem(inst_.channels.ris_elements(), rows, true);
            const SdpSolution sol = solve(problem, sdp_);
            SdpAudit audit = audit_of(0, "phase", alpha, sol);
            RisPhase result = fallback;
            if (sol.status == SdpStatus::Optimal)
            {
                audit.relaxation_bound = sol.objective_value;
                auto score = [&](const CVector &v) -> std::optional<double> { return min_relative_margin(rows, v); };
                const Recovery rec = rank_one_recover(
                    deembed(sol.x), recovery_options(inst_.knobs, Projection::UnitModulus), score, rng_);
                audit.recovered = true;
                audit.eigen_mass = rec.eigen_mass;
                audit.recovered_value = rec.score;
                double err = 0.0;
                for (Eigen::Index m = 0; m < rec.x.size(); ++m)
                    err = std::max(err, std::abs(std::abs(rec.x(m)) - 1.0));
                audit.structure_error = err;
                const CVector refined = ascend_min_margin(rows, rec.x, 50);
                if (min_relative_margin(rows, refined) > min_relative_margin(rows, fallback.v()))
                {
                    result = RisPhase(refined);
                    audit.accepted = true;
                }
            }
            out_.trace.audits.push_back(audit);
            return result;
        }

        // Unit-norm beamformer maximizing the smallest relative rate margin at (alpha, Phi).
        CVector AoRun::margin_beam(double alpha, const RisPhase &phase, const CVector &fallback)
        {
            const std::vector<LiftedRow> rows = beamforming_rows(inst_.channels, phase, alpha, inst_.budget, inst_.model);
            const SdpProblem problem = build_margin_problem(inst_.channels.antennas(), rows, false);
            const SdpSolution sol = solve(problem, sdp_);
            SdpAudit audit = audit_of(0, "beamforming", alpha, sol);
            CVector result = fallback;
            if (sol.status == SdpStatus::Optimal)
            {
                audit.relaxation_bound = sol.objective_value;
                auto score = [&](const CVector &f) -> std::optional<double> { return min_relative_margin(rows, f); };
                const Recovery rec = rank_one_recover(
                    deembed(sol.x), recovery_options(inst_.knobs, Projection::UnitNorm), score, rng_);
                audit.recovered = true;
                audit.eigen_mass = rec.eigen_mass;
                audit.recovered_value = rec.score;
                audit.structure_error = std::abs(rec.x.norm() - 1.0);
                if (rec.score > min_relative_margin(rows, fallback))
                {
                    result = rec.x;
                    audit.accepted = true;
                }
            }
            out_.trace.audits.push_back(audit);
            return result;
        }

        // Alternates max-min margin phase shifts and beamformers at a fixed alpha until the
        // rates are met, starting from (f0, phase0).
        std::optional<DesignVariables> AoRun::restore_feasibility(double alpha, const CVector &f0,
                                                                  const RisPhase &phase0, bool phase_free)
        {
            constexpr int kRounds = 4;
            DesignVariables v{alpha, f0, phase0};
            for (int round = 0; round < kRounds; ++round)
            {
                if (phase_free)
                {
                    v.phase = margin_phase(alpha, v.f, v.phase);
                    if (feasible(alpha, v.f, v.phase))
                        return v;
                }
                v.f = margin_beam(alpha, v.phase, v.f);
                if (feasible(alpha, v.f, v.phase))
                    return v;
            }
            return std::nullopt;
        }

        void AoRun::record(int iteration, const Step &bf, const Step &ph)
        {
            const bool rate_constraints = scheme_ != Scheme::FullSo;
            const Evaluation ev = evaluate(vars_, inst_.channels, inst_.budget, inst_.model, rate_constraints, tol_);
            IterationRecord rec;
            rec.iteration = iteration;
            rec.crb = ev.crb;
            rec.alpha = vars_.alpha;
            rec.rates = ev.rates;
            rec.feasible = ev.feasible;
            rec.beamforming_status = bf.status;
            rec.phase_status = ph.status;
            out_.trace.iterations.push_back(rec);
            out_.evaluation = ev;
        }

        AoResult AoRun::run(const RisPhase &initial_phase)
        {
            const ChannelSet &ch = inst_.channels;
            const AlgorithmKnobs &knobs = inst_.knobs;
            const CVector f0 = ch.a_ap_s / ch.a_ap_s.norm();
            vars_ = DesignVariables{0.0, f0, initial_phase};

            if (inst_.model.interference == InterferenceSum::Coherent && inst_.budget.p_k.size() > 1 &&
                std::any_of(inst_.budget.p_k.begin(), inst_.budget.p_k.end(),
                            [&](double p) { return p != inst_.budget.p_k.front(); }))
                out_.trace.events.push_back("device powers differ; the coherent interference term uses p_1");

            if (scheme_ == Scheme::FullSo)
            {
                vars_.alpha = 1.0;
                record(0, {}, {});
                out_.vars = vars_;
                out_.status = AoStatus::Converged;
                return out_;
            }

            // Initial point: the sensing beam and the random phase draw at the largest admissible
            // alpha. When they admit none, or less than the whole grid, a feasibility phase that
            // alternates max-min margin relaxations is bisected over alpha and kept if it admits
            // a larger alpha. RandomRis keeps its phase draw throughout.
            std::vector<double> candidates;
            if (scheme_ == Scheme::FullIsac)
                candidates = {0.0};
            else if (scheme_ == Scheme::EqualSplit)
                candidates = {0.5};
            else
                for (double a : alpha_grid(knobs.grid_step))
                    if (a < 1.0 || thresholds_nonpositive(inst_.budget, ch.devices()))
                        candidates.push_back(a);
            const bool phase_free = scheme_ != Scheme::RandomRis;

            auto admissible = [&](double a, const CVector &f, const RisPhase &phase) {
                return a < 1.0 ? feasible(a, f, phase) : thresholds_nonpositive(inst_.budget, ch.devices());
            };
            // Index of the largest admissible candidate, or -1.
            auto largest = [&](const CVector &f, const RisPhase &phase) {
                for (auto i = static_cast<long>(candidates.size()) - 1; i >= 0; --i)
                    if (admissible(candidates[static_cast<std::size_t>(i)], f, phase))
                        return i;
                return -1L;
            };

            long best = largest(f0, vars_.phase);
            const auto top = static_cast<long>(candidates.size()) - 1;
            if (best < top && candidates[static_cast<std::size_t>(std::max(best, 0L))] < 1.0)
            {
                std::optional<DesignVariables> restored;
                auto probe = [&](long i) {
                    const double a = candidates[static_cast<std::size_t>(i)];
                    if (a >= 1.0)
                        return false;
                    auto v = restore_feasibility(a, f0, initial_phase, phase_free);
                    if (!v)
                        return false;
                    restored = std::move(v);
                    return true;
                };
                long lo = std::max(best, 0L);
                long hi = top + 1;
                if (probe(lo))
                    while (hi - lo > 1)
                    {
                        const long mid = lo + (hi - lo) / 2;
                        if (probe(mid))
                            lo = mid;
                        else
                            hi = mid;
                    }
                if (restored)
                {
                    const long with_restored = largest(restored->f, restored->phase);
                    if (with_restored > best)
                    {
                        best = with_restored;
                        vars_.f = restored->f;
                        vars_.phase = restored->phase;
                        out_.trace.events.push_back("initial point taken from the feasibility phase at alpha " +
                                                    fmt(candidates[static_cast<std::size_t>(best)]));
                    }
                }
            }
            if (best < 0)
            {
                vars_.alpha = candidates.front();
                record(0, {}, {});
                out_.trace.events.push_back("no feasible initial point");
                out_.vars = vars_;
                out_.status = AoStatus::Infeasible;
                return out_;
            }
            vars_.alpha = candidates[static_cast<std::size_t>(best)];

            record(0, {}, {});
            const bool alpha_free = scheme_ == Scheme::Proposed || scheme_ == Scheme::RandomRis;
            out_.status = AoStatus::IterationCap;

            for (int it = 1; it <= knobs.max_iterations; ++it)
            {
                const double previous = out_.trace.iterations.back().crb;

                // Phase shifts first: they leave the CRB unchanged and only widen the rate
                // margins, which the beamforming and bandwidth steps then spend.
                Step ph;
                if (phase_free && vars_.alpha < 1.0)
                    ph = phase_step(it);

                Step bf;
                if (vars_.alpha < 1.0)
                {
                    const auto f = beamforming_sdr(it, vars_.alpha, vars_.phase, sensing_gain(vars_.f), bf);
                    if (f)
                    {
                        vars_.f = *f;
                        bf.accepted = true;
                    }
                }

                if (alpha_free)
                {
                    try
                    {
                        const AlphaChoice choice = solve_alpha(ch, vars_.f, vars_.phase, inst_.budget,
                                                               knobs.grid_step, inst_.model, tol_);
                        vars_.alpha = choice.alpha;
                    }
                    catch (const Error &e)
                    {
                        if (e.code() != ErrorCode::EmptyFeasibleSet)
                            throw;
                        out_.trace.events.push_back("iteration " + std::to_string(it) +
                                                    ": empty alpha feasible set, alpha retained");
                    }
                }

                record(it, bf, ph);
                out_.iterations = it;
                const double current = out_.trace.iterations.back().crb;
                if ((previous - current) / previous < knobs.epsilon)
                {
                    out_.status = AoStatus::Converged;
                    break;
                }
            }
            out_.vars = vars_;
            return out_;
        }
    } // namespace

    Instance make_instance(const ScenarioConfig &config, std::uint64_t seed)
    {
        config.validate();
        Instance inst;
        const ArrayLayout layout = element_positions(config);
        Rng placement = Rng::stream(seed, streams::kDevicePlacement);
        inst.device_positions = place_devices(config, placement);
        inst.channels = build_channels(layout, config.target, inst.device_positions, Complex(config.beta_s, 0.0));
        inst.budget = LinkBudget::from_config(config);
        inst.model.interference = config.knobs.interference;
        inst.model.fim_scaling = config.knobs.fim_scaling;
        inst.knobs = config.knobs;
        return inst;
    }

    double sinr_threshold(double rate_th, double alpha, double bandwidth)
    {
        if (!(alpha >= 0.0 && alpha < 1.0))
            throw Error(ErrorCode::InvalidAlpha, "rate threshold needs alpha in [0, 1), got " + std::to_string(alpha));
        return std::exp2(rate_th / ((1.0 - alpha) * bandwidth)) - 1.0;
    }

    std::vector<LiftedRow> beamforming_rows(const ChannelSet &channels, const RisPhase &phase, double alpha,
                                            const LinkBudget &budget, const ModelOptions &model)
    {
        const double c_s = sinr_threshold(budget.rate_s_th, alpha, budget.bandwidth);
        const double d_k = sinr_threshold(budget.rate_k_th, alpha, budget.bandwidth);
        const BandSplit split = band_split(alpha, budget);
        const double echo = eta_isac(alpha, budget.bandwidth, budget.sigma_tau2) * split.p_isac *
                            std::norm(channels.beta_s);
        const double noise = (1.0 - alpha) * budget.sigma2;
        const Eigen::Index n = channels.antennas();
        const CMatrix echo_q = echo * outer(channels.a_ap_s);

        std::vector<CVector> hbar;
        CVector sum = CVector::Zero(n);
        for (const auto &h : channels.h_ris_k)
        {
            hbar.push_back(cascade(h, phase, channels.h_ap_ris));
            sum += hbar.back();
        }

        CMatrix interference = CMatrix::Zero(n, n);
        if (model.interference == InterferenceSum::Coherent)
        {
            if (!hbar.empty())
                interference = budget.p_k.front() * outer(sum);
        }
        else
            for (std::size_t k = 0; k < hbar.size(); ++k)
                interference += budget.p_k.at(k) * outer(hbar[k]);

        std::vector<LiftedRow> rows;
        rows.push_back({"rate_s", budget.p_s * outer(channels.h_ap_s) - c_s * (interference + echo_q), c_s * noise,
                        std::nullopt});
        for (std::size_t k = 0; k < hbar.size(); ++k)
        {
            CMatrix others = CMatrix::Zero(n, n);
            for (std::size_t i = 0; i < hbar.size(); ++i)
                if (i != k)
                    others += budget.p_k.at(i) * outer(hbar[i]);
            rows.push_back({"rate_k" + std::to_string(k + 1),
                            budget.p_k.at(k) * outer(hbar[k]) - d_k * (others + echo_q), d_k * noise, std::nullopt});
        }
        return rows;
    }

    SdpProblem build_p22(const ChannelSet &channels, const RisPhase &phase, double alpha, const LinkBudget &budget,
                         const ModelOptions &model)
    {
        const Eigen::Index n = channels.antennas();
        SdpProblem p;
        p.dim = 2 * n;
        p.sense = Sense::Maximize;
        p.objective = lifted(outer(channels.a_ap_s));
        p.equalities.push_back({lifted(CMatrix::Identity(n, n)), {}, 1.0});
        for (const auto &row : beamforming_rows(channels, phase, alpha, budget, model))
        {
            double s = max_abs(row.q);
            if (!(s > 0.0))
                s = std::max(1.0, std::abs(row.rhs));
            p.inequalities.push_back({lifted(row.q / s), {}, row.rhs / s});
        }
        return p;
    }

    CVector phase_direction(const CVector &f, const CMatrix &h_ap_ris, const CVector &h_ris_k)
    {
        if (h_ap_ris.cols() != f.size() || h_ap_ris.rows() != h_ris_k.size())
            throw Error(ErrorCode::DimensionMismatch, "phase_direction: dimensions disagree");
        return (h_ap_ris * f).cwiseProduct(h_ris_k.conjugate());
    }

    std::vector<LiftedRow> phase_rows(const ChannelSet &channels, const CVector &f, double alpha,
                                      const LinkBudget &budget, const ModelOptions &model)
    {
        const double c_s = sinr_threshold(budget.rate_s_th, alpha, budget.bandwidth);
        const double d_k = sinr_threshold(budget.rate_k_th, alpha, budget.bandwidth);
        const BandSplit split = band_split(alpha, budget);
        const double echo = eta_isac(alpha, budget.bandwidth, budget.sigma_tau2) * split.p_isac *
                            std::norm(channels.beta_s) * std::norm(f.dot(channels.a_ap_s));
        const double noise = (1.0 - alpha) * budget.sigma2;
        const Eigen::Index m = channels.ris_elements();

        std::vector<CVector> r;
        CVector sum = CVector::Zero(m);
        for (const auto &h : channels.h_ris_k)
        {
            r.push_back(phase_direction(f, channels.h_ap_ris, h));
            sum += r.back();
        }

        CMatrix interference = CMatrix::Zero(m, m);
        if (model.interference == InterferenceSum::Coherent)
        {
            if (!r.empty())
                interference = budget.p_k.front() * outer(sum);
        }
        else
            for (std::size_t k = 0; k < r.size(); ++k)
                interference += budget.p_k.at(k) * outer(r[k]);

        std::vector<LiftedRow> rows;
        const double direct = budget.p_s * std::norm(f.dot(channels.h_ap_s));
        rows.push_back({"rate_s", -c_s * interference, c_s * (echo + noise) - direct, Eigen::Index{0}});
        for (std::size_t k = 0; k < r.size(); ++k)
        {
            CMatrix others = CMatrix::Zero(m, m);
            for (std::size_t i = 0; i < r.size(); ++i)
                if (i != k)
                    others += budget.p_k.at(i) * outer(r[i]);
            rows.push_back({"rate_k" + std::to_string(k + 1), budget.p_k.at(k) * outer(r[k]) - d_k * others,
                            d_k * (echo + noise), static_cast<Eigen::Index>(k + 1)});
        }
        return rows;
    }

    SdpProblem build_p43(const ChannelSet &channels, const CVector &f, double alpha, const LinkBudget &budget,
                         const ModelOptions &model)
    {
        const Eigen::Index m = channels.ris_elements();
        const std::vector<LiftedRow> rows = phase_rows(channels, f, alpha, budget, model);
        const auto slacks = static_cast<Eigen::Index>(rows.size());
        // Noise-power units: substituting delta = scale * delta' keeps the summed objective.
        const double scale = (1.0 - alpha) * budget.sigma2;

        SdpProblem p;
        p.dim = 2 * m;
        p.num_scalars = slacks;
        p.sense = Sense::Maximize;
        p.objective = RMatrix::Zero(2 * m, 2 * m);
        p.objective_scalars = RVector::Ones(slacks);
        for (Eigen::Index i = 0; i < m; ++i)
        {
            RMatrix e = RMatrix::Zero(2 * m, 2 * m);
            e(i, i) = 0.5;
            e(i + m, i + m) = 0.5;
            p.equalities.push_back({std::move(e), {}, 1.0});
        }
        for (const auto &row : rows)
        {
            RVector coeffs = RVector::Zero(slacks);
            coeffs(*row.slack) = -1.0;
            p.inequalities.push_back({lifted(row.q / scale), std::move(coeffs), row.rhs / scale});
        }
        return p;
    }

    std::vector<double> alpha_grid(double step)
    {
        if (!(step > 0.0 && step <= 0.25))
            throw Error(ErrorCode::InvalidConfig, "alpha grid step must lie in (0, 0.25]");
        std::vector<double> grid;
        const double count = 1.0 / step;
        const auto whole = static_cast<long>(std::lround(count));
        if (std::abs(count - static_cast<double>(whole)) < 1e-9)
        {
            for (long i = 0; i <= whole; ++i)
                grid.push_back(static_cast<double>(i) / static_cast<double>(whole));
            return grid;
        }
        for (long i = 0; static_cast<double>(i) * step < 1.0; ++i)
            grid.push_back(static_cast<double>(i) * step);
        grid.push_back(1.0);
        return grid;
    }

    AlphaChoice solve_alpha(const ChannelSet &channels, const CVector &f, const RisPhase &phase,
                            const LinkBudget &budget, double step, const ModelOptions &model, double rate_tolerance,
                            bool drop_rates)
    {
        const LinkGains gains = link_gains(f, channels, phase);
        AlphaChoice best;
        best.crb = std::numeric_limits<double>::infinity();
        for (double alpha : alpha_grid(step))
        {
            const bool ok = drop_rates || rates_feasible(alpha, gains, budget, model, rate_tolerance);
            if (!ok)
                continue;
            ++best.feasible_points;
            const double value = crb_from_fim(
                fim(alpha, gains.target_response, std::abs(channels.beta_s), channels.antennas(), budget, model));
            if (value < best.crb)
            {
                best.crb = value;
                best.alpha = alpha;
            }
        }
        if (best.feasible_points == 0)
            throw Error(ErrorCode::EmptyFeasibleSet, "no alpha on the grid meets the rate thresholds");
        return best;
    }

    Evaluation evaluate(const DesignVariables &vars, const ChannelSet &channels, const LinkBudget &budget,
                        const ModelOptions &model, bool rate_constraints, double rate_tolerance)
    {
        Evaluation ev;
        if (!(vars.alpha >= 0.0 && vars.alpha <= 1.0))
        {
            ev.violations.push_back("alpha outside [0, 1]");
            ev.crb = std::numeric_limits<double>::quiet_NaN();
            ev.range_error_m = ev.crb;
            return ev;
        }
        if (std::abs(vars.f.norm() - 1.0) > 1e-9)
            ev.violations.push_back("receive beamformer not unit norm");
        for (Eigen::Index m = 0; m < vars.phase.size(); ++m)
            if (std::abs(std::abs(vars.phase.v()(m)) - 1.0) > 1e-12)
            {
                ev.violations.push_back("RIS coefficient not unit modulus");
                break;
            }

        try
        {
            ev.crb = crb(vars.alpha, vars.f, channels, budget, model);
        }
        catch (const Error &e)
        {
            if (e.code() != ErrorCode::SingularFim)
                throw;
            ev.crb = std::numeric_limits<double>::infinity();
            ev.violations.push_back("Fisher information not positive");
        }
        ev.range_error_m = range_error_m(ev.crb);

        const LinkGains gains = link_gains(vars.f, channels, vars.phase);
        ev.rates = all_rates(vars.alpha, gains, budget, model);
        if (rate_constraints)
            for (std::size_t i = 0; i < ev.rates.size(); ++i)
            {
                const double th = i == 0 ? budget.rate_s_th : budget.rate_k_th;
                if (ev.rates[i] < th * (1.0 - rate_tolerance))
                    ev.violations.push_back(i == 0 ? std::string("rate_s below threshold")
                                                   : "rate_k" + std::to_string(i) + " below threshold");
            }
        ev.feasible = ev.violations.empty();
        return ev;
    }

    const char *to_string(AoStatus status)
    {
        switch (status)
        {
        case AoStatus::Converged:
            return "Converged";
        case AoStatus::IterationCap:
            return "IterationCap";
        case AoStatus::Infeasible:
            return "Infeasible";
        }
        return "Unknown";
    }

    AoResult run_ao(const Instance &instance, Scheme scheme, std::uint64_t seed)
    {
        Rng phase_rng = Rng::stream(seed, streams::kInitialPhase);
        return run_ao(instance, scheme, seed, RisPhase::random(instance.channels.ris_elements(), phase_rng));
    }

    AoResult run_ao(const Instance &instance, Scheme scheme, std::uint64_t seed, const RisPhase &initial_phase)
    {
        if (initial_phase.size() != instance.channels.ris_elements())
            throw Error(ErrorCode::DimensionMismatch, "initial phase length differs from the RIS size");
        AoRun run(instance, scheme, seed);
        return run.run(initial_phase);
    }

    AoResult run_ao(const ScenarioConfig &config, Scheme scheme, std::uint64_t seed)
    {
        return run_ao(make_instance(config, seed), scheme, seed);
    }
} // namespace risisac
