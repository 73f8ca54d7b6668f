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
#include "risisac/harness.hpp"
#include "risisac/metrics.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace
{
    constexpr int kOk = 0;
    constexpr int kInvalid = 1;
    constexpr int kRunFailure = 2;

    // Config problems are the caller's to fix; anything else is a run failure.
    int exit_code_for(const risisac::Error &e)
    {
        switch (e.code())
        {
        case risisac::ErrorCode::ParseError:
        case risisac::ErrorCode::ValidationError:
        case risisac::ErrorCode::InvalidConfig:
            return kInvalid;
        default:
            return kRunFailure;
        }
    }

    risisac::ScenarioConfig load_or_default(const std::string &path)
    {
        return path.empty() ? risisac::parse_config("") : risisac::load_config(path);
    }

    int cmd_run(const std::string &config_path, const std::string &output, const std::optional<std::uint64_t> &seed,
                unsigned jobs, bool timing)
    {
        risisac::ScenarioConfig config = risisac::load_config(config_path);
        if (seed)
            config.seeds = {*seed};

        risisac::SweepOptions options;
        options.jobs = jobs;
        options.timing = timing;
        const auto records = risisac::run_sweep(config, options);
        risisac::write_results(records, config.devices, output);

        int failures = 0, infeasible = 0;
        for (const auto &r : records)
        {
            if (!r.failure.empty())
            {
                ++failures;
                std::cerr << "run " << risisac::to_string(r.scheme) << " seed " << r.seed << " failed: " << r.failure
                          << '\n';
            }
            else if (!r.feasible)
                ++infeasible;
        }
        std::cerr << records.size() << " runs, " << infeasible << " infeasible, " << failures << " failed -> "
                  << output << '\n';
        return failures ? kRunFailure : kOk;
    }

    int cmd_validate(const std::string &config_path)
    {
        const risisac::ScenarioConfig config = risisac::load_config(config_path);
        std::cout << "ok " << risisac::scenario_hash(config) << '\n';
        return kOk;
    }

    int cmd_oracle_fim(const std::string &config_path, int points, const std::string &output)
    {
        const risisac::ScenarioConfig config = load_or_default(config_path);
        const risisac::LinkBudget budget = risisac::LinkBudget::from_config(config);
        risisac::ModelOptions model;
        model.fim_scaling = config.knobs.fim_scaling;

        // |f^H a|^2 = N for the matched beam f = a / ||a||.
        const double response = static_cast<double>(config.ap_antennas);
        const double beta = std::abs(config.beta_s);

        std::string text = "alpha,fim_closed_form,fim_integral,relative_error\n";
        double worst = 0.0;
        char line[160];
        for (int i = 0; i < points; ++i)
        {
            const double alpha = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
            const double closed = risisac::fim(alpha, response, beta, config.ap_antennas, budget, model);
            const double integral = risisac::fim_by_integration(alpha, response, beta, config.ap_antennas, budget);
            const double rel = std::abs(closed - integral) / std::abs(integral);
            worst = std::max(worst, rel);
            std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.3e\n", alpha, closed, integral, rel);
            text += line;
        }

        if (output.empty())
            std::cout << text;
        else
        {
            std::ofstream out(output, std::ios::binary | std::ios::trunc);
            if (!(out << text))
                throw risisac::Error(risisac::ErrorCode::IoError, "cannot write " + output);
        }
        std::cerr << "max relative error " << worst << " over " << points << " points\n";
        return kOk;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"RIS-assisted ISAC sensing-accuracy optimizer"};
    app.require_subcommand(1);

    std::string config_path, output;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    bool timing = false;
    auto *run = app.add_subcommand("run", "Run a scenario sweep and write the CSV results");
    run->add_option("-c,--config", config_path, "Scenario YAML file")->required()->check(CLI::ExistingFile);
    run->add_option("-o,--output", output, "CSV output path")->required();
    run->add_option("-s,--seed", seed, "Run only this seed");
    run->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run->add_flag("--timing", timing, "Fill the wall_ms column");

    std::string validate_path;
    auto *validate = app.add_subcommand("validate", "Parse and check a scenario file");
    validate->add_option("-c,--config", validate_path, "Scenario YAML file")->required()->check(CLI::ExistingFile);

    std::string oracle_config, oracle_output;
    int points = 101;
    auto *oracle = app.add_subcommand("oracle-fim", "Closed-form versus integrated Fisher information over alpha");
    oracle->add_option("-c,--config", oracle_config, "Scenario YAML file (defaults when omitted)")
        ->check(CLI::ExistingFile);
    oracle->add_option("-n,--points", points, "Equispaced alpha points in [0, 1]")->check(CLI::Range(1, 1000000));
    oracle->add_option("-o,--output", oracle_output, "CSV output path (stdout when omitted)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try
    {
        if (*run)
            return cmd_run(config_path, output, seed, jobs, timing);
        if (*validate)
            return cmd_validate(validate_path);
        return cmd_oracle_fim(oracle_config, points, oracle_output);
    }
    catch (const risisac::Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kRunFailure;
    }
}
