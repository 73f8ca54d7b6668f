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

#include "risisac/harness.hpp"
#include "risisac/error.hpp"

#include <yaml-cpp/yaml.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace risisac
{
    namespace
    {
        using Setter = std::function<void(const YAML::Node &, ScenarioConfig &)>;

        struct Key
        {
            std::string name;
            Setter set;
        };

        double as_double(const YAML::Node &n) { return n.as<double>(); }

        int as_int(const YAML::Node &n)
        {
            const double v = n.as<double>();
            if (v != std::floor(v) || std::abs(v) > 1e9)
                throw YAML::RepresentationException(n.Mark(), "expected an integer");
            return static_cast<int>(v);
        }

        std::vector<double> as_doubles(const YAML::Node &n)
        {
            if (n.IsScalar())
                return {n.as<double>()};
            if (!n.IsSequence())
                throw YAML::RepresentationException(n.Mark(), "expected a number or a list of numbers");
            std::vector<double> out;
            for (const auto &e : n)
                out.push_back(e.as<double>());
            return out;
        }

        Position as_position(const YAML::Node &n)
        {
            const std::vector<double> v = as_doubles(n);
            if (v.size() != 3)
                throw YAML::RepresentationException(n.Mark(), "expected [x, y, z]");
            return {v[0], v[1], v[2]};
        }

        template <typename T, typename Parse>
        std::vector<T> as_names(const YAML::Node &n, Parse parse, const char *what)
        {
            std::vector<T> out;
            auto one = [&](const YAML::Node &e) {
                const auto v = parse(e.as<std::string>());
                if (!v)
                    throw YAML::RepresentationException(e.Mark(), std::string("unknown ") + what + " '" +
                                                                      e.as<std::string>() + "'");
                out.push_back(*v);
            };
            if (n.IsSequence())
                for (const auto &e : n)
                    one(e);
            else
                one(n);
            return out;
        }

        std::optional<InterferenceSum> parse_interference(const std::string &s)
        {
            if (s == "coherent")
                return InterferenceSum::Coherent;
            if (s == "incoherent")
                return InterferenceSum::Incoherent;
            return std::nullopt;
        }

        std::optional<FimScaling> parse_fim_scaling(const std::string &s)
        {
            if (s == "per_antenna")
                return FimScaling::PerAntenna;
            if (s == "squared_antennas")
                return FimScaling::SquaredAntennas;
            return std::nullopt;
        }

#define RISISAC_DOUBLE(key, field) {key, [](const YAML::Node &n, ScenarioConfig &c) { c.field = as_double(n); }}
#define RISISAC_INT(key, field) {key, [](const YAML::Node &n, ScenarioConfig &c) { c.field = as_int(n); }}

        const std::vector<Key> &keys()
        {
            static const std::vector<Key> table = {
                RISISAC_DOUBLE("carrier_frequency_hz", carrier_hz),
                RISISAC_DOUBLE("band.bandwidth_hz", bandwidth_hz),
                RISISAC_DOUBLE("band.offset_hz", band_offset_hz),
                RISISAC_DOUBLE("band.rho_so", rho_so),
                RISISAC_DOUBLE("band.rho_isac", rho_isac),
                RISISAC_DOUBLE("noise.sigma2_dbm", sigma2_dbm),
                RISISAC_DOUBLE("sensing.sigma_tau2", sigma_tau2),
                RISISAC_DOUBLE("sensing.beta_s", beta_s),
                RISISAC_DOUBLE("sensing.duration_s", duration_s),
                RISISAC_DOUBLE("power.p_s_dbm", p_s_dbm),
                {"power.p_k_dbm", [](const YAML::Node &n, ScenarioConfig &c) { c.p_k_dbm = as_doubles(n); }},
                RISISAC_DOUBLE("rate.s_th_bps", rate_s_th),
                RISISAC_DOUBLE("rate.k_th_bps", rate_k_th),
                RISISAC_INT("ap.antennas", ap_antennas),
                RISISAC_DOUBLE("ap.aperture_m", ap_aperture_m),
                {"ap.position", [](const YAML::Node &n, ScenarioConfig &c) { c.ap = as_position(n); }},
                RISISAC_INT("ris.elements", ris_elements),
                {"ris.spacing_m", [](const YAML::Node &n, ScenarioConfig &c) { c.ris_spacing_m = as_double(n); }},
                {"ris.position", [](const YAML::Node &n, ScenarioConfig &c) { c.ris = as_position(n); }},
                {"target.position", [](const YAML::Node &n, ScenarioConfig &c) { c.target = as_position(n); }},
                RISISAC_INT("devices.count", devices),
                RISISAC_DOUBLE("devices.radius_m", device_radius_m),
                {"devices.arc_deg",
                 [](const YAML::Node &n, ScenarioConfig &c) {
                     const std::vector<double> v = as_doubles(n);
                     if (v.size() != 2)
                         throw YAML::RepresentationException(n.Mark(), "expected [start, end]");
                     c.device_arc_start_deg = v[0];
                     c.device_arc_end_deg = v[1];
                 }},
                RISISAC_DOUBLE("devices.min_separation_m", device_min_separation_m),
                {"schemes",
                 [](const YAML::Node &n, ScenarioConfig &c) { c.schemes = as_names<Scheme>(n, parse_scheme, "scheme"); }},
                {"sweep.variable",
                 [](const YAML::Node &n, ScenarioConfig &c) {
                     c.sweep = as_names<SweepVariable>(n, parse_sweep_variable, "sweep variable").front();
                 }},
                {"sweep.values", [](const YAML::Node &n, ScenarioConfig &c) { c.sweep_values = as_doubles(n); }},
                {"seeds",
                 [](const YAML::Node &n, ScenarioConfig &c) {
                     c.seeds.clear();
                     auto one = [&](const YAML::Node &e) { c.seeds.push_back(e.as<std::uint64_t>()); };
                     if (n.IsSequence())
                         for (const auto &e : n)
                             one(e);
                     else
                         one(n);
                 }},
                RISISAC_DOUBLE("algorithm.grid_step", knobs.grid_step),
                RISISAC_DOUBLE("algorithm.epsilon", knobs.epsilon),
                RISISAC_INT("algorithm.max_iterations", knobs.max_iterations),
                RISISAC_INT("algorithm.randomization_samples", knobs.randomization_samples),
                RISISAC_DOUBLE("algorithm.rank_one_threshold", knobs.rank_one_threshold),
                RISISAC_DOUBLE("algorithm.sdp_tolerance", knobs.sdp_tolerance),
                RISISAC_INT("algorithm.sdp_max_iterations", knobs.sdp_max_iterations),
                RISISAC_DOUBLE("algorithm.feasibility_tolerance", knobs.feasibility_tolerance),
                RISISAC_DOUBLE("algorithm.psd_tolerance", knobs.psd_tolerance),
                {"model.interference_sum",
                 [](const YAML::Node &n, ScenarioConfig &c) {
                     c.knobs.interference =
                         as_names<InterferenceSum>(n, parse_interference, "interference mode").front();
                 }},
                {"model.fim_scaling",
                 [](const YAML::Node &n, ScenarioConfig &c) {
                     c.knobs.fim_scaling = as_names<FimScaling>(n, parse_fim_scaling, "FIM scaling").front();
                 }},
            };
            return table;
        }

#undef RISISAC_DOUBLE
#undef RISISAC_INT

        [[noreturn]] void parse_error(const YAML::Mark &mark, const std::string &key, const std::string &what)
        {
            std::string where = mark.is_null() ? std::string() : "line " + std::to_string(mark.line + 1) + ", ";
            throw Error(ErrorCode::ParseError, where + "key '" + key + "': " + what);
        }

        // Walks nested maps, joining keys with '.', and hands each known leaf to its setter.
        void apply(const YAML::Node &node, const std::string &prefix, const std::map<std::string, const Key *> &index,
                   ScenarioConfig &config)
        {
            for (const auto &item : node)
            {
                const std::string name = item.first.as<std::string>();
                const std::string path = prefix.empty() ? name : prefix + "." + name;
                const auto hit = index.find(path);
                if (hit != index.end())
                {
                    try
                    {
                        hit->second->set(item.second, config);
                    }
                    catch (const YAML::Exception &e)
                    {
                        parse_error(e.mark.is_null() ? item.second.Mark() : e.mark, path, e.msg);
                    }
                    continue;
                }
                if (item.second.IsMap())
                {
                    apply(item.second, path, index, config);
                    continue;
                }
                parse_error(item.first.Mark(), path, "unknown key");
            }
        }

        std::string fmt17(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }
    } // namespace

    const std::vector<std::string> &config_keys()
    {
        static const std::vector<std::string> names = [] {
            std::vector<std::string> out;
            for (const Key &k : keys())
                out.push_back(k.name);
            return out;
        }();
        return names;
    }

    ScenarioConfig parse_config(const std::string &text)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(text);
        }
        catch (const YAML::Exception &e)
        {
            parse_error(e.mark, "<document>", e.msg);
        }

        ScenarioConfig config;
        if (root.IsNull())
        {
            config.validate();
            return config;
        }
        if (!root.IsMap())
            parse_error(root.Mark(), "<document>", "top level must be a mapping");

        std::map<std::string, const Key *> index;
        for (const Key &k : keys())
            index.emplace(k.name, &k);
        apply(root, "", index, config);
        config.validate();
        return config;
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error(ErrorCode::IoError, "cannot open " + path);
        std::ostringstream text;
        text << in.rdbuf();
        return parse_config(text.str());
    }

    std::string scenario_hash(const ScenarioConfig &config)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char ch : config.canonical_text())
        {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    std::vector<RunRecord> run_sweep(const ScenarioConfig &config, const SweepOptions &options)
    {
        config.validate();
        const std::vector<double> values =
            config.sweep == SweepVariable::None ? std::vector<double>{0.0} : config.sweep_values;

        struct Task
        {
            std::size_t point;
            Scheme scheme;
            std::uint64_t seed;
        };
        std::vector<Task> tasks;
        for (std::size_t i = 0; i < values.size(); ++i)
            for (Scheme s : config.schemes)
                for (std::uint64_t seed : config.seeds)
                    tasks.push_back({i, s, seed});

        std::vector<ScenarioConfig> points;
        std::vector<std::string> hashes;
        for (double v : values)
        {
            points.push_back(config.at_sweep_value(v));
            hashes.push_back(scenario_hash(points.back()));
        }

        std::vector<RunRecord> records(tasks.size());
        auto execute = [&](std::size_t t) {
            const Task &task = tasks[t];
            RunRecord &r = records[t];
            r.scenario_hash = hashes[task.point];
            r.scheme = task.scheme;
            r.seed = task.seed;
            r.sweep = config.sweep;
            r.sweep_value = config.sweep == SweepVariable::None ? 0.0 : values[task.point];
            r.rates.assign(static_cast<std::size_t>(config.devices) + 1, std::nan(""));
            r.crb = std::numeric_limits<double>::infinity();
            r.range_error_cm = std::numeric_limits<double>::infinity();

            const auto start = std::chrono::steady_clock::now();
            try
            {
                const AoResult res = run_ao(points[task.point], task.scheme, task.seed);
                r.status = res.status;
                r.iterations = res.iterations;
                r.alpha = res.vars.alpha;
                r.crb = res.evaluation.crb;
                r.range_error_cm = 100.0 * res.evaluation.range_error_m;
                r.rates = res.evaluation.rates;
                r.feasible = res.evaluation.feasible;
            }
            catch (const std::exception &e)
            {
                r.failure = e.what();
            }
            if (options.timing)
                r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        };

        const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(tasks.size())));
        if (jobs == 1)
        {
            for (std::size_t t = 0; t < tasks.size(); ++t)
                execute(t);
            return records;
        }
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < tasks.size(); t = next++)
                    execute(t);
            });
        for (auto &th : pool)
            th.join();
        return records;
    }

    std::string csv_header(int devices)
    {
        std::string h = "scenario_hash,scheme,seed,sweep_var,sweep_value,crb_s2,range_err_cm,alpha_star,iterations,"
                        "rate_s_bps";
        for (int k = 1; k <= devices; ++k)
            h += ",rate_k" + std::to_string(k) + "_bps";
        return h + ",feasible,wall_ms";
    }

    std::string format_results(const std::vector<RunRecord> &records, int devices)
    {
        std::string out = csv_header(devices) + "\n";
        for (const RunRecord &r : records)
        {
            out += r.scenario_hash + ',' + to_string(r.scheme) + ',' + std::to_string(r.seed) + ',' +
                   to_string(r.sweep) + ',' + (r.sweep == SweepVariable::None ? "" : fmt17(r.sweep_value)) + ',' +
                   fmt17(r.crb) + ',' + fmt17(r.range_error_cm) + ',' + fmt17(r.alpha) + ',' +
                   std::to_string(r.iterations);
            for (int i = 0; i <= devices; ++i)
            {
                out += ',';
                if (static_cast<std::size_t>(i) < r.rates.size() && !std::isnan(r.rates[i]))
                    out += fmt17(r.rates[i]);
            }
            out += r.feasible ? ",1," : ",0,";
            if (r.wall_ms)
                out += fmt17(*r.wall_ms);
            out += '\n';
        }
        return out;
    }

    void write_results(const std::vector<RunRecord> &records, int devices, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
        out << format_results(records, devices);
        out.flush();
        if (!out)
            throw Error(ErrorCode::IoError, "write to " + path + " failed");
    }
} // namespace risisac
