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

#include "risisac/config.hpp"
#include "risisac/optimizer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace risisac
{
    /// Reads a YAML scenario file. Keys may be nested maps or flat dotted paths
    /// ("band.bandwidth_hz: 5e7"); anything not given keeps its default. Unknown keys are
    /// rejected. Throws Error{ParseError} (with line and key) for syntax and type errors,
    /// Error{ValidationError} when the parsed scenario violates an invariant and
    /// Error{IoError} when the file cannot be read.
    ScenarioConfig load_config(const std::string &path);

    /// Same, from YAML text already in memory.
    ScenarioConfig parse_config(const std::string &text);

    /// Every key load_config accepts, in canonical order.
    const std::vector<std::string> &config_keys();

    /// 16 hex digits of FNV-1a over the canonical text.
    std::string scenario_hash(const ScenarioConfig &config);

    struct RunRecord
    {
        std::string scenario_hash;
        Scheme scheme = Scheme::Proposed;
        std::uint64_t seed = 0;
        SweepVariable sweep = SweepVariable::None;
        double sweep_value = 0.0;
        double crb = 0.0; // s^2, +inf when the run produced no point
        double range_error_cm = 0.0;
        double alpha = 0.0;
        int iterations = 0;
        std::vector<double> rates; // IIoT-(I) first, one per device; NaN when absent
        bool feasible = false;
        std::optional<double> wall_ms;

        std::optional<AoStatus> status; // empty when the run threw
        std::string failure;            // error text of a thrown run
    };

    struct SweepOptions
    {
        unsigned jobs = 1;
        bool timing = false; // fill wall_ms
    };

    /// Runs every (sweep value, scheme, seed) combination on a pool of `jobs` workers.
    /// Geometry and channels are rebuilt per sweep value and seed. Records come back ordered
    /// by sweep index, then scheme, then seed, whatever the completion order. Runs that throw
    /// are recorded with `failure` set instead of aborting the sweep.
    std::vector<RunRecord> run_sweep(const ScenarioConfig &config, const SweepOptions &options = {});

    /// CSV header for `devices` IIoT-(II) devices.
    std::string csv_header(int devices);

    /// Writes the header and one row per record, doubles with 17 significant digits.
    /// Throws Error{IoError}.
    void write_results(const std::vector<RunRecord> &records, int devices, const std::string &path);

    /// Same, to a string.
    std::string format_results(const std::vector<RunRecord> &records, int devices);
} // namespace risisac
