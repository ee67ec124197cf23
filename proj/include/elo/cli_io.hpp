/*
 * Copyright 2026 The ELO Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Flat key = value configuration, run orchestration and file export.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "elo/montecarlo.hpp"
#include "elo/params.hpp"
#include "elo/power_scenario.hpp"
#include "elo/time_scenario.hpp"

namespace elo::io {

enum class Scenario { power, time, validate };
enum class Format { csv, dat };

struct RunConfig {
    Scenario scenario = Scenario::validate;
    SystemParams params;
    std::vector<double> e_max_list = {0.08, 0.085, 0.09, 0.095, 0.1, 0.11, 0.12};
    std::vector<double> t_list = {0.4, 0.45, 0.5};
    std::vector<double> rho_list = {0.9, 0.999};
    double theta_power = 1e-4;
    double theta_time = 0.01;
    double fc_tol_hz = 1e6;
    bool include_decompression = true;
    bool literal_truncation = false;
    mc::SimConfig sim;
    std::string output_dir = ".";
    Format format = Format::csv;

    /// Throws DomainError naming the offending key.
    void validate() const;
    bool operator==(const RunConfig&) const = default;
};

/// Parses `key = value` lines; `#` starts a comment. Keys ending in `_db` or
/// `_dbm...` are converted to linear units. Unknown keys, repeated quantities
/// and malformed values raise ParseError with the line number; out-of-range
/// values raise DomainError.
RunConfig parse_config(std::string_view text);

/// Canonical text with every key in linear units, 17 significant digits.
/// Output files echo the config without output_dir so they do not depend on
/// where they were written.
std::string emit_config(const RunConfig& cfg, bool with_output_dir = true);

/// Recovers the configuration echoed in the `# key = value` header of an
/// output file.
RunConfig config_from_header(std::string_view file_text);

/// %.17g with the C locale.
std::string format_double(double x);

std::string scenario_name(Scenario s);

/// Short hash of the canonical config text (output_dir excluded).
std::string run_id(const RunConfig& cfg);

power::PowerProblem power_problem(const RunConfig& cfg, double rho);
deadline::TimeProblem time_problem(const RunConfig& cfg, double rho);

/// e.g. power_front_rho0.9.csv
std::string front_filename(Scenario s, double rho, Format f);

std::string render_power_front(const power::PowerFront& front, const RunConfig& cfg);
std::string render_time_front(const deadline::TimeFront& front, const RunConfig& cfg);

struct ValidationReport {
    std::string text;
    bool passed = true;
};

/// Runs the analytic-vs-simulation checks on cfg and formats a report. The
/// text depends only on cfg, never on timing.
ValidationReport run_validation(const RunConfig& cfg);

/// Executes cfg.scenario, writing one file per rho (or the validation report)
/// into cfg.output_dir. Returns the process exit status.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace elo::io
