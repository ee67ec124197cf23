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

// elo: command-line front end for the power and deadline scenarios.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elo/cli_io.hpp"
#include "elo/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct Overrides {
    std::string config;
    std::vector<double> rho;
    std::vector<double> sweep;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
    std::string format;
};

elo::io::RunConfig load(const Overrides& o, elo::io::Scenario scenario, bool sweep_is_t) {
    elo::io::RunConfig cfg = o.config.empty() ? elo::io::RunConfig{} : elo::io::parse_config(read_file(o.config));
    cfg.scenario = scenario;
    if (const char* env = std::getenv("ELO_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            cfg.sim.seed = std::stoull(env, &used);
            if (env[used] != '\0') throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw elo::ParseError(std::string("ELO_SEED: expected an unsigned integer, got '") + env + "'", 0);
        }
    }
    if (!o.rho.empty()) cfg.rho_list = o.rho;
    if (!o.sweep.empty()) (sweep_is_t ? cfg.t_list : cfg.e_max_list) = o.sweep;
    if (o.samples > 0) cfg.sim.n_samples = o.samples;
    if (o.seed_set) cfg.sim.seed = o.seed;
    if (!o.out.empty()) cfg.output_dir = o.out;
    if (o.format == "csv") cfg.format = elo::io::Format::csv;
    if (o.format == "dat") cfg.format = elo::io::Format::dat;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--rho", o.rho, "reliability levels (repeatable)")->delimiter(',');
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--format", o.format, "csv or dat")->check(CLI::IsMember({"csv", "dat"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-latency optimization of compressed sensor uplinks"};
    app.require_subcommand(1);

    Overrides power_o, time_o, val_o;
    std::string rerun_file, rerun_out;

    auto* power = app.add_subcommand("power-front", "latency-optimal fronts under energy budgets");
    add_common(power, power_o);
    power->add_option("--emax", power_o.sweep, "energy budgets [J], comma separated")->delimiter(',');

    auto* time = app.add_subcommand("time-front", "energy-optimal fronts under slot deadlines");
    add_common(time, time_o);
    time->add_option("--t", time_o.sweep, "slot budgets [s], comma separated")->delimiter(',');

    auto* validate = app.add_subcommand("validate", "analytic models against simulation");
    add_common(validate, val_o);
    validate->add_option("--samples", val_o.samples, "Monte Carlo trials per check")->check(CLI::PositiveNumber);
    auto* seed_opt = validate->add_option("--seed", val_o.seed, "random seed");

    auto* defaults = app.add_subcommand("defaults", "print the default configuration");

    auto* rerun = app.add_subcommand("rerun", "regenerate an output file from its header");
    rerun->add_option("file", rerun_file, "front file written by elo")->required()->check(CLI::ExistingFile);
    rerun->add_option("--out", rerun_out, "output directory");

    CLI11_PARSE(app, argc, argv);
    val_o.seed_set = seed_opt->count() > 0;

    try {
        elo::io::RunConfig cfg;
        if (*defaults) {
            std::cout << elo::io::emit_config(cfg);
            return 0;
        }
        if (*power) cfg = load(power_o, elo::io::Scenario::power, false);
        if (*time) cfg = load(time_o, elo::io::Scenario::time, true);
        if (*validate) cfg = load(val_o, elo::io::Scenario::validate, false);
        if (*rerun) {
            cfg = elo::io::config_from_header(read_file(rerun_file));
            if (!rerun_out.empty()) cfg.output_dir = rerun_out;
        }
        return elo::io::run(cfg, std::cout);
    } catch (const elo::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const elo::DomainError& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
