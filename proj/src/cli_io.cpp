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

#include "elo/cli_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "elo/errors.hpp"
#include "elo/specfun.hpp"

namespace elo::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::string_view v, const std::string& key, int line) {
    double x = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
        throw ParseError(key + ": expected a finite number, got '" + std::string(v) + "'", line);
    }
    return x;
}

template <typename Int>
Int parse_int(std::string_view v, const std::string& key, int line) {
    Int x = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(key + ": expected an integer, got '" + std::string(v) + "'", line);
    }
    return x;
}

bool parse_bool(std::string_view v, const std::string& key, int line) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ParseError(key + ": expected true or false, got '" + std::string(v) + "'", line);
}

std::vector<double> parse_list(std::string_view v, const std::string& key, int line) {
    std::vector<double> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const auto item = trim(v.substr(0, comma));
        if (item.empty()) throw ParseError(key + ": empty list element", line);
        out.push_back(parse_double(item, key, line));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
        if (trim(v).empty()) throw ParseError(key + ": trailing comma", line);
    }
    if (out.empty()) throw ParseError(key + ": list must not be empty", line);
    return out;
}

std::string format_list(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += format_double(xs[i]);
    }
    return s;
}

double dbm_to_w(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string format_short(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 10);
    return std::string(buf, r.ptr);
}

std::string format_shortest(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

struct KeySpec {
    std::string quantity;  // keys sharing a quantity are alternative spellings
    std::function<void(RunConfig&, std::string_view, const std::string&, int)> set;
};

const std::map<std::string, KeySpec, std::less<>>& key_table() {
    using V = std::string_view;
    using S = const std::string&;
    auto num = [](double CompressionParams::*m) {
        return [m](RunConfig& c, V v, S k, int l) { c.params.comp.*m = parse_double(v, k, l); };
    };
    auto chan = [](double ChannelParams::*m) {
        return [m](RunConfig& c, V v, S k, int l) { c.params.chan.*m = parse_double(v, k, l); };
    };
    static const std::map<std::string, KeySpec, std::less<>> table = {
        {"scenario", {"scenario", [](RunConfig& c, V v, S k, int l) {
             if (v == "power") c.scenario = Scenario::power;
             else if (v == "time") c.scenario = Scenario::time;
             else if (v == "validate") c.scenario = Scenario::validate;
             else throw ParseError(k + ": expected power, time or validate", l);
         }}},
        {"d_bits", {"d", num(&CompressionParams::D)}},
        {"kappa", {"kappa", num(&CompressionParams::kappa)}},
        {"psi", {"psi", num(&CompressionParams::psi)}},
        {"zeta", {"zeta", num(&CompressionParams::zeta)}},
        {"fc_min_hz", {"fc_min", num(&CompressionParams::fc_min)}},
        {"fc_max_hz", {"fc_max", num(&CompressionParams::fc_max)}},
        {"ps_max_w", {"ps_max", num(&CompressionParams::Ps_max)}},
        {"f_b_hz", {"f_b", num(&CompressionParams::f_b)}},
        {"q_max", {"q_max", num(&CompressionParams::Q_max)}},
        {"p_tx_w", {"p_tx", chan(&ChannelParams::P_tx)}},
        {"p_tx_dbm", {"p_tx", [](RunConfig& c, V v, S k, int l) {
             c.params.chan.P_tx = dbm_to_w(parse_double(v, k, l));
         }}},
        {"bandwidth_hz", {"bandwidth", chan(&ChannelParams::B)}},
        {"distance_m", {"distance", chan(&ChannelParams::d)}},
        {"path_loss_exp", {"path_loss", chan(&ChannelParams::ell)}},
        {"n0_w_per_hz", {"n0", chan(&ChannelParams::N0)}},
        {"n0_dbm_per_hz", {"n0", [](RunConfig& c, V v, S k, int l) {
             c.params.chan.N0 = dbm_to_w(parse_double(v, k, l));
         }}},
        {"k0", {"k0", chan(&ChannelParams::K0)}},
        {"k0_db", {"k0", [](RunConfig& c, V v, S k, int l) {
             c.params.chan.K0 = db_to_linear(parse_double(v, k, l));
         }}},
        {"nu_j", {"nu", chan(&ChannelParams::nu)}},
        {"lambda_j_per_bit", {"lambda", chan(&ChannelParams::lambda_coef)}},
        {"eps", {"eps", chan(&ChannelParams::eps)}},
        {"n_p_bits", {"n_p", [](RunConfig& c, V v, S k, int l) {
             c.params.chan.n_p = parse_int<std::int64_t>(v, k, l);
         }}},
        {"e_max_list", {"e_max_list", [](RunConfig& c, V v, S k, int l) { c.e_max_list = parse_list(v, k, l); }}},
        {"t_list", {"t_list", [](RunConfig& c, V v, S k, int l) { c.t_list = parse_list(v, k, l); }}},
        {"rho_list", {"rho_list", [](RunConfig& c, V v, S k, int l) { c.rho_list = parse_list(v, k, l); }}},
        {"theta_power", {"theta_power", [](RunConfig& c, V v, S k, int l) { c.theta_power = parse_double(v, k, l); }}},
        {"theta_time", {"theta_time", [](RunConfig& c, V v, S k, int l) { c.theta_time = parse_double(v, k, l); }}},
        {"fc_tol_hz", {"fc_tol", [](RunConfig& c, V v, S k, int l) { c.fc_tol_hz = parse_double(v, k, l); }}},
        {"include_decompression", {"include_decompression", [](RunConfig& c, V v, S k, int l) {
             c.include_decompression = parse_bool(v, k, l);
         }}},
        {"truncation_argument", {"truncation_argument", [](RunConfig& c, V v, S k, int l) {
             if (v == "standard") c.literal_truncation = false;
             else if (v == "literal") c.literal_truncation = true;
             else throw ParseError(k + ": expected standard or literal", l);
         }}},
        {"samples", {"samples", [](RunConfig& c, V v, S k, int l) { c.sim.n_samples = parse_int<std::int64_t>(v, k, l); }}},
        {"seed", {"seed", [](RunConfig& c, V v, S k, int l) { c.sim.seed = parse_int<std::uint64_t>(v, k, l); }}},
        {"antithetic", {"antithetic", [](RunConfig& c, V v, S k, int l) { c.sim.antithetic = parse_bool(v, k, l); }}},
        {"skip_tx_on_comp_failure", {"skip_tx", [](RunConfig& c, V v, S k, int l) {
             c.sim.skip_tx_on_comp_failure = parse_bool(v, k, l);
         }}},
        {"bootstrap_resamples", {"bootstrap", [](RunConfig& c, V v, S k, int l) {
             c.sim.bootstrap_resamples = parse_int<int>(v, k, l);
         }}},
        {"output_dir", {"output_dir", [](RunConfig& c, V v, S k, int l) {
             if (v.empty()) throw ParseError(k + ": must not be empty", l);
             c.output_dir = std::string(v);
         }}},
        {"format", {"format", [](RunConfig& c, V v, S k, int l) {
             if (v == "csv") c.format = Format::csv;
             else if (v == "dat") c.format = Format::dat;
             else throw ParseError(k + ": expected csv or dat", l);
         }}},
    };
    return table;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError("config: " + what);
}

std::string fnv1a_hex(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string header_block(const RunConfig& file_cfg) {
    std::string out;
    std::istringstream lines(emit_config(file_cfg, false));
    for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
    out += "## run_id = " + run_id(file_cfg) + "\n";

    const auto& ch = file_cfg.params.chan;
    out += "## derived: n0_dbm_per_hz = " + format_short(10.0 * std::log10(ch.N0) + 30.0) +
           ", k0_db = " + format_short(10.0 * std::log10(ch.K0)) +
           ", gamma0 = " + format_short(avg_snr(ch)) +
           ", rate_bps = " + format_short(outage_rate(ch)) +
           ", t_p_s = " + format_short(packet_time(ch)) +
           ", eta_bit_per_j = " + format_short(energy_efficiency(ch)) + "\n";
    return out;
}

std::string join(const std::vector<std::string>& cells, char sep) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += sep;
        s += cells[i];
    }
    return s;
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::power: return "power";
        case Scenario::time: return "time";
        case Scenario::validate: return "validate";
    }
    return "validate";
}

void RunConfig::validate() const {
    const auto& c = params.comp;
    const auto& ch = params.chan;
    require(c.D > 0.0, "d_bits must be > 0");
    require(c.kappa > 0.0, "kappa must be > 0");
    require(c.psi > 0.0, "psi must be > 0");
    require(c.zeta > 0.0 && c.zeta <= 1.0, "zeta must lie in (0,1]");
    require(c.fc_min > 0.0, "fc_min_hz must be > 0");
    require(c.fc_max > c.fc_min, "fc_max_hz must exceed fc_min_hz");
    require(c.Ps_max > 0.0, "ps_max_w must be > 0");
    require(c.f_b > 0.0, "f_b_hz must be > 0");
    require(c.Q_max > 1.0, "q_max must be > 1");
    require(ch.P_tx > 0.0, "p_tx_w must be > 0");
    require(ch.B > 0.0, "bandwidth_hz must be > 0");
    require(ch.d > 0.0, "distance_m must be > 0");
    require(ch.ell > 0.0, "path_loss_exp must be > 0");
    require(ch.N0 > 0.0, "n0_w_per_hz must be > 0");
    require(ch.K0 > 0.0, "k0 must be > 0");
    require(ch.nu > 0.0, "nu_j must be > 0");
    require(ch.lambda_coef > 0.0, "lambda_j_per_bit must be > 0");
    require(ch.eps > 0.0 && ch.eps < 1.0, "eps must lie in (0,1)");
    require(ch.n_p > 0, "n_p_bits must be >= 1");
    require(!e_max_list.empty(), "e_max_list must not be empty");
    for (double e : e_max_list) require(e > 0.0, "e_max_list entries must be > 0");
    require(!t_list.empty(), "t_list must not be empty");
    for (double t : t_list) require(t > 0.0, "t_list entries must be > 0");
    require(!rho_list.empty(), "rho_list must not be empty");
    for (double r : rho_list) require(r > 0.0 && r < 1.0, "rho_list entries must lie in (0,1)");
    require(theta_power > 0.0, "theta_power must be > 0");
    require(theta_time > 0.0 && theta_time < 1.0, "theta_time must lie in (0,1)");
    require(fc_tol_hz > 0.0, "fc_tol_hz must be > 0");
    require(sim.n_samples >= 1, "samples must be >= 1");
    require(sim.bootstrap_resamples >= 2, "bootstrap_resamples must be >= 2");
    require(!output_dir.empty(), "output_dir must not be empty");
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::set<std::string> seen;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("missing key before '='", line_no);

        const auto& table = key_table();
        const auto it = table.find(key);
        if (it == table.end()) throw ParseError("unknown key '" + key + "'", line_no);
        if (!seen.insert(it->second.quantity).second) {
            throw ParseError("'" + key + "' sets a quantity that was already given", line_no);
        }
        if (value.empty()) throw ParseError(key + ": missing value", line_no);
        it->second.set(cfg, value, key, line_no);
    }
    cfg.validate();
    return cfg;
}

std::string emit_config(const RunConfig& cfg, bool with_output_dir) {
    const auto& c = cfg.params.comp;
    const auto& ch = cfg.params.chan;
    std::ostringstream o;
    auto kv = [&o](const char* k, const std::string& v) { o << k << " = " << v << '\n'; };
    auto b = [](bool x) { return std::string(x ? "true" : "false"); };
    kv("scenario", scenario_name(cfg.scenario));
    kv("d_bits", format_double(c.D));
    kv("kappa", format_double(c.kappa));
    kv("psi", format_double(c.psi));
    kv("zeta", format_double(c.zeta));
    kv("fc_min_hz", format_double(c.fc_min));
    kv("fc_max_hz", format_double(c.fc_max));
    kv("ps_max_w", format_double(c.Ps_max));
    kv("f_b_hz", format_double(c.f_b));
    kv("q_max", format_double(c.Q_max));
    kv("p_tx_w", format_double(ch.P_tx));
    kv("bandwidth_hz", format_double(ch.B));
    kv("distance_m", format_double(ch.d));
    kv("path_loss_exp", format_double(ch.ell));
    kv("n0_w_per_hz", format_double(ch.N0));
    kv("k0", format_double(ch.K0));
    kv("nu_j", format_double(ch.nu));
    kv("lambda_j_per_bit", format_double(ch.lambda_coef));
    kv("eps", format_double(ch.eps));
    kv("n_p_bits", std::to_string(ch.n_p));
    kv("e_max_list", format_list(cfg.e_max_list));
    kv("t_list", format_list(cfg.t_list));
    kv("rho_list", format_list(cfg.rho_list));
    kv("theta_power", format_double(cfg.theta_power));
    kv("theta_time", format_double(cfg.theta_time));
    kv("fc_tol_hz", format_double(cfg.fc_tol_hz));
    kv("include_decompression", b(cfg.include_decompression));
    kv("truncation_argument", cfg.literal_truncation ? "literal" : "standard");
    kv("samples", std::to_string(cfg.sim.n_samples));
    kv("seed", std::to_string(cfg.sim.seed));
    kv("antithetic", b(cfg.sim.antithetic));
    kv("skip_tx_on_comp_failure", b(cfg.sim.skip_tx_on_comp_failure));
    kv("bootstrap_resamples", std::to_string(cfg.sim.bootstrap_resamples));
    if (with_output_dir) kv("output_dir", cfg.output_dir);
    kv("format", cfg.format == Format::csv ? "csv" : "dat");
    return o.str();
}

RunConfig config_from_header(std::string_view file_text) {
    std::string body;
    while (!file_text.empty()) {
        const auto nl = file_text.find('\n');
        const std::string_view line = file_text.substr(0, nl);
        file_text = nl == std::string_view::npos ? std::string_view{} : file_text.substr(nl + 1);
        if (line.rfind("##", 0) == 0) continue;
        if (line.rfind("# ", 0) != 0) break;
        body.append(line.substr(2));
        body += '\n';
    }
    if (body.empty()) throw ParseError("no '# key = value' header found", 0);
    return parse_config(body);
}

std::string run_id(const RunConfig& cfg) { return fnv1a_hex(emit_config(cfg, false)); }

power::PowerProblem power_problem(const RunConfig& cfg, double rho) {
    power::PowerProblem p;
    p.params = cfg.params;
    p.E_max = cfg.e_max_list.front();
    p.rho = rho;
    p.theta = cfg.theta_power;
    p.include_decompression = cfg.include_decompression;
    return p;
}

deadline::TimeProblem time_problem(const RunConfig& cfg, double rho) {
    deadline::TimeProblem p;
    p.params = cfg.params;
    p.T = cfg.t_list.front();
    p.rho = rho;
    p.theta = cfg.theta_time;
    p.fc_tol = cfg.fc_tol_hz;
    p.literal_truncation = cfg.literal_truncation;
    return p;
}

std::string front_filename(Scenario s, double rho, Format f) {
    return scenario_name(s) + "_front_rho" + format_shortest(rho) + (f == Format::csv ? ".csv" : ".dat");
}

std::string render_power_front(const power::PowerFront& front, const RunConfig& cfg) {
    RunConfig file_cfg = cfg;
    file_cfg.scenario = Scenario::power;
    file_cfg.rho_list = {front.rho};
    std::string out = header_block(file_cfg);
    out += "## baseline (no compression): energy_j = " + format_double(front.baseline_energy) +
           ", latency_bound_s = " + format_double(front.baseline_latency) + "\n";

    const bool csv = cfg.format == Format::csv;
    const std::string nan = "nan";
    if (csv) {
        out += "e_max_j,latency_bound_s,energy_j,q_star,fc_star_hz,comp_quantile_s,tx_quantile_s,"
               "e_comp_j,e_tx_j,exact_latency_s,convexity_certified,clipped,uncompressed,feasible\n";
    } else {
        out += "## latency_bound_s energy_j\n";
    }
    for (const auto& row : front.rows) {
        if (!row.solution) {
            if (csv) {
                std::vector<std::string> cells(14, nan);
                cells[0] = format_double(row.E_max);
                cells[10] = cells[11] = cells[12] = cells[13] = "0";
                out += join(cells, ',') + "\n";
            } else {
                out += "## infeasible e_max_j = " + format_double(row.E_max) + ": " + row.note + "\n";
            }
            continue;
        }
        const auto& s = *row.solution;
        if (csv) {
            out += join({format_double(row.E_max), format_double(s.latency_bound),
                         format_double(s.energy()), format_double(s.Q_star), format_double(s.fc_star),
                         format_double(s.comp_quantile), format_double(s.tx_quantile),
                         format_double(s.E_comp), format_double(s.E_tx), format_double(s.exact_latency),
                         s.convexity_certified ? "1" : "0", s.clipped ? "1" : "0",
                         s.uncompressed ? "1" : "0", "1"},
                        ',') +
                   "\n";
        } else {
            out += format_double(s.latency_bound) + " " + format_double(s.energy()) + "\n";
        }
    }
    return out;
}

std::string render_time_front(const deadline::TimeFront& front, const RunConfig& cfg) {
    RunConfig file_cfg = cfg;
    file_cfg.scenario = Scenario::time;
    file_cfg.rho_list = {front.rho};
    std::string out = header_block(file_cfg);

    const bool csv = cfg.format == Format::csv;
    if (csv) {
        out += "t_s,qaoi_s,energy_j,alpha,q,fc_hz,p_succ,eps_c,eps_tx,e_comp_j,e_tx_j,n_packets,n_tx,feasible\n";
    } else {
        out += "## qaoi_s energy_j\n";
    }
    for (const auto& row : front.rows) {
        if (!row.solution) {
            if (csv) {
                std::vector<std::string> cells(14, "nan");
                cells[0] = format_double(row.T);
                cells[13] = "0";
                out += join(cells, ',') + "\n";
            } else {
                out += "## infeasible t_s = " + format_double(row.T) + ": " + row.note + "\n";
            }
            continue;
        }
        const auto& s = *row.solution;
        if (csv) {
            out += join({format_double(row.T), format_double(s.qaoi), format_double(s.energy()),
                         format_double(s.alpha), format_double(s.Q), format_double(s.fc),
                         format_double(s.P_succ), format_double(s.eps_c), format_double(s.eps_tx),
                         format_double(s.E_comp), format_double(s.E_tx), std::to_string(s.N),
                         std::to_string(s.N_tx), "1"},
                        ',') +
                   "\n";
        } else {
            out += format_double(s.qaoi) + " " + format_double(s.energy()) + "\n";
        }
    }
    return out;
}

namespace {

struct Reporter {
    std::ostringstream text;
    bool passed = true;

    void check(const std::string& name, bool ok, const std::string& detail) {
        passed = passed && ok;
        text << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    }
};

// Pr[fewer than N of N_tx sends survive] by summing over all loss patterns.
double enumerate_tx_failure(int N, int N_tx, double eps) {
    double fail = 0.0;
    for (unsigned mask = 0; mask < (1U << N_tx); ++mask) {
        const int lost = std::popcount(mask);
        if (N_tx - lost < N) {
            fail += std::pow(eps, lost) * std::pow(1.0 - eps, N_tx - lost);
        }
    }
    return fail;
}

}  // namespace

ValidationReport run_validation(const RunConfig& cfg) {
    cfg.validate();
    Reporter r;
    r.text << "elo validation report\n";
    r.text << "run_id = " << run_id(cfg) << "\n";
    r.text << "samples = " << cfg.sim.n_samples << ", seed = " << cfg.sim.seed << "\n";

    const double rho_lo = *std::min_element(cfg.rho_list.begin(), cfg.rho_list.end());
    const double rho_hi = *std::max_element(cfg.rho_list.begin(), cfg.rho_list.end());
    const power::PowerProblem pp = power_problem(cfg, rho_lo);
    const deadline::TimeProblem tp = time_problem(cfg, rho_hi);
    const auto& c = cfg.params.comp;
    const auto& ch = cfg.params.chan;
    const auto fmt = [](double x) { return format_double(x); };

    {
        // Budgets built so that fc_star lands inside the hardware range.
        mc::TrialRng rng(cfg.sim.seed, 0xE1E1E1E1ULL);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double Q = 1.0 + (c.Q_max - 1.0) * (0.05 + 0.95 * rng.uniform());
            const double f = c.fc_min + (c.fc_max - c.fc_min) * rng.uniform();
            power::PowerProblem p = pp;
            p.E_max = compression_energy(f, Q, c) + p.comm_energy_constant() / Q;
            const double fs = power::fc_star(Q, p).unclipped;
            const double e = compression_energy(fs, Q, c) + comm_energy(num_packets(Q, c.D, ch.n_p, true), ch);
            worst = std::max(worst, std::abs(e - p.E_max) / p.E_max);
        }
        r.check("energy_identity", worst <= 1e-9, "max_rel_err = " + fmt(worst) + " (limit 1e-9)");
    }
    {
        double worst_margin = std::numeric_limits<double>::infinity();
        for (double Q : {1.2, 1.4}) {
            for (double f : {1.0e9, 2.0e9}) {
                const auto s = mc::sample_latency(Q, f, pp, cfg.sim, cfg.rho_list);
                for (const auto& q : s.quantiles) {
                    power::PowerProblem p = pp;
                    p.rho = q.rho;
                    const double bound = power::latency_quantile_bound(Q, f, p).total();
                    worst_margin = std::min(worst_margin, bound - (q.value - 3.0 * q.se));
                }
            }
        }
        r.check("latency_bound_dominance", worst_margin >= 0.0,
                "min(bound - (empirical - 3 se)) = " + fmt(worst_margin) + " s (limit >= 0)");
    }
    {
        const double Q = 1.3;
        const double f = 1.6e9;
        const double rhos[] = {0.5};
        const auto s = mc::sample_latency(Q, f, pp, cfg.sim, rhos);
        const auto dist = compression_time_dist(Q, f, c);
        const double factor = pp.include_decompression ? decompression_scale(f, c) : 1.0;
        const double analytic = factor * dist.mean() +
                                tx_time_stats(static_cast<double>(num_packets_ceil(Q, c.D, ch.n_p)), ch).mean;
        const double z = std::abs(s.mean - analytic) / s.mean_se;
        r.check("latency_mean", z <= 3.0, "|sim - analytic| / se = " + fmt(z) + " (limit 3)");
    }
    {
        // A point where a few percent of compressions miss the deadline.
        const double alpha = 0.3;
        const double Q = 1.36;
        const double f = 1.2e9;
        deadline::TimeProblem p = tp;
        p.T = 0.4;
        const auto s = mc::sample_truncated_compression(alpha, Q, f, p, cfg.sim);
        const double eps_c = deadline::compression_failure(alpha, Q, f, p);
        const double se_c = std::sqrt(eps_c * (1.0 - eps_c) / static_cast<double>(s.n));
        const double z_c = se_c > 0.0 ? std::abs(s.failure_rate - eps_c) / se_c : 0.0;
        r.check("compression_failure", z_c <= 3.0, "|sim - analytic| / se = " + fmt(z_c) + " (limit 3)");
        const double tm = deadline::truncated_comp_mean(alpha, Q, f, p);
        const double z_t = std::abs(s.conditional_mean - tm) / s.conditional_se;
        r.check("truncated_mean", z_t <= 3.0, "|sim - analytic| / se = " + fmt(z_t) + " (limit 3)");
    }
    {
        const double alpha = 0.3;
        const double Q = 1.36;
        const double f = 1.2e9;
        deadline::TimeProblem p = tp;
        p.T = 0.4;
        const auto s = mc::simulate_slot(alpha, Q, f, p, cfg.sim);
        const double ps = deadline::success_probability(alpha, Q, f, p);
        const double se_p = std::sqrt(ps * (1.0 - ps) / static_cast<double>(s.n));
        const double z_p = se_p > 0.0 ? std::abs(s.P_succ - ps) / se_p : 0.0;
        r.check("slot_success", z_p <= 3.0, "|sim - analytic| / se = " + fmt(z_p) + " (limit 3)");
        const double e = deadline::comp_energy_time(alpha, Q, f, p) + deadline::comm_energy_time(alpha, p);
        double z_e = std::abs(s.mean_energy - e) / s.energy_se;
        if (cfg.sim.skip_tx_on_comp_failure) z_e = 0.0;  // the analytic energy assumes transmission
        r.check("slot_energy", z_e <= 3.0, "|sim - analytic| / se = " + fmt(z_e) + " (limit 3)");
    }
    {
        double worst = 0.0;
        for (double eps : {0.1, 0.5}) {
            for (int n_tx = 1; n_tx <= 12; ++n_tx) {
                for (int n = 1; n <= std::min(n_tx, 6); ++n) {
                    worst = std::max(worst, std::abs(deadline::tx_failure(n, n_tx, eps) -
                                                     enumerate_tx_failure(n, n_tx, eps)));
                }
            }
        }
        r.check("tx_failure_enumeration", worst <= 1e-12, "max_abs_err = " + fmt(worst) + " (limit 1e-12)");
    }
    {
        const double t_p = packet_time(ch);
        const double small = mc::gaussian_approx_error(50, 0.1, t_p);
        const double large = mc::gaussian_approx_error(500, 0.1, t_p);
        r.check("gaussian_approx_trend", large < small,
                "sup_err(N=500) = " + fmt(large) + ", sup_err(N=50) = " + fmt(small));
    }
    {
        try {
            const auto sol = deadline::solve(tp);
            const auto s = mc::simulate_slot(sol.alpha, sol.Q, sol.fc, tp, cfg.sim);
            const double margin = s.P_succ + 3.0 * s.P_succ_se - tp.rho;
            r.check("time_solution_reliability", margin >= 0.0,
                    "T = " + fmt(tp.T) + ", rho = " + fmt(tp.rho) + ", sim P_succ = " + fmt(s.P_succ) +
                        " +- " + fmt(s.P_succ_se));
        } catch (const Infeasible& ex) {
            r.check("time_solution_reliability", false, ex.what());
        }
    }
    {
        const auto front = power::pareto_front(cfg.e_max_list, rho_lo, pp);
        bool monotone = true;
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& row : front.rows) {
            if (!row.solution) continue;
            monotone = monotone && row.solution->latency_bound <= prev;
            prev = row.solution->latency_bound;
        }
        r.check("power_front_monotone", monotone, "latency non-increasing in e_max over " +
                                                      std::to_string(front.rows.size()) + " budgets");
    }
    r.text << (r.passed ? "RESULT PASS\n" : "RESULT FAIL\n");
    return {r.text.str(), r.passed};
}

int run(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& body) {
        const auto path = dir / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
        f << body;
        if (!f) throw std::runtime_error("failed writing " + path.string());
        log << "wrote " << path.string() << '\n';
    };

    switch (cfg.scenario) {
        case Scenario::power:
            for (double rho : cfg.rho_list) {
                const auto front = power::pareto_front(cfg.e_max_list, rho, power_problem(cfg, rho));
                write(front_filename(Scenario::power, rho, cfg.format), render_power_front(front, cfg));
            }
            return 0;
        case Scenario::time:
            for (double rho : cfg.rho_list) {
                const auto front = deadline::pareto_front(cfg.t_list, rho, time_problem(cfg, rho));
                write(front_filename(Scenario::time, rho, cfg.format), render_time_front(front, cfg));
            }
            return 0;
        case Scenario::validate: {
            const auto report = run_validation(cfg);
            write("validate_report.txt", report.text);
            log << report.text;
            return report.passed ? 0 : 1;
        }
    }
    return 1;
}

}  // namespace elo::io
