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

#include "elo/time_scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elo/errors.hpp"
#include "elo/specfun.hpp"

namespace elo::deadline {

namespace {

// Grid points are i * theta; allow for the rounding in that product.
constexpr double kGridSlack = 1e-9;

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in [0,1), got " + std::to_string(alpha));
    }
}

}  // namespace

void TimeProblem::validate() const {
    params.validate();
    if (!(T > 0.0)) throw DomainError("T must be > 0");
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0,1)");
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0,1)");
    if (!(fc_tol > 0.0)) throw DomainError("fc_tol must be > 0");
}

double alpha_max(const TimeProblem& prob) {
    const auto& c = prob.params.comp;
    const auto& ch = prob.params.chan;
    const auto n_min = num_packets_ceil(c.Q_max, c.D, ch.n_p);
    const double a = 1.0 - static_cast<double>(n_min) * packet_time(ch) / prob.T;
    if (!(a > 0.0)) {
        throw Infeasible("T = " + std::to_string(prob.T) + " s cannot carry " +
                         std::to_string(n_min) + " packets even at Q_max");
    }
    return a;
}

double compression_failure(double alpha, double Q, double f_c, const TimeProblem& prob) {
    check_alpha(alpha);
    const auto& c = prob.params.comp;
    if (mean_complexity(Q, c) == 0.0) return 0.0;
    const GammaDist dist = compression_time_dist(Q, f_c, c);
    return dist.survival(alpha * prob.T);
}

std::int64_t tx_count(double alpha, const TimeProblem& prob) {
    check_alpha(alpha);
    return static_cast<std::int64_t>(std::floor((1.0 - alpha) * prob.T / packet_time(prob.params.chan)));
}

double tx_failure(std::int64_t N, std::int64_t N_tx, double eps) {
    if (N < 1) throw DomainError("tx_failure: N must be >= 1");
    if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("tx_failure: eps must lie in [0,1]");
    if (N_tx < N) return 1.0;
    // Decoding fails iff more than N_tx - N packets are lost.
    return specfun::binomial_upper_tail(N_tx, eps, N_tx - N + 1);
}

double truncated_comp_mean(double alpha, double Q, double f_c, const TimeProblem& prob) {
    check_alpha(alpha);
    const auto& c = prob.params.comp;
    if (mean_complexity(Q, c) == 0.0) return 0.0;
    const double window = alpha * prob.T;
    if (!(window > 0.0)) throw DomainError("truncated_comp_mean: alpha T must be > 0");

    const GammaDist dist = compression_time_dist(Q, f_c, c);
    const double k = dist.shape();
    const double x = prob.literal_truncation ? dist.scale() / window : window / dist.scale();
    const double lower = specfun::reg_lower_gamma(k, x);
    if (lower == 0.0) {
        // x -> 0: the density is ~ t^{k-1}, so the mean over [0, x] is k x / (k + 1).
        return dist.scale() * k * x / (k + 1.0);
    }
    return dist.scale() * k * specfun::reg_lower_gamma(k + 1.0, x) / lower;
}

double comp_energy_time(double alpha, double Q, double f_c, const TimeProblem& prob) {
    const auto& c = prob.params.comp;
    if (mean_complexity(Q, c) == 0.0) return 0.0;
    const double window = alpha * prob.T;
    const double eps_c = compression_failure(alpha, Q, f_c, prob);
    const double finished = window > 0.0 ? truncated_comp_mean(alpha, Q, f_c, prob) : 0.0;
    return ((1.0 - eps_c) * finished + eps_c * window) * cpu_power(f_c, c);
}

double comm_energy_time(double alpha, const TimeProblem& prob) {
    const auto& ch = prob.params.chan;
    return static_cast<double>(ch.n_p) * static_cast<double>(tx_count(alpha, prob)) /
           energy_efficiency(ch);
}

double qaoi(double alpha, const TimeProblem& prob) {
    check_alpha(alpha);
    const auto& c = prob.params.comp;
    return prob.T + alpha * prob.T * c.fc_max / c.f_b;
}

double success_probability(double alpha, double Q, double f_c, const TimeProblem& prob) {
    const auto& c = prob.params.comp;
    const auto& ch = prob.params.chan;
    const double eps_tx = tx_failure(num_packets_ceil(Q, c.D, ch.n_p), tx_count(alpha, prob), ch.eps);
    return (1.0 - compression_failure(alpha, Q, f_c, prob)) * (1.0 - eps_tx);
}

std::optional<double> fc_opt(double alpha, double Q, const TimeProblem& prob) {
    const auto& c = prob.params.comp;
    const auto& ch = prob.params.chan;
    const auto n = num_packets_ceil(Q, c.D, ch.n_p);
    const auto n_tx = tx_count(alpha, prob);
    if (n_tx < n) return std::nullopt;
    const double tx_ok = 1.0 - tx_failure(n, n_tx, ch.eps);
    if (tx_ok < prob.rho) return std::nullopt;

    if (mean_complexity(Q, c) == 0.0) return c.fc_min;
    auto meets = [&](double f) {
        return (1.0 - compression_failure(alpha, Q, f, prob)) * tx_ok >= prob.rho;
    };
    if (!meets(c.fc_max)) return std::nullopt;
    if (meets(c.fc_min)) return c.fc_min;

    double lo = c.fc_min;
    double hi = c.fc_max;
    while (hi - lo > prob.fc_tol) {
        const double mid = 0.5 * (lo + hi);
        if (meets(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::optional<TimeSolution> evaluate_point(double alpha, double Q, const TimeProblem& prob) {
    const auto f = fc_opt(alpha, Q, prob);
    if (!f) return std::nullopt;
    const auto& c = prob.params.comp;
    const auto& ch = prob.params.chan;
    TimeSolution s;
    s.alpha = alpha;
    s.Q = Q;
    s.fc = *f;
    s.N = num_packets_ceil(Q, c.D, ch.n_p);
    s.N_tx = tx_count(alpha, prob);
    s.eps_c = compression_failure(alpha, Q, *f, prob);
    s.eps_tx = tx_failure(s.N, s.N_tx, ch.eps);
    s.P_succ = (1.0 - s.eps_c) * (1.0 - s.eps_tx);
    s.E_comp = comp_energy_time(alpha, Q, *f, prob);
    s.E_tx = comm_energy_time(alpha, prob);
    s.qaoi = qaoi(alpha, prob);
    return s;
}

TimeSolution solve(const TimeProblem& prob) {
    prob.validate();
    const double a_lim = std::min(alpha_max(prob), 1.0 - prob.theta);
    const double q_max = prob.params.comp.Q_max;

    std::optional<TimeSolution> best;
    for (long i = 0;; ++i) {
        const double alpha = static_cast<double>(i) * prob.theta;
        if (alpha > a_lim + kGridSlack) break;
        for (long j = 0;; ++j) {
            double Q = 1.0 + static_cast<double>(j) * prob.theta;
            if (Q > q_max + kGridSlack) break;
            Q = std::min(Q, q_max);
            const auto s = evaluate_point(alpha, Q, prob);
            if (s && (!best || s->energy() < best->energy())) best = s;
        }
    }
    if (!best) {
        throw Infeasible("time scenario: no (alpha, Q) grid point reaches rho = " +
                         std::to_string(prob.rho) + " within T = " + std::to_string(prob.T) + " s");
    }
    return *best;
}

TimeFront pareto_front(std::span<const double> T_list, double rho, const TimeProblem& prob_template) {
    if (T_list.empty()) throw DomainError("pareto_front: empty T list");
    std::vector<double> budgets(T_list.begin(), T_list.end());
    std::sort(budgets.begin(), budgets.end());
    budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());

    TimeFront front{rho, {}};
    front.rows.reserve(budgets.size());
    for (double t : budgets) {
        TimeProblem p = prob_template;
        p.T = t;
        p.rho = rho;
        try {
            front.rows.push_back({t, solve(p), {}});
        } catch (const Infeasible& ex) {
            front.rows.push_back({t, std::nullopt, ex.what()});
        }
    }
    return front;
}

}  // namespace elo::deadline
