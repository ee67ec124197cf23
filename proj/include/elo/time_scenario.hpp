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

// Deadline scenario: a slot of length T is split into a compression window
// alpha T and a transmission window (1 - alpha) T filled with coded packets.
// Minimize mean energy subject to Pr[decoded before the deadline] >= rho.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elo/params.hpp"

namespace elo::deadline {

struct TimeProblem {
    SystemParams params;
    double T = 0.4;        ///< slot budget [s]
    double rho = 0.999;    ///< reliability target
    double theta = 0.01;   ///< grid step on both alpha and Q
    double fc_tol = 1e6;   ///< frequency search tolerance [Hz]
    /// Evaluate the truncated mean at x = scale / (alpha T) instead of alpha T / scale.
    bool literal_truncation = false;

    void validate() const;
};

/// 1 - ceil(D / (Q_max n_p)) t_p / T. Throws Infeasible when not positive.
double alpha_max(const TimeProblem& prob);

/// eps_c = Pr[T_c > alpha T]. 0 at Q = 1.
double compression_failure(double alpha, double Q, double f_c, const TimeProblem& prob);

/// floor((1 - alpha) T / t_p).
std::int64_t tx_count(double alpha, const TimeProblem& prob);

/// Pr[fewer than N of N_tx packets survive], each lost independently with
/// probability eps. 1 when N_tx < N.
double tx_failure(std::int64_t N, std::int64_t N_tx, double eps);

/// E[T_c | T_c < alpha T] (0 at Q = 1).
double truncated_comp_mean(double alpha, double Q, double f_c, const TimeProblem& prob);

/// ((1 - eps_c) E[T_c | T_c < alpha T] + eps_c alpha T) P_c(f_c).
double comp_energy_time(double alpha, double Q, double f_c, const TimeProblem& prob);

/// n_p N_tx / eta.
double comm_energy_time(double alpha, const TimeProblem& prob);

/// T + alpha T fc_max / f_b.
double qaoi(double alpha, const TimeProblem& prob);

/// (1 - eps_c)(1 - eps_tx).
double success_probability(double alpha, double Q, double f_c, const TimeProblem& prob);

/// Lowest frequency (to within fc_tol) meeting rho at (alpha, Q); empty when
/// fc_max does not suffice or the slot cannot carry the packets.
std::optional<double> fc_opt(double alpha, double Q, const TimeProblem& prob);

struct TimeSolution {
    double alpha = 0.0;
    double Q = 1.0;
    double fc = 0.0;
    double eps_c = 0.0;
    double eps_tx = 0.0;
    double P_succ = 0.0;
    double E_comp = 0.0;
    double E_tx = 0.0;
    double qaoi = 0.0;
    std::int64_t N = 0;     ///< packets needed
    std::int64_t N_tx = 0;  ///< packets sent

    double energy() const { return E_comp + E_tx; }
};

/// Full evaluation of one grid point at fc_opt; empty when infeasible.
std::optional<TimeSolution> evaluate_point(double alpha, double Q, const TimeProblem& prob);

/// Exhaustive grid search. Ties go to the lower alpha, then the lower Q.
/// Throws Infeasible when no grid point meets rho.
TimeSolution solve(const TimeProblem& prob);

struct TimeFrontRow {
    double T;
    std::optional<TimeSolution> solution;
    std::string note;
};

struct TimeFront {
    double rho;
    std::vector<TimeFrontRow> rows;  ///< sorted by T, no duplicates
};

TimeFront pareto_front(std::span<const double> T_list, double rho, const TimeProblem& prob_template);

}  // namespace elo::deadline
