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

// Power-constrained scenario: minimize an upper bound on the rho-quantile of
// end-to-end latency subject to a mean-energy budget E_max. The CPU frequency
// is eliminated by spending the whole budget (fc_star), which leaves a scalar
// search over the compression ratio Q.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elo/params.hpp"

namespace elo::power {

struct PowerProblem {
    SystemParams params;
    double E_max = 0.1;   ///< energy budget [J]
    double rho = 0.9;     ///< latency quantile level
    double theta = 1e-4;  ///< precision of the search over Q
    /// Multiply the compression quantile by 1 + zeta f_c / f_b (decompression at the BS).
    bool include_decompression = true;

    void validate() const;

    /// C = D / ((1 - eps) eta): communication energy of the uncompressed block.
    double comm_energy_constant() const;
};

struct FcStar {
    double unclipped;  ///< frequency that spends exactly E_max
    double clipped;    ///< the same, clamped to [fc_min, fc_max]
    bool was_clipped;
};

/// Frequency that spends the whole budget at a given Q > 1. Throws DegenerateQ at Q = 1 and
/// Infeasible when communication alone uses up the budget.
FcStar fc_star(double Q, const PowerProblem& prob);

struct LatencyBound {
    double comp_quantile;  ///< (1 + zeta f_c/f_b) F_{T_c}^{-1}(rho)
    double tx_quantile;    ///< Gaussian quantile mu_tx + z(rho) sigma_tx, continuous N
    double total() const { return comp_quantile + tx_quantile; }
};

/// Sum-of-quantiles bound on F_T^{-1}(rho). Q = 1 is accepted and has no
/// compression addend.
LatencyBound latency_quantile_bound(double Q, double f_c, const PowerProblem& prob);

/// Per-bit Gamma scale at the optimal frequency, K sqrt(m(Q)^3 / (E_max - C/Q)),
/// with K = sqrt(D Ps_max / fc_max^3) / kappa so that beta kappa fc_star = m(Q).
double beta_of_q(double Q, const PowerProblem& prob);

/// 3 psi^2 e^psi Q^2 - 2 Q E_max + C; nonnegative where the compression
/// quantile is certified convex.
double convexity_quadratic(double Q, const PowerProblem& prob);
bool convexity_condition(double Q, const PowerProblem& prob);

/// True when the convexity condition holds everywhere on [lo, hi].
bool convexity_certified_on(double lo, double hi, const PowerProblem& prob);

/// Range of Q for which fc_star >= fc_min, i.e. the budget can be met by some
/// admissible frequency. lo == 1 means the uncompressed corner is feasible too.
struct QRange {
    double lo;
    double hi;
};
std::optional<QRange> feasible_q_range(const PowerProblem& prob);

/// Frequency actually used at Q: fc_star clamped to the hardware range
/// (0 at Q = 1, where the CPU stays idle).
double operating_frequency(double Q, const PowerProblem& prob);

/// Latency bound at (Q, operating_frequency(Q)); +infinity outside the feasible range.
double objective(double Q, const PowerProblem& prob);

struct PowerSolution {
    double Q_star = 1.0;
    double fc_star = 0.0;
    double latency_bound = 0.0;
    double comp_quantile = 0.0;
    double tx_quantile = 0.0;
    double E_comp = 0.0;
    double E_tx = 0.0;
    bool convexity_certified = false;
    bool clipped = false;
    bool uncompressed = false;  ///< the Q = 1 corner won
    /// Exact negative-binomial quantile with the ceiled packet count.
    double exact_tx_quantile = 0.0;
    double exact_latency = 0.0;

    double energy() const { return E_comp + E_tx; }
};

/// Throws Infeasible when no Q in [1, Q_max] meets the budget. `hints` are
/// extra candidate ratios (e.g. the optimum at a smaller budget); infeasible
/// ones are ignored.
PowerSolution solve(const PowerProblem& prob, std::span<const double> hints = {});

struct PowerFrontRow {
    double E_max;
    std::optional<PowerSolution> solution;  ///< empty when infeasible
    std::string note;
};

struct PowerFront {
    double rho;
    double baseline_energy;   ///< energy of the uncompressed configuration
    double baseline_latency;  ///< its latency bound
    std::vector<PowerFrontRow> rows;  ///< sorted by E_max, no duplicates
};

/// Budgets are solved in increasing order, each seeded with the previous
/// optimum, so the latency column is non-increasing.
PowerFront pareto_front(std::span<const double> E_max_list, double rho,
                        const PowerProblem& prob_template);

}  // namespace elo::power
