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

// Stochastic oracle for the analytic models. Every trial owns a random
// stream keyed by (seed, trial index), so results do not depend on how the
// trials are scheduled.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "elo/power_scenario.hpp"
#include "elo/time_scenario.hpp"

namespace elo::mc {

struct SimConfig {
    std::int64_t n_samples = 100000;
    std::uint64_t seed = 20240601;
    /// Pair trial 2k+1 with trial 2k by reflecting every uniform u -> 1 - u.
    bool antithetic = false;
    /// When compression misses the deadline, stay silent instead of sending the
    /// (useless) packets. Off by default so simulated E_tx is unconditional.
    bool skip_tx_on_comp_failure = false;
    int bootstrap_resamples = 200;

    void validate() const;
    bool operator==(const SimConfig&) const = default;
};

/// Random stream of a single trial.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t stream, bool reflect = false);

    /// Uniform on (0, 1); never returns 0 or 1.
    double uniform();
    double normal();
    /// Gamma(shape, 1).
    double gamma(double shape);
    /// Number of successes before the first failure, failure probability p in (0, 1].
    std::int64_t successes_before_failure(double p);
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
    bool reflect_;
};

/// Attempts needed for `successes` deliveries when each attempt fails with probability eps.
std::int64_t sample_attempts(std::int64_t successes, double eps, TrialRng& rng);

/// Packets lost among n independent sends.
std::int64_t sample_losses(std::int64_t n, double eps, TrialRng& rng);

struct QuantileEstimate {
    double rho;
    double value;
    double se;  ///< bootstrap standard error
};

struct LatencySummary {
    std::int64_t n;
    double mean;
    double mean_se;
    double variance;
    std::vector<QuantileEstimate> quantiles;
};

/// Samples T = (1 + zeta f_c/f_b) T_c + t_p * attempts(ceil(D/(Q n_p))). The
/// decompression factor follows prob.include_decompression.
LatencySummary sample_latency(double Q, double f_c, const power::PowerProblem& prob,
                              const SimConfig& sim, std::span<const double> rhos);

struct SlotSummary {
    std::int64_t n;
    double P_succ;
    double P_succ_se;
    double mean_energy;
    double energy_se;
    double comp_failure_rate;
};

/// Simulates whole slots: compression against the alpha T deadline, then
/// floor((1-alpha)T/t_p) coded packets decoded iff at least N arrive.
SlotSummary simulate_slot(double alpha, double Q, double f_c, const deadline::TimeProblem& prob,
                          const SimConfig& sim);

struct TruncationSummary {
    std::int64_t n;
    std::int64_t finished;     ///< trials with T_c < alpha T
    double failure_rate;       ///< share of trials that missed alpha T
    double failure_se;
    double conditional_mean;   ///< mean of T_c over finished trials
    double conditional_se;
};

/// Compression times alone, conditioned on finishing within alpha T.
TruncationSummary sample_truncated_compression(double alpha, double Q, double f_c,
                                               const deadline::TimeProblem& prob,
                                               const SimConfig& sim);

/// sup over k in [N, nbinom_quantile(N, eps, 0.9999)] of
/// |Pr[attempts <= k] - Phi((k t_p - mu_tx) / sigma_tx)|. With eps = 0 the
/// Gaussian collapses onto the atom and Phi is taken as 1/2 there.
double gaussian_approx_error(std::int64_t N, double eps, double t_p);

}  // namespace elo::mc
