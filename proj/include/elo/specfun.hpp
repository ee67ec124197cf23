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

// Special-function kernel: log-gamma, regularized incomplete gamma and its
// inverse, the normal CDF and its inverse, and binomial / negative-binomial
// tails. Everything here is a pure function of its arguments.

#include <cstdint>

namespace elo::specfun {

struct Tolerances {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_iter = 200;

    void validate() const;
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// P(s, x) = gamma(s, x) / Gamma(s). Series below x = s + 1, Lentz continued
/// fraction above.
double reg_lower_gamma(double s, double x);

/// Q(s, x) = 1 - P(s, x), computed without cancellation in the upper tail.
double reg_upper_gamma(double s, double x);

/// Smallest t >= 0 with P(shape, t / scale) = rho. Newton iteration on the
/// regularized CDF, guarded by bisection inside [0, scale * (shape + 40 sqrt(shape) + 40)].
/// Throws ConvergenceError (with the last bracket) after tol.max_iter steps.
double gamma_quantile(double shape, double scale, double rho, const Tolerances& tol = {});

/// Standard normal CDF.
double normal_cdf(double z);

/// Inverse standard normal CDF on (0, 1).
double probit(double rho);

/// ln C(n, k).
double log_binomial_coefficient(std::int64_t n, std::int64_t k);

/// Pr[X >= m] for X ~ Binomial(n, p), summed term by term in the log domain.
double binomial_upper_tail(std::int64_t n, double p, std::int64_t m);

/// Pr[X <= m] for X ~ Binomial(n, p).
double binomial_lower_tail(std::int64_t n, double p, std::int64_t m);

/// Pr[N_tx <= k], N_tx = number of Bernoulli trials needed for `successes`
/// successes when each trial fails with probability fail_prob. Zero for k < successes.
double nbinom_cdf(std::int64_t successes, double fail_prob, std::int64_t k);

/// Smallest k with nbinom_cdf(successes, fail_prob, k) >= rho.
std::int64_t nbinom_quantile(std::int64_t successes, double fail_prob, double rho);

}  // namespace elo::specfun
