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

#include "elo/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "elo/errors.hpp"

namespace elo::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
// Series and continued fraction converge in O(sqrt(s)) terms near x = s;
// this cap is far beyond anything reachable for s < 1e8.
constexpr int kMaxTerms = 1000000;

// exp(s ln x - x - ln Gamma(s)), the common prefactor of P and Q.
double gamma_prefactor(double s, double x) {
    return std::exp(s * std::log(x) - x - log_gamma(s));
}

double lower_series(double s, double x) {
    double ap = s;
    double term = 1.0 / s;
    double sum = term;
    for (int n = 0; n < kMaxTerms; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * gamma_prefactor(s, x);
        }
    }
    throw ConvergenceError("incomplete gamma series did not converge", x, x);
}

// Modified Lentz evaluation of the continued fraction for Q(s, x).
double upper_continued_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxTerms; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            return gamma_prefactor(s, x) * h;
        }
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge", x, x);
}

void check_incomplete_args(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw DomainError("incomplete gamma: shape must be positive, got " + std::to_string(s));
    }
    if (!(x >= 0.0)) {
        throw DomainError("incomplete gamma: x must be nonnegative, got " + std::to_string(x));
    }
}

}  // namespace

void Tolerances::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter < 1) {
        throw DomainError("Tolerances: abs_tol > 0, rel_tol > 0 and max_iter >= 1 required");
    }
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_gamma: x must be positive, got " + std::to_string(x));
    }
    if (std::isinf(x)) return x;
    // Lanczos approximation, g = 671/128, 14 terms.
    static constexpr std::array<double, 14> cof = {
        57.1562356658629235,      -59.5979603554754912,     14.1360979747417471,
        -0.491913816097620199,    .339946499848118887e-4,   .465236289270485756e-4,
        -.983744753048795646e-4,  .158088703224912494e-3,   -.210264441724104883e-3,
        .217439618115212643e-3,   -.164318106536763890e-3,  .844182239838527433e-4,
        -.261908384015814087e-4,  .368991826595316234e-5};
    double y = x;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (double c : cof) ser += c / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

double reg_lower_gamma(double s, double x) {
    check_incomplete_args(s, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) return lower_series(s, x);
    return 1.0 - upper_continued_fraction(s, x);
}

double reg_upper_gamma(double s, double x) {
    check_incomplete_args(s, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) return 1.0 - lower_series(s, x);
    return upper_continued_fraction(s, x);
}

double gamma_quantile(double shape, double scale, double rho, const Tolerances& tol) {
    tol.validate();
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw DomainError("gamma_quantile: shape and scale must be positive");
    }
    if (!(rho > 0.0 && rho < 1.0)) {
        throw DomainError("gamma_quantile: rho must lie in (0,1), got " + std::to_string(rho));
    }

    // Work on the standardized variable x = t / scale. The residual is taken
    // on whichever tail is smaller so that rho close to 1 keeps its precision.
    const bool upper = rho > 0.5;
    const double target = upper ? 1.0 - rho : rho;
    auto residual = [&](double x) {
        return upper ? target - reg_upper_gamma(shape, x) : reg_lower_gamma(shape, x) - target;
    };

    double lo = 0.0;
    double hi = shape + 40.0 * std::sqrt(shape) + 40.0;

    // Wilson-Hilferty start, falling back to the small-x expansion P ~ x^s / Gamma(s+1).
    const double z = probit(rho);
    const double wh = 1.0 - 1.0 / (9.0 * shape) + z / (3.0 * std::sqrt(shape));
    double x = shape * wh * wh * wh;
    if (!(x > 0.0) || !std::isfinite(x) || shape < 1.0) {
        const double small = std::exp((std::log(rho) + log_gamma(shape + 1.0)) / shape);
        if (!(x > 0.0) || !std::isfinite(x) || small < x) x = small;
    }
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

    const double log_gamma_shape = log_gamma(shape);
    double r = residual(x);
    for (int it = 0; it < tol.max_iter; ++it) {
        if (r == 0.0) return x * scale;
        if (r < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const double pdf = std::exp((shape - 1.0) * std::log(x) - x - log_gamma_shape);
        double next = x - r / pdf;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const bool step_converged = std::abs(next - x) <= 4.0 * kEps * next;
        x = next;
        r = residual(x);
        if (step_converged || hi - lo <= 4.0 * kEps * hi) {
            if (std::abs(r) <= tol.abs_tol) return x * scale;
        }
    }
    if (std::abs(r) <= tol.abs_tol) return x * scale;
    throw ConvergenceError("gamma_quantile: no convergence after " + std::to_string(tol.max_iter) +
                               " iterations",
                           lo * scale, hi * scale);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double probit(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) {
        throw DomainError("probit: rho must lie in (0,1), got " + std::to_string(rho));
    }
    if (rho > 0.5) return -probit(1.0 - rho);

    // Acklam's rational approximation (relative error ~1e-9) on the lower half.
    static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                                -2.759285104469687e+02, 1.383577518672690e+02,
                                                -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                                -1.556989798598866e+02, 6.680131188771972e+01,
                                                -1.328068155288572e+01};
    static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                                -2.400758277161838e+00, -2.549732539343734e+00,
                                                4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                                2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (rho < p_low) {
        const double q = std::sqrt(-2.0 * std::log(rho));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        const double q = rho - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    // One Halley step on the normal CDF.
    const double e = normal_cdf(x) - rho;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double log_binomial_coefficient(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("log_binomial_coefficient: need 0 <= k <= n");
    }
    if (k == 0 || k == n) return 0.0;
    return log_gamma(static_cast<double>(n) + 1.0) - log_gamma(static_cast<double>(k) + 1.0) -
           log_gamma(static_cast<double>(n - k) + 1.0);
}

namespace {

void check_binomial_args(std::int64_t n, double p) {
    if (n < 0) throw DomainError("binomial: n must be nonnegative");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial: p must lie in [0,1]");
}

// Sum of Binomial(n, p) pmf over j in [from, to], p strictly inside (0,1).
double binomial_pmf_sum(std::int64_t n, double p, std::int64_t from, std::int64_t to) {
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    double sum = 0.0;
    for (std::int64_t j = from; j <= to; ++j) {
        sum += std::exp(log_binomial_coefficient(n, j) + static_cast<double>(j) * log_p +
                        static_cast<double>(n - j) * log_q);
    }
    return sum;
}

}  // namespace

double binomial_upper_tail(std::int64_t n, double p, std::int64_t m) {
    check_binomial_args(n, p);
    if (m <= 0) return 1.0;
    if (m > n) return 0.0;
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    return std::min(1.0, binomial_pmf_sum(n, p, m, n));
}

double binomial_lower_tail(std::int64_t n, double p, std::int64_t m) {
    check_binomial_args(n, p);
    if (m < 0) return 0.0;
    if (m >= n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;
    return std::min(1.0, binomial_pmf_sum(n, p, 0, m));
}

namespace {

void check_nbinom_args(std::int64_t successes, double fail_prob) {
    if (successes < 1) throw DomainError("nbinom: number of successes must be >= 1");
    if (!(fail_prob >= 0.0 && fail_prob < 1.0)) {
        throw DomainError("nbinom: fail_prob must lie in [0,1)");
    }
}

}  // namespace

double nbinom_cdf(std::int64_t successes, double fail_prob, std::int64_t k) {
    check_nbinom_args(successes, fail_prob);
    if (k < successes) return 0.0;
    // N_tx <= k  <=>  at most k - N failures among the first k trials.
    return binomial_lower_tail(k, fail_prob, k - successes);
}

std::int64_t nbinom_quantile(std::int64_t successes, double fail_prob, double rho) {
    check_nbinom_args(successes, fail_prob);
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("nbinom_quantile: rho must lie in (0,1)");
    if (fail_prob == 0.0) return successes;

    // Locate a candidate by accumulating the pmf, then settle it against nbinom_cdf
    // so the result is consistent with that function to the last bit.
    const double n = static_cast<double>(successes);
    const double base = n * std::log1p(-fail_prob);
    const double log_f = std::log(fail_prob);
    const double mean = n / (1.0 - fail_prob);
    double cum = 0.0;
    std::int64_t k = successes;
    for (;; ++k) {
        const double term = std::exp(log_binomial_coefficient(k - 1, successes - 1) + base +
                                     static_cast<double>(k - successes) * log_f);
        cum += term;
        if (cum >= rho) break;
        if (static_cast<double>(k) > mean && term < 1e-17 * cum) break;
    }
    while (k > successes && nbinom_cdf(successes, fail_prob, k - 1) >= rho) --k;
    while (nbinom_cdf(successes, fail_prob, k) < rho) ++k;
    return k;
}

}  // namespace elo::specfun
