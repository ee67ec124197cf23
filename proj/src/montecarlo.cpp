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

#include "elo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "elo/errors.hpp"
#include "elo/specfun.hpp"

namespace elo::mc {

namespace {

// SplitMix64 finalizer; spreads (seed, stream) over the engine's seed space.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kBootstrapDomain = 1ULL << 63;

TrialRng trial_rng(const SimConfig& sim, std::int64_t trial) {
    const auto t = static_cast<std::uint64_t>(trial);
    if (sim.antithetic) return TrialRng(sim.seed, t / 2, (t & 1U) != 0);
    return TrialRng(sim.seed, t);
}

struct MeanSe {
    double mean;
    double se;
    double variance;
};

// Antithetic pairs are averaged first so the standard error sees independent units.
MeanSe mean_and_se(const std::vector<double>& x, bool antithetic) {
    const auto n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double variance = x.size() > 1 ? ss / (n - 1.0) : 0.0;

    if (!antithetic || x.size() < 4) return {mean, std::sqrt(variance / n), variance};
    const std::size_t pairs = x.size() / 2;
    double pss = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const double m = 0.5 * (x[2 * i] + x[2 * i + 1]);
        pss += (m - mean) * (m - mean);
    }
    const double pvar = pss / static_cast<double>(pairs - 1);
    return {mean, std::sqrt(pvar / static_cast<double>(pairs)), variance};
}

std::size_t quantile_index(double rho, std::size_t n) {
    const auto k = static_cast<std::size_t>(std::ceil(rho * static_cast<double>(n)));
    return std::min(n - 1, k == 0 ? 0 : k - 1);
}

}  // namespace

void SimConfig::validate() const {
    if (n_samples < 1) throw DomainError("n_samples must be >= 1");
    if (bootstrap_resamples < 2) throw DomainError("bootstrap_resamples must be >= 2");
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream, bool reflect)
    : engine_(mix64(seed ^ mix64(stream))), reflect_(reflect) {}

double TrialRng::uniform() {
    const double u = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    return reflect_ ? 1.0 - u : u;
}

double TrialRng::normal() {
    for (;;) {
        const double v1 = 2.0 * uniform() - 1.0;
        const double v2 = 2.0 * uniform() - 1.0;
        const double s = v1 * v1 + v2 * v2;
        if (s > 0.0 && s < 1.0) return v1 * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double TrialRng::gamma(double shape) {
    if (!(shape > 0.0)) throw DomainError("gamma sampler: shape must be > 0");
    if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::int64_t TrialRng::successes_before_failure(double p) {
    if (p >= 1.0) return 0;
    const double g = std::floor(std::log(uniform()) / std::log1p(-p));
    constexpr double kCap = static_cast<double>(std::numeric_limits<std::int64_t>::max() / 4);
    return static_cast<std::int64_t>(std::min(g, kCap));
}

std::uint64_t TrialRng::below(std::uint64_t n) {
    const auto k = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    return std::min(k, n - 1);
}

std::int64_t sample_attempts(std::int64_t successes, double eps, TrialRng& rng) {
    if (eps <= 0.0) return successes;
    std::int64_t remaining = successes;
    std::int64_t failures = 0;
    for (;;) {
        const std::int64_t g = rng.successes_before_failure(eps);
        if (g >= remaining) return successes + failures;
        remaining -= g;
        ++failures;
    }
}

std::int64_t sample_losses(std::int64_t n, double eps, TrialRng& rng) {
    if (eps <= 0.0) return 0;
    std::int64_t pos = 0;
    std::int64_t losses = 0;
    for (;;) {
        pos += rng.successes_before_failure(eps);
        if (pos >= n) return losses;
        ++losses;
        ++pos;
    }
}

LatencySummary sample_latency(double Q, double f_c, const power::PowerProblem& prob,
                              const SimConfig& sim, std::span<const double> rhos) {
    sim.validate();
    for (double r : rhos) {
        if (!(r > 0.0 && r < 1.0)) throw DomainError("sample_latency: rho must lie in (0,1)");
    }
    const auto& c = prob.params.comp;
    const auto& ch = prob.params.chan;
    const GammaDist dist = compression_time_dist(Q, f_c, c);
    const double factor = prob.include_decompression ? decompression_scale(f_c, c) : 1.0;
    const auto n_packets = num_packets_ceil(Q, c.D, ch.n_p);
    const double t_p = packet_time(ch);

    const auto n = static_cast<std::size_t>(sim.n_samples);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        TrialRng rng = trial_rng(sim, static_cast<std::int64_t>(i));
        const double tc = dist.degenerate() ? 0.0 : dist.scale() * rng.gamma(dist.shape());
        t[i] = factor * tc + t_p * static_cast<double>(sample_attempts(n_packets, ch.eps, rng));
    }

    const MeanSe m = mean_and_se(t, sim.antithetic);
    LatencySummary out{sim.n_samples, m.mean, m.se, m.variance, {}};

    std::sort(t.begin(), t.end());
    const auto resamples = static_cast<std::size_t>(sim.bootstrap_resamples);
    std::vector<std::vector<double>> boot(rhos.size(), std::vector<double>(resamples));
    std::vector<std::uint32_t> counts(n);
    for (std::size_t r = 0; r < resamples; ++r) {
        TrialRng rng(sim.seed, kBootstrapDomain + r);
        std::fill(counts.begin(), counts.end(), 0U);
        for (std::size_t i = 0; i < n; ++i) ++counts[rng.below(n)];
        for (std::size_t q = 0; q < rhos.size(); ++q) {
            const std::size_t target = quantile_index(rhos[q], n);
            std::size_t cum = 0;
            std::size_t idx = 0;
            for (; idx < n; ++idx) {
                cum += counts[idx];
                if (cum > target) break;
            }
            boot[q][r] = t[std::min(idx, n - 1)];
        }
    }
    for (std::size_t q = 0; q < rhos.size(); ++q) {
        const MeanSe b = mean_and_se(boot[q], false);
        out.quantiles.push_back({rhos[q], t[quantile_index(rhos[q], n)], std::sqrt(b.variance)});
    }
    return out;
}

SlotSummary simulate_slot(double alpha, double Q, double f_c, const deadline::TimeProblem& prob,
                          const SimConfig& sim) {
    sim.validate();
    const auto& c = prob.params.comp;
    const auto& ch = prob.params.chan;
    const GammaDist dist = compression_time_dist(Q, f_c, c);
    const double window = alpha * prob.T;
    const double p_c = cpu_power(f_c, c);
    const auto n_needed = num_packets_ceil(Q, c.D, ch.n_p);
    const auto n_tx = deadline::tx_count(alpha, prob);
    const double e_tx = deadline::comm_energy_time(alpha, prob);

    const auto n = static_cast<std::size_t>(sim.n_samples);
    std::vector<double> ok(n);
    std::vector<double> energy(n);
    std::int64_t comp_failures = 0;
    for (std::size_t i = 0; i < n; ++i) {
        TrialRng rng = trial_rng(sim, static_cast<std::int64_t>(i));
        const double tc = dist.degenerate() ? 0.0 : dist.scale() * rng.gamma(dist.shape());
        const bool comp_failed = tc > window;
        if (comp_failed) ++comp_failures;
        double e = p_c * std::min(tc, window);
        bool decoded = false;
        if (!(comp_failed && sim.skip_tx_on_comp_failure)) {
            e += e_tx;
            decoded = n_tx >= n_needed && n_tx - sample_losses(n_tx, ch.eps, rng) >= n_needed;
        }
        ok[i] = (!comp_failed && decoded) ? 1.0 : 0.0;
        energy[i] = e;
    }
    const MeanSe s = mean_and_se(ok, sim.antithetic);
    const MeanSe e = mean_and_se(energy, sim.antithetic);
    return {sim.n_samples, s.mean, s.se, e.mean, e.se,
            static_cast<double>(comp_failures) / static_cast<double>(n)};
}

TruncationSummary sample_truncated_compression(double alpha, double Q, double f_c,
                                               const deadline::TimeProblem& prob,
                                               const SimConfig& sim) {
    sim.validate();
    const GammaDist dist = compression_time_dist(Q, f_c, prob.params.comp);
    const double window = alpha * prob.T;
    const auto n = static_cast<std::size_t>(sim.n_samples);

    std::vector<double> finished;
    finished.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        TrialRng rng = trial_rng(sim, static_cast<std::int64_t>(i));
        const double tc = dist.degenerate() ? 0.0 : dist.scale() * rng.gamma(dist.shape());
        if (tc < window) finished.push_back(tc);
    }
    const double nn = static_cast<double>(n);
    const double fail = 1.0 - static_cast<double>(finished.size()) / nn;
    TruncationSummary out{sim.n_samples, static_cast<std::int64_t>(finished.size()), fail,
                          std::sqrt(fail * (1.0 - fail) / nn), 0.0, 0.0};
    if (!finished.empty()) {
        // Selection breaks antithetic pairing, so treat survivors as independent.
        const MeanSe m = mean_and_se(finished, false);
        out.conditional_mean = m.mean;
        out.conditional_se = m.se;
    }
    return out;
}

double gaussian_approx_error(std::int64_t N, double eps, double t_p) {
    if (N < 1) throw DomainError("gaussian_approx_error: N must be >= 1");
    if (!(t_p > 0.0)) throw DomainError("gaussian_approx_error: t_p must be > 0");
    const auto stats = tx_time_stats(static_cast<double>(N), t_p, eps);
    const double sigma = std::sqrt(stats.variance);
    const auto k_hi = specfun::nbinom_quantile(N, eps, 0.9999);

    double worst = 0.0;
    for (std::int64_t k = N; k <= k_hi; ++k) {
        const double t = static_cast<double>(k) * t_p;
        double phi;
        if (sigma > 0.0) {
            phi = specfun::normal_cdf((t - stats.mean) / sigma);
        } else {
            phi = t < stats.mean ? 0.0 : (t > stats.mean ? 1.0 : 0.5);
        }
        worst = std::max(worst, std::abs(specfun::nbinom_cdf(N, eps, k) - phi));
    }
    return worst;
}

}  // namespace elo::mc
