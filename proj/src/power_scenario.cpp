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

#include "elo/power_scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "elo/errors.hpp"
#include "elo/specfun.hpp"

namespace elo::power {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelSlack = 1e-12;

// Ps_max D / fc_max^3: compression energy per unit of m(Q) f_c^2.
double energy_coefficient(const CompressionParams& c) {
    return c.Ps_max * c.D / (c.fc_max * c.fc_max * c.fc_max);
}

// Energy left for compression after sending D/Q bits, minus what the
// slowest admissible clock would need; concave in Q.
double budget_slack(double Q, const PowerProblem& prob) {
    const auto& c = prob.params.comp;
    const double m = Q == 1.0 ? 0.0 : mean_complexity(Q, c);
    return prob.E_max - prob.comm_energy_constant() / Q -
           c.fc_min * c.fc_min * m * energy_coefficient(c);
}

template <typename F>
double golden_section_min(F&& f, double a, double b, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Root of a function that is >= 0 at `good` and < 0 at `bad`; returns a point
// on the feasible side within ~1e-15 of the root.
template <typename F>
double bisect_boundary(F&& f, double good, double bad) {
    for (int i = 0; i < 200 && std::abs(bad - good) > 1e-15 * std::abs(good); ++i) {
        const double mid = 0.5 * (good + bad);
        if (f(mid) >= 0.0) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    return good;
}

}  // namespace

void PowerProblem::validate() const {
    params.validate();
    if (!(E_max > 0.0)) throw DomainError("E_max must be > 0");
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0,1)");
    if (!(theta > 0.0)) throw DomainError("theta must be > 0");
}

double PowerProblem::comm_energy_constant() const {
    const auto& ch = params.chan;
    return params.comp.D / ((1.0 - ch.eps) * energy_efficiency(ch));
}

FcStar fc_star(double Q, const PowerProblem& prob) {
    const auto& c = prob.params.comp;
    const double m = mean_complexity(Q, c);
    if (m == 0.0) {
        throw DegenerateQ("fc_star: Q = 1 leaves nothing to compress");
    }
    const double remaining = prob.E_max - prob.comm_energy_constant() / Q;
    if (!(remaining > 0.0)) {
        throw Infeasible("fc_star: communication energy at Q = " + std::to_string(Q) +
                         " already exceeds E_max = " + std::to_string(prob.E_max));
    }
    const double f = std::sqrt(remaining / (m * energy_coefficient(c)));
    const double clipped = std::clamp(f, c.fc_min, c.fc_max);
    return {f, clipped, clipped != f};
}

LatencyBound latency_quantile_bound(double Q, double f_c, const PowerProblem& prob) {
    const auto& c = prob.params.comp;
    const auto& ch = prob.params.chan;

    double comp = 0.0;
    if (mean_complexity(Q, c) > 0.0) {
        comp = compression_time_dist(Q, f_c, c).quantile(prob.rho);
        if (prob.include_decompression) comp *= decompression_scale(f_c, c);
    }

    const double n = num_packets(Q, c.D, ch.n_p, true);
    const double t_p = packet_time(ch);
    const double q = 1.0 - ch.eps;
    const double tx =
        n * t_p / q + specfun::probit(prob.rho) * t_p * std::sqrt(ch.eps * n) / q;
    return {comp, tx};
}

double beta_of_q(double Q, const PowerProblem& prob) {
    const auto& c = prob.params.comp;
    const double remaining = prob.E_max - prob.comm_energy_constant() / Q;
    if (!(remaining > 0.0)) {
        throw Infeasible("beta_of_q: no energy left for compression at Q = " + std::to_string(Q));
    }
    const double m = mean_complexity(Q, c);
    const double K = std::sqrt(energy_coefficient(c)) / c.kappa;
    return K * std::sqrt(m * m * m / remaining);
}

double convexity_quadratic(double Q, const PowerProblem& prob) {
    const double psi = prob.params.comp.psi;
    return 3.0 * psi * psi * std::exp(psi) * Q * Q - 2.0 * Q * prob.E_max +
           prob.comm_energy_constant();
}

bool convexity_condition(double Q, const PowerProblem& prob) {
    return convexity_quadratic(Q, prob) >= 0.0;
}

bool convexity_certified_on(double lo, double hi, const PowerProblem& prob) {
    // Upward parabola: its minimum over [lo, hi] sits at the clamped vertex.
    const double psi = prob.params.comp.psi;
    const double vertex = prob.E_max / (3.0 * psi * psi * std::exp(psi));
    return convexity_condition(std::clamp(vertex, lo, hi), prob);
}

std::optional<QRange> feasible_q_range(const PowerProblem& prob) {
    const double q_max = prob.params.comp.Q_max;
    auto slack = [&](double Q) { return budget_slack(Q, prob); };

    const double peak = golden_section_min([&](double Q) { return -slack(Q); }, 1.0, q_max, 1e-12);
    double best = peak;
    for (double q : {1.0, q_max}) {
        if (slack(q) > slack(best)) best = q;
    }
    if (slack(best) < 0.0) return std::nullopt;

    const double lo = slack(1.0) >= 0.0 ? 1.0 : bisect_boundary(slack, best, 1.0);
    const double hi = slack(q_max) >= 0.0 ? q_max : bisect_boundary(slack, best, q_max);
    return QRange{lo, hi};
}

double operating_frequency(double Q, const PowerProblem& prob) {
    if (mean_complexity(Q, prob.params.comp) == 0.0) return 0.0;
    return fc_star(Q, prob).clipped;
}

double objective(double Q, const PowerProblem& prob) {
    const auto& c = prob.params.comp;
    if (mean_complexity(Q, c) == 0.0) {
        if (prob.comm_energy_constant() > prob.E_max * (1.0 + kRelSlack)) return kInf;
        return latency_quantile_bound(Q, 0.0, prob).total();
    }
    if (!(prob.E_max - prob.comm_energy_constant() / Q > 0.0)) return kInf;
    const FcStar f = fc_star(Q, prob);
    if (f.unclipped < c.fc_min * (1.0 - kRelSlack)) return kInf;
    return latency_quantile_bound(Q, f.clipped, prob).total();
}

PowerSolution solve(const PowerProblem& prob, std::span<const double> hints) {
    prob.validate();
    const auto range = feasible_q_range(prob);
    if (!range) {
        throw Infeasible("power scenario: E_max = " + std::to_string(prob.E_max) +
                         " J cannot be met for any Q in [1, Q_max]");
    }
    const double lo = range->lo;
    const double hi = range->hi;
    auto g = [&](double Q) { return objective(Q, prob); };

    const bool certified = convexity_certified_on(lo, hi, prob);
    std::vector<double> candidates = {lo, hi};

    if (hi - lo > prob.theta) {
        if (certified) {
            // Binary search on the sign of a central difference.
            double a = lo;
            double b = hi;
            const double h = 0.25 * prob.theta;
            while (b - a > prob.theta) {
                const double mid = 0.5 * (a + b);
                if (g(mid + h) - g(mid - h) > 0.0) {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            candidates.insert(candidates.end(), {a, b, 0.5 * (a + b)});
            // Polish inside the final bracket; cheap and removes the theta-sized bias.
            candidates.push_back(golden_section_min(g, std::max(lo, a - prob.theta),
                                                    std::min(hi, b + prob.theta), 1e-10));
        } else {
            // No certificate: scan at resolution theta, then refine around the best cell.
            const auto steps = static_cast<long>(std::ceil((hi - lo) / prob.theta));
            long best_i = 0;
            double best_v = kInf;
            for (long i = 0; i <= steps; ++i) {
                const double Q = std::min(hi, lo + static_cast<double>(i) * prob.theta);
                const double v = g(Q);
                if (v < best_v) {
                    best_v = v;
                    best_i = i;
                }
            }
            const double a = std::max(lo, lo + static_cast<double>(best_i - 1) * prob.theta);
            const double b = std::min(hi, lo + static_cast<double>(best_i + 1) * prob.theta);
            candidates.push_back(std::min(hi, lo + static_cast<double>(best_i) * prob.theta));
            candidates.push_back(golden_section_min(g, a, b, 0.1 * prob.theta));
        }
    } else {
        candidates.push_back(0.5 * (lo + hi));
    }
    for (double q : hints) {
        if (q >= 1.0 && q <= prob.params.comp.Q_max && std::isfinite(g(q))) candidates.push_back(q);
    }

    double q_best = candidates.front();
    double v_best = g(q_best);
    for (double q : candidates) {
        const double v = g(q);
        if (v < v_best || (v == v_best && q < q_best)) {
            v_best = v;
            q_best = q;
        }
    }

    const auto& c = prob.params.comp;
    const auto& ch = prob.params.chan;
    PowerSolution s;
    s.Q_star = q_best;
    s.convexity_certified = certified;
    s.uncompressed = mean_complexity(q_best, c) == 0.0;
    if (s.uncompressed) {
        s.fc_star = 0.0;
        s.E_comp = 0.0;
    } else {
        const FcStar f = fc_star(q_best, prob);
        s.fc_star = f.clipped;
        s.clipped = f.was_clipped;
        s.E_comp = compression_energy(f.clipped, q_best, c);
    }
    const LatencyBound bound = latency_quantile_bound(q_best, s.fc_star, prob);
    s.comp_quantile = bound.comp_quantile;
    s.tx_quantile = bound.tx_quantile;
    s.latency_bound = bound.total();
    s.E_tx = comm_energy(num_packets(q_best, c.D, ch.n_p, true), ch);

    const auto n_ceil = num_packets_ceil(q_best, c.D, ch.n_p);
    s.exact_tx_quantile =
        static_cast<double>(specfun::nbinom_quantile(n_ceil, ch.eps, prob.rho)) * packet_time(ch);
    s.exact_latency = s.comp_quantile + s.exact_tx_quantile;
    return s;
}

PowerFront pareto_front(std::span<const double> E_max_list, double rho,
                        const PowerProblem& prob_template) {
    if (E_max_list.empty()) throw DomainError("pareto_front: empty E_max list");
    std::vector<double> budgets(E_max_list.begin(), E_max_list.end());
    std::sort(budgets.begin(), budgets.end());
    budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());

    PowerProblem base = prob_template;
    base.rho = rho;
    PowerFront front{rho, base.comm_energy_constant(),
                     latency_quantile_bound(1.0, 0.0, base).total(), {}};
    front.rows.reserve(budgets.size());
    std::vector<double> hint;
    for (double e : budgets) {
        PowerProblem p = base;
        p.E_max = e;
        try {
            PowerSolution s = solve(p, hint);
            hint.assign(1, s.Q_star);
            front.rows.push_back({e, s, {}});
        } catch (const Infeasible& ex) {
            front.rows.push_back({e, std::nullopt, ex.what()});
        }
    }
    return front;
}

}  // namespace elo::power
