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

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "elo/errors.hpp"
#include "elo/time_scenario.hpp"

using namespace elo;
using namespace elo::deadline;

namespace {

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

TimeProblem problem(double T, double rho, double theta = 0.01) {
    TimeProblem p;
    p.T = T;
    p.rho = rho;
    p.theta = theta;
    return p;
}

double enumerate_failure(int N, int N_tx, double eps) {
    double fail = 0.0;
    for (unsigned mask = 0; mask < (1U << N_tx); ++mask) {
        const int lost = std::popcount(mask);
        if (N_tx - lost < N) fail += std::pow(eps, lost) * std::pow(1.0 - eps, N_tx - lost);
    }
    return fail;
}

}  // namespace

TEST_CASE("slot split limits and packet counts") {
    const TimeProblem p = problem(0.4, 0.999);
    CHECK(close_rel(alpha_max(p), 0.4158719655455735, 1e-12));
    CHECK_THROWS_AS(alpha_max(problem(0.2, 0.999)), Infeasible);
    CHECK(alpha_max(problem(1e6, 0.9)) > 0.9999);

    const TimeProblem q = problem(0.5, 0.9);
    CHECK(tx_count(0.3, q) == 500);
    CHECK(close_rel(comm_energy_time(0.3, q), 0.087444666812359923, 1e-12));
    TimeProblem tiny = q;
    tiny.T = 10.5 * packet_time(q.params.chan);
    CHECK(tx_count(0.0, tiny) == 10);
    CHECK(tx_count(0.95, tiny) == 0);
    CHECK(comm_energy_time(0.95, tiny) == 0.0);
    for (double a = 0.0; a < 0.9; a += 0.07) CHECK(tx_count(a, q) >= tx_count(a + 0.07, q));
}

TEST_CASE("packet-level decoding failure") {
    double worst = 0.0;
    for (double eps : {0.1, 0.5}) {
        for (int n_tx = 1; n_tx <= 16; ++n_tx) {
            for (int n = 1; n <= std::min(n_tx, 8); ++n) {
                worst = std::max(worst, std::abs(tx_failure(n, n_tx, eps) - enumerate_failure(n, n_tx, eps)));
            }
        }
    }
    CHECK(worst <= 1e-12);
    CHECK(close_rel(tx_failure(40, 40, 0.01), 1.0 - std::pow(0.99, 40), 1e-12));
    CHECK(tx_failure(5, 4, 0.01) == 1.0);
    CHECK(tx_failure(5, 9, 0.0) == 0.0);
    CHECK(close_rel(tx_failure(5, 7, 0.1), enumerate_failure(5, 7, 0.1), 1e-13));
    for (int n_tx = 5; n_tx < 30; ++n_tx) CHECK(tx_failure(5, n_tx + 1, 0.2) <= tx_failure(5, n_tx, 0.2));
}

TEST_CASE("compression failure, truncated mean and compression energy") {
    // Reference values: mpmath incomplete gamma and direct quadrature of the
    // conditional mean (tests/oracles/gen_oracles.py).
    struct Ref {
        double alpha, Q, f, T, eps_c, mean, energy;
    };
    const Ref refs[] = {
        {0.35, 1.2, 1.6e9, 0.4, 1.2879924583762009e-7, 0.010490881936823342, 0.0027501261271859409},
        {0.3, 1.36, 1.2e9, 0.4, 0.02254817091025686, 0.032211136947589347, 0.003781208520147887},
        {0.2, 1.45, 2.5e9, 0.5, 0.012450473060520844, 0.024164723840713518, 0.025108908903571873},
    };
    for (const auto& r : refs) {
        CAPTURE(r.Q);
        const TimeProblem p = problem(r.T, 0.9);
        CHECK(close_rel(compression_failure(r.alpha, r.Q, r.f, p), r.eps_c, 1e-10));
        CHECK(close_rel(truncated_comp_mean(r.alpha, r.Q, r.f, p), r.mean, 1e-10));
        CHECK(close_rel(comp_energy_time(r.alpha, r.Q, r.f, p), r.energy, 1e-10));
    }
}

TEST_CASE("truncation limits") {
    TimeProblem p = problem(0.4, 0.9);
    const auto& c = p.params.comp;
    CHECK(compression_failure(0.3, 1.0, 1e9, p) == 0.0);
    CHECK(compression_failure(0.0, 1.2, 1e9, p) == 1.0);
    CHECK(comp_energy_time(0.3, 1.0, 1e9, p) == 0.0);
    CHECK(comp_energy_time(0.0, 1.3, 1e9, p) == 0.0);

    p.T = 1e4;
    const GammaDist full = compression_time_dist(1.3, 1.6e9, c);
    CHECK(close_rel(truncated_comp_mean(0.5, 1.3, 1.6e9, p), full.mean(), 1e-12));
    CHECK(close_rel(comp_energy_time(0.5, 1.3, 1.6e9, p), compression_energy(1.6e9, 1.3, c), 1e-12));

    SUBCASE("shape 1 closed form") {
        TimeProblem e = problem(0.4, 0.9);
        e.params.comp.kappa = 1.0;
        const double scale = compression_time_dist(1.3, 1.6e9, e.params.comp).scale();
        const double w = 0.25 * 0.4;
        const double x = w / scale;
        CHECK(close_rel(truncated_comp_mean(0.25, 1.3, 1.6e9, e), scale - w * std::exp(-x) / (1.0 - std::exp(-x)), 1e-12));
    }
    SUBCASE("energy never exceeds the full-window draw") {
        TimeProblem q = problem(0.4, 0.9);
        for (double f : {0.8e9, 1.2e9, 2.5e9}) {
            for (double a : {0.01, 0.1, 0.3, 0.6}) {
                CHECK(comp_energy_time(a, 1.45, f, q) <= cpu_power(f, c) * a * q.T * (1.0 + 1e-15));
            }
        }
        q.params.comp.fc_min = 1e3;
        CHECK(close_rel(comp_energy_time(0.1, 1.45, 1e4, q), cpu_power(1e4, c) * 0.1 * q.T, 1e-6));
    }
    SUBCASE("literal argument form is selectable and differs") {
        TimeProblem l = problem(0.4, 0.9);
        l.literal_truncation = true;
        CHECK(truncated_comp_mean(0.3, 1.36, 1.2e9, l) != truncated_comp_mean(0.3, 1.36, 1.2e9, problem(0.4, 0.9)));
    }
}

TEST_CASE("monotonicity of the two reliability factors in alpha") {
    const TimeProblem p = problem(0.4, 0.9);
    for (double a = 0.02; a < 0.6; a += 0.02) {
        CHECK(compression_failure(a + 0.02, 1.3, 1.6e9, p) <= compression_failure(a, 1.3, 1.6e9, p));
        CHECK(tx_count(a + 0.02, p) <= tx_count(a, p));
    }
    for (double f = 0.8e9; f < 2.5e9; f += 0.1e9) {
        CHECK(compression_failure(0.3, 1.3, f + 0.1e9, p) <= compression_failure(0.3, 1.3, f, p));
    }
}

TEST_CASE("qaoi") {
    const TimeProblem p = problem(0.4, 0.9);
    CHECK(qaoi(0.0, p) == 0.4);
    CHECK(close_rel(qaoi(0.35, p), 0.54, 1e-15));
}

TEST_CASE("fc_opt is the reliability threshold") {
    const TimeProblem p = problem(0.4, 0.99);
    CHECK(fc_opt(0.3, 1.0, problem(0.4, 0.9)) == std::nullopt);  // 572 packets do not fit
    CHECK(fc_opt(0.1, 1.0, problem(0.5, 0.9)).value() == p.params.comp.fc_min);
    CHECK_FALSE(fc_opt(0.5, 1.2, p).has_value());

    const auto f = fc_opt(0.3, 1.36, p);
    REQUIRE(f);
    CHECK(success_probability(0.3, 1.36, *f, p) >= p.rho);
    CHECK(success_probability(0.3, 1.36, *f - p.fc_tol, p) < p.rho);

    // scan oracle: first frequency on a 10^4-point grid meeting rho
    const auto& c = p.params.comp;
    double scan = NAN;
    for (int i = 0; i <= 10000; ++i) {
        const double g = c.fc_min + (c.fc_max - c.fc_min) * i / 10000.0;
        if (success_probability(0.3, 1.36, g, p) >= p.rho) {
            scan = g;
            break;
        }
    }
    CHECK(std::abs(*f - scan) <= p.fc_tol + (c.fc_max - c.fc_min) / 10000.0);
}

TEST_CASE("grid solver") {
    const TimeProblem p = problem(0.4, 0.999, 0.02);
    const auto s = solve(p);
    CHECK(s.P_succ >= p.rho - 1e-12);
    CHECK(s.alpha <= alpha_max(p));
    CHECK(s.N_tx >= s.N);
    CHECK(s.energy() == doctest::Approx(s.E_comp + s.E_tx));
    CHECK(close_rel(s.energy(), 0.073341, 1e-4));

    SUBCASE("no grid point in a cramped slot") {
        CHECK_THROWS_AS(solve(problem(0.25, 0.999, 0.02)), Infeasible);
    }
    SUBCASE("refining the grid changes the optimum by under 2%") {
        const auto fine = solve(problem(0.4, 0.999, 0.01));
        CHECK(std::abs(fine.energy() - s.energy()) < 0.02 * s.energy());
    }
}

TEST_CASE("fronts") {
    TimeProblem base = problem(0.4, 0.9, 0.02);
    const std::vector<double> ts = {0.5, 0.4, 0.45, 0.4, 0.2};
    const auto lo = pareto_front(ts, 0.9, base);
    const auto hi = pareto_front(ts, 0.999, base);
    REQUIRE(lo.rows.size() == 4);
    CHECK_FALSE(lo.rows[0].solution.has_value());
    for (std::size_t i = 1; i < lo.rows.size(); ++i) {
        REQUIRE(lo.rows[i].solution);
        REQUIRE(hi.rows[i].solution);
        CHECK(hi.rows[i].solution->energy() >= lo.rows[i].solution->energy());
        if (i > 1) CHECK(lo.rows[i].solution->energy() <= lo.rows[i - 1].solution->energy());
    }
}
