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

#include <cmath>

#include "doctest.h"
#include "elo/errors.hpp"
#include "elo/params.hpp"

using namespace elo;

namespace {
bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }
}  // namespace

TEST_CASE("mean complexity and compression time") {
    const CompressionParams p;
    CHECK(mean_complexity(1.0, p) == 0.0);
    CHECK(close_rel(mean_complexity(1.2, p), std::exp(4.2) - std::exp(3.5), 1e-15));
    CHECK_THROWS_AS(mean_complexity(0.99, p), DomainError);
    CHECK_THROWS_AS(mean_complexity(1.6, p), DomainError);

    const GammaDist t = compression_time_dist(1.3, 1.6e9, p);
    CHECK(t.shape() == 1.25);
    CHECK(close_rel(t.mean(), mean_complexity(1.3, p) * p.D / 1.6e9, 1e-14));
    CHECK(close_rel(t.variance(), t.mean() * t.scale(), 1e-14));
    CHECK(compression_time_dist(1.0, 1.6e9, p).degenerate());
    CHECK(compression_time_dist(1.0, 1.6e9, p).quantile(0.9) == 0.0);
    CHECK_THROWS_AS(compression_time_dist(1.2, 0.0, p), DomainError);
}

TEST_CASE("gamma law accessors") {
    const GammaDist g(2.0, 3.0);
    CHECK(g.cdf(-1.0) == 0.0);
    CHECK(close_rel(g.cdf(3.0), 1.0 - 2.0 * std::exp(-1.0), 1e-14));
    CHECK(close_rel(g.survival(30.0), 11.0 * std::exp(-10.0), 1e-12));
    CHECK(close_rel(g.cdf(g.quantile(0.75)), 0.75, 1e-12));
    CHECK_THROWS_AS(GammaDist(0.0, 1.0), DomainError);
    const auto z = GammaDist::point_mass_at_zero(1.25);
    CHECK(z.cdf(0.0) == 1.0);
    CHECK(z.survival(0.0) == 0.0);
    CHECK(z.mean() == 0.0);
}

TEST_CASE("power law and decompression factor") {
    const CompressionParams p;
    CHECK(cpu_power(p.fc_max, p) == p.Ps_max);
    CHECK(close_rel(cpu_power(1.25e9, p), 0.125, 1e-15));
    CHECK(close_rel(decompression_scale(2.5e9, p), 1.05, 1e-15));
    CHECK(close_rel(compression_energy(1.6e9, 1.3, p),
                    cpu_power(1.6e9, p) * compression_time_dist(1.3, 1.6e9, p).mean(), 1e-15));
    CHECK(compression_energy(1.6e9, 1.0, p) == 0.0);
}

TEST_CASE("channel quantities against reference values") {
    // tests/oracles/gen_oracles.py
    const ChannelParams c;
    CHECK(close_rel(avg_snr(c), 9.9526792638374436, 1e-13));
    CHECK(close_rel(snr_threshold(c), 0.0099576589235192791, 1e-13));
    CHECK(close_rel(outage_rate(c), 1429481.1252808418, 1e-13));
    CHECK(close_rel(packet_time(c), 0.00069955453228075034, 1e-13));
    CHECK(close_rel(energy_efficiency(c), 5717901.5968224511, 1e-13));
    CHECK(close_rel(comm_energy(500.0, c), 0.087532199011371295, 1e-13));
}

TEST_CASE("outage threshold yields the target outage under exponential gain") {
    ChannelParams c;
    for (double eps : {1e-4, 1e-3, 0.1, 0.5}) {
        c.eps = eps;
        CHECK(close_rel(1.0 - std::exp(-snr_threshold(c) / avg_snr(c)), eps, 1e-12));
    }
}

TEST_CASE("packet counts and transmission time moments") {
    CHECK(num_packets(1.2, 5e5, 1000, true) == doctest::Approx(416.6666666666667));
    CHECK(num_packets(1.2, 5e5, 1000, false) == 417.0);
    CHECK(num_packets_ceil(1.25, 5e5, 1000) == 400);
    CHECK(num_packets_ceil(1.0 + 25 * 0.01, 5e5, 1000) == 400);
    CHECK_THROWS_AS(num_packets(0.5, 5e5, 1000, true), DomainError);

    const auto s = tx_time_stats(400.0, 0.001, 0.1);
    CHECK(close_rel(s.mean, 400 * 0.001 / 0.9, 1e-15));
    CHECK(close_rel(s.variance, 400 * 1e-6 * 0.1 / 0.81, 1e-15));
    const auto z = tx_time_stats(10.0, 0.5, 0.0);
    CHECK(z.variance == 0.0);
    CHECK(z.mean == 5.0);
}

TEST_CASE("parameter validation") {
    ChannelParams c;
    c.eps = 1.5;
    CHECK_THROWS_WITH_AS(c.validate(), "eps must lie in (0,1)", DomainError);
    CompressionParams p;
    p.fc_min = 3e9;
    CHECK_THROWS_AS(p.validate(), DomainError);
    CHECK_NOTHROW(SystemParams{}.validate());
}
