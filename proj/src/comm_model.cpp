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

#include "elo/comm_model.hpp"

#include <cmath>
#include <string>

#include "elo/errors.hpp"

namespace elo {

void ChannelParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw DomainError(what);
    };
    require(P_tx > 0.0, "P_tx must be > 0");
    require(B > 0.0, "B must be > 0");
    require(d > 0.0, "d must be > 0");
    require(ell > 0.0, "ell must be > 0");
    require(N0 > 0.0, "N0 must be > 0");
    require(K0 > 0.0, "K0 must be > 0");
    require(nu > 0.0, "nu must be > 0");
    require(lambda_coef > 0.0, "lambda must be > 0");
    require(eps > 0.0 && eps < 1.0, "eps must lie in (0,1)");
    require(n_p > 0, "n_p must be a positive integer");
}

double avg_snr(const ChannelParams& c) {
    return c.K0 * c.P_tx / (std::pow(c.d, c.ell) * c.N0 * c.B);
}

double snr_threshold(const ChannelParams& c) { return -avg_snr(c) * std::log1p(-c.eps); }

double outage_rate(const ChannelParams& c) {
    return c.B * std::log1p(snr_threshold(c)) / std::log(2.0);
}

double packet_time(const ChannelParams& c) { return static_cast<double>(c.n_p) / outage_rate(c); }

double energy_efficiency(const ChannelParams& c) {
    const double r = outage_rate(c);
    return r / (c.P_tx + c.nu * c.B + c.lambda_coef * r);
}

double num_packets(double Q, double D, std::int64_t n_p, bool continuous) {
    if (!(Q >= 1.0)) throw DomainError("num_packets: Q must be >= 1, got " + std::to_string(Q));
    if (!(D > 0.0) || n_p <= 0) throw DomainError("num_packets: D and n_p must be positive");
    const double n = D / (Q * static_cast<double>(n_p));
    if (continuous) return n;
    // Q values built on a grid carry rounding noise; 400.0000000001 packets is 400.
    return std::ceil(n * (1.0 - 1e-12));
}

std::int64_t num_packets_ceil(double Q, double D, std::int64_t n_p) {
    return static_cast<std::int64_t>(num_packets(Q, D, n_p, false));
}

TxTimeStats tx_time_stats(double N, double t_p, double eps) {
    if (!(N > 0.0)) throw DomainError("tx_time_stats: N must be positive");
    if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("tx_time_stats: eps must lie in [0,1)");
    const double q = 1.0 - eps;
    return {N, t_p, N * t_p / q, N * t_p * t_p * eps / (q * q)};
}

TxTimeStats tx_time_stats(double N, const ChannelParams& c) {
    return tx_time_stats(N, packet_time(c), c.eps);
}

double comm_energy(double N, const ChannelParams& c) {
    if (!(N >= 0.0)) throw DomainError("comm_energy: N must be nonnegative");
    return N * static_cast<double>(c.n_p) / ((1.0 - c.eps) * energy_efficiency(c));
}

}  // namespace elo
