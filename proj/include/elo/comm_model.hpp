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

#include <cstdint>

namespace elo {

/// Uplink channel under Rayleigh block fading. Linear SI units; dB/dBm values
/// are converted once when a configuration is parsed.
struct ChannelParams {
    double P_tx = 0.25;            ///< transmit power [W]
    double B = 1e8;                ///< bandwidth [Hz]
    double d = 1000.0;             ///< sensor-BS distance [m]
    double ell = 2.0;              ///< path-loss exponent
    double N0 = 5.011872336272715e-19;  ///< noise PSD [W/Hz] (-153 dBm/Hz)
    double K0 = 1.9952623149688786e-3;  ///< Friis parameter, linear (-27 dB)
    double nu = 1e-14;             ///< ADC coefficient [J]
    double lambda_coef = 1e-15;    ///< coding coefficient [J/bit]
    double eps = 1e-3;             ///< target outage / per-packet loss probability
    std::int64_t n_p = 1000;       ///< packet size [bit]

    void validate() const;
    bool operator==(const ChannelParams&) const = default;
};

struct TxTimeStats {
    double N;         ///< packet count (may be fractional in the relaxed model)
    double t_p;       ///< per-packet airtime [s]
    double mean;      ///< [s]
    double variance;  ///< [s^2]
};

/// gamma_0 = K0 P_tx / (d^ell N0 B).
double avg_snr(const ChannelParams& c);

/// gamma_th = -gamma_0 ln(1 - eps): the threshold whose Exp(1)-gain outage is eps.
double snr_threshold(const ChannelParams& c);

/// R(eps) = B log2(1 + gamma_th) [bit/s].
double outage_rate(const ChannelParams& c);

/// t_p = n_p / R(eps).
double packet_time(const ChannelParams& c);

/// eta = R / (P_tx + nu B + lambda R) [bit/J].
double energy_efficiency(const ChannelParams& c);

/// D / (Q n_p), ceiled unless `continuous`.
double num_packets(double Q, double D, std::int64_t n_p, bool continuous);

/// Integer packet count ceil(D / (Q n_p)).
std::int64_t num_packets_ceil(double Q, double D, std::int64_t n_p);

/// Moments of T_tx = t_p * NegBin(N, eps) under persistent ARQ.
TxTimeStats tx_time_stats(double N, const ChannelParams& c);
TxTimeStats tx_time_stats(double N, double t_p, double eps);

/// Mean energy to deliver N packets with retransmissions: N n_p / ((1 - eps) eta).
double comm_energy(double N, const ChannelParams& c);

}  // namespace elo
