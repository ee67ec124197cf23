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

// Computation side of the sensor: per-bit compression complexity, the
// Gamma-distributed compression time, the cubic CPU power law and the
// decompression latency multiplier at the base station. SI units throughout.

namespace elo {

struct CompressionParams {
    double D = 5e5;         ///< data-block size [bit]
    double kappa = 1.25;    ///< Gamma shape of the cycles-per-bit complexity
    double psi = 3.5;       ///< algorithm constant in E[X_c] = e^{psi Q} - e^{psi}
    double zeta = 0.05;     ///< decompression cycles as a fraction of compression cycles
    double fc_min = 0.8e9;  ///< [Hz]
    double fc_max = 2.5e9;  ///< [Hz]
    double Ps_max = 1.0;    ///< processing power at fc_max [W]
    double f_b = 2.5e9;     ///< base-station CPU frequency [Hz]
    double Q_max = 1.5;     ///< largest achievable lossless compression ratio

    void validate() const;
    bool operator==(const CompressionParams&) const = default;
};

/// Gamma(shape, scale) law. scale == 0 encodes the point mass at zero used
/// for Q = 1, where there is nothing to compress.
class GammaDist {
public:
    GammaDist(double shape, double scale);

    static GammaDist point_mass_at_zero(double shape);

    double shape() const noexcept { return shape_; }
    double scale() const noexcept { return scale_; }
    bool degenerate() const noexcept { return scale_ == 0.0; }

    double mean() const noexcept { return shape_ * scale_; }
    double variance() const noexcept { return shape_ * scale_ * scale_; }

    double cdf(double t) const;
    /// Pr[T > t], accurate deep into the tail.
    double survival(double t) const;
    double quantile(double rho) const;

private:
    struct Degenerate {};
    GammaDist(double shape, Degenerate) noexcept : shape_(shape), scale_(0.0) {}

    double shape_;
    double scale_;
};

/// E[X_c] = e^{psi Q} - e^{psi} cycles per bit; Q must lie in [1, Q_max].
double mean_complexity(double Q, const CompressionParams& p);

/// T_c ~ Gamma(kappa, E[X_c] D / (kappa f_c)).
GammaDist compression_time_dist(double Q, double f_c, const CompressionParams& p);

/// P_c(f_c) = Ps_max (f_c / fc_max)^3.
double cpu_power(double f_c, const CompressionParams& p);

/// Mean compression energy P_c(f_c) E[T_c].
double compression_energy(double f_c, double Q, const CompressionParams& p);

/// 1 + zeta f_c / f_b: total compression-plus-decompression time per unit of T_c.
double decompression_scale(double f_c, const CompressionParams& p);

}  // namespace elo
