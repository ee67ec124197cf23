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

#include "elo/comp_model.hpp"

#include <cmath>
#include <string>

#include "elo/errors.hpp"
#include "elo/specfun.hpp"

namespace elo {

namespace {

// Grid points computed as 1 + i*theta may overshoot Q_max by an ulp or two.
constexpr double kQSlack = 1e-12;

void check_q(double Q, const CompressionParams& p) {
    if (!(Q >= 1.0 && Q <= p.Q_max * (1.0 + kQSlack))) {
        throw DomainError("compression ratio Q must lie in [1, " + std::to_string(p.Q_max) +
                          "], got " + std::to_string(Q));
    }
}

void check_fc(double f_c) {
    if (!(f_c > 0.0) || !std::isfinite(f_c)) {
        throw DomainError("CPU frequency must be positive, got " + std::to_string(f_c));
    }
}

}  // namespace

void CompressionParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw DomainError(what);
    };
    require(D > 0.0, "D must be > 0");
    require(kappa > 0.0, "kappa must be > 0");
    require(psi > 0.0, "psi must be > 0");
    require(zeta > 0.0 && zeta <= 1.0, "zeta must lie in (0,1]");
    require(fc_min > 0.0 && fc_min < fc_max, "need 0 < fc_min < fc_max");
    require(Ps_max > 0.0, "Ps_max must be > 0");
    require(f_b > 0.0, "f_b must be > 0");
    require(Q_max > 1.0, "Q_max must be > 1");
}

GammaDist::GammaDist(double shape, double scale) : shape_(shape), scale_(scale) {
    if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("GammaDist: shape and scale must be positive");
    }
}

GammaDist GammaDist::point_mass_at_zero(double shape) {
    if (!(shape > 0.0)) throw DomainError("GammaDist: shape must be positive");
    return GammaDist(shape, Degenerate{});
}

double GammaDist::cdf(double t) const {
    if (t < 0.0) return 0.0;
    if (degenerate()) return 1.0;
    return specfun::reg_lower_gamma(shape_, t / scale_);
}

double GammaDist::survival(double t) const {
    if (t < 0.0) return 1.0;
    if (degenerate()) return 0.0;
    return specfun::reg_upper_gamma(shape_, t / scale_);
}

double GammaDist::quantile(double rho) const {
    if (degenerate()) {
        if (!(rho > 0.0 && rho < 1.0)) throw DomainError("quantile: rho must lie in (0,1)");
        return 0.0;
    }
    return specfun::gamma_quantile(shape_, scale_, rho);
}

double mean_complexity(double Q, const CompressionParams& p) {
    check_q(Q, p);
    return std::exp(p.psi * Q) - std::exp(p.psi);
}

GammaDist compression_time_dist(double Q, double f_c, const CompressionParams& p) {
    check_fc(f_c);
    const double m = mean_complexity(Q, p);
    if (m == 0.0) return GammaDist::point_mass_at_zero(p.kappa);
    return GammaDist(p.kappa, m * p.D / (p.kappa * f_c));
}

double cpu_power(double f_c, const CompressionParams& p) {
    check_fc(f_c);
    const double r = f_c / p.fc_max;
    return p.Ps_max * r * r * r;
}

double compression_energy(double f_c, double Q, const CompressionParams& p) {
    return cpu_power(f_c, p) * compression_time_dist(Q, f_c, p).mean();
}

double decompression_scale(double f_c, const CompressionParams& p) {
    check_fc(f_c);
    return 1.0 + p.zeta * f_c / p.f_b;
}

}  // namespace elo
