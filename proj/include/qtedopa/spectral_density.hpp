// Copyright 2026 The qtedopa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "quadrature.hpp"
#include "units.hpp"

namespace qtedopa {

/// J(w) = 2 pi alpha w exp(-w / omega_c) theta(w).
struct OhmicExponential {
    double alpha = 0.25;
    double omega_c = 100.0;
};

struct SpectralDensity;

/// J_beta(w) = sign(w) J(|w|) / 2 (1 + coth(beta w / 2)) of `base`.
struct Thermalized {
    std::shared_ptr<const SpectralDensity> base;
    double beta = 0.0; ///< cm
};

/// Piecewise-linear J through (omega, value) samples; zero outside them.
struct Tabulated {
    std::vector<std::pair<double, double>> samples;
};

/// Bath spectral density with hard cutoffs [omega_min, omega_max] (cm^-1).
/// Immutable; copies share the base of a thermalized density.
struct SpectralDensity {
    std::variant<OhmicExponential, Thermalized, Tabulated> kind;
    double omega_min = 0.0;
    double omega_max = 1000.0;

    static SpectralDensity ohmic(double alpha, double omega_c, double omega_min,
                                 double omega_max) {
        require(omega_min < omega_max, "spectral density: omega_min must be < omega_max");
        require(omega_c > 0.0, "spectral density: omega_c must be > 0");
        require(alpha >= 0.0, "spectral density: alpha must be >= 0");
        return SpectralDensity{OhmicExponential{alpha, omega_c}, omega_min, omega_max};
    }

    static SpectralDensity tabulated(std::vector<std::pair<double, double>> samples) {
        require(!samples.empty(), "tabulated spectral density: no samples");
        for (std::size_t i = 1; i < samples.size(); ++i) {
            require(samples[i].first > samples[i - 1].first,
                    "tabulated spectral density: samples must be strictly increasing");
        }
        for (const auto &s : samples) {
            require(std::isfinite(s.first) && std::isfinite(s.second),
                    "tabulated spectral density: non-finite sample");
        }
        const double lo = samples.front().first;
        const double hi = samples.size() > 1 ? samples.back().first : lo + 1.0;
        return SpectralDensity{Tabulated{std::move(samples)}, lo, hi};
    }

    [[nodiscard]] bool is_thermalized() const {
        return std::holds_alternative<Thermalized>(kind);
    }

    /// J(w) including hard cutoffs.
    [[nodiscard]] double operator()(double omega) const {
        if (omega < omega_min || omega > omega_max) {
            return 0.0;
        }
        return shape(omega);
    }

    /// Functional form with the hard cutoffs removed. Used for reorganization
    /// integrals, where the cut-off tail is the quantity of interest.
    [[nodiscard]] double shape(double omega) const {
        return std::visit([&](const auto &k) { return shape_of(k, omega); }, kind);
    }

    /// lim_{w -> 0} shape(w) / w, the finite value of the reorganization
    /// integrand at the origin for densities vanishing linearly there.
    [[nodiscard]] double slope_at_zero() const {
        if (const auto *o = std::get_if<OhmicExponential>(&kind)) {
            return 2.0 * std::numbers::pi * o->alpha;
        }
        const double h = 1e-7 * std::max(1.0, omega_max - omega_min);
        return shape(h) / h;
    }

  private:
    static double shape_of(const OhmicExponential &k, double omega) {
        if (omega <= 0.0) {
            return 0.0;
        }
        return 2.0 * std::numbers::pi * k.alpha * omega * std::exp(-omega / k.omega_c);
    }

    static double shape_of(const Thermalized &k, double omega) {
        if (omega == 0.0) {
            // J(|w|) coth(beta w / 2) / 2 -> J'(0) / beta
            return k.base->slope_at_zero() / k.beta;
        }
        const double x = k.beta * omega;
        const double j = k.base->shape(std::abs(omega));
        // sign(w) (1 + coth(x/2)) / 2 == 1 / (1 - e^{-x}) for w > 0 and
        // 1 / (e^{|x|} - 1) for w < 0.
        return omega > 0.0 ? j / -std::expm1(-x) : j / std::expm1(-x);
    }

    static double shape_of(const Tabulated &k, double omega) {
        const auto &s = k.samples;
        if (omega < s.front().first || omega > s.back().first) {
            return 0.0;
        }
        if (s.size() == 1) {
            return s.front().second;
        }
        auto it = std::upper_bound(s.begin(), s.end(), omega,
                                   [](double w, const auto &p) { return w < p.first; });
        if (it == s.end()) {
            return s.back().second;
        }
        const auto &hi = *it;
        const auto &lo = *(it - 1);
        const double f = (omega - lo.first) / (hi.first - lo.first);
        return lo.second + f * (hi.second - lo.second);
    }
};

inline double evaluate(const SpectralDensity &sd, double omega) { return sd(omega); }

/// Thermalized copy of `sd` at `kelvin`. The support becomes
/// [-omega_max, omega_max] unless `omega_min` is given.
inline SpectralDensity thermalize(const SpectralDensity &sd, double kelvin,
                                  std::optional<double> omega_min = std::nullopt) {
    require(!sd.is_thermalized(), "thermalize: density is already thermalized");
    require(kelvin > 0.0 && std::isfinite(kelvin), "thermalize: temperature must be > 0");
    SpectralDensity out;
    out.kind = Thermalized{std::make_shared<const SpectralDensity>(sd),
                           units::beta_from_kelvin(kelvin)};
    out.omega_max = sd.omega_max;
    out.omega_min = omega_min.value_or(-sd.omega_max);
    require(out.omega_min < 0.0 && 0.0 < out.omega_max,
            "thermalize: support must straddle zero");
    return out;
}

/// Integral of J(w) / w over [lower, upper] (either may be infinite), using
/// the density's shape without hard cutoffs. Intervals straddling zero of a
/// thermalized density are taken as principal values.
inline double reorganization_energy(const SpectralDensity &sd, double lower, double upper) {
    require(lower <= upper, "reorganization_energy: lower must be <= upper");
    if (lower == upper) {
        return 0.0;
    }
    const auto ratio = [&](double w) {
        if (w == 0.0) {
            return sd.is_thermalized() ? 0.0 : sd.slope_at_zero();
        }
        return sd.shape(w) / w;
    };
    if (!(sd.is_thermalized() && lower < 0.0 && upper > 0.0)) {
        return quad::integrate_adaptive(ratio, lower, upper).value;
    }
    // J_beta(w) - J_beta(-w) = J(w) for w > 0, so the symmetric part of the
    // principal value reduces to the base density.
    const auto &base = *std::get<Thermalized>(sd.kind).base;
    const auto folded = [&](double w) {
        return w == 0.0 ? base.slope_at_zero() : base.shape(w) / w;
    };
    const double m = std::min(-lower, upper);
    double total = quad::integrate_adaptive(folded, 0.0, m).value;
    if (-lower > m) {
        total += quad::integrate_adaptive(ratio, lower, -m).value;
    } else if (upper > m) {
        total += quad::integrate_adaptive(ratio, m, upper).value;
    }
    return total;
}

} // namespace qtedopa
