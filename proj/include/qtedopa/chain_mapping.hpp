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
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "error.hpp"
#include "quadrature.hpp"
#include "spectral_density.hpp"
#include "units.hpp"

namespace qtedopa {

/// Discrete measure sum_k weights[k] delta(w - nodes[k]).
struct DiscretizedMeasure {
    std::vector<double> nodes;
    std::vector<double> weights;
    double total_weight = 0.0;
};

/// Monic three-term recurrence p_{k+1} = (x - a_k) p_k - b_k p_{k-1}, with
/// b_0 the total mass of the measure.
struct Recurrence {
    std::vector<double> alpha;
    std::vector<double> beta;
};

/// Chain Hamiltonian parameters. `t[n]` couples oscillators n and n+1.
struct ChainCoefficients {
    double t0 = 0.0;
    std::vector<double> w;
    std::vector<double> t;

    [[nodiscard]] std::size_t length() const { return w.size(); }
};

struct ChainOptions {
    /// Use d(mu) = J(w) / pi dw. Hopping and on-site terms do not depend on
    /// this; only t0 scales by 1/sqrt(pi).
    bool pi_normalization = true;
    std::size_t panels = 400;
    std::size_t nodes_per_panel = 16;
    /// Panels are doubled until every coefficient moves by less than this.
    double stability_tol = 1e-8;
    std::size_t max_refinements = 6;
};

inline DiscretizedMeasure discretize_measure(const SpectralDensity &sd, std::size_t panels,
                                             std::size_t nodes_per_panel) {
    require(std::isfinite(sd.omega_min) && std::isfinite(sd.omega_max),
            "discretize_measure: hard cutoffs must be finite");
    require(panels >= 1, "discretize_measure: panels must be >= 1");
    require(nodes_per_panel >= 2, "discretize_measure: nodes_per_panel must be >= 2");
    auto rule = quad::composite_gauss_legendre(sd.omega_min, sd.omega_max, panels,
                                               nodes_per_panel);
    DiscretizedMeasure m;
    m.nodes = std::move(rule.nodes);
    m.weights = std::move(rule.weights);
    for (std::size_t k = 0; k < m.nodes.size(); ++k) {
        const double j = sd(m.nodes[k]);
        require(j >= 0.0 && std::isfinite(j), "discretize_measure: density must be finite and >= 0");
        m.weights[k] *= j;
    }
    m.total_weight = quad::pairwise_sum(m.weights);
    require(m.total_weight > 0.0, "discretize_measure: density vanishes on its support");
    return m;
}

namespace detail {

/// Pairwise-summed dot product; the result depends only on the inputs.
inline double pairwise_dot(const double *a, const double *b, std::size_t n) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += a[i] * b[i];
        }
        return s;
    }
    const std::size_t mid = n / 2;
    return pairwise_dot(a, b, mid) + pairwise_dot(a + mid, b + mid, n - mid);
}

} // namespace detail

/// Recurrence coefficients of the polynomials orthogonal under `measure`,
/// from Lanczos tridiagonalization of diag(nodes) started at sqrt(weights),
/// with full reorthogonalization.
inline Recurrence stieltjes_recurrence(const DiscretizedMeasure &measure, std::size_t n_max) {
    const std::size_t n_nodes = measure.nodes.size();
    require(measure.weights.size() == n_nodes, "stieltjes_recurrence: node/weight size mismatch");
    require(measure.total_weight > 0.0, "stieltjes_recurrence: total weight must be > 0");
    require(n_max >= 1 && 4 * n_max <= n_nodes,
            "stieltjes_recurrence: n_max must be in [1, nodes/4]");

    const auto dot = [](const std::vector<double> &a, const std::vector<double> &b) {
        return detail::pairwise_dot(a.data(), b.data(), a.size());
    };
    double scale = 0.0;
    for (double x : measure.nodes) {
        scale = std::max(scale, std::abs(x));
    }

    Recurrence rec;
    rec.alpha.reserve(n_max);
    rec.beta.reserve(n_max);
    rec.beta.push_back(measure.total_weight);

    std::vector<std::vector<double>> basis;
    basis.reserve(n_max);
    std::vector<double> q(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        q[i] = std::sqrt(measure.weights[i] / measure.total_weight);
    }
    basis.push_back(q);

    std::vector<double> r(n_nodes);
    for (std::size_t k = 0; k < n_max; ++k) {
        const auto &qk = basis[k];
        for (std::size_t i = 0; i < n_nodes; ++i) {
            r[i] = measure.nodes[i] * qk[i];
        }
        const double a = dot(qk, r);
        rec.alpha.push_back(a);
        if (k + 1 == n_max) {
            break;
        }
        for (std::size_t i = 0; i < n_nodes; ++i) {
            r[i] -= a * qk[i];
        }
        if (k > 0) {
            const double b = std::sqrt(rec.beta[k]);
            const auto &qp = basis[k - 1];
            for (std::size_t i = 0; i < n_nodes; ++i) {
                r[i] -= b * qp[i];
            }
        }
        // Two Gram-Schmidt sweeps against the whole basis.
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (const auto &qj : basis) {
                const double c = dot(qj, r);
                for (std::size_t i = 0; i < n_nodes; ++i) {
                    r[i] -= c * qj[i];
                }
            }
        }
        const double b = dot(r, r);
        // Below this the residual is rounding noise: the measure has fewer
        // support points than requested polynomials.
        const double floor = 1e-24 * std::max(scale * scale, 1e-300);
        if (!(b > floor) || !std::isfinite(b)) {
            throw NumericalError("stieltjes_recurrence: lost positivity at beta[" +
                                     std::to_string(k + 1) + "]",
                                 b);
        }
        rec.beta.push_back(b);
        const double norm = std::sqrt(b);
        for (std::size_t i = 0; i < n_nodes; ++i) {
            r[i] /= norm;
        }
        basis.push_back(r);
    }
    return rec;
}

namespace detail {

inline ChainCoefficients coefficients_from(const Recurrence &rec, std::size_t length,
                                           double mass_scale) {
    ChainCoefficients c;
    c.t0 = std::sqrt(rec.beta[0] * mass_scale);
    c.w.assign(rec.alpha.begin(), rec.alpha.begin() + static_cast<std::ptrdiff_t>(length));
    c.t.reserve(length - 1);
    for (std::size_t n = 1; n < length; ++n) {
        c.t.push_back(std::sqrt(rec.beta[n]));
    }
    return c;
}

inline double max_relative_change(const ChainCoefficients &a, const ChainCoefficients &b) {
    const auto rel = [](double x, double y) {
        return std::abs(x - y) / std::max(std::abs(y), 1e-300);
    };
    double worst = rel(a.t0, b.t0);
    for (std::size_t n = 0; n < a.w.size(); ++n) {
        // On-site energies may cross zero; measure against the band scale.
        worst = std::max(worst, std::abs(a.w[n] - b.w[n]) /
                                    std::max({std::abs(b.w[n]), b.t0, 1e-300}));
    }
    for (std::size_t n = 0; n < a.t.size(); ++n) {
        worst = std::max(worst, rel(a.t[n], b.t[n]));
    }
    return worst;
}

} // namespace detail

/// Chain parameters for the first `length` oscillators: w_n = alpha_n,
/// t_{n+1,n} = sqrt(beta_{n+1}), t0 = sqrt(beta_0). The discretization is
/// refined until the coefficients are stable.
inline ChainCoefficients chain_coefficients(const SpectralDensity &sd, std::size_t length,
                                            const ChainOptions &options = {}) {
    require(length >= 1, "chain_coefficients: length must be >= 1");
    const double mass_scale = options.pi_normalization ? 1.0 / std::numbers::pi : 1.0;

    std::size_t panels = options.panels;
    while (panels * options.nodes_per_panel < 4 * length) {
        panels *= 2;
    }
    auto compute = [&](std::size_t p) {
        const auto measure = discretize_measure(sd, p, options.nodes_per_panel);
        return detail::coefficients_from(stieltjes_recurrence(measure, length), length,
                                         mass_scale);
    };
    ChainCoefficients previous = compute(panels);
    double change = 0.0;
    for (std::size_t i = 0; i < options.max_refinements; ++i) {
        panels *= 2;
        ChainCoefficients next = compute(panels);
        change = detail::max_relative_change(next, previous);
        if (change < options.stability_tol) {
            return next;
        }
        previous = std::move(next);
    }
    throw NumericalError("chain_coefficients: discretization did not stabilize", change);
}

/// Chain length ceil(2 t_inf T) with t_inf (cm^-1) converted to rad/ps.
inline std::size_t chain_length_heuristic(double t_infinity_cm1, double horizon_ps) {
    require(t_infinity_cm1 > 0.0, "chain_length_heuristic: t_infinity must be > 0");
    require(horizon_ps >= 0.0, "chain_length_heuristic: horizon must be >= 0");
    return static_cast<std::size_t>(
        std::ceil(2.0 * units::phase(t_infinity_cm1, horizon_ps) - 1e-12));
}

/// Limits of w_n and t_{n+1,n} for a density with hard cutoffs.
struct AsymptoticChain {
    double w_inf;
    double t_inf;
};

inline AsymptoticChain asymptotic_chain(const SpectralDensity &sd) {
    return {0.5 * (sd.omega_max + sd.omega_min), 0.25 * (sd.omega_max - sd.omega_min)};
}

} // namespace qtedopa
