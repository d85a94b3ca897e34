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

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "error.hpp"

namespace qtedopa::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1], nodes ascending. Newton iteration on
/// P_n from the Chebyshev initial guess, converged to machine precision.
inline Rule gauss_legendre(std::size_t n) {
    require(n >= 1, "gauss_legendre: need at least one node");
    Rule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double derivative = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            derivative = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / derivative;
            x -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

/// Composite Gauss-Legendre over `panels` equal panels of [a, b].
inline Rule composite_gauss_legendre(double a, double b, std::size_t panels,
                                     std::size_t nodes_per_panel) {
    require(b > a, "composite_gauss_legendre: empty interval");
    require(panels >= 1, "composite_gauss_legendre: panels must be >= 1");
    const Rule base = gauss_legendre(nodes_per_panel);
    Rule out;
    out.nodes.reserve(panels * nodes_per_panel);
    out.weights.reserve(panels * nodes_per_panel);
    const double width = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + width * static_cast<double>(p);
        const double hi = (p + 1 == panels) ? b : lo + width;
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        for (std::size_t k = 0; k < nodes_per_panel; ++k) {
            out.nodes.push_back(mid + half * base.nodes[k]);
            out.weights.push_back(half * base.weights[k]);
        }
    }
    return out;
}

/// Pairwise summation; the result depends only on the input order.
inline double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) {
            s += v;
        }
        return s;
    }
    const std::size_t mid = values.size() / 2;
    return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

/// Adaptive 61-point Gauss-Kronrod. Either bound may be infinite. Throws
/// NumericalError when the error estimate exceeds `abs_tol_scale * max(1, L1)`
/// after `max_depth` levels of bisection.
template <typename F>
AdaptiveResult integrate_adaptive(F &&f, double a, double b,
                                  double abs_tol_scale = 1e-10,
                                  unsigned max_depth = 12) {
    AdaptiveResult r;
    if (a == b) {
        return r;
    }
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    r.value = GK::integrate(f, a, b, max_depth, 1e-12, &r.error, &r.l1);
    const double allowed = abs_tol_scale * std::max(1.0, r.l1);
    if (!(r.error <= allowed) || !std::isfinite(r.value)) {
        throw NumericalError("adaptive quadrature did not converge", r.error);
    }
    return r;
}

} // namespace qtedopa::quad
