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

#include "qtedopa/chain_mapping.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

using namespace qtedopa;

namespace {

SpectralDensity reference_ohmic() { return SpectralDensity::ohmic(0.25, 100.0, 0.0, 1000.0); }

/// Recurrence coefficients by explicit Gram-Schmidt of 1, x, x^2, ... under
/// the discrete inner product, in long double.
Recurrence gram_schmidt_recurrence(const DiscretizedMeasure &m, std::size_t n) {
    using LD = long double;
    const std::size_t size = m.nodes.size();
    const auto inner = [&](const std::vector<LD> &a, const std::vector<LD> &b) {
        LD s = 0;
        for (std::size_t i = 0; i < size; ++i) {
            s += static_cast<LD>(m.weights[i]) * a[i] * b[i];
        }
        return s;
    };
    std::vector<std::vector<LD>> polys;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<LD> mono(size);
        for (std::size_t i = 0; i < size; ++i) {
            mono[i] = std::pow(static_cast<LD>(m.nodes[i]), static_cast<LD>(k));
        }
        for (const auto &p : polys) {
            const LD c = inner(mono, p) / inner(p, p);
            for (std::size_t i = 0; i < size; ++i) {
                mono[i] -= c * p[i];
            }
        }
        polys.push_back(mono);
    }
    Recurrence r;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<LD> xp(size);
        for (std::size_t i = 0; i < size; ++i) {
            xp[i] = static_cast<LD>(m.nodes[i]) * polys[k][i];
        }
        const LD norm_k = inner(polys[k], polys[k]);
        r.alpha.push_back(static_cast<double>(inner(xp, polys[k]) / norm_k));
        r.beta.push_back(k == 0 ? static_cast<double>(norm_k)
                                : static_cast<double>(norm_k / inner(polys[k - 1], polys[k - 1])));
    }
    return r;
}

} // namespace

TEST(DiscretizeMeasure, FlatDensityIsExact) {
    const auto flat = SpectralDensity::tabulated({{0.0, 1.0}, {1.0, 1.0}});
    const auto m = discretize_measure(flat, 1, 2);
    EXPECT_NEAR(m.total_weight, 1.0, 1e-15);
    ASSERT_EQ(m.nodes.size(), 2u);
    EXPECT_LT(m.nodes[0], m.nodes[1]);
}

TEST(DiscretizeMeasure, OhmicTotalWeight) {
    const auto m = discretize_measure(reference_ohmic(), 400, 16);
    EXPECT_EQ(m.nodes.size(), 6400u);
    // int_0^W 2 pi a w e^{-w/c} dw = 2 pi a c^2 (1 - e^{-W/c}(1 + W/c)).
    const double closed = 2.0 * std::numbers::pi * 0.25 * 1e4 * (1.0 - 11.0 * std::exp(-10.0));
    EXPECT_NEAR(m.total_weight / closed, 1.0, 1e-12);
    EXPECT_NEAR(m.total_weight, 15700.1, 0.5);
    for (std::size_t i = 1; i < m.nodes.size(); ++i) {
        ASSERT_LT(m.nodes[i - 1], m.nodes[i]);
    }
}

TEST(DiscretizeMeasure, ThermalizedCarriesMoreWeight) {
    const auto base = SpectralDensity::ohmic(0.25, 100.0, 0.0, 1000.0);
    const auto hot = thermalize(base, 300.0);
    EXPECT_GT(discretize_measure(hot, 800, 16).total_weight,
              discretize_measure(base, 400, 16).total_weight);
}

TEST(DiscretizeMeasure, Errors) {
    const auto zero = SpectralDensity::ohmic(0.0, 100.0, 0.0, 1000.0);
    EXPECT_THROW(discretize_measure(zero, 10, 4), Error);
    EXPECT_THROW(discretize_measure(reference_ohmic(), 0, 4), Error);
    EXPECT_THROW(discretize_measure(reference_ohmic(), 4, 1), Error);
}

TEST(StieltjesRecurrence, FlatMeasure) {
    const auto flat = SpectralDensity::tabulated({{0.0, 1.0}, {1.0, 1.0}});
    const auto m = discretize_measure(flat, 16, 8);
    const auto r = stieltjes_recurrence(m, 6);
    for (double a : r.alpha) {
        EXPECT_NEAR(a, 0.5, 1e-13);
    }
    EXPECT_NEAR(r.beta[0], 1.0, 1e-13);
    // beta_1 is the variance of the uniform law; brute-force midpoint sum.
    double var = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        var += (x - 0.5) * (x - 0.5) / n;
    }
    EXPECT_NEAR(r.beta[1], var, 1e-10);
    EXPECT_NEAR(r.beta[1], 1.0 / 12.0, 1e-13);
}

TEST(StieltjesRecurrence, MatchesGramSchmidtOracle) {
    for (std::size_t nodes_per_panel : {4u, 8u, 16u}) {
        for (std::size_t panels : {2u, 4u}) {
            const auto m = discretize_measure(reference_ohmic(), panels, nodes_per_panel);
            if (m.nodes.size() > 64) {
                continue;
            }
            const std::size_t n = std::min<std::size_t>(5, m.nodes.size() / 4);
            const auto lanczos = stieltjes_recurrence(m, n);
            const auto oracle = gram_schmidt_recurrence(m, n);
            for (std::size_t k = 0; k < n; ++k) {
                EXPECT_NEAR(lanczos.alpha[k] / oracle.alpha[k], 1.0, 1e-8) << k;
                EXPECT_NEAR(lanczos.beta[k] / oracle.beta[k], 1.0, 1e-8) << k;
            }
        }
    }
}

TEST(StieltjesRecurrence, Errors) {
    const auto m = discretize_measure(reference_ohmic(), 2, 4);
    EXPECT_THROW(stieltjes_recurrence(m, 3), Error);
    EXPECT_THROW(stieltjes_recurrence(m, 0), Error);

    // Two atoms support only two orthogonal polynomials.
    DiscretizedMeasure atoms;
    for (int i = 0; i < 12; ++i) {
        atoms.nodes.push_back(i);
        atoms.weights.push_back(i == 3 || i == 7 ? 1.0 : 0.0);
    }
    atoms.total_weight = 2.0;
    try {
        stieltjes_recurrence(atoms, 3);
        FAIL() << "expected a numerical failure";
    } catch (const NumericalError &e) {
        EXPECT_EQ(e.code(), ErrorCode::NumericalFailure);
        EXPECT_NE(std::string(e.what()).find("beta[2]"), std::string::npos) << e.what();
    }
}

TEST(StieltjesRecurrence, SupportConfinement) {
    const auto m = discretize_measure(reference_ohmic(), 50, 8);
    const auto r = stieltjes_recurrence(m, 100);
    for (double a : r.alpha) {
        EXPECT_GE(a, m.nodes.front());
        EXPECT_LE(a, m.nodes.back());
    }
}

TEST(ChainCoefficients, ReferenceOhmicTable) {
    const auto c = chain_coefficients(reference_ohmic(), 5);
    ASSERT_EQ(c.length(), 5u);
    ASSERT_EQ(c.t.size(), 4u);
    EXPECT_NEAR(c.t0, 70.69, 0.05);
    const double w[] = {199.55, 385.14, 495.81, 514.13, 507.85};
    const double t[] = {139.97, 222.93, 253.56, 253.63};
    for (int n = 0; n < 5; ++n) {
        EXPECT_NEAR(c.w[n], w[n], 0.05) << n;
    }
    for (int n = 0; n < 4; ++n) {
        EXPECT_NEAR(c.t[n], t[n], 0.05) << n;
    }
    // t0 closed form under the 1/pi measure: sqrt(2 alpha) wc sqrt(1 - 11 e^-10).
    EXPECT_NEAR(c.t0, std::sqrt(0.5) * 100.0 * std::sqrt(1.0 - 11.0 * std::exp(-10.0)), 1e-8);
}

TEST(ChainCoefficients, PiNormalizationOnlyScalesT0) {
    ChainOptions raw;
    raw.pi_normalization = false;
    const auto a = chain_coefficients(reference_ohmic(), 5);
    const auto b = chain_coefficients(reference_ohmic(), 5, raw);
    EXPECT_NEAR(b.t0 / a.t0, std::sqrt(std::numbers::pi), 1e-10);
    for (int n = 0; n < 5; ++n) {
        EXPECT_DOUBLE_EQ(a.w[n], b.w[n]);
    }
    EXPECT_NEAR(b.t0, 125.3, 0.1);
}

TEST(ChainCoefficients, AsymptoticLimits) {
    const auto sd = reference_ohmic();
    const auto c = chain_coefficients(sd, 202);
    const auto lim = asymptotic_chain(sd);
    EXPECT_EQ(lim.w_inf, 500.0);
    EXPECT_EQ(lim.t_inf, 250.0);
    EXPECT_LT(std::abs(c.w[200] - 500.0) / 500.0, 0.01);
    EXPECT_LT(std::abs(c.t[200] - 250.0) / 250.0, 0.01);
}

TEST(ChainCoefficients, ConvergenceEnvelopeShrinks) {
    const auto c = chain_coefficients(reference_ohmic(), 161);
    // Worst deviation over successive windows decreases past the burn-in.
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t start = 10; start + 30 <= 160; start += 30) {
        double worst_w = 0.0;
        double worst_t = 0.0;
        for (std::size_t n = start; n < start + 30; ++n) {
            worst_w = std::max(worst_w, std::abs(c.w[n] - 500.0));
            worst_t = std::max(worst_t, std::abs(c.t[n] - 250.0));
        }
        const double worst = std::max(worst_w, worst_t);
        EXPECT_LT(worst, previous) << start;
        previous = worst;
    }
}

TEST(ChainCoefficients, FlatPiDensityHasUnitT0) {
    const auto flat = SpectralDensity::tabulated({{0.0, std::numbers::pi}, {1.0, std::numbers::pi}});
    const auto c = chain_coefficients(flat, 2);
    EXPECT_NEAR(c.t0, 1.0, 1e-12);
    EXPECT_NEAR(c.w[0], 0.5, 1e-12);
    EXPECT_NEAR(c.t[0], std::sqrt(1.0 / 12.0), 1e-12);
}

TEST(ChainCoefficients, ScaleCovariance) {
    const auto a = chain_coefficients(SpectralDensity::ohmic(0.25, 100.0, 0.0, 1000.0), 8);
    const auto b = chain_coefficients(SpectralDensity::ohmic(0.25 * 7.3, 100.0, 0.0, 1000.0), 8);
    EXPECT_NEAR(b.t0 / a.t0, std::sqrt(7.3), 1e-10);
    for (std::size_t n = 0; n < 8; ++n) {
        EXPECT_NEAR(b.w[n] / a.w[n], 1.0, 1e-10);
    }
    for (std::size_t n = 0; n < 7; ++n) {
        EXPECT_NEAR(b.t[n] / a.t[n], 1.0, 1e-10);
    }
}

TEST(ChainCoefficients, Deterministic) {
    const auto a = chain_coefficients(reference_ohmic(), 12);
    const auto b = chain_coefficients(reference_ohmic(), 12);
    EXPECT_EQ(a.w, b.w);
    EXPECT_EQ(a.t, b.t);
    EXPECT_EQ(a.t0, b.t0);
    EXPECT_THROW(chain_coefficients(reference_ohmic(), 0), Error);
}

TEST(ChainLengthHeuristic, Examples) {
    EXPECT_EQ(chain_length_heuristic(250.0, 0.0), 0u);
    EXPECT_EQ(chain_length_heuristic(250.0, 0.1), 10u);
    EXPECT_NEAR(units::phase(1.0, 1.0), 0.188365, 1e-6);
    for (double t : {0.05, 0.2, 0.35}) {
        const auto one = chain_length_heuristic(250.0, t);
        const auto two = chain_length_heuristic(250.0, 2 * t);
        EXPECT_LE(two, 2 * one);
        EXPECT_GE(two + 1, 2 * one);
    }
    EXPECT_THROW(chain_length_heuristic(0.0, 1.0), Error);
}
