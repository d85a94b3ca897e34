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

#include "qtedopa/statevector.hpp"
#include "qtedopa/trotter.hpp"

#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

using namespace qtedopa;

namespace {

DenseMatrix expm_herm(const DenseMatrix &h, double tau) {
    const DenseMatrix a = cplx{0.0, -tau} * h;
    return a.exp();
}

double op_norm(const DenseMatrix &m) {
    Eigen::JacobiSVD<DenseMatrix> svd(m);
    return svd.singularValues()(0);
}

SystemSpec dimer() {
    SystemSpec s;
    s.site_energies = {12410.0, 12530.0};
    s.couplings = {{0, 1, 87.7}};
    return s;
}

ChainCoefficients benchmark_chain(std::size_t l) {
    return chain_coefficients(SpectralDensity::ohmic(0.25, 100.0, 0.0, 1000.0), l);
}

HamiltonianTerms dimer_terms(std::size_t l, std::size_t d = 2) {
    const auto layout = make_layout(2, l, BosonEncoding::make(EncodingScheme::Binary, d));
    return assemble(dimer(), {benchmark_chain(l)}, layout);
}

/// Product of exp(-i c dtau P) over the terms of a sum in emission order.
DenseMatrix termwise(const PauliSum &sum, double dtau, std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    DenseMatrix u = DenseMatrix::Identity(dim, dim);
    for (const auto &t : sum.terms()) {
        if (t.word.weight() == 0) {
            continue;
        }
        const DenseMatrix p = PauliSum({PauliString{1.0, t.word}}).to_dense(n);
        u = expm_herm(p, t.coefficient.real() * dtau) * u;
    }
    return u;
}

} // namespace

TEST(ExponentiatePauli, MatchesMatrixExponential) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> axis(0, 3);
    std::uniform_real_distribution<double> angle(-2.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::pair<std::size_t, Axis>> f;
        for (std::size_t q = 0; q < 4; ++q) {
            const int a = axis(rng);
            if (a > 0) {
                f.emplace_back(q, static_cast<Axis>(a));
            }
        }
        const PauliString term = PauliString::make(1.0, f);
        const double theta = angle(rng);
        const DenseMatrix u = circuit_unitary(exponentiate_pauli(term, theta), 4);
        const DenseMatrix expect =
            f.empty() ? DenseMatrix::Identity(16, 16)
                      : expm_herm(PauliSum({term}).to_dense(4), theta);
        EXPECT_LT((u - expect).cwiseAbs().maxCoeff(), 1e-12) << "trial " << trial;
    }
}

TEST(ExponentiatePauli, CnotLadderLength) {
    const auto gates = exponentiate_pauli(
        PauliString::make(1.0, {{0, Axis::X}, {2, Axis::Y}, {5, Axis::Z}}), 0.3);
    const auto cx = std::count_if(gates.begin(), gates.end(),
                                  [](const Gate &g) { return g.kind == GateKind::CNOT; });
    EXPECT_EQ(cx, 4);
    EXPECT_TRUE(exponentiate_pauli(PauliString::make(1.0, {}), 0.3).empty());
}

TEST(TrotterCircuit, DimerCnotCount) {
    const auto terms = dimer_terms(5);
    const Circuit c = build_trotter_circuit(terms, 0.01, 10);
    EXPECT_EQ(c.n_qubits, 12u);
    EXPECT_EQ(c.cnot_count(), 400u);
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(build_trotter_circuit(terms, 0.01, 1).cnot_count(), 40u);
    EXPECT_THROW(build_trotter_circuit(terms, 0.0, 1), Error);
    EXPECT_THROW(build_trotter_circuit(terms, 0.01, 0), Error);
}

TEST(TrotterCircuit, OneStepEqualsGroupProduct) {
    // d = 2: terms inside a group commute, so the step is exactly the
    // product of the group exponentials.
    const auto terms = dimer_terms(2);
    const std::size_t n = terms.n_qubits;
    ASSERT_EQ(n, 6u);
    const double dt = 0.01;
    const double dtau = units::phase(1.0, dt);
    const DenseMatrix u = circuit_unitary(build_trotter_circuit(terms, dt, 1).gates, n);
    DenseMatrix expect = expm_herm(terms.groups[0].to_dense(n), dtau);
    for (std::size_t g = 1; g < terms.groups.size(); ++g) {
        expect = expm_herm(terms.groups[g].to_dense(n), dtau) * expect;
    }
    expect = expm_herm(terms.singles.to_dense(n), dtau) * expect;
    EXPECT_LT((u - expect).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(TrotterCircuit, FourLevelTermwiseProduct) {
    SystemSpec one;
    one.site_energies = {100.0};
    const auto layout = make_layout(1, 2, BosonEncoding::make(EncodingScheme::Binary, 4));
    const auto terms = assemble(one, {benchmark_chain(2)}, layout);
    const std::size_t n = terms.n_qubits;
    const double dt = 0.005;
    const double dtau = units::phase(1.0, dt);
    const DenseMatrix u = circuit_unitary(build_trotter_circuit(terms, dt, 1).gates, n);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    DenseMatrix expect = DenseMatrix::Identity(dim, dim);
    for (const auto &g : terms.groups) {
        expect = termwise(g, dtau, n) * expect;
    }
    expect = termwise(terms.singles, dtau, n) * expect;
    EXPECT_LT((u - expect).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(TrotterCircuit, ErrorBelowBoundAndFirstOrder) {
    const auto terms = dimer_terms(2);
    const std::size_t n = terms.n_qubits;
    const double alpha = commutator_norm(terms);
    const double total = 0.05;
    const DenseMatrix exact = expm_herm(terms.total().to_dense(n), units::phase(1.0, total));
    std::vector<double> measured;
    for (std::size_t steps : {4u, 8u, 16u}) {
        const Circuit c = build_trotter_circuit(terms, total / static_cast<double>(steps), steps);
        const double err = op_norm(circuit_unitary(c.gates, n) - exact);
        EXPECT_LE(err, trotter_error_bound(alpha, total, steps)) << steps << " steps";
        measured.push_back(err);
    }
    // First order: doubling N roughly halves the error.
    EXPECT_NEAR(measured[1] / measured[0], 0.5, 0.1);
    EXPECT_NEAR(measured[2] / measured[1], 0.5, 0.1);
}

TEST(CommutatorNorm, MatchesDenseCommutators) {
    const auto terms = dimer_terms(3);
    const std::size_t n = terms.n_qubits;
    std::vector<DenseMatrix> layers;
    for (const auto &g : terms.groups) {
        layers.push_back(g.to_dense(n));
    }
    layers.push_back(terms.singles.to_dense(n));
    double expect = 0.0;
    for (std::size_t a = 0; a < layers.size(); ++a) {
        for (std::size_t b = a + 1; b < layers.size(); ++b) {
            expect += op_norm(layers[a] * layers[b] - layers[b] * layers[a]);
        }
    }
    EXPECT_NEAR(commutator_norm(terms), expect, 1e-8 * expect);
}

TEST(CommutatorNorm, VanishesForCommutingLayersAndRejectsLargeRegisters) {
    SystemSpec one;
    one.site_energies = {100.0};
    const auto layout = make_layout(1, 0, BosonEncoding::make(EncodingScheme::Binary, 2));
    EXPECT_DOUBLE_EQ(commutator_norm(assemble(one, {ChainCoefficients{}}, layout)), 0.0);
    try {
        (void)commutator_norm(dimer_terms(6));
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedSize);
    }
}

TEST(CommutatorNorm, GrowsWithChainLength) {
    SystemSpec one;
    one.site_energies = {12410.0};
    double previous = 0.0;
    for (std::size_t l : {2u, 4u, 6u, 8u}) {
        const auto layout = make_layout(1, l, BosonEncoding::make(EncodingScheme::Binary, 2));
        const double a = commutator_norm(assemble(one, {benchmark_chain(l)}, layout));
        EXPECT_GT(a, previous);
        previous = a;
    }
}

TEST(TrotterBound, Formula) {
    const double tau = units::phase(1.0, 1.0);
    EXPECT_DOUBLE_EQ(trotter_error_bound(2.0, 1.0, 4), 2.0 * tau * tau / 8.0);
    EXPECT_THROW(trotter_error_bound(1.0, 1.0, 0), Error);
}

TEST(Resources, QubitCounts) {
    const auto b = estimate_resources(8, 49, 188, EncodingScheme::Binary, 2, 2);
    const auto u = estimate_resources(8, 49, 188, EncodingScheme::Unary, 2, 2);
    EXPECT_EQ(b.qubits, 296u);
    EXPECT_EQ(u.qubits, 786u);
    EXPECT_DOUBLE_EQ(b.cnot_leading_order, 2.0 * 49 * 188 * 64 * 3);
    EXPECT_DOUBLE_EQ(u.cnot_leading_order, 2.0 * 49 * 188 * 64);
    EXPECT_GT(b.pauli_term_count, 0u);
    EXPECT_GT(b.depth_estimate, 0u);
    EXPECT_THROW(estimate_resources(6, 4, 1, EncodingScheme::Binary, 1, 1), Error);
    EXPECT_THROW(estimate_resources(2, 0, 1, EncodingScheme::Binary, 1, 1), Error);
}

TEST(Resources, SynthesizedCountMatchesCircuit) {
    // Chain-only CNOTs of the dimer circuit: 2 chains of 5 qubit oscillators.
    const auto r = estimate_resources(2, 5, 10, EncodingScheme::Binary, 2, 2);
    EXPECT_EQ(r.qubits, 12u);
    EXPECT_EQ(r.cnot_count, 320u);
    // Linear in steps and chains.
    const auto r1 = estimate_resources(4, 7, 3, EncodingScheme::Binary, 1, 1);
    const auto r2 = estimate_resources(4, 7, 6, EncodingScheme::Binary, 2, 1);
    EXPECT_EQ(r2.cnot_count, 4 * r1.cnot_count);
}

TEST(Qasm, Format) {
    const auto terms = dimer_terms(2);
    const Circuit c = build_trotter_circuit(terms, 0.01, 2);
    const std::string text = to_qasm(c, "first\nsecond");
    std::istringstream is(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(is, line)) {
        lines.push_back(line);
    }
    ASSERT_GE(lines.size(), 5u);
    EXPECT_EQ(lines[0], "// first");
    EXPECT_EQ(lines[1], "// second");
    EXPECT_EQ(lines[2], "OPENQASM 2.0;");
    EXPECT_EQ(lines[3], "include \"qelib1.inc\";");
    EXPECT_EQ(lines[4], "qreg q[6];");
    EXPECT_EQ(lines.size(), 5 + c.gates.size());
    const auto cx = std::count_if(lines.begin(), lines.end(),
                                  [](const std::string &s) { return s.rfind("cx ", 0) == 0; });
    EXPECT_EQ(static_cast<std::size_t>(cx), c.cnot_count());
    EXPECT_EQ(to_qasm(c, "first\nsecond"), text);
}
