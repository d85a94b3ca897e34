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
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "encoding.hpp"
#include "error.hpp"
#include "hamiltonian.hpp"
#include "parallel.hpp"
#include "pauli.hpp"
#include "units.hpp"

namespace qtedopa {

enum class GateKind { RX, RY, RZ, H, S, Sdg, CNOT };

/// RX/RY/RZ(angle) = exp(-i angle P / 2). For CNOT `qubit` is the control.
struct Gate {
    GateKind kind = GateKind::H;
    std::size_t qubit = 0;
    std::size_t target = 0;
    double angle = 0.0;

    bool operator==(const Gate &) const = default;
};

struct Circuit {
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;
    double dt_ps = 0.0;
    std::size_t n_steps = 0;

    [[nodiscard]] std::size_t cnot_count() const {
        return static_cast<std::size_t>(std::count_if(
            gates.begin(), gates.end(), [](const Gate &g) { return g.kind == GateKind::CNOT; }));
    }

    /// ASAP layer count.
    [[nodiscard]] std::size_t depth() const {
        std::vector<std::size_t> level(n_qubits, 0);
        std::size_t d = 0;
        for (const auto &g : gates) {
            if (g.kind == GateKind::CNOT) {
                const std::size_t l = std::max(level[g.qubit], level[g.target]) + 1;
                level[g.qubit] = level[g.target] = l;
                d = std::max(d, l);
            } else {
                d = std::max(d, ++level[g.qubit]);
            }
        }
        return d;
    }

    void validate() const {
        for (const auto &g : gates) {
            require(g.qubit < n_qubits, "circuit: gate qubit out of range");
            if (g.kind == GateKind::CNOT) {
                require(g.target < n_qubits && g.target != g.qubit,
                        "circuit: CNOT needs distinct in-range qubits");
            }
            require(std::isfinite(g.angle), "circuit: non-finite angle");
        }
    }
};

/// Append exp(-i angle P) for the word `word`: basis change to Z, CNOT
/// ladder onto the highest qubit, RZ(2 angle), and the mirror image.
inline void exponentiate_pauli(const PauliWord &word, double angle, std::vector<Gate> &out) {
    const auto &f = word.factors;
    if (f.empty()) {
        return; // global phase
    }
    for (auto [q, a] : f) {
        if (a == Axis::X) {
            out.push_back({GateKind::H, q});
        } else if (a == Axis::Y) {
            out.push_back({GateKind::Sdg, q});
            out.push_back({GateKind::H, q});
        }
    }
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        out.push_back({GateKind::CNOT, f[i].first, f[i + 1].first});
    }
    out.push_back({GateKind::RZ, f.back().first, 0, 2.0 * angle});
    for (std::size_t i = f.size() - 1; i-- > 0;) {
        out.push_back({GateKind::CNOT, f[i].first, f[i + 1].first});
    }
    for (auto [q, a] : f) {
        if (a == Axis::X) {
            out.push_back({GateKind::H, q});
        } else if (a == Axis::Y) {
            out.push_back({GateKind::H, q});
            out.push_back({GateKind::S, q});
        }
    }
}

inline std::vector<Gate> exponentiate_pauli(const PauliString &term, double angle) {
    std::vector<Gate> out;
    exponentiate_pauli(term.word, angle, out);
    return out;
}

/// One step applies the groups in order (odd layer first), then singles;
/// each term c P becomes exp(-i c dtau P), dtau the dimensionless step.
inline Circuit build_trotter_circuit(const HamiltonianTerms &terms, double dt_ps,
                                     std::size_t n_steps) {
    require(dt_ps > 0.0, "build_trotter_circuit: dt must be > 0");
    require(n_steps >= 1, "build_trotter_circuit: n_steps must be >= 1");
    Circuit c;
    c.n_qubits = terms.n_qubits;
    c.dt_ps = dt_ps;
    c.n_steps = n_steps;
    const double dtau = units::phase(1.0, dt_ps);
    std::vector<Gate> step;
    const auto emit = [&](const PauliSum &sum) {
        require(sum.is_hermitian(), "build_trotter_circuit: non-Hermitian term");
        for (const auto &t : sum.terms()) {
            exponentiate_pauli(t.word, t.coefficient.real() * dtau, step);
        }
    };
    for (const auto &g : terms.groups) {
        emit(g);
    }
    emit(terms.singles);
    c.gates.reserve(step.size() * n_steps);
    for (std::size_t s = 0; s < n_steps; ++s) {
        c.gates.insert(c.gates.end(), step.begin(), step.end());
    }
    return c;
}

/// CNOTs spent exponentiating every term of `sum` once.
inline std::size_t ladder_cnots(const PauliSum &sum) {
    std::size_t n = 0;
    for (const auto &t : sum.terms()) {
        n += t.word.weight() > 0 ? 2 * (t.word.weight() - 1) : 0;
    }
    return n;
}

struct ResourceEstimate {
    std::size_t qubits = 0;
    /// CNOTs of the synthesized chain circuit (CNOT ladders, no optimisation).
    std::size_t cnot_count = 0;
    /// Leading-order count n_chains l N d^2 (unary) or n_chains l N d^2 log2 d
    /// (binary), unit prefactor.
    double cnot_leading_order = 0.0;
    std::size_t pauli_term_count = 0;
    std::size_t depth_estimate = 0;
};

/// Resources for `n_chains` chains of `l` oscillators over `n_steps` Trotter
/// steps. Only chain terms are synthesized; system and system-chain terms
/// are negligible at these sizes. All-to-all connectivity, no SWAPs.
inline ResourceEstimate estimate_resources(std::size_t d, std::size_t l, std::size_t n_steps,
                                           EncodingScheme scheme, std::size_t n_chains,
                                           std::size_t n_system_qubits) {
    require(d >= 1 && l >= 1 && n_steps >= 1 && n_chains >= 1 && n_system_qubits >= 1,
            "estimate_resources: all counts must be >= 1");
    const BosonEncoding enc = BosonEncoding::make(scheme, d);
    const std::size_t k = enc.qubits_per_oscillator();

    ResourceEstimate r;
    r.qubits = n_system_qubits + n_chains * l * k;

    const PauliSum onsite = encode_boson(enc, LadderOp::Number, QubitRange{0, k}).without_constant();
    const PauliSum bond = hopping_term_pauli(enc, QubitRange{0, k}, QubitRange{k, k});
    const std::size_t bonds_per_chain = l - 1;

    r.cnot_count = n_chains * n_steps * (bonds_per_chain * ladder_cnots(bond) + l * ladder_cnots(onsite));
    r.pauli_term_count = n_chains * (bonds_per_chain * bond.size() + l * onsite.size());

    const double dd = static_cast<double>(d);
    const double per_osc = scheme == EncodingScheme::Binary ? dd * dd * std::log2(dd) : dd * dd;
    r.cnot_leading_order = static_cast<double>(n_chains * l * n_steps) * per_osc;

    // Disjoint bonds of one layer run in parallel: a step costs the on-site
    // layer plus one bond per layer (two layers on a line, one if l == 2).
    const auto depth_of = [&](const PauliSum &sum, std::size_t width) {
        Circuit c;
        c.n_qubits = width;
        for (const auto &t : sum.terms()) {
            exponentiate_pauli(t.word, 0.1, c.gates);
        }
        return c.depth();
    };
    const std::size_t layers = bonds_per_chain == 0 ? 0 : (bonds_per_chain == 1 ? 1 : 2);
    r.depth_estimate = n_steps * (depth_of(onsite, k) + layers * depth_of(bond, 2 * k));
    return r;
}

namespace detail {

/// Matrix-free y = H x for a Pauli sum, qubit q on bit q.
class PauliOperator {
  public:
    PauliOperator(const PauliSum &sum, std::size_t n_qubits) : n_qubits_(n_qubits) {
        require(sum.n_qubits() <= n_qubits, "PauliOperator: term outside register");
        require(n_qubits <= 26, "PauliOperator: at most 26 qubits");
        std::vector<Term> diagonal;
        for (const auto &t : sum.terms()) {
            const auto [x, z] = t.word.masks();
            const Term term{x, z, t.coefficient * PauliSum::i_power(std::popcount(x & z))};
            if (x == 0) {
                diagonal.push_back(term);
                continue;
            }
            if (groups_.empty() || groups_.back().x != x) {
                // Terms arrive sorted by qubit, not by X mask.
                const auto it = std::find_if(groups_.begin(), groups_.end(),
                                             [x](const Group &g) { return g.x == x; });
                if (it == groups_.end()) {
                    groups_.push_back({x, {}});
                } else {
                    it->terms.push_back(term);
                    continue;
                }
            }
            groups_.back().terms.push_back(term);
        }
        diag_.assign(dim(), cplx{});
        parallel_for(dim(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                cplx acc{};
                for (const auto &t : diagonal) {
                    acc += (std::popcount(t.z & i) & 1) ? -t.c : t.c;
                }
                diag_[i] = acc;
            }
        });
    }

    [[nodiscard]] std::size_t dim() const { return std::size_t{1} << n_qubits_; }

    void apply(const std::vector<cplx> &in, std::vector<cplx> &out) const {
        out.assign(in.size(), cplx{});
        parallel_for(in.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                cplx acc = diag_[i] * in[i];
                for (const auto &g : groups_) {
                    const std::size_t j = i ^ g.x;
                    cplx c{};
                    for (const auto &t : g.terms) {
                        c += (std::popcount(t.z & j) & 1) ? -t.c : t.c;
                    }
                    acc += c * in[j];
                }
                out[i] = acc;
            }
        });
    }

  private:
    struct Term {
        std::uint64_t x;
        std::uint64_t z;
        cplx c;
    };
    /// Terms sharing one X mask, i.e. one permutation of the basis.
    struct Group {
        std::uint64_t x;
        std::vector<Term> terms;
    };
    std::size_t n_qubits_;
    std::vector<cplx> diag_;
    std::vector<Group> groups_;
};

/// Largest |eigenvalue| of a Hermitian Pauli sum: dense for small
/// registers, Lanczos with full reorthogonalization otherwise.
inline double spectral_norm_hermitian(const PauliSum &h, std::size_t n_qubits) {
    if (h.empty()) {
        return 0.0;
    }
    if (n_qubits <= 8) {
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h.to_dense(n_qubits), Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    const PauliOperator op(h, n_qubits);
    const std::size_t dim = op.dim();
    const std::size_t m = std::min<std::size_t>(dim, 160);
    std::vector<std::vector<cplx>> basis;
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<cplx> v(dim);
    // Deterministic start vector with overlap on every basis state.
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        v[i] = cplx{1.0 + 0.37 * std::sin(1.3 * static_cast<double>(i)),
                    0.11 * std::cos(0.7 * static_cast<double>(i))};
        norm += std::norm(v[i]);
    }
    for (auto &x : v) {
        x /= std::sqrt(norm);
    }
    basis.push_back(v);
    std::vector<cplx> w;
    for (std::size_t k = 0; k < m; ++k) {
        op.apply(basis[k], w);
        cplx a{};
        for (std::size_t i = 0; i < dim; ++i) {
            a += std::conj(basis[k][i]) * w[i];
        }
        alpha.push_back(a.real());
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (const auto &q : basis) {
                cplx c{};
                for (std::size_t i = 0; i < dim; ++i) {
                    c += std::conj(q[i]) * w[i];
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    w[i] -= c * q[i];
                }
            }
        }
        double b = 0.0;
        for (const auto &x : w) {
            b += std::norm(x);
        }
        b = std::sqrt(b);
        if (b < 1e-12 || k + 1 == m) {
            break;
        }
        beta.push_back(b);
        for (auto &x : w) {
            x /= b;
        }
        basis.push_back(w);
    }
    const auto n = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace detail

/// Sum over unordered pairs of layers (bond groups and singles) of the
/// operator norm of their commutator.
inline double commutator_norm(const HamiltonianTerms &terms) {
    if (terms.n_qubits > 12) {
        throw Error(ErrorCode::UnsupportedSize,
                    "commutator_norm: more than 12 qubits; use the asymptotic bound O(l (d^2 log d)^2)");
    }
    std::vector<PauliSum> layers = terms.groups;
    layers.push_back(terms.singles);
    double total = 0.0;
    for (std::size_t a = 0; a < layers.size(); ++a) {
        for (std::size_t b = a + 1; b < layers.size(); ++b) {
            // i[A, B] is Hermitian with the same norm.
            const PauliSum c = commutator(layers[b], layers[a]) * cplx{0.0, 1.0};
            total += detail::spectral_norm_hermitian(c, terms.n_qubits);
        }
    }
    return total;
}

/// First-order product-formula bound alpha_comm T^2 / (2 N), T converted to
/// the dimensionless evolution parameter. `alpha_comm` in cm^-2.
inline double trotter_error_bound(double alpha_comm, double total_time_ps, std::size_t n_steps) {
    require(n_steps >= 1, "trotter_error_bound: n_steps must be >= 1");
    const double tau = units::phase(1.0, total_time_ps);
    return alpha_comm * tau * tau / (2.0 * static_cast<double>(n_steps));
}

/// OpenQASM 2.0 text of the circuit.
inline std::string to_qasm(const Circuit &c, const std::string &header_comment = {}) {
    std::ostringstream os;
    if (!header_comment.empty()) {
        std::istringstream lines(header_comment);
        std::string line;
        while (std::getline(lines, line)) {
            os << "// " << line << '\n';
        }
    }
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    os << "qreg q[" << c.n_qubits << "];\n";
    char buf[64];
    for (const auto &g : c.gates) {
        switch (g.kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ: {
            const char *name = g.kind == GateKind::RX ? "rx" : g.kind == GateKind::RY ? "ry" : "rz";
            std::snprintf(buf, sizeof buf, "%.17g", g.angle);
            os << name << '(' << buf << ") q[" << g.qubit << "];\n";
            break;
        }
        case GateKind::H:
            os << "h q[" << g.qubit << "];\n";
            break;
        case GateKind::S:
            os << "s q[" << g.qubit << "];\n";
            break;
        case GateKind::Sdg:
            os << "sdg q[" << g.qubit << "];\n";
            break;
        case GateKind::CNOT:
            os << "cx q[" << g.qubit << "],q[" << g.target << "];\n";
            break;
        }
    }
    return os.str();
}

} // namespace qtedopa
