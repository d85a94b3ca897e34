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

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Eigenvalues>

#include "error.hpp"
#include "hamiltonian.hpp"
#include "parallel.hpp"
#include "pauli.hpp"
#include "trotter.hpp"
#include "units.hpp"

namespace qtedopa {

/// Amplitudes over 2^n basis states, qubit q on bit q of the index.
class Statevector {
  public:
    Statevector() = default;

    explicit Statevector(std::size_t n_qubits, std::size_t basis_state = 0)
        : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits) {
        require(n_qubits <= 30, "Statevector: at most 30 qubits");
        require(basis_state < amps_.size(), "Statevector: basis state out of range");
        amps_[basis_state] = 1.0;
    }

    Statevector(std::size_t n_qubits, std::vector<cplx> amplitudes)
        : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
        require(amps_.size() == (std::size_t{1} << n_qubits), "Statevector: wrong amplitude count");
    }

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] const std::vector<cplx> &amplitudes() const { return amps_; }
    [[nodiscard]] std::vector<cplx> &amplitudes() { return amps_; }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm() const {
        std::vector<double> p(amps_.size());
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            p[i] = std::norm(amps_[i]);
        }
        return std::sqrt(quad::pairwise_sum(p));
    }

    void apply(const Gate &g) {
        require(g.qubit < n_qubits_, "Statevector: gate qubit out of range");
        switch (g.kind) {
        case GateKind::H: {
            const double r = std::numbers::sqrt2 / 2.0;
            apply_1q(g.qubit, {r, r, r, -r});
            break;
        }
        case GateKind::S:
            apply_phase(g.qubit, cplx{0.0, 1.0});
            break;
        case GateKind::Sdg:
            apply_phase(g.qubit, cplx{0.0, -1.0});
            break;
        case GateKind::RZ: {
            const cplx lo = std::polar(1.0, -0.5 * g.angle);
            const cplx hi = std::polar(1.0, 0.5 * g.angle);
            const std::size_t mask = std::size_t{1} << g.qubit;
            parallel_for(amps_.size(), [&](std::size_t b, std::size_t e) {
                for (std::size_t i = b; i < e; ++i) {
                    amps_[i] *= (i & mask) ? hi : lo;
                }
            });
            break;
        }
        case GateKind::RX: {
            const double c = std::cos(0.5 * g.angle);
            const double s = std::sin(0.5 * g.angle);
            apply_1q(g.qubit, {c, cplx{0.0, -s}, cplx{0.0, -s}, c});
            break;
        }
        case GateKind::RY: {
            const double c = std::cos(0.5 * g.angle);
            const double s = std::sin(0.5 * g.angle);
            apply_1q(g.qubit, {c, -s, s, c});
            break;
        }
        case GateKind::CNOT: {
            require(g.target < n_qubits_ && g.target != g.qubit, "Statevector: bad CNOT");
            const std::size_t cm = std::size_t{1} << g.qubit;
            const std::size_t tm = std::size_t{1} << g.target;
            parallel_for(amps_.size(), [&](std::size_t b, std::size_t e) {
                for (std::size_t i = b; i < e; ++i) {
                    if ((i & cm) && !(i & tm)) {
                        std::swap(amps_[i], amps_[i | tm]);
                    }
                }
            });
            break;
        }
        }
    }

  private:
    /// 2x2 matrix {m00, m01, m10, m11} on `qubit`.
    void apply_1q(std::size_t qubit, const std::array<cplx, 4> &m) {
        const std::size_t mask = std::size_t{1} << qubit;
        // Each pair is owned by the index with the bit clear.
        parallel_for(amps_.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                if (i & mask) {
                    continue;
                }
                const cplx a0 = amps_[i];
                const cplx a1 = amps_[i | mask];
                amps_[i] = m[0] * a0 + m[1] * a1;
                amps_[i | mask] = m[2] * a0 + m[3] * a1;
            }
        });
    }

    void apply_phase(std::size_t qubit, cplx phase) {
        const std::size_t mask = std::size_t{1} << qubit;
        parallel_for(amps_.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                if (i & mask) {
                    amps_[i] *= phase;
                }
            }
        });
    }

    std::size_t n_qubits_ = 0;
    std::vector<cplx> amps_;
};

inline Statevector apply_circuit(Statevector state, const Circuit &circuit) {
    require(state.n_qubits() == circuit.n_qubits,
            "apply_circuit: circuit and state register sizes differ");
    for (const auto &g : circuit.gates) {
        state.apply(g);
    }
    return state;
}

/// Dense unitary of a gate list on `n_qubits` (column j = image of |j>).
inline DenseMatrix circuit_unitary(const std::vector<Gate> &gates, std::size_t n_qubits) {
    require(n_qubits <= 12, "circuit_unitary: at most 12 qubits");
    const std::size_t dim = std::size_t{1} << n_qubits;
    DenseMatrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        Statevector s(n_qubits, j);
        for (const auto &g : gates) {
            s.apply(g);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s[i];
        }
    }
    return u;
}

/// Product state: oscillators in vacuum, `excited_site` in |1>, other
/// sites in |0>.
inline Statevector init_state(const QubitLayout &layout, std::size_t excited_site) {
    require(excited_site < layout.system_qubits.size(), "init_state: excited site out of range");
    // Level 0 is the all-zero register in both encodings except unary, where
    // it is the first qubit set.
    std::size_t index = std::size_t{1} << layout.system_qubits[excited_site];
    if (layout.encoding.scheme == EncodingScheme::Unary) {
        for (const auto &c : layout.chains) {
            for (const auto &r : c.oscillators) {
                index |= std::size_t{1} << r.first;
            }
        }
    }
    return Statevector(layout.total_qubits, index);
}

/// exp(-i H tau) for a fixed Hermitian Pauli sum, with tau = 2 pi c E t.
class ExactPropagator {
  public:
    enum class Method { Eigen, Krylov };

    static constexpr std::size_t default_max_qubits = 14;

    /// `max_qubits` bounds the register; above 10 qubits Krylov is used.
    ExactPropagator(const PauliSum &h, std::size_t n_qubits, double krylov_tol = 1e-10,
                    std::size_t max_qubits = default_max_qubits)
        : n_qubits_(n_qubits), op_(h, n_qubits), tol_(krylov_tol) {
        const PauliSum body = h.without_constant();
        for (const auto &t : body.terms()) {
            width_ += std::abs(t.coefficient);
        }
        if (n_qubits > max_qubits) {
            throw Error(ErrorCode::UnsupportedSize,
                        "exact_evolve: " + std::to_string(n_qubits) + " qubits exceeds the limit of " +
                            std::to_string(max_qubits));
        }
        require(h.is_hermitian(), "exact_evolve: Hamiltonian must be Hermitian");
        if (n_qubits <= 10) {
            method_ = Method::Eigen;
            Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h.to_dense(n_qubits));
            evals_ = es.eigenvalues();
            evecs_ = es.eigenvectors();
        } else {
            method_ = Method::Krylov;
        }
    }

    [[nodiscard]] Method method() const { return method_; }

    void force_krylov() { method_ = Method::Krylov; }

    [[nodiscard]] Statevector evolve(const Statevector &state, double t_ps) const {
        require(state.n_qubits() == n_qubits_, "exact_evolve: register size mismatch");
        const double tau = units::phase(1.0, t_ps);
        if (tau == 0.0) {
            return state;
        }
        if (method_ == Method::Eigen) {
            const auto &a = state.amplitudes();
            Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(a.data(), static_cast<Eigen::Index>(a.size()));
            Eigen::VectorXcd c = evecs_.adjoint() * v;
            for (Eigen::Index i = 0; i < c.size(); ++i) {
                c(i) *= std::polar(1.0, -evals_(i) * tau);
            }
            Eigen::VectorXcd out = evecs_ * c;
            return Statevector(n_qubits_, std::vector<cplx>(out.data(), out.data() + out.size()));
        }
        return krylov(state, tau);
    }

  private:
    /// Lanczos propagation; sub-steps until the a-posteriori residual
    /// beta_m |[exp(-i T tau)]_{m,0}| is below tolerance.
    [[nodiscard]] Statevector krylov(const Statevector &state, double tau) const {
        constexpr std::size_t max_dim = 40;
        std::vector<cplx> psi = state.amplitudes();
        double remaining = tau;
        // Sub-steps of at most a few radians of spectral width keep the
        // Krylov space (and its reorthogonalization cost) small.
        double step = width_ > 0.0 ? std::min(tau, 4.0 / width_) : tau;
        int halvings = 0;
        while (remaining > 1e-15 * tau) {
            step = std::min(step, remaining);
            double residual = 0.0;
            std::vector<cplx> next;
            if (krylov_step(psi, step, max_dim, next, residual)) {
                psi = std::move(next);
                remaining -= step;
                continue;
            }
            if (++halvings > 40) {
                throw NumericalError("exact_evolve: Krylov propagation did not converge", residual);
            }
            step *= 0.5;
        }
        return Statevector(n_qubits_, std::move(psi));
    }

    bool krylov_step(const std::vector<cplx> &psi, double tau, std::size_t max_dim,
                     std::vector<cplx> &out, double &residual) const {
        const std::size_t dim = psi.size();
        double nrm = 0.0;
        for (const auto &x : psi) {
            nrm += std::norm(x);
        }
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) {
            out = psi;
            return true;
        }
        std::vector<std::vector<cplx>> basis;
        std::vector<double> alpha;
        std::vector<double> beta;
        basis.emplace_back(psi);
        for (auto &x : basis[0]) {
            x /= nrm;
        }
        std::vector<cplx> w;
        for (std::size_t k = 0; k < max_dim; ++k) {
            op_.apply(basis[k], w);
            cplx a{};
            for (std::size_t i = 0; i < dim; ++i) {
                a += std::conj(basis[k][i]) * w[i];
            }
            alpha.push_back(a.real());
            for (const auto &q : basis) {
                cplx c{};
                for (std::size_t i = 0; i < dim; ++i) {
                    c += std::conj(q[i]) * w[i];
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    w[i] -= c * q[i];
                }
            }
            double b = 0.0;
            for (const auto &x : w) {
                b += std::norm(x);
            }
            b = std::sqrt(b);

            const auto m = static_cast<Eigen::Index>(alpha.size());
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
            for (Eigen::Index i = 0; i < m; ++i) {
                t(i, i) = alpha[static_cast<std::size_t>(i)];
                if (i + 1 < m) {
                    t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
            Eigen::VectorXcd e0(m);
            for (Eigen::Index i = 0; i < m; ++i) {
                e0(i) = std::polar(1.0, -es.eigenvalues()(i) * tau) * es.eigenvectors()(0, i);
            }
            Eigen::VectorXcd coeffs = es.eigenvectors().cast<cplx>() * e0;
            residual = b * std::abs(coeffs(m - 1));
            if (residual < tol_ || b < 1e-14) {
                out.assign(dim, cplx{});
                for (Eigen::Index j = 0; j < m; ++j) {
                    const cplx c = nrm * coeffs(j);
                    const auto &q = basis[static_cast<std::size_t>(j)];
                    for (std::size_t i = 0; i < dim; ++i) {
                        out[i] += c * q[i];
                    }
                }
                return true;
            }
            beta.push_back(b);
            for (auto &x : w) {
                x /= b;
            }
            basis.push_back(w);
        }
        return false;
    }

    std::size_t n_qubits_;
    detail::PauliOperator op_;
    double tol_;
    /// Sum of |coefficients|, an upper bound on the spectral radius.
    double width_ = 0.0;
    Method method_ = Method::Krylov;
    Eigen::VectorXd evals_;
    DenseMatrix evecs_;
};

inline Statevector exact_evolve(const PauliSum &hamiltonian, const Statevector &state, double t_ps) {
    return ExactPropagator(hamiltonian, state.n_qubits()).evolve(state, t_ps);
}

struct Populations {
    /// P(m): probability that site m alone is excited.
    std::vector<double> p_site;
    /// Probability mass in the single-excitation sector of the system.
    double sector_mass = 0.0;
    /// Mass outside the sector (removed when filtering).
    double discarded = 0.0;
};

/// Site populations from the marginal over system qubits. With
/// `sector_filter` the result is renormalized inside the single-excitation
/// sector.
inline Populations measure_populations(const Statevector &state, const QubitLayout &layout,
                                       bool sector_filter) {
    const std::size_t n_sites = layout.system_qubits.size();
    std::uint64_t system_mask = 0;
    for (std::size_t q : layout.system_qubits) {
        system_mask |= std::uint64_t{1} << q;
    }
    std::vector<std::vector<double>> contrib(n_sites);
    std::vector<double> total;
    total.reserve(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state[i]);
        total.push_back(p);
        const std::uint64_t sys = i & system_mask;
        if (std::popcount(sys) != 1) {
            continue;
        }
        for (std::size_t m = 0; m < n_sites; ++m) {
            if (sys == (std::uint64_t{1} << layout.system_qubits[m])) {
                contrib[m].push_back(p);
            }
        }
    }
    Populations out;
    out.p_site.resize(n_sites);
    for (std::size_t m = 0; m < n_sites; ++m) {
        out.p_site[m] = quad::pairwise_sum(contrib[m]);
        out.sector_mass += out.p_site[m];
    }
    out.discarded = quad::pairwise_sum(total) - out.sector_mass;
    if (sector_filter && out.sector_mass > 0.0) {
        for (double &p : out.p_site) {
            p /= out.sector_mass;
        }
    }
    return out;
}

/// |P_a(site) - P_b(site)| for the observed site (site 1 for the dimer).
inline double simulation_error(std::span<const double> p_a, std::span<const double> p_b,
                               std::size_t observed_site = 1) {
    require(p_a.size() == p_b.size(), "simulation_error: population sizes differ");
    require(observed_site < p_a.size(), "simulation_error: observed site out of range");
    return std::abs(p_a[observed_site] - p_b[observed_site]);
}

/// Total variation distance sum |p_a - p_b| / 2.
inline double total_variation_distance(std::span<const double> p_a, std::span<const double> p_b) {
    require(p_a.size() == p_b.size(), "total_variation_distance: population sizes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < p_a.size(); ++i) {
        s += std::abs(p_a[i] - p_b[i]);
    }
    return 0.5 * s;
}

} // namespace qtedopa
