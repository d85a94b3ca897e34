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
#include <optional>
#include <string>
#include <vector>

#include "chain_mapping.hpp"
#include "encoding.hpp"
#include "error.hpp"
#include "hamiltonian.hpp"
#include "pauli.hpp"
#include "spectral_density.hpp"
#include "statevector.hpp"
#include "trotter.hpp"

namespace qtedopa {

/// Reference used for the error column.
enum class OracleMode {
    None,
    /// Exact propagation of the same encoded Hamiltonian (Trotter error only).
    SameD,
    /// Same chain length with a larger oscillator truncation.
    HigherD,
    /// Same truncation with a longer chain (chain truncation error).
    LongChain,
};

inline std::string to_string(OracleMode m) {
    switch (m) {
    case OracleMode::None:
        return "none";
    case OracleMode::SameD:
        return "same-d";
    case OracleMode::HigherD:
        return "higher-d";
    case OracleMode::LongChain:
        return "long-chain";
    }
    return "?";
}

inline OracleMode oracle_mode_from_string(const std::string &s) {
    if (s == "none") {
        return OracleMode::None;
    }
    if (s == "same-d") {
        return OracleMode::SameD;
    }
    if (s == "higher-d") {
        return OracleMode::HigherD;
    }
    if (s == "long-chain") {
        return OracleMode::LongChain;
    }
    fail(ErrorCode::InvalidInput,
         "oracle mode must be one of none, same-d, higher-d, long-chain (got '" + s + "')");
}

struct BathSpec {
    double alpha = 0.25;
    double omega_c = 100.0;
    double omega_min = 0.0;
    double omega_max = 1000.0;
    std::optional<double> temperature_K;
    bool pi_normalization = true;

    /// Density fed to the chain mapping (thermalized when a temperature is set).
    [[nodiscard]] SpectralDensity density() const {
        const auto base = SpectralDensity::ohmic(alpha, omega_c, omega_min, omega_max);
        return temperature_K ? thermalize(base, *temperature_K) : base;
    }
};

/// Two sites at 12410 and 12530 cm^-1 with coupling 87.7 cm^-1.
inline SystemSpec dimer_system() {
    SystemSpec s;
    s.site_energies = {12410.0, 12530.0};
    s.couplings = {{0, 1, 87.7}};
    return s;
}

struct DynamicsConfig {
    SystemSpec system = dimer_system();
    BathSpec bath;
    std::size_t chain_length = 5;
    std::size_t d = 2;
    EncodingScheme encoding = EncodingScheme::Binary;
    double dt_ps = 0.01;
    std::size_t n_steps = 10;
    OracleMode oracle = OracleMode::None;
    /// Truncation of the higher-d oracle.
    std::size_t oracle_d = 4;
    /// Chain length of the long-chain oracle.
    std::size_t reference_length = 9;
    /// Largest register the oracle may propagate.
    std::size_t oracle_max_qubits = ExactPropagator::default_max_qubits;
    std::size_t excited_site = 0;
    /// Site whose population defines the error.
    std::size_t observed_site = 1;

    void validate() const {
        system.validate();
        require(chain_length >= 1, "chain.length must be >= 1");
        (void)BosonEncoding::make(encoding, d);
        require(dt_ps > 0.0 && std::isfinite(dt_ps), "evolution.dt_ps must be > 0");
        require(n_steps >= 1, "evolution.n_steps must be >= 1");
        require(excited_site < system.n_sites(), "system.excited_site out of range");
        require(observed_site < system.n_sites(), "system.observed_site out of range");
        if (oracle == OracleMode::HigherD) {
            require(oracle_d > d, "oracle.d must exceed chain.d");
            (void)BosonEncoding::make(encoding, oracle_d);
        }
        if (oracle == OracleMode::LongChain) {
            require(reference_length > chain_length,
                    "oracle.reference_length must exceed chain.length");
        }
    }
};

struct DynamicsResult {
    /// Step boundaries 0, dt, ..., N dt (ps).
    std::vector<double> times;
    /// Sector-renormalized site populations per time point.
    std::vector<std::vector<double>> p_site;
    /// Oracle populations (empty without an oracle).
    std::vector<std::vector<double>> oracle_p_site;
    /// |P_circuit - P_oracle| on the observed site.
    std::vector<double> epsilon;
    /// Single-excitation mass before renormalization.
    std::vector<double> norm_in_sector;
    ChainCoefficients chain;
    std::size_t n_qubits = 0;
    std::size_t oracle_qubits = 0;
    std::size_t cnot_count = 0;
    std::size_t gates_per_step = 0;
    /// Identity component removed from the Hamiltonian (cm^-1, global phase).
    double dropped_constant = 0.0;

    [[nodiscard]] bool has_oracle() const { return !epsilon.empty(); }
};

namespace detail {

/// H minus the mean site energy times the system excitation number. The
/// shift commutes with H and only changes a global phase inside a sector of
/// fixed excitation number, but it narrows the spectrum the Krylov solver
/// must resolve.
inline PauliSum sector_shifted(const PauliSum &h, const SystemSpec &spec,
                               const QubitLayout &layout) {
    double mean = 0.0;
    for (double e : spec.site_energies) {
        mean += e;
    }
    mean /= static_cast<double>(spec.n_sites());
    PauliSum shifted = h;
    for (std::size_t q : layout.system_qubits) {
        shifted += encode_hardcore_boson(q, LadderOp::Number) * (-mean);
    }
    return shifted;
}

} // namespace detail

struct OracleRun {
    /// Sector-renormalized populations at every step boundary.
    std::vector<std::vector<double>> p_site;
    std::size_t n_qubits = 0;
};

/// Exact populations for the oracle selected in `cfg` (`cfg.oracle` must not
/// be None). `coeffs` must cover the oracle's chain length.
inline OracleRun oracle_populations(const DynamicsConfig &cfg, const ChainCoefficients &coeffs) {
    require(cfg.oracle != OracleMode::None, "oracle_populations: no oracle selected");
    std::size_t length = cfg.chain_length;
    std::size_t d = cfg.d;
    if (cfg.oracle == OracleMode::HigherD) {
        d = cfg.oracle_d;
    } else if (cfg.oracle == OracleMode::LongChain) {
        length = cfg.reference_length;
    }
    const auto enc = BosonEncoding::make(cfg.encoding, d);
    const auto layout = make_layout(cfg.system.n_sites(), length, enc);
    const PauliSum h = detail::sector_shifted(build_total(cfg.system, {coeffs}, layout),
                                              cfg.system, layout);
    const ExactPropagator prop(h, layout.total_qubits, 1e-10, cfg.oracle_max_qubits);
    OracleRun run;
    run.n_qubits = layout.total_qubits;
    Statevector psi = init_state(layout, cfg.excited_site);
    run.p_site.push_back(measure_populations(psi, layout, true).p_site);
    for (std::size_t k = 0; k < cfg.n_steps; ++k) {
        psi = prop.evolve(psi, cfg.dt_ps);
        run.p_site.push_back(measure_populations(psi, layout, true).p_site);
    }
    return run;
}

/// Trotterized dynamics of the excitonic system with one chain per site,
/// sampled at every step boundary, optionally against an exact oracle.
inline DynamicsResult run_dynamics(const DynamicsConfig &cfg) {
    cfg.validate();
    const auto enc = BosonEncoding::make(cfg.encoding, cfg.d);
    const auto layout = make_layout(cfg.system.n_sites(), cfg.chain_length, enc);

    std::size_t needed = cfg.chain_length;
    if (cfg.oracle == OracleMode::LongChain) {
        needed = cfg.reference_length;
    }
    ChainOptions opts;
    opts.pi_normalization = cfg.bath.pi_normalization;

    DynamicsResult out;
    out.chain = chain_coefficients(cfg.bath.density(), needed, opts);
    out.n_qubits = layout.total_qubits;

    const HamiltonianTerms terms = assemble(cfg.system, {out.chain}, layout);
    out.dropped_constant = terms.constant;
    const Circuit step = build_trotter_circuit(terms, cfg.dt_ps, 1);
    out.gates_per_step = step.gates.size();
    out.cnot_count = step.cnot_count() * cfg.n_steps;

    Statevector psi = init_state(layout, cfg.excited_site);
    const auto record = [&](double t) {
        const auto pops = measure_populations(psi, layout, true);
        out.times.push_back(t);
        out.p_site.push_back(pops.p_site);
        out.norm_in_sector.push_back(pops.sector_mass);
    };
    record(0.0);
    for (std::size_t k = 1; k <= cfg.n_steps; ++k) {
        psi = apply_circuit(std::move(psi), step);
        record(static_cast<double>(k) * cfg.dt_ps);
    }

    if (cfg.oracle != OracleMode::None) {
        auto oracle = oracle_populations(cfg, out.chain);
        out.oracle_qubits = oracle.n_qubits;
        out.oracle_p_site = std::move(oracle.p_site);
        for (std::size_t k = 0; k < out.times.size(); ++k) {
            out.epsilon.push_back(
                simulation_error(out.p_site[k], out.oracle_p_site[k], cfg.observed_site));
        }
    }
    return out;
}

} // namespace qtedopa
