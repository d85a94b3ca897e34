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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chain_mapping.hpp"
#include "encoding.hpp"
#include "error.hpp"
#include "pauli.hpp"

namespace qtedopa {

struct SiteCoupling {
    std::size_t a = 0;
    std::size_t b = 0;
    double g = 0.0; ///< cm^-1
};

/// Excitonic system: one two-level site per molecule, coupled to its bath
/// through Z.
struct SystemSpec {
    std::vector<double> site_energies; ///< cm^-1
    std::vector<SiteCoupling> couplings;

    [[nodiscard]] std::size_t n_sites() const { return site_energies.size(); }

    void validate() const {
        require(n_sites() >= 1, "system: at least one site is required");
        for (double e : site_energies) {
            require(std::isfinite(e), "system: site energies must be finite");
        }
        for (const auto &c : couplings) {
            require(c.a < n_sites() && c.b < n_sites() && c.a != c.b,
                    "system: couplings must reference two distinct valid sites");
            require(std::isfinite(c.g), "system: coupling must be finite");
        }
    }
};

struct ChainLayout {
    std::size_t site = 0;
    /// Oscillator registers, head (coupled to the site) first.
    std::vector<QubitRange> oscillators;
};

struct QubitLayout {
    std::vector<std::size_t> system_qubits;
    std::vector<ChainLayout> chains;
    BosonEncoding encoding;
    std::size_t total_qubits = 0;

    /// Throws unless every register is disjoint and inside the register file.
    void validate() const {
        std::vector<QubitRange> ranges;
        for (std::size_t q : system_qubits) {
            ranges.push_back({q, 1});
        }
        for (const auto &c : chains) {
            require(c.site < system_qubits.size(), "layout: chain references an unknown site");
            for (const auto &r : c.oscillators) {
                require(r.count == encoding.qubits_per_oscillator(),
                        "layout: oscillator register size does not match the encoding");
                ranges.push_back(r);
            }
        }
        for (std::size_t i = 0; i < ranges.size(); ++i) {
            require(ranges[i].end() <= total_qubits, "layout: register outside the qubit file");
            for (std::size_t j = i + 1; j < ranges.size(); ++j) {
                require(!ranges[i].overlaps(ranges[j]), "layout: overlapping registers");
            }
        }
    }

    /// Register (site qubit or oscillator block) containing `qubit`.
    [[nodiscard]] std::optional<QubitRange> unit_of(std::size_t qubit) const {
        for (std::size_t q : system_qubits) {
            if (q == qubit) {
                return QubitRange{q, 1};
            }
        }
        for (const auto &c : chains) {
            for (const auto &r : c.oscillators) {
                if (r.contains(qubit)) {
                    return r;
                }
            }
        }
        return std::nullopt;
    }
};

/// Layout with one chain of `chain_length` oscillators per site.
///
/// Up to two sites are laid out as one line, chain 0 tail .. head, site 0,
/// site 1, chain 1 head .. tail, so every interaction is nearest-neighbour.
/// Larger systems place the site qubits first, then each chain head to tail.
inline QubitLayout make_layout(std::size_t n_sites, std::size_t chain_length,
                               const BosonEncoding &enc) {
    require(n_sites >= 1, "make_layout: at least one site is required");
    const std::size_t k = enc.qubits_per_oscillator();
    QubitLayout layout;
    layout.encoding = enc;
    layout.chains.resize(n_sites);
    for (std::size_t s = 0; s < n_sites; ++s) {
        layout.chains[s].site = s;
        layout.chains[s].oscillators.resize(chain_length);
    }
    std::size_t next = 0;
    if (n_sites <= 2) {
        for (std::size_t n = chain_length; n-- > 0;) {
            layout.chains[0].oscillators[n] = {next, k};
            next += k;
        }
        for (std::size_t s = 0; s < n_sites; ++s) {
            layout.system_qubits.push_back(next++);
        }
        if (n_sites == 2) {
            for (std::size_t n = 0; n < chain_length; ++n) {
                layout.chains[1].oscillators[n] = {next, k};
                next += k;
            }
        }
    } else {
        for (std::size_t s = 0; s < n_sites; ++s) {
            layout.system_qubits.push_back(next++);
        }
        for (auto &c : layout.chains) {
            for (auto &r : c.oscillators) {
                r = {next, k};
                next += k;
            }
        }
    }
    layout.total_qubits = next;
    return layout;
}

/// sum_m eps_m (I - Z_m)/2 + sum g (X_a X_b + Y_a Y_b)/2, site m on
/// `qubits[m]` (identity placement when `qubits` is empty). Keeps the
/// identity component.
inline PauliSum build_system(const SystemSpec &spec, const std::vector<std::size_t> &qubits = {}) {
    spec.validate();
    const auto qubit = [&](std::size_t m) { return qubits.empty() ? m : qubits.at(m); };
    PauliSum h;
    for (std::size_t m = 0; m < spec.n_sites(); ++m) {
        h += encode_hardcore_boson(qubit(m), LadderOp::Number) * spec.site_energies[m];
    }
    for (const auto &c : spec.couplings) {
        const PauliSum forward = encode_hardcore_boson(qubit(c.a), LadderOp::Create) *
                                 encode_hardcore_boson(qubit(c.b), LadderOp::Annihilate);
        h += (forward + forward.adjoint()) * c.g;
    }
    return h;
}

/// sum_n w_n b_n^dagger b_n + sum_n t_{n+1,n} (b_{n+1}^dagger b_n + h.c.).
inline PauliSum build_chain(const ChainCoefficients &coeffs, const BosonEncoding &enc,
                            const std::vector<QubitRange> &ranges) {
    require(ranges.size() == coeffs.length(),
            "build_chain: need one qubit range per oscillator (got " +
                std::to_string(ranges.size()) + " for " + std::to_string(coeffs.length()) + ")");
    PauliSum h;
    for (std::size_t n = 0; n < ranges.size(); ++n) {
        h += encode_boson(enc, LadderOp::Number, ranges[n]) * coeffs.w[n];
    }
    for (std::size_t n = 0; n + 1 < ranges.size(); ++n) {
        h += hopping_term_pauli(enc, ranges[n + 1], ranges[n]) * coeffs.t[n];
    }
    return h;
}

/// t0 Z_site (b^dagger + b) on the chain head.
inline PauliSum build_interaction(std::size_t site_qubit, QubitRange head, double t0,
                                  const BosonEncoding &enc) {
    require(!head.contains(site_qubit), "build_interaction: site qubit inside oscillator register");
    if (t0 == 0.0) {
        return {};
    }
    return PauliSum::single(site_qubit, Axis::Z, t0) * displacement_pauli(enc, head);
}

/// Hamiltonian split for a product formula. Terms acting on one register
/// (a site or one oscillator) go to `singles`; two-register terms go to
/// `groups`, where no two bonds of one group share a register.
struct HamiltonianTerms {
    PauliSum singles;
    /// groups[0] is the odd layer and groups[1] the even layer on a line.
    std::vector<PauliSum> groups;
    /// Bonds (pairs of registers) assigned to each group.
    std::vector<std::vector<std::pair<QubitRange, QubitRange>>> group_bonds;
    /// Dropped identity component, cm^-1.
    double constant = 0.0;
    std::size_t n_qubits = 0;

    [[nodiscard]] PauliSum h_sing() const { return singles; }
    [[nodiscard]] PauliSum h_odd() const { return groups.size() > 0 ? groups[0] : PauliSum{}; }
    [[nodiscard]] PauliSum h_even() const { return groups.size() > 1 ? groups[1] : PauliSum{}; }

    [[nodiscard]] PauliSum total() const {
        PauliSum h = singles;
        for (const auto &g : groups) {
            h += g;
        }
        return h;
    }
};

/// Full Hamiltonian (constant dropped) on `layout`. `chains[s]` holds the
/// coefficients for the chain of site s; a single entry is shared by all.
inline PauliSum build_total(const SystemSpec &spec, const std::vector<ChainCoefficients> &chains,
                            const QubitLayout &layout) {
    spec.validate();
    layout.validate();
    require(layout.system_qubits.size() == spec.n_sites(), "assemble: layout/site count mismatch");
    require(chains.size() == 1 || chains.size() == layout.chains.size(),
            "assemble: need one coefficient set, or one per chain");
    PauliSum h = build_system(spec, layout.system_qubits);
    for (std::size_t c = 0; c < layout.chains.size(); ++c) {
        const auto &chain = layout.chains[c];
        if (chain.oscillators.empty()) {
            continue;
        }
        const ChainCoefficients &coeffs = chains.size() == 1 ? chains[0] : chains[c];
        require(coeffs.length() >= chain.oscillators.size(),
                "assemble: chain coefficients shorter than the chain");
        ChainCoefficients used = coeffs;
        used.w.resize(chain.oscillators.size());
        used.t.resize(chain.oscillators.size() - 1);
        h += build_chain(used, layout.encoding, chain.oscillators);
        h += build_interaction(layout.system_qubits[chain.site], chain.oscillators.front(),
                               used.t0, layout.encoding);
    }
    return h;
}

/// Split the Hamiltonian into single-register terms and bond groups. Bonds
/// are ordered by position and greedily coloured, which reproduces strict
/// odd/even alternation on a line and needs extra groups only when the bond
/// graph requires them.
inline HamiltonianTerms assemble(const SystemSpec &spec,
                                 const std::vector<ChainCoefficients> &chains,
                                 const QubitLayout &layout) {
    const PauliSum h = build_total(spec, chains, layout);
    HamiltonianTerms out;
    out.n_qubits = layout.total_qubits;
    out.constant = h.constant().real();

    using Bond = std::pair<QubitRange, QubitRange>;
    const auto bond_less = [](const Bond &a, const Bond &b) {
        return std::pair{a.first.first, a.second.first} < std::pair{b.first.first, b.second.first};
    };
    std::map<std::pair<std::size_t, std::size_t>, std::vector<PauliString>> by_bond;
    std::vector<Bond> bonds;
    std::vector<PauliString> singles;
    const PauliSum body = h.without_constant();
    for (const auto &t : body.terms()) {
        std::vector<QubitRange> units;
        for (auto [q, a] : t.word.factors) {
            const auto u = layout.unit_of(q);
            require(u.has_value(), "assemble: term on an unassigned qubit");
            if (std::find(units.begin(), units.end(), *u) == units.end()) {
                units.push_back(*u);
            }
        }
        if (units.size() == 1) {
            singles.push_back(t);
            continue;
        }
        require(units.size() == 2, "assemble: term couples more than two registers");
        std::sort(units.begin(), units.end(),
                  [](const QubitRange &a, const QubitRange &b) { return a.first < b.first; });
        const Bond bond{units[0], units[1]};
        auto &slot = by_bond[{bond.first.first, bond.second.first}];
        if (slot.empty()) {
            bonds.push_back(bond);
        }
        slot.push_back(t);
    }
    out.singles = PauliSum(std::move(singles));
    std::sort(bonds.begin(), bonds.end(), bond_less);

    std::vector<std::size_t> colour(bonds.size());
    for (std::size_t i = 0; i < bonds.size(); ++i) {
        std::set<std::size_t> taken;
        for (std::size_t j = 0; j < i; ++j) {
            const bool share = bonds[i].first == bonds[j].first ||
                               bonds[i].first == bonds[j].second ||
                               bonds[i].second == bonds[j].first ||
                               bonds[i].second == bonds[j].second;
            if (share) {
                taken.insert(colour[j]);
            }
        }
        std::size_t c = 0;
        while (taken.contains(c)) {
            ++c;
        }
        colour[i] = c;
    }
    const std::size_t n_groups = bonds.empty() ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
    std::vector<std::vector<PauliString>> group_terms(n_groups);
    out.group_bonds.resize(n_groups);
    for (std::size_t i = 0; i < bonds.size(); ++i) {
        const auto &terms = by_bond[{bonds[i].first.first, bonds[i].second.first}];
        group_terms[colour[i]].insert(group_terms[colour[i]].end(), terms.begin(), terms.end());
        out.group_bonds[colour[i]].push_back(bonds[i]);
    }
    for (auto &g : group_terms) {
        out.groups.emplace_back(std::move(g));
    }
    return out;
}

/// Nearest-neighbour ring of `n_sites` with uniform coupling `g`.
inline SystemSpec ring_system(std::vector<double> energies, double g) {
    SystemSpec spec;
    spec.site_energies = std::move(energies);
    const std::size_t n = spec.n_sites();
    for (std::size_t m = 0; m + 1 < n; ++m) {
        spec.couplings.push_back({m, m + 1, g});
    }
    if (n > 2) {
        spec.couplings.push_back({n - 1, 0, g});
    }
    return spec;
}

} // namespace qtedopa
