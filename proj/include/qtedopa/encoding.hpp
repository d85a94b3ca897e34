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

#include <bit>
#include <cmath>
#include <cstddef>
#include <string>

#include "error.hpp"
#include "pauli.hpp"

namespace qtedopa {

enum class EncodingScheme { Unary, Binary };

inline std::string to_string(EncodingScheme s) {
    return s == EncodingScheme::Unary ? "unary" : "binary";
}

/// How one d-level oscillator maps onto qubits. Unary: qubit j set means
/// level j (d qubits). Binary: positional, most significant bit on the
/// lowest qubit of the range (log2 d qubits).
struct BosonEncoding {
    EncodingScheme scheme = EncodingScheme::Binary;
    std::size_t d = 2;

    static BosonEncoding make(EncodingScheme scheme, std::size_t d) {
        if (scheme == EncodingScheme::Binary) {
            require(d >= 2 && std::has_single_bit(d),
                    "binary encoding requires d to be a power of two (got d=" +
                        std::to_string(d) + ")");
        } else {
            require(d >= 2, "unary encoding requires d >= 2");
        }
        return {scheme, d};
    }

    [[nodiscard]] std::size_t qubits_per_oscillator() const {
        return scheme == EncodingScheme::Unary ? d
                                               : static_cast<std::size_t>(std::countr_zero(d));
    }

    /// Register index of oscillator level m, in the local qubit numbering.
    [[nodiscard]] std::size_t basis_index(std::size_t level) const {
        if (scheme == EncodingScheme::Unary) {
            return std::size_t{1} << level;
        }
        const std::size_t k = qubits_per_oscillator();
        std::size_t index = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if ((level >> (k - 1 - j)) & 1U) {
                index |= std::size_t{1} << j;
            }
        }
        return index;
    }
};

/// Contiguous block of qubits [first, first + count).
struct QubitRange {
    std::size_t first = 0;
    std::size_t count = 0;

    [[nodiscard]] std::size_t end() const { return first + count; }
    [[nodiscard]] bool contains(std::size_t q) const { return q >= first && q < end(); }
    [[nodiscard]] bool overlaps(const QubitRange &o) const {
        return first < o.end() && o.first < end();
    }
    bool operator==(const QubitRange &) const = default;
};

enum class LadderOp { Create, Annihilate, Number };

/// Truncated ladder matrices in the level basis: b|m> = sqrt(m)|m-1>, so the
/// top level is annihilated by b^dagger.
inline DenseMatrix ladder_matrix(std::size_t d, LadderOp which) {
    const auto n = static_cast<Eigen::Index>(d);
    DenseMatrix m = DenseMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const double amp = std::sqrt(static_cast<double>(k + 1));
        if (which == LadderOp::Annihilate) {
            m(k, k + 1) = amp;
        } else if (which == LadderOp::Create) {
            m(k + 1, k) = amp;
        }
    }
    if (which == LadderOp::Number) {
        for (Eigen::Index k = 0; k < n; ++k) {
            m(k, k) = static_cast<double>(k);
        }
    }
    return m;
}

namespace detail {

/// |0><1| = (X + iY)/2 and |1><0| = (X - iY)/2 on one qubit.
inline PauliSum lower_qubit(std::size_t q) {
    return PauliSum::single(q, Axis::X, 0.5) + PauliSum::single(q, Axis::Y, cplx{0.0, 0.5});
}

inline PauliSum raise_qubit(std::size_t q) {
    return PauliSum::single(q, Axis::X, 0.5) + PauliSum::single(q, Axis::Y, cplx{0.0, -0.5});
}

/// (I - Z)/2 on one qubit.
inline PauliSum occupied(std::size_t q) {
    return PauliSum::identity(0.5) + PauliSum::single(q, Axis::Z, -0.5);
}

/// Level-basis operator embedded in the 2^k register of a binary oscillator,
/// zero on unused register states.
inline DenseMatrix embed_binary(const BosonEncoding &enc, const DenseMatrix &levels) {
    const std::size_t dim = std::size_t{1} << enc.qubits_per_oscillator();
    DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(dim),
                                      static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < enc.d; ++r) {
        for (std::size_t c = 0; c < enc.d; ++c) {
            m(static_cast<Eigen::Index>(enc.basis_index(r)),
              static_cast<Eigen::Index>(enc.basis_index(c))) =
                levels(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return m;
}

} // namespace detail

/// Ladder or number operator of one oscillator stored on qubits
/// [first_qubit, first_qubit + qubits_per_oscillator).
inline PauliSum encode_boson(const BosonEncoding &enc, LadderOp which,
                             std::size_t first_qubit = 0) {
    if (enc.scheme == EncodingScheme::Binary) {
        return matrix_to_pauli(detail::embed_binary(enc, ladder_matrix(enc.d, which)))
            .shifted(first_qubit);
    }
    PauliSum out;
    for (std::size_t j = 0; j < enc.d; ++j) {
        const std::size_t q = first_qubit + j;
        if (which == LadderOp::Number) {
            if (j > 0) {
                out += detail::occupied(q) * static_cast<double>(j);
            }
            continue;
        }
        if (j + 1 == enc.d) {
            break;
        }
        const double amp = std::sqrt(static_cast<double>(j + 1));
        // b moves the excitation from qubit j+1 to qubit j.
        if (which == LadderOp::Annihilate) {
            out += detail::raise_qubit(q) * detail::lower_qubit(q + 1) * amp;
        } else {
            out += detail::lower_qubit(q) * detail::raise_qubit(q + 1) * amp;
        }
    }
    return out;
}

inline PauliSum encode_boson(const BosonEncoding &enc, LadderOp which, QubitRange range) {
    require(range.count == enc.qubits_per_oscillator(),
            "encode_boson: range size does not match the encoding");
    return encode_boson(enc, which, range.first);
}

/// Two-level exciton on a single qubit: c^dagger = (X - iY)/2.
inline PauliSum encode_hardcore_boson(std::size_t site_qubit, LadderOp which) {
    switch (which) {
    case LadderOp::Create:
        return detail::raise_qubit(site_qubit);
    case LadderOp::Annihilate:
        return detail::lower_qubit(site_qubit);
    case LadderOp::Number:
        break;
    }
    return detail::occupied(site_qubit);
}

/// b_a^dagger b_b + b_b^dagger b_a.
inline PauliSum hopping_term_pauli(const BosonEncoding &enc, QubitRange osc_a, QubitRange osc_b) {
    require(!osc_a.overlaps(osc_b), "hopping_term_pauli: oscillator ranges overlap");
    const PauliSum forward = encode_boson(enc, LadderOp::Create, osc_a) *
                             encode_boson(enc, LadderOp::Annihilate, osc_b);
    return forward + forward.adjoint();
}

/// b^dagger + b.
inline PauliSum displacement_pauli(const BosonEncoding &enc, QubitRange osc) {
    return encode_boson(enc, LadderOp::Create, osc) + encode_boson(enc, LadderOp::Annihilate, osc);
}

} // namespace qtedopa
