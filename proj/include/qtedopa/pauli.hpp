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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"

namespace qtedopa {

using cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

enum class Axis : std::uint8_t { X = 1, Y = 2, Z = 3 };

inline char axis_char(Axis a) { return a == Axis::X ? 'X' : a == Axis::Y ? 'Y' : 'Z'; }

/// Coefficients with magnitude below this are dropped on canonicalization.
inline constexpr double pauli_prune_threshold = 1e-12;

/// Product of single-qubit Paulis; qubit indices strictly increasing and
/// identities omitted.
struct PauliWord {
    std::vector<std::pair<std::size_t, Axis>> factors;

    [[nodiscard]] std::size_t weight() const { return factors.size(); }

    [[nodiscard]] std::size_t n_qubits() const {
        return factors.empty() ? 0 : factors.back().first + 1;
    }

    /// Bit masks such that the word equals i^{popcount(x & z)} X^x Z^z.
    [[nodiscard]] std::pair<std::uint64_t, std::uint64_t> masks() const {
        std::uint64_t x = 0;
        std::uint64_t z = 0;
        for (auto [q, a] : factors) {
            require(q < 64, "PauliWord: qubit index exceeds 63");
            if (a != Axis::Z) {
                x |= std::uint64_t{1} << q;
            }
            if (a != Axis::X) {
                z |= std::uint64_t{1} << q;
            }
        }
        return {x, z};
    }

    static PauliWord from_masks(std::uint64_t x, std::uint64_t z) {
        PauliWord w;
        for (std::uint64_t bits = x | z; bits != 0; bits &= bits - 1) {
            const auto q = static_cast<std::size_t>(std::countr_zero(bits));
            const bool hx = (x >> q) & 1U;
            const bool hz = (z >> q) & 1U;
            w.factors.emplace_back(q, hx && hz ? Axis::Y : hx ? Axis::X : Axis::Z);
        }
        return w;
    }

    auto operator<=>(const PauliWord &) const = default;
    bool operator==(const PauliWord &) const = default;
};

struct PauliString {
    cplx coefficient{1.0, 0.0};
    PauliWord word;

    /// Build from (qubit, axis) pairs in any order; repeated qubits multiply.
    static PauliString make(cplx coefficient,
                            std::vector<std::pair<std::size_t, Axis>> factors);
};

/// Product of two words: returns (phase, word).
inline std::pair<cplx, PauliWord> multiply(const PauliWord &a, const PauliWord &b) {
    cplx phase{1.0, 0.0};
    PauliWord out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    auto ia = a.factors.begin();
    auto ib = b.factors.begin();
    while (ia != a.factors.end() || ib != b.factors.end()) {
        if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first)) {
            out.factors.push_back(*ia++);
        } else if (ia == a.factors.end() || ib->first < ia->first) {
            out.factors.push_back(*ib++);
        } else {
            const int pa = static_cast<int>(ia->second);
            const int pb = static_cast<int>(ib->second);
            if (pa != pb) {
                // X Y = iZ, Y Z = iX, Z X = iY; reversed order gives -i.
                const bool cyclic = (pb - pa + 3) % 3 == 1;
                phase *= cyclic ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
                out.factors.emplace_back(ia->first, static_cast<Axis>(6 - pa - pb));
            }
            ++ia;
            ++ib;
        }
    }
    return {phase, std::move(out)};
}

/// True when the two words commute.
inline bool commutes(const PauliWord &a, const PauliWord &b) {
    const auto [ax, az] = a.masks();
    const auto [bx, bz] = b.masks();
    return (std::popcount(ax & bz) + std::popcount(az & bx)) % 2 == 0;
}

inline PauliString PauliString::make(cplx coefficient,
                                     std::vector<std::pair<std::size_t, Axis>> factors) {
    PauliString s{coefficient, {}};
    for (auto f : factors) {
        auto [phase, w] = multiply(s.word, PauliWord{{f}});
        s.coefficient *= phase;
        s.word = std::move(w);
    }
    return s;
}

/// Weighted sum of Pauli words, kept canonical: sorted by word, no repeated
/// words, no coefficients below `pauli_prune_threshold`.
class PauliSum {
  public:
    PauliSum() = default;

    explicit PauliSum(std::vector<PauliString> terms) : terms_(std::move(terms)) {
        canonicalize();
    }

    static PauliSum identity(cplx coefficient = 1.0) {
        return PauliSum({PauliString{coefficient, {}}});
    }

    static PauliSum single(std::size_t qubit, Axis axis, cplx coefficient = 1.0) {
        return PauliSum({PauliString{coefficient, PauliWord{{{qubit, axis}}}}});
    }

    [[nodiscard]] const std::vector<PauliString> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool empty() const { return terms_.empty(); }

    [[nodiscard]] std::size_t n_qubits() const {
        std::size_t n = 0;
        for (const auto &t : terms_) {
            n = std::max(n, t.word.n_qubits());
        }
        return n;
    }

    /// Coefficient of the identity word.
    [[nodiscard]] cplx constant() const {
        if (!terms_.empty() && terms_.front().word.factors.empty()) {
            return terms_.front().coefficient;
        }
        return 0.0;
    }

    [[nodiscard]] PauliSum without_constant() const {
        PauliSum out = *this;
        if (!out.terms_.empty() && out.terms_.front().word.factors.empty()) {
            out.terms_.erase(out.terms_.begin());
        }
        return out;
    }

    [[nodiscard]] PauliSum adjoint() const {
        PauliSum out = *this;
        for (auto &t : out.terms_) {
            t.coefficient = std::conj(t.coefficient);
        }
        return out;
    }

    [[nodiscard]] bool is_hermitian(double tol = 1e-12) const {
        return std::all_of(terms_.begin(), terms_.end(), [&](const PauliString &t) {
            return std::abs(t.coefficient.imag()) <= tol;
        });
    }

    /// Relabel qubit q as `map(q)`. The map must be injective.
    template <typename F> [[nodiscard]] PauliSum remapped(F &&map) const {
        std::vector<PauliString> out;
        out.reserve(terms_.size());
        for (const auto &t : terms_) {
            std::vector<std::pair<std::size_t, Axis>> f;
            f.reserve(t.word.factors.size());
            for (auto [q, a] : t.word.factors) {
                f.emplace_back(map(q), a);
            }
            out.push_back(PauliString::make(t.coefficient, std::move(f)));
        }
        return PauliSum(std::move(out));
    }

    [[nodiscard]] PauliSum shifted(std::size_t offset) const {
        return remapped([offset](std::size_t q) { return q + offset; });
    }

    PauliSum &operator+=(const PauliSum &other) {
        terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
        canonicalize();
        return *this;
    }

    PauliSum &operator*=(cplx s) {
        for (auto &t : terms_) {
            t.coefficient *= s;
        }
        canonicalize();
        return *this;
    }

    friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }
    friend PauliSum operator-(PauliSum a, const PauliSum &b) {
        return a += b * cplx{-1.0, 0.0};
    }
    friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
    friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }

    friend PauliSum operator*(const PauliSum &a, const PauliSum &b) {
        std::vector<PauliString> out;
        out.reserve(a.size() * b.size());
        for (const auto &ta : a.terms_) {
            for (const auto &tb : b.terms_) {
                auto [phase, w] = multiply(ta.word, tb.word);
                out.push_back({ta.coefficient * tb.coefficient * phase, std::move(w)});
            }
        }
        return PauliSum(std::move(out));
    }

    bool operator==(const PauliSum &other) const {
        if (terms_.size() != other.terms_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (!(terms_[i].word == other.terms_[i].word) ||
                terms_[i].coefficient != other.terms_[i].coefficient) {
                return false;
            }
        }
        return true;
    }

    /// Largest coefficient difference between two sums, word by word.
    [[nodiscard]] double distance(const PauliSum &other) const {
        const PauliSum diff = *this - other;
        double worst = 0.0;
        for (const auto &t : diff.terms_) {
            worst = std::max(worst, std::abs(t.coefficient));
        }
        return worst;
    }

    /// Dense matrix on `n_qubits` qubits; qubit q is bit q of the index.
    [[nodiscard]] DenseMatrix to_dense(std::size_t n_qubits) const {
        require(n_qubits <= 14, "PauliSum::to_dense: at most 14 qubits");
        require(this->n_qubits() <= n_qubits, "PauliSum::to_dense: term outside register");
        const std::size_t dim = std::size_t{1} << n_qubits;
        DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(dim),
                                          static_cast<Eigen::Index>(dim));
        for (const auto &t : terms_) {
            const auto [x, z] = t.word.masks();
            const cplx base = t.coefficient * i_power(std::popcount(x & z));
            for (std::size_t j = 0; j < dim; ++j) {
                const double sign = (std::popcount(z & j) & 1) ? -1.0 : 1.0;
                m(static_cast<Eigen::Index>(j ^ x), static_cast<Eigen::Index>(j)) += sign * base;
            }
        }
        return m;
    }

    /// One term per line: `(<re>,<im>) <axis><index> ...`.
    [[nodiscard]] std::string dump() const {
        std::ostringstream os;
        for (const auto &t : terms_) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "(%.12g,%.12g)", t.coefficient.real() + 0.0,
                          t.coefficient.imag() + 0.0);
            os << buf;
            for (auto [q, a] : t.word.factors) {
                os << ' ' << axis_char(a) << q;
            }
            os << '\n';
        }
        return os.str();
    }

    static cplx i_power(int k) {
        switch (k & 3) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {-1.0, 0.0};
        default:
            return {0.0, -1.0};
        }
    }

  private:
    void canonicalize() {
        std::stable_sort(terms_.begin(), terms_.end(),
                         [](const PauliString &a, const PauliString &b) { return a.word < b.word; });
        std::vector<PauliString> merged;
        merged.reserve(terms_.size());
        for (auto &t : terms_) {
            if (!merged.empty() && merged.back().word == t.word) {
                merged.back().coefficient += t.coefficient;
            } else {
                merged.push_back(std::move(t));
            }
        }
        std::erase_if(merged, [](const PauliString &t) {
            return std::abs(t.coefficient) < pauli_prune_threshold;
        });
        for (auto &t : merged) {
            // Snap sub-threshold real/imaginary parts so Hermitian sums stay real.
            if (std::abs(t.coefficient.imag()) < pauli_prune_threshold) {
                t.coefficient.imag(0.0);
            }
            if (std::abs(t.coefficient.real()) < pauli_prune_threshold) {
                t.coefficient.real(0.0);
            }
        }
        terms_ = std::move(merged);
    }

    std::vector<PauliString> terms_;
};

inline std::ostream &operator<<(std::ostream &os, const PauliSum &s) { return os << s.dump(); }

/// [a, b] computed term by term: only anticommuting pairs contribute.
inline PauliSum commutator(const PauliSum &a, const PauliSum &b) {
    std::vector<PauliString> out;
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            if (commutes(ta.word, tb.word)) {
                continue;
            }
            auto [phase, w] = multiply(ta.word, tb.word);
            out.push_back({2.0 * ta.coefficient * tb.coefficient * phase, std::move(w)});
        }
    }
    return PauliSum(std::move(out));
}

namespace detail {

inline void walsh_hadamard(std::vector<cplx> &v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const cplx a = v[j];
                const cplx b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

} // namespace detail

/// Pauli decomposition c_P = Tr(P^dagger M) / 2^q of a 2^q x 2^q matrix.
/// One Walsh-Hadamard transform per X-mask, O(q 4^q) overall.
inline PauliSum matrix_to_pauli(const DenseMatrix &m) {
    require(m.rows() == m.cols(), "matrix_to_pauli: matrix must be square");
    const auto dim = static_cast<std::size_t>(m.rows());
    require(dim >= 1 && std::has_single_bit(dim), "matrix_to_pauli: dimension must be a power of two");
    const int q = std::countr_zero(dim);
    require(q <= 12, "matrix_to_pauli: at most 12 qubits");

    std::vector<PauliString> terms;
    std::vector<cplx> f(dim);
    const double scale = 1.0 / static_cast<double>(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        for (std::uint64_t j = 0; j < dim; ++j) {
            f[j] = m(static_cast<Eigen::Index>(j ^ x), static_cast<Eigen::Index>(j));
        }
        detail::walsh_hadamard(f);
        for (std::uint64_t z = 0; z < dim; ++z) {
            const cplx c = f[z] * scale * std::conj(PauliSum::i_power(std::popcount(x & z)));
            if (std::abs(c) >= pauli_prune_threshold) {
                terms.push_back({c, PauliWord::from_masks(x, z)});
            }
        }
    }
    return PauliSum(std::move(terms));
}

} // namespace qtedopa
