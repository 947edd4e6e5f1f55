// Copyright 2026 The WarmState Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file pauli.hpp
 * Pauli strings, weighted Pauli sums and linear Hamiltonian families
 * H(x) = H0 + x H1.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace warmstate {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char to_char(Pauli p) {
    constexpr char table[] = {'I', 'X', 'Y', 'Z'};
    return table[static_cast<int>(p)];
}

inline Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I':
        return Pauli::I;
    case 'X':
        return Pauli::X;
    case 'Y':
        return Pauli::Y;
    case 'Z':
        return Pauli::Z;
    default:
        throw ValidationError(std::string("unknown Pauli letter '") + c + "'");
    }
}

/**
 * @brief Tensor product of single-qubit Pauli operators on n qubits.
 *
 * Letter k acts on qubit k, which is bit k of a computational basis index.
 * The string is stored both as letters and as bit masks: a basis state |b>
 * is mapped to i^{#Y} (-1)^{|b & z_mask|} |b ^ x_mask>, where Y contributes
 * to both masks (Y = iXZ).
 */
class PauliString {
  public:
    PauliString() = default;

    explicit PauliString(std::vector<Pauli> letters)
        : letters_(std::move(letters)) {
        detail::require(letters_.size() <= 63, "Pauli string too long");
        for (std::size_t q = 0; q < letters_.size(); ++q) {
            const auto bit = std::uint64_t{1} << q;
            switch (letters_[q]) {
            case Pauli::I:
                break;
            case Pauli::X:
                x_mask_ |= bit;
                break;
            case Pauli::Y:
                x_mask_ |= bit;
                z_mask_ |= bit;
                ++y_count_;
                break;
            case Pauli::Z:
                z_mask_ |= bit;
                break;
            }
        }
    }

    /// Parses a dense label such as "XIZY" (first character is qubit 0).
    static PauliString parse(std::string_view label) {
        std::vector<Pauli> letters;
        letters.reserve(label.size());
        for (char c : label) {
            letters.push_back(pauli_from_char(c));
        }
        return PauliString(std::move(letters));
    }

    static PauliString identity(std::size_t n) {
        return PauliString(std::vector<Pauli>(n, Pauli::I));
    }

    /// Builds a string from (qubit, letter) pairs; unlisted qubits are I.
    static PauliString
    sparse(std::size_t n,
           std::initializer_list<std::pair<std::size_t, Pauli>> ops) {
        std::vector<Pauli> letters(n, Pauli::I);
        for (const auto &[q, p] : ops) {
            detail::require(q < n, "qubit index out of range");
            detail::require(letters[q] == Pauli::I,
                            "qubit listed twice in sparse Pauli string");
            letters[q] = p;
        }
        return PauliString(std::move(letters));
    }

    [[nodiscard]] std::size_t num_qubits() const { return letters_.size(); }
    [[nodiscard]] const std::vector<Pauli> &letters() const {
        return letters_;
    }
    [[nodiscard]] Pauli operator[](std::size_t q) const { return letters_[q]; }
    [[nodiscard]] std::uint64_t x_mask() const { return x_mask_; }
    [[nodiscard]] std::uint64_t z_mask() const { return z_mask_; }
    [[nodiscard]] std::size_t y_count() const { return y_count_; }

    [[nodiscard]] bool is_identity() const {
        return x_mask_ == 0 && z_mask_ == 0;
    }
    /// True when the string is a product of I and Z only.
    [[nodiscard]] bool is_diagonal() const { return x_mask_ == 0; }
    [[nodiscard]] std::size_t weight() const {
        std::size_t w = 0;
        for (auto p : letters_) {
            w += (p != Pauli::I);
        }
        return w;
    }

    /// Phase picked up by basis state |b> (before the bit flip).
    [[nodiscard]] std::complex<double> phase(std::uint64_t b) const {
        static constexpr std::complex<double> ipow[4] = {
            {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const int parity = __builtin_popcountll(b & z_mask_) & 1;
        auto ph = ipow[y_count_ & 3];
        return parity ? -ph : ph;
    }

    [[nodiscard]] std::string str() const {
        std::string s;
        s.reserve(letters_.size());
        for (auto p : letters_) {
            s.push_back(to_char(p));
        }
        return s;
    }

    friend bool operator==(const PauliString &a, const PauliString &b) {
        return a.letters_ == b.letters_;
    }
    friend bool operator<(const PauliString &a, const PauliString &b) {
        return a.letters_ < b.letters_;
    }

  private:
    std::vector<Pauli> letters_;
    std::uint64_t x_mask_ = 0;
    std::uint64_t z_mask_ = 0;
    std::size_t y_count_ = 0;
};

/// Letter-level product p*q = phase * r, where phase is in {1, i, -1, -i}.
inline std::pair<std::complex<double>, Pauli> multiply(Pauli p, Pauli q) {
    using C = std::complex<double>;
    if (p == Pauli::I) {
        return {C{1, 0}, q};
    }
    if (q == Pauli::I) {
        return {C{1, 0}, p};
    }
    if (p == q) {
        return {C{1, 0}, Pauli::I};
    }
    const int a = static_cast<int>(p);
    const int b = static_cast<int>(q);
    const auto r = static_cast<Pauli>(6 - a - b);
    // cyclic X->Y->Z gives +i, anti-cyclic gives -i
    const bool cyclic = (b - a + 3) % 3 == 1;
    return {cyclic ? C{0, 1} : C{0, -1}, r};
}

/// Symbolic product of two strings of equal length.
inline std::pair<std::complex<double>, PauliString>
multiply(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("Pauli strings act on different qubit counts");
    }
    std::complex<double> phase{1, 0};
    std::vector<Pauli> letters(a.num_qubits());
    for (std::size_t q = 0; q < letters.size(); ++q) {
        auto [ph, r] = multiply(a[q], b[q]);
        phase *= ph;
        letters[q] = r;
    }
    return {phase, PauliString(std::move(letters))};
}

struct PauliTerm {
    double coeff = 0.0;
    PauliString string;
};

/**
 * @brief Real-weighted sum of Pauli strings on a fixed number of qubits.
 *
 * Construction merges repeated strings by summing their coefficients, in
 * first-occurrence order, and drops terms whose merged coefficient is
 * exactly zero. The result is Hermitian.
 */
class PauliSum {
  public:
    PauliSum() = default;

    explicit PauliSum(std::size_t n, const std::vector<PauliTerm> &terms = {})
        : n_(n) {
        std::map<PauliString, std::size_t> position;
        std::vector<PauliTerm> merged;
        for (const auto &t : terms) {
            if (t.string.num_qubits() != n) {
                throw DimensionError("term " + t.string.str() + " acts on " +
                                     std::to_string(t.string.num_qubits()) +
                                     " qubits, expected " + std::to_string(n));
            }
            if (!std::isfinite(t.coeff)) {
                throw ValidationError("non-finite coefficient on term " +
                                      t.string.str());
            }
            auto [it, inserted] = position.try_emplace(t.string, merged.size());
            if (inserted) {
                merged.push_back(t);
            } else {
                merged[it->second].coeff += t.coeff;
            }
        }
        for (auto &t : merged) {
            if (t.coeff != 0.0) {
                terms_.push_back(std::move(t));
            }
        }
    }

    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool empty() const { return terms_.empty(); }

    /// Coefficient of a given string, 0 when absent.
    [[nodiscard]] double coefficient(const PauliString &p) const {
        for (const auto &t : terms_) {
            if (t.string == p) {
                return t.coeff;
            }
        }
        return 0.0;
    }

    friend PauliSum operator+(const PauliSum &a, const PauliSum &b) {
        if (a.n_ != b.n_) {
            throw DimensionError("adding Pauli sums on different qubit counts");
        }
        std::vector<PauliTerm> all = a.terms_;
        all.insert(all.end(), b.terms_.begin(), b.terms_.end());
        return PauliSum(a.n_, all);
    }

    friend PauliSum operator*(double c, const PauliSum &a) {
        std::vector<PauliTerm> scaled = a.terms_;
        for (auto &t : scaled) {
            t.coeff *= c;
        }
        return PauliSum(a.n_, scaled);
    }

  private:
    std::size_t n_ = 0;
    std::vector<PauliTerm> terms_;
};

/// Linear family H(x) = h0 + x * h1 on a closed parameter interval.
struct HamiltonianFamily {
    PauliSum h0;
    PauliSum h1;
    double x_min = -1e300;
    double x_max = 1e300;

    HamiltonianFamily(PauliSum h0_, PauliSum h1_, double lo = -1e300,
                      double hi = 1e300)
        : h0(std::move(h0_)), h1(std::move(h1_)), x_min(lo), x_max(hi) {
        if (h0.num_qubits() != h1.num_qubits()) {
            throw DimensionError("family parts act on different qubit counts");
        }
        detail::require(x_min <= x_max, "empty family domain");
    }

    [[nodiscard]] std::size_t num_qubits() const { return h0.num_qubits(); }

    [[nodiscard]] bool contains(double x) const {
        return x >= x_min && x <= x_max;
    }

    [[nodiscard]] PauliSum at(double x) const {
        if (!contains(x)) {
            throw ValidationError("x = " + std::to_string(x) +
                                  " outside family domain");
        }
        return h0 + x * h1;
    }
};

} // namespace warmstate
