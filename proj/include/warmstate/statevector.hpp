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
 * @file statevector.hpp
 * Dense statevector with in-place Pauli and Pauli-rotation application.
 */
#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "pauli.hpp"

namespace warmstate {

class StateVector {
  public:
    using value_type = std::complex<double>;

    StateVector() = default;

    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n) : n_(n) {
        check(n);
        amps_.assign(std::size_t{1} << n, value_type{0.0, 0.0});
        amps_[0] = 1.0;
    }

    /// Adopts the given amplitudes (length must be a power of two).
    StateVector(std::size_t n, std::vector<value_type> amplitudes)
        : n_(n), amps_(std::move(amplitudes)) {
        check(n);
        if (amps_.size() != (std::size_t{1} << n)) {
            throw DimensionError("amplitude count does not match 2^n");
        }
    }

    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] std::span<const value_type> amplitudes() const {
        return amps_;
    }
    [[nodiscard]] std::span<value_type> amplitudes() { return amps_; }
    [[nodiscard]] const value_type &operator[](std::size_t i) const {
        return amps_[i];
    }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    /// In place: psi <- P psi.
    void apply_pauli(const PauliString &p) {
        check_string(p);
        const auto xm = p.x_mask();
        if (xm == 0) {
            if (p.z_mask() == 0) {
                return;
            }
            for (std::uint64_t b = 0; b < amps_.size(); ++b) {
                amps_[b] *= p.phase(b);
            }
            return;
        }
        const auto pivot = highest_bit(xm);
        for (std::uint64_t b = 0; b < amps_.size(); ++b) {
            if (b & pivot) {
                continue;
            }
            const auto c = b ^ xm;
            const auto ab = amps_[b];
            const auto ac = amps_[c];
            amps_[c] = p.phase(b) * ab;
            amps_[b] = p.phase(c) * ac;
        }
    }

    /// In place: psi <- exp(-i angle P) psi = cos(angle) psi - i sin(angle) P psi.
    void apply_rotation(const PauliString &p, double angle) {
        check_string(p);
        if (angle == 0.0) {
            return;
        }
        const double c = std::cos(angle);
        const value_type mis{0.0, -std::sin(angle)};
        const auto xm = p.x_mask();
        if (xm == 0) {
            const value_type plus = c + mis;
            const value_type minus = c - mis;
            for (std::uint64_t b = 0; b < amps_.size(); ++b) {
                const bool odd = __builtin_popcountll(b & p.z_mask()) & 1;
                amps_[b] *= odd ? minus : plus;
            }
            return;
        }
        const auto pivot = highest_bit(xm);
        for (std::uint64_t b = 0; b < amps_.size(); ++b) {
            if (b & pivot) {
                continue;
            }
            const auto cb = b ^ xm;
            const auto ab = amps_[b];
            const auto ac = amps_[cb];
            amps_[b] = c * ab + mis * p.phase(cb) * ac;
            amps_[cb] = c * ac + mis * p.phase(b) * ab;
        }
    }

    /// Hadamard on one qubit.
    void apply_hadamard(std::size_t q) {
        if (q >= n_) {
            throw DimensionError("hadamard qubit out of range");
        }
        const double s = 1.0 / std::sqrt(2.0);
        const std::uint64_t bit = std::uint64_t{1} << q;
        for (std::uint64_t b = 0; b < amps_.size(); ++b) {
            if (b & bit) {
                continue;
            }
            const auto a0 = amps_[b];
            const auto a1 = amps_[b | bit];
            amps_[b] = s * (a0 + a1);
            amps_[b | bit] = s * (a0 - a1);
        }
    }

    /// <psi|P|psi>. The imaginary residue must stay below 1e-10.
    [[nodiscard]] double expectation(const PauliString &p) const {
        check_string(p);
        const auto xm = p.x_mask();
        std::complex<double> acc{0.0, 0.0};
        for (std::uint64_t b = 0; b < amps_.size(); ++b) {
            acc += std::conj(amps_[b ^ xm]) * p.phase(b) * amps_[b];
        }
        if (std::abs(acc.imag()) > 1e-10) {
            throw NumericalError("Pauli expectation has imaginary part " +
                                 std::to_string(acc.imag()));
        }
        return acc.real();
    }

    /// Sum_a c_a <psi|P_a|psi>.
    [[nodiscard]] double expectation(const PauliSum &h) const {
        if (h.num_qubits() != n_) {
            throw DimensionError("Hamiltonian and state qubit counts differ");
        }
        double e = 0.0;
        for (const auto &t : h.terms()) {
            e += t.coeff * expectation(t.string);
        }
        return e;
    }

  private:
    static void check(std::size_t n) {
        if (n == 0 || n > kMaxQubits) {
            throw SizeError("statevector needs 1 <= n <= " +
                            std::to_string(kMaxQubits) + ", got " +
                            std::to_string(n));
        }
    }

    void check_string(const PauliString &p) const {
        if (p.num_qubits() != n_) {
            throw DimensionError("Pauli string on " +
                                 std::to_string(p.num_qubits()) +
                                 " qubits applied to " + std::to_string(n_) +
                                 "-qubit state");
        }
    }

    static std::uint64_t highest_bit(std::uint64_t m) {
        return std::uint64_t{1} << (63 - __builtin_clzll(m));
    }

    std::size_t n_ = 0;
    std::vector<value_type> amps_;
};

inline StateVector zero_state(std::size_t n) { return StateVector(n); }

/// Value-returning form of StateVector::apply_rotation.
inline StateVector apply_rotation(StateVector state, const PauliString &p,
                                  double angle) {
    state.apply_rotation(p, angle);
    return state;
}

inline double expectation(const StateVector &state, const PauliSum &h) {
    return state.expectation(h);
}

/// |<reference|state>|^2.
inline double fidelity(const StateVector &state,
                       std::span<const std::complex<double>> reference) {
    if (reference.size() != state.dim()) {
        throw DimensionError("fidelity reference has wrong dimension");
    }
    std::complex<double> overlap{0.0, 0.0};
    for (std::size_t i = 0; i < reference.size(); ++i) {
        overlap += std::conj(reference[i]) * state[i];
    }
    return std::min(1.0, std::norm(overlap));
}

inline double fidelity(const StateVector &a, const StateVector &b) {
    return fidelity(a, b.amplitudes());
}

} // namespace warmstate
