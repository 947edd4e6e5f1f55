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
 * @file ansatz.hpp
 * Parameterized Pauli-rotation circuits, optionally with x-dependent
 * encodings, and the layered hardware-efficient builders.
 */
#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "pauli.hpp"
#include "statevector.hpp"

namespace warmstate {

/// Encoding g(x) that multiplies a rotation parameter: angle = theta * g(x).
struct EncodingFn {
    enum class Kind { constant_one, linear, affine };

    Kind kind = Kind::constant_one;
    double slope = 0.0;
    double intercept = 0.0;

    static EncodingFn constant_one() { return {}; }
    static EncodingFn linear(double a) { return {Kind::linear, a, 0.0}; }
    static EncodingFn affine(double a, double b) {
        return {Kind::affine, a, b};
    }

    [[nodiscard]] double operator()(double x) const {
        switch (kind) {
        case Kind::constant_one:
            return 1.0;
        case Kind::linear:
            return slope * x;
        case Kind::affine:
            return slope * x + intercept;
        }
        return 1.0;
    }

    [[nodiscard]] double derivative(double /*x*/) const {
        return kind == Kind::constant_one ? 0.0 : slope;
    }

    [[nodiscard]] bool is_constant() const {
        return kind == Kind::constant_one;
    }

    friend bool operator==(const EncodingFn &, const EncodingFn &) = default;
};

/// Non-parameterized gate. Only the Pauli and Hadamard gates are supported.
struct FixedGate {
    enum class Kind { pauli, hadamard };
    Kind kind = Kind::pauli;
    PauliString pauli;     ///< for Kind::pauli
    std::size_t qubit = 0; ///< for Kind::hadamard
};

struct Gate {
    enum class Kind { rotation, fixed };

    Kind kind = Kind::rotation;
    PauliString generator;
    EncodingFn encoding;
    FixedGate fixed;

    [[nodiscard]] bool is_rotation() const { return kind == Kind::rotation; }
};

/**
 * @brief Ordered gate list applied to |0...0>.
 *
 * Every rotation gate owns exactly one trainable parameter; parameter j
 * belongs to the j-th rotation in circuit order.
 */
class Ansatz {
  public:
    explicit Ansatz(std::size_t n) : n_(n) {}

    void add_rotation(PauliString generator,
                      EncodingFn encoding = EncodingFn::constant_one()) {
        if (generator.num_qubits() != n_) {
            throw DimensionError("rotation generator has wrong qubit count");
        }
        rotation_positions_.push_back(gates_.size());
        gates_.push_back(
            {Gate::Kind::rotation, std::move(generator), encoding, {}});
    }

    void add_fixed(FixedGate g) {
        if (g.kind == FixedGate::Kind::pauli && g.pauli.num_qubits() != n_) {
            throw DimensionError("fixed Pauli gate has wrong qubit count");
        }
        if (g.kind == FixedGate::Kind::hadamard && g.qubit >= n_) {
            throw DimensionError("fixed Hadamard qubit out of range");
        }
        gates_.push_back({Gate::Kind::fixed, {}, {}, std::move(g)});
    }

    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    [[nodiscard]] std::size_t num_parameters() const {
        return rotation_positions_.size();
    }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }
    [[nodiscard]] bool has_fixed_gates() const {
        return gates_.size() != rotation_positions_.size();
    }

    /// Rotation gate carrying parameter j.
    [[nodiscard]] const Gate &rotation(std::size_t j) const {
        return gates_.at(rotation_positions_.at(j));
    }

    [[nodiscard]] bool all_constant_encodings() const {
        for (const auto &g : gates_) {
            if (g.is_rotation() && !g.encoding.is_constant()) {
                return false;
            }
        }
        return true;
    }

    /// g_j(x) for every parameter.
    [[nodiscard]] std::vector<double> encoding_values(double x) const {
        std::vector<double> g;
        g.reserve(num_parameters());
        for (auto pos : rotation_positions_) {
            g.push_back(gates_[pos].encoding(x));
        }
        return g;
    }

    /// max_j |g_j'(x)| (independent of x for the supported encodings).
    [[nodiscard]] double max_encoding_derivative() const {
        double m = 0.0;
        for (auto pos : rotation_positions_) {
            m = std::max(m, std::abs(gates_[pos].encoding.derivative(0.0)));
        }
        return m;
    }

  private:
    std::size_t n_;
    std::vector<Gate> gates_;
    std::vector<std::size_t> rotation_positions_;
};

inline void apply_fixed(StateVector &state, const FixedGate &g) {
    switch (g.kind) {
    case FixedGate::Kind::pauli:
        state.apply_pauli(g.pauli);
        break;
    case FixedGate::Kind::hadamard:
        state.apply_hadamard(g.qubit);
        break;
    }
}

/// U(theta, x)|0...0>, rotation j using angle theta_j * g_j(x).
inline StateVector prepare(const Ansatz &ansatz, std::span<const double> theta,
                           double x = 0.0) {
    if (theta.size() != ansatz.num_parameters()) {
        throw DimensionError("expected " +
                             std::to_string(ansatz.num_parameters()) +
                             " parameters, got " +
                             std::to_string(theta.size()));
    }
    StateVector state(ansatz.num_qubits());
    std::size_t j = 0;
    for (const auto &g : ansatz.gates()) {
        if (g.is_rotation()) {
            state.apply_rotation(g.generator, theta[j] * g.encoding(x));
            ++j;
        } else {
            apply_fixed(state, g.fixed);
        }
    }
    return state;
}

/// Per-layer encoding assignment for the x-encoded ansatz.
struct LayerEncoding {
    EncodingFn single_qubit = EncodingFn::linear(1.0);
    EncodingFn two_qubit = EncodingFn::constant_one();
};

namespace detail {

template <class EncodingFor>
Ansatz layered(std::size_t n, std::size_t layers, Pauli single_axis,
               EncodingFor &&encoding_for) {
    ::warmstate::detail::require(n >= 2, "layered ansatz needs n >= 2");
    ::warmstate::detail::require(layers >= 1, "layered ansatz needs L >= 1");
    ::warmstate::detail::require(single_axis != Pauli::I,
                                 "single-qubit axis must be X, Y or Z");
    Ansatz a(n);
    std::size_t j = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t q = 0; q < n; ++q) {
            a.add_rotation(PauliString::sparse(n, {{q, single_axis}}),
                           encoding_for(j++, true));
        }
        for (auto p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            for (std::size_t q = 0; q < n; ++q) {
                std::vector<Pauli> letters(n, Pauli::I);
                letters[q] = p;
                letters[(q + 1) % n] = p;
                a.add_rotation(PauliString(std::move(letters)),
                               encoding_for(j++, false));
            }
        }
    }
    return a;
}

} // namespace detail

/**
 * @brief Hardware-efficient ansatz with M = 4 n L parameters.
 *
 * Each layer applies single-qubit rotations about `single_axis` on every
 * qubit, then XX, YY and ZZ rotations on all ring bonds (i, i+1 mod n).
 */
inline Ansatz build_hea(std::size_t n, std::size_t layers,
                        Pauli single_axis = Pauli::Z) {
    return detail::layered(n, layers, single_axis, [](std::size_t, bool) {
        return EncodingFn::constant_one();
    });
}

/// Same layout as build_hea with x-dependent encodings per gate type.
inline Ansatz build_meta_ansatz(std::size_t n, std::size_t layers,
                                const LayerEncoding &enc = {},
                                Pauli single_axis = Pauli::Z) {
    return detail::layered(n, layers, single_axis,
                           [&](std::size_t, bool single) {
                               return single ? enc.single_qubit
                                             : enc.two_qubit;
                           });
}

/// Same layout as build_hea with one encoding per rotation gate.
inline Ansatz build_meta_ansatz(std::size_t n, std::size_t layers,
                                const std::vector<EncodingFn> &per_gate,
                                Pauli single_axis = Pauli::Z) {
    if (per_gate.size() != 4 * n * layers) {
        throw DimensionError("encoding list has " +
                             std::to_string(per_gate.size()) +
                             " entries, circuit has " +
                             std::to_string(4 * n * layers) + " rotations");
    }
    return detail::layered(
        n, layers, single_axis,
        [&](std::size_t j, bool) { return per_gate[j]; });
}

/**
 * @brief Copy of `ansatz` acting on a product reference state instead of
 * |0...0>: the listed qubits are flipped to |1> by leading X gates, and
 * with `hadamard_layer` every qubit is then mapped to the X basis
 * (|0> -> |+>, |1> -> |->).
 */
inline Ansatz with_reference_bits(const Ansatz &ansatz,
                                  const std::vector<std::size_t> &flipped,
                                  bool hadamard_layer = false) {
    const std::size_t n = ansatz.num_qubits();
    Ansatz out(n);
    for (auto q : flipped) {
        if (q >= n) {
            throw DimensionError("reference qubit " + std::to_string(q) +
                                 " out of range");
        }
        out.add_fixed({FixedGate::Kind::pauli,
                       PauliString::sparse(n, {{q, Pauli::X}}), q});
    }
    if (hadamard_layer) {
        for (std::size_t q = 0; q < n; ++q) {
            out.add_fixed({FixedGate::Kind::hadamard, {}, q});
        }
    }
    for (const auto &g : ansatz.gates()) {
        if (g.is_rotation()) {
            out.add_rotation(g.generator, g.encoding);
        } else {
            out.add_fixed(g.fixed);
        }
    }
    return out;
}

} // namespace warmstate
