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
 * @file models.hpp
 * Spin-chain Hamiltonian families used by the experiments:
 * transverse-field Heisenberg ring, open anisotropic XY chain and the
 * generalized Ising ring with the fermionic boundary string.
 */
#pragma once

#include <string>
#include <vector>

#include "pauli.hpp"

namespace warmstate::models {

namespace detail {

inline PauliString two_site(std::size_t n, std::size_t i, std::size_t j,
                            Pauli p) {
    std::vector<Pauli> letters(n, Pauli::I);
    letters[i] = p;
    letters[j] = p;
    return PauliString(std::move(letters));
}

inline PauliString one_site(std::size_t n, std::size_t i, Pauli p) {
    std::vector<Pauli> letters(n, Pauli::I);
    letters[i] = p;
    return PauliString(std::move(letters));
}

} // namespace detail

/// H0 = -sum Z_i, H1 = sum over ring bonds of XX + YY + ZZ.
inline HamiltonianFamily heisenberg_field_family(std::size_t n) {
    ::warmstate::detail::require(n >= 2, "heisenberg_field needs n >= 2");
    std::vector<PauliTerm> field;
    std::vector<PauliTerm> coupling;
    for (std::size_t i = 0; i < n; ++i) {
        field.push_back({-1.0, detail::one_site(n, i, Pauli::Z)});
    }
    // periodic wrap; for n == 2 the (1,0) bond repeats (0,1) and merges
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        for (auto p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            coupling.push_back({1.0, detail::two_site(n, i, j, p)});
        }
    }
    return {PauliSum(n, field), PauliSum(n, coupling)};
}

inline PauliSum build_heisenberg_field(std::size_t n, double x) {
    return heisenberg_field_family(n).at(x);
}

/// H_XY(x) = -J[(1+x) sum XX + (1-x) sum YY] on an open chain.
inline HamiltonianFamily xy_family(std::size_t n, double J = 1.0) {
    ::warmstate::detail::require(n >= 2, "xy needs n >= 2");
    std::vector<PauliTerm> h0;
    std::vector<PauliTerm> h1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        auto xx = detail::two_site(n, i, i + 1, Pauli::X);
        auto yy = detail::two_site(n, i, i + 1, Pauli::Y);
        h0.push_back({-J, xx});
        h0.push_back({-J, yy});
        h1.push_back({-J, xx});
        h1.push_back({J, yy});
    }
    return {PauliSum(n, h0), PauliSum(n, h1)};
}

inline PauliSum build_xy(std::size_t n, double x, double J = 1.0) {
    return xy_family(n, J).at(x);
}

/**
 * H_I(x) = -J sum_{i} Z_i Z_{i+1} (ring) - x sum X_i - Y_1 X_2 ... X_{n-1} Y_n.
 * The ring sum wraps (Z_n Z_1 included).
 */
inline HamiltonianFamily ising_jw_family(std::size_t n, double J = 1.0) {
    ::warmstate::detail::require(n >= 3, "ising_jw needs n >= 3");
    std::vector<PauliTerm> h0;
    std::vector<PauliTerm> h1;
    for (std::size_t i = 0; i < n; ++i) {
        h0.push_back({-J, detail::two_site(n, i, (i + 1) % n, Pauli::Z)});
    }
    std::vector<Pauli> string(n, Pauli::X);
    string.front() = Pauli::Y;
    string.back() = Pauli::Y;
    h0.push_back({-1.0, PauliString(string)});
    for (std::size_t i = 0; i < n; ++i) {
        h1.push_back({-1.0, detail::one_site(n, i, Pauli::X)});
    }
    return {PauliSum(n, h0), PauliSum(n, h1)};
}

inline PauliSum build_ising_jw(std::size_t n, double x, double J = 1.0) {
    return ising_jw_family(n, J).at(x);
}

inline const std::vector<std::string> &model_names() {
    static const std::vector<std::string> names = {"heisenberg_field", "xy",
                                                   "ising_jw"};
    return names;
}

/// Family by configuration name. J is ignored by heisenberg_field.
inline HamiltonianFamily family_by_name(const std::string &name, std::size_t n,
                                        double J = 1.0) {
    if (name == "heisenberg_field") {
        return heisenberg_field_family(n);
    }
    if (name == "xy") {
        return xy_family(n, J);
    }
    if (name == "ising_jw") {
        return ising_jw_family(n, J);
    }
    throw ValidationError("unknown model '" + name +
                          "' (expected heisenberg_field, xy or ising_jw)");
}

} // namespace warmstate::models
