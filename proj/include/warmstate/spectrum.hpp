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
 * @file spectrum.hpp
 * Dense matrices of Pauli sums and exact spectra at small qubit counts.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "pauli.hpp"

namespace warmstate {

using ComplexVector = std::vector<std::complex<double>>;

struct Spectrum {
    std::vector<double> eigenvalues; ///< ascending, with multiplicity
    ComplexVector ground_vector;     ///< unit norm, largest entry real > 0
    double first_excited_value = 0.0;

    [[nodiscard]] double ground_energy() const { return eigenvalues.front(); }
    [[nodiscard]] double gap() const {
        return eigenvalues.size() > 1 ? eigenvalues[1] - eigenvalues[0] : 0.0;
    }
    [[nodiscard]] double semi_norm() const {
        return eigenvalues.back() - eigenvalues.front();
    }
};

inline void check_dense_limit(std::size_t n) {
    if (n > kMaxQubits) {
        throw SizeError(std::to_string(n) +
                        " qubits exceeds the dense limit of " +
                        std::to_string(kMaxQubits));
    }
}

/// Assembles the 2^n x 2^n matrix column by column from the bit-mask action.
inline Eigen::MatrixXcd dense_matrix(const PauliSum &h) {
    const std::size_t n = h.num_qubits();
    check_dense_limit(n);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : h.terms()) {
        const auto xm = t.string.x_mask();
        for (Eigen::Index b = 0; b < dim; ++b) {
            const auto ub = static_cast<std::uint64_t>(b);
            m(static_cast<Eigen::Index>(ub ^ xm), b) +=
                t.coeff * t.string.phase(ub);
        }
    }
    return m;
}

inline Spectrum exact_spectrum(const PauliSum &h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(h));
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigen-decomposition did not converge");
    }
    const auto &values = solver.eigenvalues();
    Spectrum s;
    s.eigenvalues.assign(values.data(), values.data() + values.size());
    Eigen::VectorXcd g = solver.eigenvectors().col(0);
    Eigen::Index arg = 0;
    g.cwiseAbs().maxCoeff(&arg);
    const auto phase = std::conj(g(arg)) / std::abs(g(arg));
    g *= phase;
    g.normalize();
    s.ground_vector.assign(g.data(), g.data() + g.size());
    s.first_excited_value =
        s.eigenvalues.size() > 1 ? s.eigenvalues[1] : s.eigenvalues[0];
    return s;
}

/// lambda_max - lambda_min.
inline double semi_norm(const PauliSum &h) {
    return exact_spectrum(h).semi_norm();
}

/// Second-smallest minus smallest eigenvalue, counting multiplicity.
inline double spectral_gap(const PauliSum &h) {
    return exact_spectrum(h).gap();
}

} // namespace warmstate
