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
 * @file gradient.hpp
 * Parameter-shift gradients for circuits of Pauli rotations with
 * x-dependent encodings.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace warmstate {

/// Loss evaluated at parameters theta; `slot` names an independent noise draw.
using SlottedLoss =
    std::function<double(std::span<const double> theta, std::uint64_t slot)>;
using Loss = std::function<double(std::span<const double> theta)>;

/**
 * @brief Two-point parameter-shift gradient.
 *
 * For a gate exp(-i theta_j g_j P_j) with P_j^2 = 1 the loss is
 * A + B cos(2 g_j theta_j) + C sin(2 g_j theta_j), so
 * dL/dtheta_j = g_j [L(theta + s e_j) - L(theta - s e_j)], s = pi / (4 g_j).
 * Components with g_j == 0 are identically zero.
 *
 * Evaluation pair j uses slots base_slot + 2j (plus shift) and
 * base_slot + 2j + 1 (minus shift), so noisy losses never share a draw.
 */
inline std::vector<double>
parameter_shift_grad(const SlottedLoss &loss, std::span<const double> theta,
                     std::span<const double> encoding_values,
                     std::uint64_t base_slot = 0) {
    if (encoding_values.size() != theta.size()) {
        throw DimensionError("one encoding value per parameter required");
    }
    const std::size_t m = theta.size();
    std::vector<double> grad(m, 0.0);
    parallel_for(m, [&](std::size_t j) {
        const double g = encoding_values[j];
        if (g == 0.0) {
            return;
        }
        const double shift = std::numbers::pi / (4.0 * g);
        std::vector<double> shifted(theta.begin(), theta.end());
        shifted[j] = theta[j] + shift;
        const double plus = loss(shifted, base_slot + 2 * j);
        shifted[j] = theta[j] - shift;
        const double minus = loss(shifted, base_slot + 2 * j + 1);
        grad[j] = g * (plus - minus);
    });
    return grad;
}

/// Exact-loss convenience overload with all encodings equal to 1 unless given.
inline std::vector<double>
parameter_shift_grad(const Loss &loss, std::span<const double> theta,
                     std::span<const double> encoding_values = {}) {
    std::vector<double> ones;
    if (encoding_values.empty()) {
        ones.assign(theta.size(), 1.0);
        encoding_values = ones;
    }
    return parameter_shift_grad(
        [&](std::span<const double> t, std::uint64_t) { return loss(t); },
        theta, encoding_values, 0);
}

} // namespace warmstate
