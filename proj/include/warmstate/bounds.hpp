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
 * @file bounds.hpp
 * Closed-form landscape quantities for warm-start training: hypercube
 * averages k+-, the variance kernels h(r) and h(a, b, r), admissible path
 * steps, admissible hypercube radii and the VQE variance lower bound.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>

#include "ansatz.hpp"
#include "errors.hpp"
#include "statevector.hpp"

namespace warmstate {

/// Unnormalized sinc, sin(x)/x with sinc(0) = 1.
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

namespace detail {
inline void require_radius(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw ValidationError("radius must be finite and non-negative");
    }
}
} // namespace detail

/// Mean of cos^2(alpha) over alpha ~ U[-r, r].
inline double k_plus(double r) {
    detail::require_radius(r);
    return 0.5 * (1.0 + sinc(2.0 * r));
}

/// Mean of sin^2(alpha) over alpha ~ U[-r, r].
inline double k_minus(double r) {
    detail::require_radius(r);
    return 0.5 * (1.0 - sinc(2.0 * r));
}

/// Var[cos^2(alpha)] for alpha ~ U[-r, r].
inline double h_exact(double r) {
    detail::require_radius(r);
    if (r < 5e-2) {
        const double r2 = r * r;
        const double r4 = r2 * r2;
        return r4 * (4.0 / 45.0 - r2 * 16.0 / 315.0 + r4 * 64.0 / 4725.0);
    }
    return (std::cos(4.0 * r) - 1.0) / (32.0 * r * r) +
           (1.0 + sinc(4.0 * r)) / 8.0;
}

/// Polynomial lower envelope (1 - 4r^2/7) 4r^4/45 of h_exact.
inline double h_envelope(double r) {
    const double r2 = r * r;
    return (1.0 - 4.0 * r2 / 7.0) * 4.0 * r2 * r2 / 45.0;
}

/**
 * @brief Cov[cos^2(a alpha), cos^2(b alpha)] for alpha ~ U[-r, r].
 *
 * With `printed` set, evaluates the alternative normalization
 * (1/4)[sinc(2(a-b)r) + sinc(2(a+b)r) - sinc(2ar) sinc(2br) / 2].
 */
inline double h_cov(double a, double b, double r, bool printed = false) {
    detail::require_radius(r);
    const double sa = sinc(2.0 * a * r);
    const double sb = sinc(2.0 * b * r);
    const double sm = sinc(2.0 * (a - b) * r);
    const double sp = sinc(2.0 * (a + b) * r);
    if (printed) {
        return 0.25 * (sm + sp - 0.5 * sa * sb);
    }
    if (std::abs(a * r) < 5e-2 && std::abs(b * r) < 5e-2) {
        const double r2 = r * r;
        const double a2 = a * a;
        const double b2 = b * b;
        return a2 * b2 * r2 * r2 *
               (4.0 / 45.0 - 8.0 * (a2 + b2) * r2 / 315.0 +
                8.0 * (5.0 * a2 * a2 + 14.0 * a2 * b2 + 5.0 * b2 * b2) * r2 *
                    r2 / 14175.0);
    }
    return 0.125 * (sm + sp - 2.0 * sa * sb);
}

/// Sixth-derivative bound polynomial, evaluated term for term.
inline double h6(double a, double b) {
    const double a2 = a * a;
    const double b2 = b * b;
    const double s = 3.0 * a2 * a2 * a2 / 7.0 + a2 * a2 * a * b / 2.0 +
                     37.0 * a2 * a2 * b2 / 7.0 + 5.0 * a2 * a * b2 * b / 4.0 +
                     37.0 * a2 * b2 * b2 / 7.0 + a * b2 * b2 * b / 7.0 +
                     a * b2 * b2 * b / 2.0 + 3.0 * b2 * b2 * b2 / 7.0;
    return 64.0 * s;
}

// ---------------------------------------------------------------------------
// Budgets

struct BoundInputs {
    double gap = 0.0;          ///< |E1 - E0|
    double h_seminorm = 0.0;   ///< ||H(x)||_s
    double h1_seminorm = 0.0;  ///< ||H1||_s
    std::size_t M = 1;         ///< number of parameters
    double eps = 0.0;          ///< sqrt(1 - fidelity)
    double gamma = 0.5;
    double gamma_tilde = 0.5;
    double g_max_deriv = 0.0;  ///< max_l |g_l'(x)|
    double g_min = 1.0;
    double g_max = 1.0;

    void validate() const {
        auto finite = [](double v) { return std::isfinite(v); };
        detail::require(finite(gap) && finite(h_seminorm) &&
                            finite(h1_seminorm) && finite(eps) &&
                            finite(g_max_deriv) && finite(g_min) &&
                            finite(g_max),
                        "bound inputs must be finite");
        detail::require(gap >= 0.0, "gap must be non-negative");
        detail::require(h_seminorm >= 0.0 && h1_seminorm >= 0.0,
                        "semi-norms must be non-negative");
        detail::require(M >= 1, "M must be positive");
        detail::require(eps >= 0.0 && 2.0 * eps * eps <= 1.0 + 1e-15,
                        "eps must lie in [0, 1/sqrt(2)]");
        detail::require(gamma > 0.0 && gamma < 1.0, "gamma must be in (0, 1)");
        detail::require(gamma_tilde > 0.0 && gamma_tilde < 1.0,
                        "gamma_tilde must be in (0, 1)");
        detail::require(g_max_deriv >= 0.0, "g_max_deriv must be >= 0");
    }

    /// 1 - 2 eps^2, clamped at 0.
    [[nodiscard]] double fidelity_margin() const {
        return std::max(0.0, 1.0 - 2.0 * eps * eps);
    }
};

/// gamma_tilde (1 - 2 eps^2) gap / ||H1||_s; +inf when ||H1||_s == 0.
inline double max_step_vqe(const BoundInputs &in) {
    const double num = in.gamma_tilde * in.fidelity_margin() * in.gap;
    if (num <= 0.0) {
        return 0.0;
    }
    if (in.h1_seminorm == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return num / in.h1_seminorm;
}

/// gamma_tilde (1 - 2 eps^2) gap / (||H1||_s + M g' ||H||_s).
inline double max_step_meta(const BoundInputs &in) {
    const double num = in.gamma_tilde * in.fidelity_margin() * in.gap;
    if (num <= 0.0) {
        return 0.0;
    }
    const double den = in.h1_seminorm + static_cast<double>(in.M) *
                                            in.g_max_deriv * in.h_seminorm;
    if (den == 0.0) {
        throw ValidationError("step budget denominator is zero");
    }
    return num / den;
}

/**
 * @brief Largest |dx| with (1-2eps^2)(-gap) + |dx| A + dx^2 B <= 0, scaled
 * by gamma_tilde, where A = M g' ||H||_s + ||H1||_s and B = M g' ||H1||_s.
 */
inline double max_step_meta_quadratic(const BoundInputs &in) {
    const double c = in.fidelity_margin() * in.gap;
    if (c <= 0.0) {
        return 0.0;
    }
    const double mg = static_cast<double>(in.M) * in.g_max_deriv;
    const double a = mg * in.h_seminorm + in.h1_seminorm;
    const double b = mg * in.h1_seminorm;
    if (b == 0.0) {
        if (a == 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        return in.gamma_tilde * c / a;
    }
    // stable root of b d^2 + a d - c = 0
    const double root = 2.0 * c / (a + std::sqrt(a * a + 4.0 * b * c));
    return in.gamma_tilde * root;
}

/// sqrt(gamma 3/(M-1) q/(||H||_s + q)), q = (1-2eps^2)(1-gamma_tilde) gap.
inline double max_radius_vqe(const BoundInputs &in) {
    detail::require(in.M >= 2, "radius budget needs M >= 2");
    const double q = in.fidelity_margin() * (1.0 - in.gamma_tilde) * in.gap;
    if (q <= 0.0) {
        return 0.0;
    }
    const double r2 = in.gamma * 3.0 / static_cast<double>(in.M - 1) * q /
                      (in.h_seminorm + q);
    return std::sqrt(std::max(0.0, r2));
}

/// Gap-limited branch 3/(g_max^2 (M-1)) gt q/(||H||_s + q), q = (1-2eps^2) gap.
inline double radius_meta_gap_term(const BoundInputs &in) {
    detail::require(in.M >= 2, "radius budget needs M >= 2");
    const double q = in.fidelity_margin() * in.gap;
    if (q <= 0.0 || in.g_max == 0.0) {
        return 0.0;
    }
    return 3.0 / (in.g_max * in.g_max * static_cast<double>(in.M - 1)) *
           in.gamma_tilde * q / (in.h_seminorm + q);
}

/// min over pairs of 4 a^2 b^2 / (45 h6(a, b)), 0 if any g is 0.
inline double radius_meta_kernel_term(std::span<const double> g1_values) {
    detail::require(!g1_values.empty(), "radius budget needs training points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < g1_values.size(); ++j) {
        for (std::size_t k = j; k < g1_values.size(); ++k) {
            const double a = g1_values[j];
            const double b = g1_values[k];
            const double d = h6(a, b);
            const double v =
                (a == 0.0 || b == 0.0 || d <= 0.0)
                    ? 0.0
                    : 4.0 * a * a * b * b / (45.0 * d);
            best = std::min(best, v);
        }
    }
    return best;
}

/// sqrt(gamma min{kernel term, gap term}).
inline double max_radius_meta(const BoundInputs &in,
                              std::span<const double> g1_values) {
    const double r2 = in.gamma * std::min(radius_meta_kernel_term(g1_values),
                                          radius_meta_gap_term(in));
    return std::sqrt(std::max(0.0, r2));
}

/// Envelope(r) ((1-gamma)(1-gamma_tilde)(1-2eps^2) gap)^2, ignoring preconditions.
inline double variance_bound_formula(const BoundInputs &in, double r) {
    detail::require_radius(r);
    const double s = (1.0 - in.gamma) * (1.0 - in.gamma_tilde) *
                     in.fidelity_margin() * in.gap;
    return std::max(0.0, h_envelope(r)) * s * s;
}

struct BoundConditions {
    bool inputs_valid = false;
    bool step_ok = false;         ///< |dx| within max_step_vqe
    bool radius_ok = false;       ///< r within max_radius_vqe
    bool fidelity_ok = false;     ///< 2 eps^2 < 1
    bool gap_open = false;        ///< gap > 0
    bool first_gate_ok = false;   ///< a rotation acts non-trivially on |0>

    [[nodiscard]] bool all() const {
        return inputs_valid && step_ok && radius_ok && fidelity_ok &&
               gap_open && first_gate_ok;
    }
};

struct BoundReport {
    BoundInputs inputs;
    double step = 0.0;
    double radius = 0.0;
    double max_step = 0.0;
    double max_radius = 0.0;
    double variance_lower = 0.0;
    std::optional<std::size_t> first_valid_gate;
    BoundConditions conditions;
    bool step_unbounded = false;

    [[nodiscard]] bool conditions_met() const { return conditions.all(); }
};

/**
 * @brief VQE variance lower bound for a hypercube of half-width r after a
 * path step of size |dx|.
 *
 * The bound is reported (non-zero) only when every precondition holds;
 * otherwise variance_lower is 0 and the failing flags are visible.
 */
inline BoundReport variance_bound_vqe(const BoundInputs &in, double r,
                                      double step,
                                      std::optional<std::size_t> first_gate =
                                          std::size_t{0}) {
    BoundReport rep;
    rep.inputs = in;
    rep.step = std::abs(step);
    rep.radius = r;
    rep.first_valid_gate = first_gate;
    in.validate();
    detail::require_radius(r);
    rep.conditions.inputs_valid = true;
    rep.max_step = max_step_vqe(in);
    rep.step_unbounded = std::isinf(rep.max_step);
    rep.max_radius = in.M >= 2 ? max_radius_vqe(in) : 0.0;
    rep.conditions.gap_open = in.gap > 0.0;
    rep.conditions.fidelity_ok = in.fidelity_margin() > 0.0;
    rep.conditions.step_ok = rep.step <= rep.max_step && rep.max_step > 0.0;
    rep.conditions.radius_ok = r <= rep.max_radius && rep.max_radius > 0.0;
    rep.conditions.first_gate_ok = first_gate.has_value();
    if (rep.conditions.all()) {
        rep.variance_lower = variance_bound_formula(in, r);
    }
    return rep;
}

/// Smallest rotation index j with |<0...0|P_j|0...0>| <= tol.
inline std::optional<std::size_t>
first_valid_gate(const Ansatz &ansatz, double tol = 1e-10) {
    const StateVector zero(ansatz.num_qubits());
    for (std::size_t j = 0; j < ansatz.num_parameters(); ++j) {
        if (std::abs(zero.expectation(ansatz.rotation(j).generator)) <= tol) {
            return j;
        }
    }
    return std::nullopt;
}

} // namespace warmstate
