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
 * @file optimizer.hpp
 * First-order minimizers (plain gradient descent and Adam) with best-point
 * tracking and a noise-aware stopping rule.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace warmstate {

enum class OptimizerKind { gradient_descent, adam };

inline std::string to_string(OptimizerKind k) {
    return k == OptimizerKind::adam ? "adam" : "gradient_descent";
}

inline OptimizerKind optimizer_from_string(const std::string &name) {
    if (name == "adam") {
        return OptimizerKind::adam;
    }
    if (name == "gradient_descent") {
        return OptimizerKind::gradient_descent;
    }
    throw ValidationError("unknown optimizer '" + name + "'");
}

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::adam;
    double learning_rate = 0.05;
    std::size_t max_iters = 300;
    double grad_tol = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    std::size_t noise_window = 10; ///< moving-average length for noisy runs

    void validate() const {
        detail::require(learning_rate > 0.0 && std::isfinite(learning_rate),
                        "learning_rate must be positive");
        detail::require(max_iters >= 1, "max_iters must be positive");
        detail::require(grad_tol > 0.0, "grad_tol must be positive");
        detail::require(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 &&
                            beta2 < 1.0,
                        "Adam betas must lie in [0, 1)");
        detail::require(noise_window >= 1, "noise_window must be positive");
    }
};

/**
 * @brief Callbacks describing one minimization problem.
 *
 * `loss` and `gradient` are called once per iteration with the iteration
 * number, so noisy implementations can key their draws on it. `selection`
 * (optional) scores candidates for best-point tracking; without it the
 * per-iteration loss is used.
 */
struct OptimizeProblem {
    std::function<double(std::span<const double>, std::size_t)> loss;
    std::function<std::vector<double>(std::span<const double>, std::size_t)>
        gradient;
    std::function<double(std::span<const double>)> selection;
    bool noisy = false;
};

struct OptimizeResult {
    std::vector<double> theta;  ///< best point seen
    double best_value = 0.0;    ///< selection score of theta
    std::vector<double> trace;  ///< per-iteration loss values
    std::size_t iterations = 0; ///< gradient evaluations performed
    double grad_norm_final = 0.0;
    bool converged = false;
};

inline double l2_norm(std::span<const double> v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

inline OptimizeResult optimize(const OptimizeProblem &problem,
                               std::vector<double> theta,
                               const OptimizerConfig &cfg) {
    cfg.validate();
    for (double t : theta) {
        if (!std::isfinite(t)) {
            throw ValidationError("initial parameters must be finite");
        }
    }
    const std::size_t m = theta.size();
    std::vector<double> mom(m, 0.0);
    std::vector<double> vel(m, 0.0);
    OptimizeResult res;
    res.theta = theta;
    res.best_value = std::numeric_limits<double>::infinity();
    std::deque<double> window;
    double window_sum = 0.0;
    std::vector<double> averages;

    auto consider = [&](const std::vector<double> &t, double loss_value) {
        const double score = problem.selection ? problem.selection(t)
                                               : loss_value;
        if (!std::isfinite(score)) {
            throw NumericalError("non-finite loss during optimization");
        }
        if (score < res.best_value) {
            res.best_value = score;
            res.theta = t;
        }
    };

    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        const double value = problem.loss(theta, it);
        if (!std::isfinite(value)) {
            throw NumericalError("non-finite loss at iteration " +
                                 std::to_string(it));
        }
        res.trace.push_back(value);
        consider(theta, value);

        const auto grad = problem.gradient(theta, it);
        if (grad.size() != m) {
            throw DimensionError("gradient length differs from parameters");
        }
        res.iterations = it + 1;
        res.grad_norm_final = l2_norm(grad);
        if (!std::isfinite(res.grad_norm_final)) {
            throw NumericalError("non-finite gradient at iteration " +
                                 std::to_string(it));
        }
        if (res.grad_norm_final <= cfg.grad_tol) {
            res.converged = true;
            return res;
        }
        if (problem.noisy) {
            window.push_back(value);
            window_sum += value;
            if (window.size() > cfg.noise_window) {
                window_sum -= window.front();
                window.pop_front();
            }
            if (window.size() == cfg.noise_window) {
                averages.push_back(window_sum /
                                   static_cast<double>(cfg.noise_window));
                const auto n = averages.size();
                if (n > cfg.noise_window &&
                    averages[n - 1] >
                        averages[n - 1 - cfg.noise_window] - cfg.grad_tol) {
                    res.converged = true;
                    return res;
                }
            }
        }

        if (cfg.kind == OptimizerKind::gradient_descent) {
            for (std::size_t j = 0; j < m; ++j) {
                theta[j] -= cfg.learning_rate * grad[j];
            }
        } else {
            const double t = static_cast<double>(it + 1);
            const double c1 = 1.0 - std::pow(cfg.beta1, t);
            const double c2 = 1.0 - std::pow(cfg.beta2, t);
            for (std::size_t j = 0; j < m; ++j) {
                mom[j] = cfg.beta1 * mom[j] + (1.0 - cfg.beta1) * grad[j];
                vel[j] = cfg.beta2 * vel[j] +
                         (1.0 - cfg.beta2) * grad[j] * grad[j];
                theta[j] -= cfg.learning_rate * (mom[j] / c1) /
                            (std::sqrt(vel[j] / c2) + cfg.adam_eps);
            }
        }
    }
    const double value = problem.loss(theta, cfg.max_iters);
    if (!std::isfinite(value)) {
        throw NumericalError("non-finite loss after final update");
    }
    res.trace.push_back(value);
    consider(theta, value);
    return res;
}

/// Exact-loss convenience form.
inline OptimizeResult
optimize(const std::function<double(std::span<const double>)> &loss,
         const std::function<std::vector<double>(std::span<const double>)>
             &gradient,
         std::vector<double> theta, const OptimizerConfig &cfg) {
    OptimizeProblem p;
    p.loss = [&](std::span<const double> t, std::size_t) { return loss(t); };
    p.gradient = [&](std::span<const double> t, std::size_t) {
        return gradient(t);
    };
    return optimize(p, std::move(theta), cfg);
}

} // namespace warmstate
