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
 * @file trainer.hpp
 * Iterative warm-start training along a Hamiltonian path, for plain VQE
 * (one loss per path point) and Meta-VQE (training set grown one point per
 * step), with exact per-step diagnostics.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ansatz.hpp"
#include "bounds.hpp"
#include "losses.hpp"
#include "optimizer.hpp"
#include "pauli.hpp"
#include "random.hpp"
#include "spectrum.hpp"

namespace warmstate {

/// theta* + U[-r, r] independently per coordinate.
inline std::vector<double> sample_hypercube(std::span<const double> center,
                                            double r, std::mt19937_64 &rng) {
    detail::require(r >= 0.0 && std::isfinite(r),
                    "hypercube half-width must be finite and >= 0");
    std::vector<double> out(center.begin(), center.end());
    if (r == 0.0) {
        return out;
    }
    std::uniform_real_distribution<double> u(-r, r);
    for (auto &v : out) {
        v += u(rng);
    }
    return out;
}

inline std::vector<double> sample_hypercube(std::span<const double> center,
                                            double r, std::uint64_t seed,
                                            std::uint64_t counter) {
    auto rng = engine_for(seed, counter);
    return sample_hypercube(center, r, rng);
}

enum class ScheduleMode { vqe_path, meta_incremental };

inline std::string to_string(ScheduleMode m) {
    return m == ScheduleMode::vqe_path ? "vqe_path" : "meta_incremental";
}

struct Schedule {
    ScheduleMode mode = ScheduleMode::vqe_path;
    std::vector<double> xs;

    /// K evenly spaced points from lo to hi inclusive.
    static Schedule linspace(ScheduleMode mode, double lo, double hi,
                             std::size_t k) {
        detail::require(k >= 1, "schedule needs at least one point");
        Schedule s{mode, {}};
        for (std::size_t i = 0; i < k; ++i) {
            s.xs.push_back(k == 1 ? lo
                                  : lo + (hi - lo) * static_cast<double>(i) /
                                             static_cast<double>(k - 1));
        }
        return s;
    }

    void validate(const HamiltonianFamily &family) const {
        detail::require(!xs.empty(), "schedule needs at least one point");
        for (std::size_t i = 0; i < xs.size(); ++i) {
            detail::require(std::isfinite(xs[i]), "schedule x must be finite");
            detail::require(family.contains(xs[i]),
                            "schedule point outside family domain");
            if (i > 0) {
                detail::require(xs[i] > xs[i - 1],
                                "schedule must be strictly increasing");
            }
        }
    }
};

enum class InitPolicy { zero, random, provided };

inline std::string to_string(InitPolicy p) {
    switch (p) {
    case InitPolicy::zero:
        return "zero";
    case InitPolicy::random:
        return "random";
    case InitPolicy::provided:
        return "provided";
    }
    return "zero";
}

inline InitPolicy init_policy_from_string(const std::string &s) {
    if (s == "zero") {
        return InitPolicy::zero;
    }
    if (s == "random") {
        return InitPolicy::random;
    }
    if (s == "provided") {
        return InitPolicy::provided;
    }
    throw ValidationError("unknown init policy '" + s + "'");
}

struct TrainConfig {
    OptimizerConfig optimizer;
    double r_warm = 0.05;
    std::size_t n_restarts = 1;
    std::optional<std::uint64_t> shots;
    std::uint64_t seed = 0;
    InitPolicy first_init = InitPolicy::zero;
    std::vector<double> theta_init; ///< used with InitPolicy::provided
    double init_range = std::numbers::pi;
    double branch_floor = 1e-6; ///< level splittings at or below are degenerate
    double branch_floor_relative = 0.0; ///< added floor per unit ||H(x)||_s
    double gamma = 0.5;
    double gamma_tilde = 0.5;

    void validate() const {
        optimizer.validate();
        detail::require(r_warm >= 0.0 && std::isfinite(r_warm),
                        "r_warm must be finite and >= 0");
        detail::require(n_restarts >= 1, "n_restarts must be >= 1");
        detail::require(!shots || *shots >= 1, "n_shots must be positive");
        detail::require(init_range >= 0.0, "init_range must be >= 0");
        detail::require(branch_floor >= 0.0 && branch_floor_relative >= 0.0,
                        "branch floors must be >= 0");
        detail::require(gamma > 0.0 && gamma < 1.0 && gamma_tilde > 0.0 &&
                            gamma_tilde < 1.0,
                        "gamma and gamma_tilde must lie in (0, 1)");
    }
};

enum class Branch { ground, excited, neither };

inline std::string to_string(Branch b) {
    switch (b) {
    case Branch::ground:
        return "ground";
    case Branch::excited:
        return "excited";
    case Branch::neither:
        return "neither";
    }
    return "neither";
}

/**
 * @brief Assigns an energy to the ground or first excited level.
 *
 * tol = 0.05 (e1 - e0) + floor. Levels split by at most `floor` count as
 * one degenerate ground level.
 */
inline Branch classify_branch(double energy, double e0, double e1,
                              double floor = 1e-6) {
    const double d0 = std::abs(energy - e0);
    const double d1 = std::abs(energy - e1);
    const double tol = 0.05 * (e1 - e0) + floor;
    if (e1 - e0 <= floor) {
        return d0 <= tol ? Branch::ground : Branch::neither;
    }
    if (d0 <= std::min(d1, tol)) {
        return Branch::ground;
    }
    if (d1 < d0) {
        return Branch::excited;
    }
    return Branch::neither;
}

/// Exact reference data of H(x).
struct Reference {
    double x = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double gap = 0.0;
    double semi_norm = 0.0;
    ComplexVector ground_vector;
};

inline Reference reference_at(const HamiltonianFamily &family, double x) {
    const auto s = exact_spectrum(family.at(x));
    return {x, s.ground_energy(), s.first_excited_value, s.gap(),
            s.semi_norm(), s.ground_vector};
}

/// Step-size and radius budgets evaluated for a path step.
struct StepTelemetry {
    double max_step = 0.0;
    double max_radius = 0.0;
    bool step_ok = false;
    bool radius_ok = false;
};

struct TrainRecord {
    std::size_t k = 0;
    double x = 0.0;
    std::vector<double> theta_star;
    double energy_learned = 0.0; ///< exact energy of theta* at x
    double loss = 0.0;           ///< exact step loss at theta*
    double init_loss = 0.0;      ///< exact step loss at the chosen start
    double e0 = 0.0;
    double e1 = 0.0;
    double fidelity_gs = 0.0;
    double eps = 0.0;
    std::size_t iters_used = 0;
    double grad_norm_final = 0.0;
    bool failed = false;
    Branch branch = Branch::neither;
    std::vector<double> trace;
    std::optional<StepTelemetry> telemetry;
};

/// Meta-VQE evaluation at an x that was not trained on.
struct TestRecord {
    double x = 0.0;
    double energy = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double fidelity_gs = 0.0;
    double eps = 0.0;
    double semi_norm = 0.0;
    Branch branch = Branch::neither;

    [[nodiscard]] double error() const { return std::abs(energy - e0); }
};

struct RunLog {
    Schedule schedule;
    TrainConfig config;
    std::vector<TrainRecord> records;
    std::vector<TestRecord> tests;
};

/// Classification floor at a point with semi-norm `semi_norm`.
inline double branch_floor_at(const TrainConfig &cfg, double semi_norm) {
    return cfg.branch_floor + cfg.branch_floor_relative * semi_norm;
}

namespace detail {

inline double eps_from_fidelity(double f) {
    return std::sqrt(std::clamp(1.0 - f, 0.0, 1.0));
}

/// Fills the exact diagnostics of a record from its reference.
inline void diagnose(TrainRecord &rec, const Ansatz &ansatz,
                     const Reference &ref, const PauliSum &h,
                     double floor) {
    const auto state = prepare(ansatz, rec.theta_star, rec.x);
    rec.energy_learned = state.expectation(h);
    rec.e0 = ref.e0;
    rec.e1 = ref.e1;
    rec.fidelity_gs = std::clamp(fidelity(state, ref.ground_vector), 0.0, 1.0);
    rec.eps = eps_from_fidelity(rec.fidelity_gs);
    rec.branch = classify_branch(rec.energy_learned, rec.e0, rec.e1, floor);
}

struct StepOutcome {
    OptimizeResult result;
    double init_loss = 0.0;
    bool failed = false;
};

/**
 * Runs every restart of one path step and keeps the restart with the lowest
 * exact loss. Restart i starts at start(i); noise for restart i of step k is
 * keyed by derive_seed(seed, {k, i, 1}).
 */
template <class Start>
StepOutcome run_step(const Ansatz &ansatz, std::span<const double> xs,
                     std::span<const PauliSum> hs, const TrainConfig &cfg,
                     std::size_t k, Start &&start) {
    StepOutcome best;
    bool have = false;
    bool improved_any = false;
    for (std::size_t i = 0; i < cfg.n_restarts; ++i) {
        EnergyObjective obj(ansatz, {xs.begin(), xs.end()},
                            {hs.begin(), hs.end()}, cfg.shots,
                            derive_seed(cfg.seed, {k, i, 1}));
        const std::uint64_t stride = obj.slots_per_gradient() + 1;
        OptimizeProblem problem;
        problem.loss = [&](std::span<const double> t, std::size_t it) {
            return obj.evaluate(t, it * stride);
        };
        problem.gradient = [&](std::span<const double> t, std::size_t it) {
            return obj.gradient(t, it * stride + 1);
        };
        problem.noisy = obj.noisy();
        if (obj.noisy()) {
            problem.selection = [&](std::span<const double> t) {
                return obj.exact(t);
            };
        }
        auto theta0 = start(i);
        const double init = obj.exact(theta0);
        auto res = optimize(problem, std::move(theta0), cfg.optimizer);
        const double final_loss = obj.exact(res.theta);
        const bool improved = final_loss < init || res.iterations <= 1;
        improved_any = improved_any || improved;
        if (!have || final_loss < best.result.best_value) {
            res.best_value = final_loss;
            best.result = std::move(res);
            best.init_loss = init;
            have = true;
        }
    }
    best.failed = !improved_any;
    return best;
}

inline std::vector<double> first_start(const TrainConfig &cfg, std::size_t m,
                                       std::size_t restart) {
    const std::uint64_t counter = restart;
    const auto seed = derive_seed(cfg.seed, {0, 0, 0});
    switch (cfg.first_init) {
    case InitPolicy::zero: {
        const std::vector<double> zeros(m, 0.0);
        return sample_hypercube(zeros, cfg.r_warm, seed, counter);
    }
    case InitPolicy::random: {
        const std::vector<double> zeros(m, 0.0);
        return sample_hypercube(zeros, cfg.init_range, seed, counter);
    }
    case InitPolicy::provided:
        if (cfg.theta_init.size() != m) {
            throw DimensionError("theta_init has " +
                                 std::to_string(cfg.theta_init.size()) +
                                 " entries, ansatz has " + std::to_string(m));
        }
        return sample_hypercube(cfg.theta_init, cfg.r_warm, seed, counter);
    }
    return std::vector<double>(m, 0.0);
}

inline void fill_from_outcome(TrainRecord &rec, const StepOutcome &out) {
    rec.theta_star = out.result.theta;
    rec.loss = out.result.best_value;
    rec.init_loss = out.init_loss;
    rec.iters_used = out.result.iterations;
    rec.grad_norm_final = out.result.grad_norm_final;
    rec.trace = out.result.trace;
    rec.failed = out.failed;
}

} // namespace detail

/**
 * @brief Warm-start VQE: step k minimizes <H(x_k)> starting inside the
 * hypercube of half-width r_warm around theta*_{k-1}.
 */
inline RunLog warm_start_vqe(const HamiltonianFamily &family,
                             const Ansatz &ansatz, const Schedule &schedule,
                             const TrainConfig &cfg) {
    cfg.validate();
    schedule.validate(family);
    detail::require(schedule.mode == ScheduleMode::vqe_path,
                    "warm_start_vqe needs a vqe_path schedule");
    if (family.num_qubits() != ansatz.num_qubits()) {
        throw DimensionError("family and ansatz sizes differ");
    }
    const std::size_t m = ansatz.num_parameters();
    const double h1s = semi_norm(family.h1);
    RunLog log{schedule, cfg, {}, {}};
    std::optional<Reference> prev_ref;
    for (std::size_t k = 0; k < schedule.xs.size(); ++k) {
        const double x = schedule.xs[k];
        const auto h = family.at(x);
        const auto ref = reference_at(family, x);
        const std::vector<double> xs{x};
        const std::vector<PauliSum> hs{h};
        std::vector<double> center;
        if (k > 0) {
            center = log.records.back().theta_star;
        }
        auto out = detail::run_step(
            ansatz, xs, hs, cfg, k, [&](std::size_t i) {
                if (k == 0) {
                    return detail::first_start(cfg, m, i);
                }
                return sample_hypercube(center, cfg.r_warm,
                                        derive_seed(cfg.seed, {k, i, 0}), 0);
            });
        TrainRecord rec;
        rec.k = k;
        rec.x = x;
        detail::fill_from_outcome(rec, out);
        detail::diagnose(rec, ansatz, ref, h,
                         branch_floor_at(cfg, ref.semi_norm));
        if (k > 0) {
            BoundInputs in;
            in.gap = prev_ref->gap;
            in.h_seminorm = ref.semi_norm;
            in.h1_seminorm = h1s;
            in.M = m;
            in.eps = std::min(log.records.back().eps, std::sqrt(0.5));
            in.gamma = cfg.gamma;
            in.gamma_tilde = cfg.gamma_tilde;
            StepTelemetry t;
            t.max_step = max_step_vqe(in);
            t.max_radius = m >= 2 ? max_radius_vqe(in) : 0.0;
            t.step_ok = x - schedule.xs[k - 1] <= t.max_step;
            t.radius_ok = cfg.r_warm <= t.max_radius;
            rec.telemetry = t;
        }
        log.records.push_back(std::move(rec));
        prev_ref = ref;
    }
    return log;
}

/// Midpoints between consecutive training points.
inline std::vector<double> midpoints(std::span<const double> xs) {
    std::vector<double> out;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        out.push_back(0.5 * (xs[i - 1] + xs[i]));
    }
    return out;
}

/// Exact evaluation of the encoded circuit at an untrained x.
inline TestRecord evaluate_test_point(const HamiltonianFamily &family,
                                      const Ansatz &ansatz,
                                      std::span<const double> theta, double x,
                                      const TrainConfig &cfg = {}) {
    const auto ref = reference_at(family, x);
    const auto state = prepare(ansatz, theta, x);
    TestRecord t;
    t.x = x;
    t.energy = state.expectation(family.at(x));
    t.e0 = ref.e0;
    t.e1 = ref.e1;
    t.semi_norm = ref.semi_norm;
    t.fidelity_gs = std::clamp(fidelity(state, ref.ground_vector), 0.0, 1.0);
    t.eps = detail::eps_from_fidelity(t.fidelity_gs);
    t.branch = classify_branch(t.energy, t.e0, t.e1,
                               branch_floor_at(cfg, ref.semi_norm));
    return t;
}

/**
 * @brief Warm-start Meta-VQE: step k minimizes the mean energy over
 * x_1..x_k, starting near theta*_{k-1}. After the last step the circuit
 * is evaluated at the midpoints of the training schedule (or at
 * `test_xs` when given) without further optimization.
 */
inline RunLog warm_start_meta(const HamiltonianFamily &family,
                              const Ansatz &ansatz, const Schedule &schedule,
                              const TrainConfig &cfg,
                              std::optional<std::vector<double>> test_xs = {}) {
    cfg.validate();
    schedule.validate(family);
    detail::require(schedule.mode == ScheduleMode::meta_incremental,
                    "warm_start_meta needs a meta_incremental schedule");
    if (family.num_qubits() != ansatz.num_qubits()) {
        throw DimensionError("family and ansatz sizes differ");
    }
    const std::size_t m = ansatz.num_parameters();
    const double h1s = semi_norm(family.h1);
    RunLog log{schedule, cfg, {}, {}};
    std::vector<double> xs;
    std::vector<PauliSum> hs;
    std::vector<Reference> refs;
    for (std::size_t k = 0; k < schedule.xs.size(); ++k) {
        const double x = schedule.xs[k];
        xs.push_back(x);
        hs.push_back(family.at(x));
        refs.push_back(reference_at(family, x));
        std::vector<double> center;
        if (k > 0) {
            center = log.records.back().theta_star;
        }
        auto out = detail::run_step(
            ansatz, xs, hs, cfg, k, [&](std::size_t i) {
                if (k == 0) {
                    return detail::first_start(cfg, m, i);
                }
                return sample_hypercube(center, cfg.r_warm,
                                        derive_seed(cfg.seed, {k, i, 0}), 0);
            });
        TrainRecord rec;
        rec.k = k;
        rec.x = x;
        detail::fill_from_outcome(rec, out);
        detail::diagnose(rec, ansatz, refs.back(), hs.back(),
                         branch_floor_at(cfg, refs.back().semi_norm));
        if (k > 0 && m >= 2) {
            BoundInputs in;
            double gap_min = refs.front().gap;
            double hs_max = 0.0;
            for (std::size_t j = 0; j + 1 < refs.size(); ++j) {
                gap_min = std::min(gap_min, refs[j].gap);
            }
            for (const auto &r : refs) {
                hs_max = std::max(hs_max, r.semi_norm);
            }
            in.gap = gap_min;
            in.h_seminorm = hs_max;
            in.h1_seminorm = h1s;
            in.M = m;
            in.eps = std::min(log.records.back().eps, std::sqrt(0.5));
            in.gamma = cfg.gamma;
            in.gamma_tilde = cfg.gamma_tilde;
            in.g_max_deriv = ansatz.max_encoding_derivative();
            std::vector<double> g1;
            double gmax = 0.0;
            double gmin = std::numeric_limits<double>::infinity();
            for (double xj : xs) {
                g1.push_back(ansatz.rotation(0).encoding(xj));
                for (double g : ansatz.encoding_values(xj)) {
                    gmax = std::max(gmax, std::abs(g));
                    gmin = std::min(gmin, std::abs(g));
                }
            }
            in.g_max = gmax;
            in.g_min = gmin;
            StepTelemetry t;
            t.max_step = in.h1_seminorm + in.g_max_deriv * in.h_seminorm > 0.0
                             ? max_step_meta(in)
                             : max_step_vqe(in);
            t.max_radius = max_radius_meta(in, g1);
            t.step_ok = x - schedule.xs[k - 1] <= t.max_step;
            t.radius_ok = cfg.r_warm <= t.max_radius;
            rec.telemetry = t;
        }
        log.records.push_back(std::move(rec));
    }
    const auto tests = test_xs ? *test_xs : midpoints(schedule.xs);
    for (double x : tests) {
        log.tests.push_back(evaluate_test_point(
            family, ansatz, log.records.back().theta_star, x, cfg));
    }
    return log;
}

} // namespace warmstate
