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
 * @file experiments.hpp
 * Experiment drivers: Monte-Carlo loss variance over parameter hypercubes,
 * closed-form hypercube averages, the single-gate conditional variance,
 * radius scans with power-law fits, bound checks and path tracking runs.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ansatz.hpp"
#include "bounds.hpp"
#include "models.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "spectrum.hpp"
#include "trainer.hpp"

namespace warmstate {

/// Sample statistics of one Monte-Carlo run.
struct SampleStats {
    double mean = 0.0;
    double mean_se = 0.0;
    double var = 0.0; ///< unbiased sample variance
    double var_se = 0.0;
    std::size_t samples = 0;
};

/**
 * @brief Mean, unbiased variance and their standard errors.
 *
 * The variance error uses the fourth central moment:
 * Var(s^2) ~ (m4 - s^4 (n - 3)/(n - 1)) / n.
 */
inline SampleStats sample_stats(std::span<const double> values) {
    const std::size_t n = values.size();
    detail::require(n >= 2, "statistics need at least two samples");
    const double dn = static_cast<double>(n);
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= dn;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    SampleStats s;
    s.samples = n;
    s.mean = mean;
    s.var = m2 / (dn - 1.0);
    s.mean_se = std::sqrt(s.var / dn);
    m4 /= dn;
    const double v4 = m4 - s.var * s.var * (dn - 3.0) / (dn - 1.0);
    s.var_se = std::sqrt(std::max(0.0, v4) / dn);
    return s;
}

/// loss at `samples` hypercube draws around theta*; draw i uses counter i.
inline std::vector<double> hypercube_samples(const Loss &loss,
                                             std::span<const double> center,
                                             double r, std::size_t samples,
                                             std::uint64_t seed) {
    std::vector<double> values(samples);
    parallel_for(samples, [&](std::size_t i) {
        const auto theta = sample_hypercube(center, r, seed, i);
        values[i] = loss(theta);
    });
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw NumericalError("non-finite loss in hypercube sampling");
        }
    }
    return values;
}

/// Var over D(theta*, r) of the loss, with its standard error.
inline SampleStats estimate_variance(const Loss &loss,
                                     std::span<const double> center, double r,
                                     std::size_t samples, std::uint64_t seed) {
    detail::require(samples >= 2, "variance needs at least two samples");
    const auto values = hypercube_samples(loss, center, r, samples, seed);
    return sample_stats(values);
}

inline constexpr std::size_t kMaxEnumeratedParameters = 12;

namespace detail {

/**
 * Depth-first walk over the 2^M branch vectors z. The + branch applies
 * U_l(theta*_l); the - branch applies P_l first. `visit(state, weight,
 * forced_sign)` is called on every leaf. Gate `skip` (if any) is forced to
 * branch `skip_sign` with weight 1.
 */
template <class Visit>
void walk_branches(const Ansatz &ansatz, std::span<const double> theta,
                   double r, double x, std::optional<std::size_t> skip,
                   int skip_sign, Visit &&visit) {
    const auto &gates = ansatz.gates();
    std::vector<double> kp;
    std::vector<double> km;
    for (std::size_t j = 0; j < ansatz.num_parameters(); ++j) {
        const double g = std::abs(ansatz.rotation(j).encoding(x));
        kp.push_back(k_plus(g * r));
        km.push_back(k_minus(g * r));
    }
    std::function<void(StateVector, std::size_t, std::size_t, double)> rec =
        [&](StateVector state, std::size_t pos, std::size_t j, double w) {
            while (pos < gates.size() && !gates[pos].is_rotation()) {
                apply_fixed(state, gates[pos].fixed);
                ++pos;
            }
            if (pos == gates.size()) {
                visit(state, w);
                return;
            }
            const auto &g = gates[pos];
            const double angle = theta[j] * g.encoding(x);
            const bool forced = skip && *skip == j;
            const double wp = forced ? (skip_sign > 0 ? 1.0 : 0.0) : kp[j];
            const double wm = forced ? (skip_sign < 0 ? 1.0 : 0.0) : km[j];
            if (wm > 0.0) {
                StateVector minus = state;
                minus.apply_pauli(g.generator);
                minus.apply_rotation(g.generator, angle);
                rec(std::move(minus), pos + 1, j + 1, w * wm);
            }
            if (wp > 0.0) {
                state.apply_rotation(g.generator, angle);
                rec(std::move(state), pos + 1, j + 1, w * wp);
            }
        };
    rec(StateVector(ansatz.num_qubits()), 0, 0, 1.0);
}

inline void check_enumerable(const Ansatz &ansatz, std::span<const double> theta) {
    if (theta.size() != ansatz.num_parameters()) {
        throw DimensionError("parameter vector length differs from ansatz");
    }
    if (ansatz.num_parameters() > kMaxEnumeratedParameters) {
        throw SizeError("closed-form hypercube average limited to " +
                        std::to_string(kMaxEnumeratedParameters) +
                        " parameters");
    }
}

} // namespace detail

/**
 * @brief E over D(theta*, r) of <H>, by exact enumeration of the
 * convex combination sum_z prod_l k_{z_l} <psi_z|H|psi_z>.
 */
inline double expected_loss_closed_form(const Ansatz &ansatz, const PauliSum &h,
                                        std::span<const double> theta, double r,
                                        double x = 0.0) {
    detail::check_enumerable(ansatz, theta);
    detail::require_radius(r);
    double total = 0.0;
    detail::walk_branches(ansatz, theta, r, x, std::nullopt, 0,
                          [&](const StateVector &s, double w) {
                              total += w * s.expectation(h);
                          });
    return total;
}

/**
 * @brief h(g_j r) (<A> - <P_j A P_j>)^2 for gate j, with A the hypercube
 * average over every other parameter.
 *
 * Lower-bounds the variance of the loss over D(theta*, r).
 */
inline double conditional_variance_term(const Ansatz &ansatz, const PauliSum &h,
                                        std::span<const double> theta,
                                        double r, std::size_t j,
                                        double x = 0.0) {
    detail::check_enumerable(ansatz, theta);
    detail::require_radius(r);
    if (j >= ansatz.num_parameters()) {
        throw DimensionError("gate index out of range");
    }
    double plus = 0.0;
    double minus = 0.0;
    detail::walk_branches(ansatz, theta, r, x, j, +1,
                          [&](const StateVector &s, double w) {
                              plus += w * s.expectation(h);
                          });
    detail::walk_branches(ansatz, theta, r, x, j, -1,
                          [&](const StateVector &s, double w) {
                              minus += w * s.expectation(h);
                          });
    const double g = std::abs(ansatz.rotation(j).encoding(x));
    const double d = plus - minus;
    return h_exact(g * r) * d * d;
}

// ---------------------------------------------------------------------------
// Fits

struct FitResult {
    double exponent = 0.0; ///< slope
    double intercept = 0.0;
    double rss = 0.0;
    std::size_t points = 0;
};

/// Ordinary least squares y = intercept + exponent * x.
inline FitResult fit_line(std::span<const double> xs,
                          std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw DimensionError("fit needs equally many x and y values");
    }
    const std::size_t n = xs.size();
    detail::require(n >= 2, "fit needs at least two points");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 1e-300) {
        throw ValidationError("degenerate fit: all x values coincide");
    }
    FitResult f;
    f.points = n;
    f.exponent = sxy / sxx;
    f.intercept = my - f.exponent * mx;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (f.intercept + f.exponent * xs[i]);
        f.rss += e * e;
    }
    return f;
}

/// n log-spaced points from lo to hi inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    detail::require(lo > 0.0 && hi >= lo && n >= 1, "invalid log grid");
    std::vector<double> g;
    for (std::size_t i = 0; i < n; ++i) {
        const double t =
            n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        g.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
    }
    g.front() = lo;
    if (n > 1) {
        g.back() = hi;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Variance scan

struct VarianceScanRow {
    std::size_t n = 0;
    std::size_t L = 0;
    std::size_t M = 0;
    double r = 0.0;
    double var = 0.0;
    double se = 0.0;
    std::size_t samples = 0;
};

struct VarianceScanConfig {
    std::string model = "heisenberg_field";
    double J = 1.0;
    std::vector<std::size_t> ns{4, 6, 8};
    std::optional<std::size_t> layers; ///< defaults to L = n
    Pauli single_axis = Pauli::Z;
    std::vector<double> radii = log_grid(1e-2, std::numbers::pi, 20);
    std::size_t samples = 10000;
    double x_train = 0.1;
    double x_eval = 0.2;
    TrainConfig train;

    void validate() const {
        detail::require(!ns.empty(), "scan needs at least one qubit count");
        for (auto n : ns) {
            detail::require(n >= 2 && n <= kMaxQubits,
                            "scan qubit counts must lie in [2, 14]");
        }
        detail::require(!radii.empty(), "scan needs at least one radius");
        for (double r : radii) {
            detail::require(r >= 0.0 && std::isfinite(r),
                            "scan radii must be finite and >= 0");
        }
        detail::require(samples >= 2, "scan needs at least two samples");
        train.validate();
    }
};

/// Per-qubit-count product of a scan: trained parameters and rows.
struct ScanBlock {
    std::size_t n = 0;
    std::vector<double> theta_star;
    TrainRecord training;
    std::vector<VarianceScanRow> rows;
};

/**
 * @brief For each n: train HEA(n, L) at x_train, then estimate the variance
 * of the exact loss at x_eval over D(theta*, r) for every radius.
 */
inline std::vector<ScanBlock> variance_scan(const VarianceScanConfig &cfg) {
    cfg.validate();
    std::vector<ScanBlock> out;
    for (std::size_t idx = 0; idx < cfg.ns.size(); ++idx) {
        const std::size_t n = cfg.ns[idx];
        const std::size_t layers = cfg.layers.value_or(n);
        const auto family = models::family_by_name(cfg.model, n, cfg.J);
        const auto ansatz = build_hea(n, layers, cfg.single_axis);
        TrainConfig tc = cfg.train;
        tc.seed = derive_seed(cfg.train.seed, {n, 0});
        const auto log = warm_start_vqe(
            family, ansatz, Schedule{ScheduleMode::vqe_path, {cfg.x_train}},
            tc);
        ScanBlock block;
        block.n = n;
        block.training = log.records.front();
        block.theta_star = block.training.theta_star;
        const auto h = family.at(cfg.x_eval);
        const Loss loss = [&](std::span<const double> t) {
            return prepare(ansatz, t).expectation(h);
        };
        for (std::size_t ri = 0; ri < cfg.radii.size(); ++ri) {
            const double r = cfg.radii[ri];
            const auto st =
                estimate_variance(loss, block.theta_star, r, cfg.samples,
                                  derive_seed(cfg.train.seed, {n, 1, ri}));
            block.rows.push_back({n, layers, ansatz.num_parameters(), r,
                                  st.var, st.var_se, cfg.samples});
        }
        out.push_back(std::move(block));
    }
    return out;
}

/// Grid argmax of the variance for every distinct M (first maximum wins).
inline std::vector<std::pair<std::size_t, double>>
rmax_by_M(std::span<const VarianceScanRow> rows) {
    std::vector<std::pair<std::size_t, double>> out;
    std::vector<double> best;
    for (const auto &row : rows) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const auto &p) { return p.first == row.M; });
        if (it == out.end()) {
            out.emplace_back(row.M, row.r);
            best.push_back(row.var);
        } else {
            auto &b = best[static_cast<std::size_t>(it - out.begin())];
            if (row.var > b) {
                b = row.var;
                it->second = row.r;
            }
        }
    }
    return out;
}

/// Least-squares slope of log r_max against log M.
inline FitResult fit_rmax(std::span<const VarianceScanRow> rows) {
    const auto peaks = rmax_by_M(rows);
    detail::require(peaks.size() >= 3, "r_max fit needs at least three M");
    std::vector<double> lx;
    std::vector<double> ly;
    for (const auto &[m, r] : peaks) {
        lx.push_back(std::log(static_cast<double>(m)));
        ly.push_back(std::log(r));
    }
    return fit_line(lx, ly);
}

/// Slope of log(var) at the radius closest to `r` against n.
inline FitResult fit_log_variance_vs_n(std::span<const VarianceScanRow> rows,
                                       double r) {
    std::vector<std::pair<std::size_t, const VarianceScanRow *>> pick;
    for (const auto &row : rows) {
        auto it = std::find_if(pick.begin(), pick.end(),
                               [&](const auto &p) { return p.first == row.n; });
        if (it == pick.end()) {
            pick.emplace_back(row.n, &row);
        } else if (std::abs(row.r - r) < std::abs(it->second->r - r)) {
            it->second = &row;
        }
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto &[n, row] : pick) {
        detail::require(row->var > 0.0, "variance must be positive for a log fit");
        xs.push_back(static_cast<double>(n));
        ys.push_back(std::log(row->var));
    }
    return fit_line(xs, ys);
}

// ---------------------------------------------------------------------------
// Bound check

struct BoundCheckConfig {
    std::string model = "heisenberg_field";
    double J = 1.0;
    std::size_t n = 4;
    std::size_t layers = 4;
    double x1 = 0.1;
    double x2 = 0.2;          ///< requested; shortened to fit the step budget
    double step_fraction = 0.9; ///< used when x2 - x1 exceeds max_step
    double radius_fraction = 0.9;
    double eps_target = 0.1;
    std::size_t samples = 10000;
    std::optional<double> eps_override; ///< replaces the measured eps
    TrainConfig train;
};

struct BoundCheckReport {
    double x1 = 0.0;
    double x2 = 0.0;
    double eps = 0.0;
    bool eps_target_met = false;
    BoundReport bound;
    SampleStats empirical;
    double energy_x1 = 0.0;
    double e0_x1 = 0.0;
    bool leading_gates_trivial = false;
    bool passed = false;
};

/// True if every gate before rotation j leaves |0...0> invariant up to phase.
inline bool leading_gates_trivial(const Ansatz &ansatz, std::size_t j) {
    std::size_t seen = 0;
    for (const auto &g : ansatz.gates()) {
        if (g.is_rotation()) {
            if (seen == j) {
                return true;
            }
            if (!g.generator.is_diagonal()) {
                return false;
            }
            ++seen;
        } else {
            return false;
        }
    }
    return false;
}

/**
 * @brief Trains at x1, steps to x2 and compares the Monte-Carlo variance of
 * the x2 loss around theta*(x1) with the analytic lower bound.
 */
inline BoundCheckReport bound_check(const BoundCheckConfig &cfg) {
    const auto family = models::family_by_name(cfg.model, cfg.n, cfg.J);
    const auto ansatz = build_hea(cfg.n, cfg.layers);
    const auto log = warm_start_vqe(
        family, ansatz, Schedule{ScheduleMode::vqe_path, {cfg.x1}}, cfg.train);
    const auto &rec = log.records.front();

    BoundCheckReport rep;
    rep.x1 = cfg.x1;
    rep.energy_x1 = rec.energy_learned;
    rep.e0_x1 = rec.e0;
    rep.eps = std::min(cfg.eps_override.value_or(rec.eps), std::sqrt(0.5));
    rep.eps_target_met = rep.eps <= cfg.eps_target;

    const auto ref1 = reference_at(family, cfg.x1);
    BoundInputs in;
    in.gap = ref1.gap;
    in.h1_seminorm = semi_norm(family.h1);
    in.M = ansatz.num_parameters();
    in.eps = rep.eps;
    in.gamma = cfg.train.gamma;
    in.gamma_tilde = cfg.train.gamma_tilde;
    const double max_step = max_step_vqe(in);
    rep.x2 = cfg.x2;
    if (cfg.x2 - cfg.x1 > max_step) {
        rep.x2 = cfg.x1 + cfg.step_fraction * max_step;
    }
    const auto ref2 = reference_at(family, rep.x2);
    in.h_seminorm = ref2.semi_norm;

    const auto gate = first_valid_gate(ansatz);
    rep.leading_gates_trivial = gate && leading_gates_trivial(ansatz, *gate);
    const std::optional<std::size_t> usable =
        rep.leading_gates_trivial ? gate : std::nullopt;
    const double r = cfg.radius_fraction * (in.M >= 2 ? max_radius_vqe(in) : 0.0);
    rep.bound = variance_bound_vqe(in, r, rep.x2 - cfg.x1, usable);
    rep.bound.conditions.fidelity_ok =
        rep.bound.conditions.fidelity_ok && rep.eps_target_met;
    if (!rep.bound.conditions.all()) {
        rep.bound.variance_lower = 0.0;
    }

    const auto h2 = family.at(rep.x2);
    const Loss loss = [&](std::span<const double> t) {
        return prepare(ansatz, t).expectation(h2);
    };
    rep.empirical = estimate_variance(loss, rec.theta_star, r, cfg.samples,
                                      derive_seed(cfg.train.seed, {7, 1}));
    rep.passed = rep.empirical.var >=
                 rep.bound.variance_lower - 3.0 * rep.empirical.var_se;
    return rep;
}

// ---------------------------------------------------------------------------
// Tracking

struct CurvePoint {
    double x = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
};

struct TrackingResult {
    RunLog log;
    std::vector<CurvePoint> curve;
    std::size_t ground = 0;
    std::size_t excited = 0;
    std::size_t neither = 0;
};

/// Exact e0/e1 on `points` evenly spaced x in [lo, hi].
inline std::vector<CurvePoint> reference_curve(const HamiltonianFamily &family,
                                               double lo, double hi,
                                               std::size_t points) {
    std::vector<CurvePoint> c;
    const auto s =
        Schedule::linspace(ScheduleMode::vqe_path, lo, hi, std::max<std::size_t>(points, 1));
    for (double x : s.xs) {
        const auto ref = reference_at(family, x);
        c.push_back({x, ref.e0, ref.e1});
    }
    return c;
}

/// Runs warm-start VQE or Meta-VQE and attaches reference curves.
inline TrackingResult tracking_experiment(const HamiltonianFamily &family,
                                          const Ansatz &ansatz,
                                          const Schedule &schedule,
                                          const TrainConfig &cfg,
                                          std::size_t curve_points = 41) {
    TrackingResult res;
    res.log = schedule.mode == ScheduleMode::vqe_path
                  ? warm_start_vqe(family, ansatz, schedule, cfg)
                  : warm_start_meta(family, ansatz, schedule, cfg);
    if (curve_points > 0) {
        res.curve = reference_curve(family, schedule.xs.front(),
                                    schedule.xs.back(), curve_points);
    }
    for (const auto &r : res.log.records) {
        switch (r.branch) {
        case Branch::ground:
            ++res.ground;
            break;
        case Branch::excited:
            ++res.excited;
            break;
        case Branch::neither:
            ++res.neither;
            break;
        }
    }
    return res;
}

} // namespace warmstate
