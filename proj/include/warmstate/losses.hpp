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
 * @file losses.hpp
 * Exact VQE / Meta-VQE losses and the grouped synthetic shot-noise model:
 * every measurement group g contributes its exact energy plus
 * sqrt(V_g) xi_g with V_g = sum_a c_a^2 (1 - <P_a>^2) / S_a and independent
 * standard normal xi_g per evaluation.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ansatz.hpp"
#include "gradient.hpp"
#include "pauli.hpp"
#include "random.hpp"
#include "statevector.hpp"

namespace warmstate {

/// <0|U(theta)^dag H U(theta)|0> with encodings evaluated at x.
inline double vqe_loss(const Ansatz &ansatz, const PauliSum &h,
                       std::span<const double> theta, double x = 0.0) {
    return prepare(ansatz, theta, x).expectation(h);
}

/// (1/k) sum_j <U(theta, x_j)^dag H(x_j) U(theta, x_j)>.
inline double meta_vqe_loss(const Ansatz &ansatz,
                            const HamiltonianFamily &family,
                            std::span<const double> xs,
                            std::span<const double> theta) {
    detail::require(!xs.empty(), "meta loss needs at least one training point");
    double total = 0.0;
    for (double x : xs) {
        total += vqe_loss(ansatz, family.at(x), theta, x);
    }
    return total / static_cast<double>(xs.size());
}

// ---------------------------------------------------------------------------
// Measurement grouping

struct MeasurementGroup {
    std::vector<std::size_t> term_indices;
    std::vector<Pauli> basis; ///< I marks an unconstrained qubit
};

/// Qubit-wise compatibility: letters agree wherever both are non-identity.
inline bool compatible(const std::vector<Pauli> &basis, const PauliString &p) {
    for (std::size_t q = 0; q < basis.size(); ++q) {
        if (basis[q] != Pauli::I && p[q] != Pauli::I && basis[q] != p[q]) {
            return false;
        }
    }
    return true;
}

/// Greedy first-fit partition of the terms into tensor-product bases.
inline std::vector<MeasurementGroup> group_terms(const PauliSum &h) {
    std::vector<MeasurementGroup> groups;
    for (std::size_t a = 0; a < h.size(); ++a) {
        const auto &p = h.terms()[a].string;
        MeasurementGroup *home = nullptr;
        for (auto &g : groups) {
            if (compatible(g.basis, p)) {
                home = &g;
                break;
            }
        }
        if (home == nullptr) {
            groups.push_back(
                {{}, std::vector<Pauli>(h.num_qubits(), Pauli::I)});
            home = &groups.back();
        }
        home->term_indices.push_back(a);
        for (std::size_t q = 0; q < p.num_qubits(); ++q) {
            if (p[q] != Pauli::I) {
                home->basis[q] = p[q];
            }
        }
    }
    return groups;
}

/// Splits `total` into `parts` near-equal integers, remainder to the front.
inline std::vector<std::uint64_t> balanced_split(std::uint64_t total,
                                                 std::size_t parts) {
    std::vector<std::uint64_t> out(parts, parts ? total / parts : 0);
    for (std::size_t i = 0; i < parts && i < total % parts; ++i) {
        ++out[i];
    }
    return out;
}

struct ShotPlan {
    std::uint64_t n_shots = 0;
    std::size_t num_terms = 0;
    std::vector<MeasurementGroup> groups;
    std::vector<std::uint64_t> group_shots;             ///< S_g
    std::vector<std::vector<std::uint64_t>> term_shots; ///< S_a per group
};

/// Uniform allocation across groups, then uniform within each group.
inline ShotPlan make_shot_plan(const PauliSum &h, std::uint64_t n_shots) {
    detail::require(!h.empty(), "cannot plan shots for an empty Hamiltonian");
    ShotPlan plan;
    plan.n_shots = n_shots;
    plan.num_terms = h.size();
    plan.groups = group_terms(h);
    plan.group_shots = balanced_split(n_shots, plan.groups.size());
    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
        auto split = balanced_split(plan.group_shots[g],
                                    plan.groups[g].term_indices.size());
        for (auto s : split) {
            if (s == 0) {
                throw ValidationError(
                    std::to_string(n_shots) + " shots cannot cover " +
                    std::to_string(h.size()) + " terms with >= 1 shot each");
            }
        }
        plan.term_shots.push_back(std::move(split));
    }
    return plan;
}

/// sum_{a in group} c_a^2 (1 - <P_a>^2) / S_a.
inline double group_variance(const StateVector &state, const PauliSum &h,
                             const MeasurementGroup &group,
                             std::span<const std::uint64_t> term_shots) {
    if (term_shots.size() != group.term_indices.size()) {
        throw DimensionError("one shot count per group member required");
    }
    double v = 0.0;
    for (std::size_t i = 0; i < term_shots.size(); ++i) {
        if (term_shots[i] == 0) {
            throw ValidationError("term allocated zero shots");
        }
        const auto &t = h.terms().at(group.term_indices[i]);
        if (t.string.is_identity()) {
            continue;
        }
        const double e = state.expectation(t.string);
        v += t.coeff * t.coeff * std::max(0.0, 1.0 - e * e) /
             static_cast<double>(term_shots[i]);
    }
    return v;
}

struct GroupMoments {
    std::vector<double> energy;   ///< exact contribution per group
    std::vector<double> variance; ///< V_g per group

    [[nodiscard]] double total_energy() const {
        double s = 0.0;
        for (double e : energy) {
            s += e;
        }
        return s;
    }
    [[nodiscard]] double total_variance() const {
        double s = 0.0;
        for (double v : variance) {
            s += v;
        }
        return s;
    }
};

inline GroupMoments group_moments(const StateVector &state, const PauliSum &h,
                                  const ShotPlan &plan) {
    if (plan.num_terms != h.size()) {
        throw DimensionError("shot plan was built for a different Hamiltonian");
    }
    GroupMoments m;
    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
        const auto &group = plan.groups[g];
        const auto &shots = plan.term_shots[g];
        double e = 0.0;
        double v = 0.0;
        for (std::size_t i = 0; i < group.term_indices.size(); ++i) {
            const auto &t = h.terms()[group.term_indices[i]];
            const double p =
                t.string.is_identity() ? 1.0 : state.expectation(t.string);
            e += t.coeff * p;
            v += t.coeff * t.coeff * std::max(0.0, 1.0 - p * p) /
                 static_cast<double>(shots[i]);
        }
        m.energy.push_back(e);
        m.variance.push_back(v);
    }
    return m;
}

/// Injects one standard-normal draw per group from the given engine.
inline double noisy_from_moments(const GroupMoments &m, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double total = 0.0;
    for (std::size_t g = 0; g < m.energy.size(); ++g) {
        const double xi = normal(rng);
        total += m.energy[g] + std::sqrt(m.variance[g]) * xi;
    }
    return total;
}

/// Noisy energy for evaluation `counter` of stream `seed` (pure).
inline double noisy_energy_at(const StateVector &state, const PauliSum &h,
                              const ShotPlan &plan, std::uint64_t seed,
                              std::uint64_t counter) {
    auto rng = engine_for(seed, counter);
    return noisy_from_moments(group_moments(state, h, plan), rng);
}

/// Noisy energy drawing the next counter value from `stream`.
inline double noisy_energy(const StateVector &state, const PauliSum &h,
                           const ShotPlan &plan, NoiseStream &stream) {
    const auto counter = stream.reserve();
    return noisy_energy_at(state, h, plan, stream.seed(), counter);
}

// ---------------------------------------------------------------------------
// Objectives

/**
 * @brief Mean energy over one or more (x, H(x)) points for a fixed ansatz.
 *
 * A single point is the VQE loss; several points give the Meta-VQE loss.
 * With shots enabled each point gets its own plan of n_shots and every
 * evaluation slot draws fresh group noise for every point.
 */
class EnergyObjective {
  public:
    struct Point {
        double x;
        PauliSum h;
        std::optional<ShotPlan> plan;
    };

    EnergyObjective(const Ansatz &ansatz, std::vector<double> xs,
                    std::vector<PauliSum> hamiltonians,
                    std::optional<std::uint64_t> n_shots,
                    std::uint64_t noise_seed)
        : ansatz_(&ansatz), noise_seed_(noise_seed) {
        detail::require(!xs.empty() && xs.size() == hamiltonians.size(),
                        "objective needs matching x and Hamiltonian lists");
        for (std::size_t p = 0; p < xs.size(); ++p) {
            if (hamiltonians[p].num_qubits() != ansatz.num_qubits()) {
                throw DimensionError("Hamiltonian and ansatz sizes differ");
            }
            std::optional<ShotPlan> plan;
            if (n_shots) {
                plan = make_shot_plan(hamiltonians[p], *n_shots);
            }
            points_.push_back({xs[p], std::move(hamiltonians[p]), plan});
        }
    }

    static EnergyObjective vqe(const Ansatz &ansatz, const PauliSum &h,
                               std::optional<std::uint64_t> n_shots = {},
                               std::uint64_t noise_seed = 0, double x = 0.0) {
        return EnergyObjective(ansatz, {x}, {h}, n_shots, noise_seed);
    }

    static EnergyObjective meta(const Ansatz &ansatz,
                                const HamiltonianFamily &family,
                                std::span<const double> xs,
                                std::optional<std::uint64_t> n_shots = {},
                                std::uint64_t noise_seed = 0) {
        std::vector<PauliSum> hs;
        for (double x : xs) {
            hs.push_back(family.at(x));
        }
        return EnergyObjective(ansatz, {xs.begin(), xs.end()}, std::move(hs),
                               n_shots, noise_seed);
    }

    [[nodiscard]] const Ansatz &ansatz() const { return *ansatz_; }
    [[nodiscard]] std::size_t num_parameters() const {
        return ansatz_->num_parameters();
    }
    [[nodiscard]] const std::vector<Point> &points() const { return points_; }
    [[nodiscard]] bool noisy() const { return points_.front().plan.has_value(); }
    [[nodiscard]] std::uint64_t noise_seed() const { return noise_seed_; }

    [[nodiscard]] double exact(std::span<const double> theta) const {
        double total = 0.0;
        for (const auto &p : points_) {
            total += prepare(*ansatz_, theta, p.x).expectation(p.h);
        }
        return total / static_cast<double>(points_.size());
    }

    /// Shot-noisy loss for evaluation slot `slot` (exact when shots are off).
    [[nodiscard]] double evaluate(std::span<const double> theta,
                                  std::uint64_t slot) const {
        if (!noisy()) {
            return exact(theta);
        }
        double total = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto &p = points_[i];
            const auto state = prepare(*ansatz_, theta, p.x);
            auto rng = std::mt19937_64(derive_seed(noise_seed_, {slot, i}));
            total += noisy_from_moments(group_moments(state, p.h, *p.plan), rng);
        }
        return total / static_cast<double>(points_.size());
    }

    /// Evaluation slots consumed by one gradient call.
    [[nodiscard]] std::uint64_t slots_per_gradient() const {
        return 2 * num_parameters();
    }

    /**
     * Mean of per-point parameter-shift gradients, each point using its own
     * encoding values g_j(x). Point i shifts use slots starting at
     * base_slot; noise for distinct points is decorrelated through the
     * point index.
     */
    [[nodiscard]] std::vector<double> gradient(std::span<const double> theta,
                                               std::uint64_t base_slot) const {
        std::vector<double> grad(num_parameters(), 0.0);
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto &p = points_[i];
            const auto g = ansatz_->encoding_values(p.x);
            SlottedLoss point_loss = [&](std::span<const double> t,
                                         std::uint64_t slot) {
                const auto state = prepare(*ansatz_, t, p.x);
                if (!p.plan) {
                    return state.expectation(p.h);
                }
                auto rng = std::mt19937_64(derive_seed(noise_seed_, {slot, i}));
                return noisy_from_moments(group_moments(state, p.h, *p.plan),
                                          rng);
            };
            const auto gi = parameter_shift_grad(point_loss, theta, g, base_slot);
            for (std::size_t j = 0; j < grad.size(); ++j) {
                grad[j] += gi[j];
            }
        }
        for (auto &v : grad) {
            v /= static_cast<double>(points_.size());
        }
        return grad;
    }

  private:
    const Ansatz *ansatz_;
    std::vector<Point> points_;
    std::uint64_t noise_seed_;
};

/// Callable theta -> noisy loss that reserves one stream counter per call.
inline Loss noisy_loss_evaluator(const EnergyObjective &objective,
                                 NoiseStream &stream) {
    return [&objective, &stream](std::span<const double> theta) {
        return objective.evaluate(theta, stream.reserve());
    };
}

} // namespace warmstate
