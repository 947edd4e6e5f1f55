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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Criteria 6-9 drive the CLI with the shipped configurations.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "warmstate/warmstate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace warmstate;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

fs::path scratch() {
    static const fs::path root = [] {
        auto p = fs::temp_directory_path() /
                 ("warmstate_acceptance_" + std::to_string(::getpid()));
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return root;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) {
        throw IoError("cannot read " + p.string());
    }
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

// Copies a shipped config with its output redirected under the scratch root.
fs::path staged_config(const std::string &name, const fs::path &out) {
    auto doc = json::parse(slurp(fs::path(WARMSTATE_CONFIG_DIR) / name));
    doc["output_dir"] = out.string();
    const auto path = scratch() / ("cfg_" + out.filename().string() + ".json");
    std::ofstream(path) << doc.dump(2);
    return path;
}

void cli(const std::string &command, const fs::path &config) {
    const std::string cmd = std::string(WARMSTATE_CLI_PATH) + " " + command +
                            " --config " + config.string() + " > /dev/null";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        throw std::runtime_error("cli " + command + " failed for " + config.string());
    }
}

std::vector<double> uniform_vector(std::size_t m, double lo, double hi,
                                   std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(m);
    for (auto &x : v) {
        x = u(rng);
    }
    return v;
}

std::string random_label(std::size_t n, std::mt19937_64 &rng) {
    static const char letters[] = {'I', 'X', 'Y', 'Z'};
    std::uniform_int_distribution<int> pick(0, 3);
    std::string s;
    do {
        s.clear();
        for (std::size_t q = 0; q < n; ++q) {
            s.push_back(letters[pick(rng)]);
        }
    } while (s.find_first_not_of('I') == std::string::npos);
    return s;
}

Ansatz random_circuit(std::size_t n, std::size_t m, std::mt19937_64 &rng) {
    Ansatz a(n);
    for (std::size_t j = 0; j < m; ++j) {
        a.add_rotation(PauliString::parse(random_label(n, rng)));
    }
    return a;
}

PauliSum random_hamiltonian(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> c;
    std::vector<PauliTerm> terms;
    for (int k = 0; k < 4; ++k) {
        terms.push_back({c(rng), PauliString::parse(random_label(n, rng))});
    }
    return PauliSum(n, terms);
}

// 1
Outcome gradient_correctness() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int inst = 0; inst < 20; ++inst) {
        const std::size_t n = 2 + inst % 3;
        const std::size_t layers = n == 4 ? 2 : 1 + inst % 2;
        const double x = std::uniform_real_distribution<double>(-1.5, 1.5)(rng);
        const auto enc = uniform_vector(3, -2.0, 2.0, rng);
        const Ansatz a =
            inst % 2 == 0 ? build_hea(n, layers)
                          : build_meta_ansatz(
                                n, layers,
                                LayerEncoding{EncodingFn::affine(enc[0], enc[1]),
                                              EncodingFn::linear(enc[2])});
        const auto h = models::build_heisenberg_field(n, x);
        const auto theta = uniform_vector(a.num_parameters(), -std::numbers::pi,
                                          std::numbers::pi, rng);
        const Loss loss = [&](std::span<const double> t) {
            return prepare(a, t, x).expectation(h);
        };
        const auto ps = parameter_shift_grad(loss, theta, a.encoding_values(x));
        const double delta = 1e-5;
        double diff = 0.0;
        double scale = 0.0;
        auto t = theta;
        for (std::size_t j = 0; j < t.size(); ++j) {
            t[j] = theta[j] + delta;
            const double up = loss(t);
            t[j] = theta[j] - delta;
            const double down = loss(t);
            t[j] = theta[j];
            const double fd = (up - down) / (2.0 * delta);
            diff = std::max(diff, std::abs(ps[j] - fd));
            scale = std::max(scale, std::abs(fd));
        }
        worst = std::max(worst, diff / std::max(scale, 1e-12));
    }
    return {worst <= 1e-5, "max relative error " + fmt(worst) + " over 20 instances"};
}

// 2
Outcome shot_noise_statistics() {
    std::mt19937_64 rng(202);
    const auto a = build_hea(4, 1);
    const auto h = models::build_heisenberg_field(4, 0.2);
    const auto psi = prepare(
        a, uniform_vector(a.num_parameters(), -std::numbers::pi, std::numbers::pi, rng));
    const auto plan = make_shot_plan(h, 10000);
    const auto moments = group_moments(psi, h, plan);
    NoiseStream stream(2026);
    std::vector<double> draws;
    for (int i = 0; i < 2000; ++i) {
        draws.push_back(noisy_energy(psi, h, plan, stream));
    }
    const auto st = sample_stats(draws);
    const double exact = psi.expectation(h);
    const double predicted = moments.total_variance();
    const double combined_se = std::sqrt(predicted / 2000.0 + st.mean_se * st.mean_se);
    const bool unbiased = std::abs(st.mean - exact) <= 4.0 * combined_se;
    const double rel = std::abs(st.var - predicted) / predicted;
    return {unbiased && rel <= 0.2,
            "|mean - exact| = " + fmt(std::abs(st.mean - exact)) + " (4 SE = " +
                fmt(4.0 * combined_se) + "), variance off by " + fmt(100.0 * rel) +
                "%"};
}

// 3
Outcome closed_form_oracle() {
    std::mt19937_64 rng(303);
    double worst = 0.0;
    for (int inst = 0; inst < 10; ++inst) {
        const std::size_t n = 2 + inst % 2;
        const std::size_t m = 3 + inst % 8;
        const auto a = random_circuit(n, m, rng);
        const auto h = random_hamiltonian(n, rng);
        const auto theta = uniform_vector(m, -std::numbers::pi, std::numbers::pi, rng);
        const double r = std::uniform_real_distribution<double>(0.05, 2.0)(rng);
        const Loss loss = [&](std::span<const double> t) {
            return prepare(a, t).expectation(h);
        };
        const auto st = estimate_variance(loss, theta, r, 100000, 3000 + inst);
        const double closed = expected_loss_closed_form(a, h, theta, r);
        worst = std::max(worst, std::abs(closed - st.mean) / st.mean_se);
    }
    return {worst <= 4.0, "max deviation " + fmt(worst) + " SE over 10 instances"};
}

// 4
Outcome variance_decomposition() {
    std::mt19937_64 rng(404);
    double worst = -1e300;
    for (int inst = 0; inst < 20; ++inst) {
        const std::size_t n = 1 + inst % 3;
        const std::size_t m = 1 + inst % 6;
        const auto a = random_circuit(n, m, rng);
        const auto h = random_hamiltonian(n, rng);
        const auto theta = uniform_vector(m, -std::numbers::pi, std::numbers::pi, rng);
        const double r = std::uniform_real_distribution<double>(0.1, 1.5)(rng);
        const Loss loss = [&](std::span<const double> t) {
            return prepare(a, t).expectation(h);
        };
        const auto st = estimate_variance(loss, theta, r, 20000, 4000 + inst);
        for (std::size_t j = 0; j < m; ++j) {
            const double term = conditional_variance_term(a, h, theta, r, j);
            worst = std::max(worst, (term - st.var) / std::max(st.var_se, 1e-300));
        }
    }
    return {worst <= 3.0, "largest (term - var) / SE = " + fmt(worst) +
                              " over 20 instances, every gate"};
}

// 5
Outcome bound_validity() {
    BoundCheckConfig cfg;
    cfg.samples = 10000;
    const auto rep = bound_check(cfg);
    const bool ok = rep.passed && rep.eps_target_met &&
                    rep.bound.conditions_met() && rep.bound.variance_lower > 0.0;
    return {ok, "eps " + fmt(rep.eps) + ", x2 " + fmt(rep.x2) + ", var " +
                    fmt(rep.empirical.var) + " +- " + fmt(rep.empirical.var_se) +
                    " vs bound " + fmt(rep.bound.variance_lower)};
}

// 6
Outcome variance_trends() {
    const auto dir = scratch() / "variance_scan";
    cli("variance-scan", staged_config("heisenberg_variance_scan.json", dir));
    const auto summary = json::parse(slurp(dir / "scan_summary.json"));
    if (!summary.contains("r_max_fit") ||
        !summary.contains("log_variance_vs_n_at_largest_r")) {
        return {false, "scan summary lacks fits"};
    }
    const double exponent = summary["r_max_fit"]["exponent"];
    const double slope = summary["log_variance_vs_n_at_largest_r"]["exponent"];
    const bool ok = exponent >= -0.6 && exponent <= -0.15 && slope < 0.0;
    return {ok, "r_max exponent " + fmt(exponent) + ", log-variance slope in n " +
                    fmt(slope)};
}

double relative_error(const HamiltonianFamily &family, double x, double energy,
                      double e0) {
    return std::abs(energy - e0) / semi_norm(family.at(x));
}

// 7
Outcome xy_tracking() {
    const auto family = models::xy_family(6, 1.0);
    const auto vqe_dir = scratch() / "xy_vqe";
    cli("train", staged_config("xy_vqe.json", vqe_dir));
    const auto vqe = json::parse(slurp(vqe_dir / "run.json"));
    double worst_vqe = 0.0;
    for (const auto &r : vqe["run"]["records"]) {
        worst_vqe = std::max(worst_vqe, relative_error(family, r["x"], r["energy_learned"],
                                                       r["e0"]));
    }
    const auto meta_dir = scratch() / "xy_meta";
    cli("meta-train", staged_config("xy_meta.json", meta_dir));
    const auto meta = json::parse(slurp(meta_dir / "run.json"));
    double worst_meta = 0.0;
    for (const auto &t : meta["run"]["tests"]) {
        worst_meta = std::max(worst_meta, t["error"].get<double>() /
                                              t["semi_norm"].get<double>());
    }
    const bool ok = vqe["run"]["records"].size() == 6 && !meta["run"]["tests"].empty() &&
                    worst_vqe <= 0.02 && worst_meta <= 0.05;
    return {ok, "VQE max |E - E0| / ||H||_s = " + fmt(worst_vqe) +
                    ", Meta-VQE max test error / ||H||_s = " + fmt(worst_meta)};
}

// 8
Outcome ising_failure_mode() {
    const auto dir = scratch() / "ising_vqe";
    cli("train", staged_config("ising_vqe.json", dir));
    const auto run = json::parse(slurp(dir / "run.json"));
    std::size_t excited = 0;
    double first = -1.0;
    for (const auto &r : run["run"]["records"]) {
        if (r["x"].get<double>() >= 1.1 && r["branch"] == "excited") {
            if (excited++ == 0) {
                first = r["x"];
            }
        }
    }
    return {excited > 0, std::to_string(excited) +
                             " points with x >= 1.1 classified excited, first at x = " +
                             fmt(first)};
}

// 9
Outcome determinism() {
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"train", "quick_heisenberg.json"},
        {"meta-train", "quick_heisenberg.json"},
        {"variance-scan", "quick_heisenberg.json"},
        {"train", "ising_vqe.json"}};
    std::size_t compared = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto &[command, config] = runs[i];
        const auto dir = scratch() / ("det_" + std::to_string(i));
        const auto path = staged_config(config, dir);
        cli(command, path);
        std::vector<std::pair<fs::path, std::string>> first;
        for (const auto &entry : fs::directory_iterator(dir)) {
            first.emplace_back(entry.path(), slurp(entry.path()));
        }
        fs::remove_all(dir);
        cli(command, path);
        for (const auto &[file, bytes] : first) {
            if (!fs::exists(file) || slurp(file) != bytes) {
                return {false, command + " " + config + ": " +
                                   file.filename().string() + " differs"};
            }
            ++compared;
        }
    }
    return {compared > 0, std::to_string(compared) +
                              " output files byte-identical across repeated runs"};
}

// 10
Outcome analytic_suite() {
    double k_err = 0.0;
    double env_gap = 1e300;
    double cov_err = 0.0;
    const int points = 20000;
    for (int i = 1; i <= points; ++i) {
        const double r = 1.2 * i / points;
        k_err = std::max(k_err, std::abs(k_plus(r) + k_minus(r) - 1.0));
        env_gap = std::min(env_gap, h_exact(r) - h_envelope(r));
        for (double a : {0.3, 1.0, 2.5}) {
            cov_err = std::max(cov_err, std::abs(h_cov(a, a, r) - h_exact(a * r)));
        }
    }
    for (int i = 0; i <= points; ++i) {
        const double r = 10.0 * i / points;
        k_err = std::max(k_err, std::abs(k_plus(r) + k_minus(r) - 1.0));
    }
    const bool ok = k_err <= 1e-14 && env_gap >= 0.0 && cov_err <= 1e-12;
    return {ok, "max |k+ + k- - 1| = " + fmt(k_err) + ", min h - envelope = " +
                    fmt(env_gap) + ", max |h_cov(a,a,r) - h(ar)| = " + fmt(cov_err)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"parameter-shift gradients match finite differences", gradient_correctness},
        {"shot-noise energy is unbiased with the predicted variance",
         shot_noise_statistics},
        {"closed-form expected loss matches Monte-Carlo", closed_form_oracle},
        {"conditional variance term lower-bounds the variance", variance_decomposition},
        {"variance bound holds after a warm-started step", bound_validity},
        {"variance concentration and r_max scaling trends", variance_trends},
        {"XY warm-start VQE and Meta-VQE accuracy", xy_tracking},
        {"Ising warm start leaves the ground branch", ising_failure_mode},
        {"CLI runs are deterministic", determinism},
        {"analytic kernel identities", analytic_suite},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": "
                  << criteria[i].first << " (" << o.detail << ", " << fmt(secs)
                  << " s)" << std::endl;
    }
    fs::remove_all(scratch());
    return failures == 0 ? 0 : 1;
}
