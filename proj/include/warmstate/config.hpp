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
 * @file config.hpp
 * Strict JSON run configuration shared by the command-line subcommands.
 * Unknown keys are rejected; every field has a documented default.
 */
#pragma once

#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <filesystem>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ansatz.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "io.hpp"
#include "models.hpp"
#include "trainer.hpp"

namespace warmstate::config {

using nlohmann::json;

struct ModelSpec {
    std::string name = "heisenberg_field";
    std::size_t n = 4;
    double J = 1.0;
};

struct AnsatzSpec {
    std::optional<std::size_t> layers; ///< defaults to n
    Pauli single_axis = Pauli::Z;
    std::optional<EncodingFn> single_qubit; ///< command default when absent
    std::optional<EncodingFn> two_qubit;
    std::vector<std::size_t> reference_bits;
    bool hadamard_layer = false;
};

struct ScanSpec {
    std::vector<std::size_t> ns{4, 6, 8};
    std::vector<double> radii = log_grid(1e-2, std::numbers::pi, 20);
    std::size_t samples = 10000;
    double x_train = 0.1;
    double x_eval = 0.2;
};

struct RunConfig {
    ModelSpec model;
    std::vector<double> xs{0.0};
    AnsatzSpec ansatz;
    TrainConfig train;
    std::string output_dir = "out";
    std::string format = "csv";
    std::optional<std::vector<double>> test_xs;
    std::size_t curve_points = 41;
    ScanSpec scan;
};

namespace detail {

inline void check_keys(const json &j, std::initializer_list<const char *> keys,
                       const std::string &where) {
    if (!j.is_object()) {
        throw ValidationError(where + " must be a JSON object");
    }
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto &item : j.items()) {
        if (!allowed.contains(item.key())) {
            throw ValidationError("unknown key '" + item.key() + "' in " +
                                  where);
        }
    }
}

inline const json &field(const json &j, const std::string &key,
                         const std::string &where) {
    if (!j.contains(key)) {
        throw ValidationError("missing key '" + key + "' in " + where);
    }
    return j[key];
}

template <class T> T get(const json &j, const std::string &key, const std::string &where) {
    field(j, key, where);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ValidationError("invalid value for '" + key + "' in " + where +
                              ": " + e.what());
    }
}

inline double get_number(const json &j, const std::string &key,
                         const std::string &where) {
    const auto &v = field(j, key, where);
    if (!v.is_number()) {
        throw ValidationError("'" + key + "' in " + where + " must be a number");
    }
    return v.get<double>();
}

inline std::uint64_t get_count(const json &j, const std::string &key,
                               const std::string &where) {
    const auto &v = field(j, key, where);
    if (!v.is_number_unsigned()) {
        throw ValidationError("'" + key + "' in " + where +
                              " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

inline std::vector<double> get_numbers(const json &j, const std::string &key,
                                       const std::string &where) {
    const auto &v = field(j, key, where);
    if (!v.is_array()) {
        throw ValidationError("'" + key + "' in " + where + " must be an array");
    }
    std::vector<double> out;
    for (const auto &e : v) {
        if (!e.is_number()) {
            throw ValidationError("'" + key + "' in " + where +
                                  " must contain numbers");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

inline std::vector<std::size_t> get_counts(const json &j, const std::string &key,
                                           const std::string &where) {
    const auto &v = field(j, key, where);
    if (!v.is_array()) {
        throw ValidationError("'" + key + "' in " + where + " must be an array");
    }
    std::vector<std::size_t> out;
    for (const auto &e : v) {
        if (!e.is_number_unsigned()) {
            throw ValidationError("'" + key + "' in " + where +
                                  " must contain non-negative integers");
        }
        out.push_back(e.get<std::size_t>());
    }
    return out;
}

inline EncodingFn parse_encoding(const json &j, const std::string &where) {
    check_keys(j, {"kind", "slope", "intercept"}, where);
    const auto kind = get<std::string>(j, "kind", where);
    const double a = j.contains("slope") ? get_number(j, "slope", where) : 1.0;
    const double b =
        j.contains("intercept") ? get_number(j, "intercept", where) : 0.0;
    if (kind == "constant_one") {
        return EncodingFn::constant_one();
    }
    if (kind == "linear") {
        return EncodingFn::linear(a);
    }
    if (kind == "affine") {
        return EncodingFn::affine(a, b);
    }
    throw ValidationError("unknown encoding kind '" + kind + "' in " + where);
}

inline json encoding_json(const EncodingFn &e) {
    switch (e.kind) {
    case EncodingFn::Kind::constant_one:
        return {{"kind", "constant_one"}};
    case EncodingFn::Kind::linear:
        return {{"kind", "linear"}, {"slope", e.slope}};
    case EncodingFn::Kind::affine:
        return {{"kind", "affine"}, {"slope", e.slope}, {"intercept", e.intercept}};
    }
    return nullptr;
}

inline Pauli parse_axis(const std::string &s) {
    if (s == "X" || s == "Y" || s == "Z") {
        return pauli_from_char(s[0]);
    }
    throw ValidationError("single_axis must be \"X\", \"Y\" or \"Z\"");
}

} // namespace detail

/**
 * @brief Parses a run configuration document.
 *
 * Top-level keys: model, schedule, ansatz, train, noise, seed, output_dir,
 * format, test_xs, curve_points, scan.
 */
inline RunConfig parse(const json &doc) {
    using namespace detail;
    check_keys(doc, {"model", "schedule", "ansatz", "train", "noise", "seed",
                     "output_dir", "format", "test_xs", "curve_points", "scan"},
               "config");
    RunConfig c;
    c.train.shots = 10000;
    if (doc.contains("model")) {
        const auto &m = doc["model"];
        check_keys(m, {"name", "n", "J"}, "model");
        if (m.contains("name")) {
            c.model.name = get<std::string>(m, "name", "model");
        }
        if (m.contains("n")) {
            c.model.n = get_count(m, "n", "model");
        }
        if (m.contains("J")) {
            c.model.J = get_number(m, "J", "model");
        }
    }
    bool known = false;
    for (const auto &name : models::model_names()) {
        known = known || name == c.model.name;
    }
    if (!known) {
        throw ValidationError("unknown model '" + c.model.name + "'");
    }
    if (doc.contains("schedule")) {
        const auto &s = doc["schedule"];
        check_keys(s, {"xs", "x_min", "x_max", "K"}, "schedule");
        if (s.contains("xs")) {
            if (s.contains("x_min") || s.contains("x_max") || s.contains("K")) {
                throw ValidationError(
                    "schedule takes either xs or x_min/x_max/K, not both");
            }
            c.xs = get_numbers(s, "xs", "schedule");
        } else {
            const double lo = get_number(s, "x_min", "schedule");
            const double hi = get_number(s, "x_max", "schedule");
            const auto k = get_count(s, "K", "schedule");
            c.xs = Schedule::linspace(ScheduleMode::vqe_path, lo, hi, k).xs;
        }
    }
    if (doc.contains("ansatz")) {
        const auto &a = doc["ansatz"];
        check_keys(a, {"L", "single_axis", "single_qubit_encoding",
                       "two_qubit_encoding", "reference_bits", "hadamard_layer"},
                   "ansatz");
        if (a.contains("L")) {
            c.ansatz.layers = get_count(a, "L", "ansatz");
        }
        if (a.contains("single_axis")) {
            c.ansatz.single_axis =
                parse_axis(get<std::string>(a, "single_axis", "ansatz"));
        }
        if (a.contains("single_qubit_encoding")) {
            c.ansatz.single_qubit = parse_encoding(
                a["single_qubit_encoding"], "ansatz.single_qubit_encoding");
        }
        if (a.contains("two_qubit_encoding")) {
            c.ansatz.two_qubit = parse_encoding(a["two_qubit_encoding"],
                                                "ansatz.two_qubit_encoding");
        }
        if (a.contains("reference_bits")) {
            c.ansatz.reference_bits = get_counts(a, "reference_bits", "ansatz");
        }
        if (a.contains("hadamard_layer")) {
            c.ansatz.hadamard_layer = get<bool>(a, "hadamard_layer", "ansatz");
        }
    }
    if (doc.contains("train")) {
        const auto &t = doc["train"];
        const std::string w = "train";
        check_keys(t, {"optimizer", "learning_rate", "max_iters", "grad_tol",
                       "r_warm", "n_restarts", "first_init", "theta_init",
                       "init_range", "branch_floor", "branch_floor_relative",
                       "gamma", "gamma_tilde"},
                   w);
        auto &tc = c.train;
        if (t.contains("optimizer")) {
            tc.optimizer.kind =
                optimizer_from_string(get<std::string>(t, "optimizer", w));
        }
        if (t.contains("learning_rate")) {
            tc.optimizer.learning_rate = get_number(t, "learning_rate", w);
        }
        if (t.contains("max_iters")) {
            tc.optimizer.max_iters = get_count(t, "max_iters", w);
        }
        if (t.contains("grad_tol")) {
            tc.optimizer.grad_tol = get_number(t, "grad_tol", w);
        }
        if (t.contains("r_warm")) {
            tc.r_warm = get_number(t, "r_warm", w);
        }
        if (t.contains("n_restarts")) {
            tc.n_restarts = get_count(t, "n_restarts", w);
        }
        if (t.contains("first_init")) {
            tc.first_init =
                init_policy_from_string(get<std::string>(t, "first_init", w));
        }
        if (t.contains("theta_init")) {
            tc.theta_init = get_numbers(t, "theta_init", w);
        }
        if (t.contains("init_range")) {
            tc.init_range = get_number(t, "init_range", w);
        }
        if (t.contains("branch_floor")) {
            tc.branch_floor = get_number(t, "branch_floor", w);
        }
        if (t.contains("branch_floor_relative")) {
            tc.branch_floor_relative = get_number(t, "branch_floor_relative", w);
        }
        if (t.contains("gamma")) {
            tc.gamma = get_number(t, "gamma", w);
        }
        if (t.contains("gamma_tilde")) {
            tc.gamma_tilde = get_number(t, "gamma_tilde", w);
        }
    }
    if (doc.contains("noise")) {
        const auto &n = doc["noise"];
        if (n.is_string()) {
            if (n.get<std::string>() != "exact") {
                throw ValidationError(
                    "noise must be \"exact\" or {\"n_shots\": N}");
            }
            c.train.shots.reset();
        } else {
            check_keys(n, {"n_shots"}, "noise");
            c.train.shots = get_count(n, "n_shots", "noise");
        }
    }
    if (doc.contains("seed")) {
        c.train.seed = get_count(doc, "seed", "config");
    }
    if (doc.contains("output_dir")) {
        c.output_dir = get<std::string>(doc, "output_dir", "config");
        warmstate::detail::require(!c.output_dir.empty(), "output_dir must not be empty");
    }
    if (doc.contains("format")) {
        c.format = get<std::string>(doc, "format", "config");
        warmstate::detail::require(c.format == "csv" || c.format == "json",
                        "format must be \"csv\" or \"json\"");
    }
    if (doc.contains("test_xs")) {
        c.test_xs = get_numbers(doc, "test_xs", "config");
    }
    if (doc.contains("curve_points")) {
        c.curve_points = get_count(doc, "curve_points", "config");
    }
    if (doc.contains("scan")) {
        const auto &s = doc["scan"];
        check_keys(s, {"ns", "radii", "r_min", "r_max", "r_count", "samples",
                       "x_train", "x_eval"},
                   "scan");
        if (s.contains("ns")) {
            c.scan.ns = get_counts(s, "ns", "scan");
        }
        if (s.contains("radii")) {
            if (s.contains("r_min") || s.contains("r_max") ||
                s.contains("r_count")) {
                throw ValidationError(
                    "scan takes either radii or r_min/r_max/r_count");
            }
            c.scan.radii = get_numbers(s, "radii", "scan");
        } else if (s.contains("r_min") || s.contains("r_max") ||
                   s.contains("r_count")) {
            const double lo = s.contains("r_min") ? get_number(s, "r_min", "scan") : 1e-2;
            const double hi = s.contains("r_max") ? get_number(s, "r_max", "scan")
                                                  : std::numbers::pi;
            const auto k = s.contains("r_count") ? get_count(s, "r_count", "scan") : 20;
            c.scan.radii = log_grid(lo, hi, k);
        }
        if (s.contains("samples")) {
            c.scan.samples = get_count(s, "samples", "scan");
        }
        if (s.contains("x_train")) {
            c.scan.x_train = get_number(s, "x_train", "scan");
        }
        if (s.contains("x_eval")) {
            c.scan.x_eval = get_number(s, "x_eval", "scan");
        }
    }
    c.train.validate();
    warmstate::detail::require(c.model.n >= 2 && c.model.n <= kMaxQubits,
                    "model.n must lie in [2, 14]");
    return c;
}

inline RunConfig parse_text(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, false);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("config is not valid JSON: ") +
                              e.what());
    }
    return parse(doc);
}

inline RunConfig load(const std::filesystem::path &path) {
    return parse_text(io::read_file(path));
}

/// Applies WARMSTATE_SEED when set; returns true if it did.
inline bool apply_seed_override(RunConfig &c, const char *value) {
    if (value == nullptr) {
        return false;
    }
    const std::string s(value);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used, 10);
    } catch (const std::exception &) {
        used = 0;
    }
    if (s.empty() || used != s.size() || s.front() == '-') {
        throw ValidationError("WARMSTATE_SEED must be a non-negative integer");
    }
    c.train.seed = v;
    return true;
}

/// Fully expanded configuration; parsing it back yields the same run.
inline json to_json(const RunConfig &c) {
    using detail::encoding_json;
    json ansatz = {{"single_axis", std::string(1, to_char(c.ansatz.single_axis))},
                   {"reference_bits", c.ansatz.reference_bits},
                   {"hadamard_layer", c.ansatz.hadamard_layer}};
    if (c.ansatz.layers) {
        ansatz["L"] = *c.ansatz.layers;
    }
    if (c.ansatz.single_qubit) {
        ansatz["single_qubit_encoding"] = encoding_json(*c.ansatz.single_qubit);
    }
    if (c.ansatz.two_qubit) {
        ansatz["two_qubit_encoding"] = encoding_json(*c.ansatz.two_qubit);
    }
    const auto &t = c.train;
    json train = {{"optimizer", to_string(t.optimizer.kind)},
                  {"learning_rate", t.optimizer.learning_rate},
                  {"max_iters", t.optimizer.max_iters},
                  {"grad_tol", t.optimizer.grad_tol},
                  {"r_warm", t.r_warm},
                  {"n_restarts", t.n_restarts},
                  {"first_init", to_string(t.first_init)},
                  {"init_range", t.init_range},
                  {"branch_floor", t.branch_floor},
                  {"branch_floor_relative", t.branch_floor_relative},
                  {"gamma", t.gamma},
                  {"gamma_tilde", t.gamma_tilde}};
    if (!t.theta_init.empty()) {
        train["theta_init"] = t.theta_init;
    }
    json j = {{"model", {{"name", c.model.name}, {"n", c.model.n}, {"J", c.model.J}}},
              {"schedule", {{"xs", c.xs}}},
              {"ansatz", ansatz},
              {"train", train},
              {"seed", t.seed},
              {"output_dir", c.output_dir},
              {"format", c.format},
              {"curve_points", c.curve_points},
              {"scan",
               {{"ns", c.scan.ns},
                {"radii", c.scan.radii},
                {"samples", c.scan.samples},
                {"x_train", c.scan.x_train},
                {"x_eval", c.scan.x_eval}}}};
    j["noise"] = t.shots ? json{{"n_shots", *t.shots}} : json("exact");
    if (c.test_xs) {
        j["test_xs"] = *c.test_xs;
    }
    return j;
}

/// Builds the circuit described by the ansatz section; `meta` selects the
/// Meta-VQE default encodings (single-qubit g = x) when none are given.
inline Ansatz build_ansatz(const RunConfig &c, bool meta) {
    const std::size_t n = c.model.n;
    const std::size_t layers = c.ansatz.layers.value_or(n);
    LayerEncoding enc;
    if (!meta) {
        enc.single_qubit = EncodingFn::constant_one();
    }
    if (c.ansatz.single_qubit) {
        enc.single_qubit = *c.ansatz.single_qubit;
    }
    if (c.ansatz.two_qubit) {
        enc.two_qubit = *c.ansatz.two_qubit;
    }
    auto a = build_meta_ansatz(n, layers, enc, c.ansatz.single_axis);
    if (!c.ansatz.reference_bits.empty() || c.ansatz.hadamard_layer) {
        a = with_reference_bits(a, c.ansatz.reference_bits,
                                c.ansatz.hadamard_layer);
    }
    return a;
}

inline HamiltonianFamily build_family(const RunConfig &c) {
    return models::family_by_name(c.model.name, c.model.n, c.model.J);
}

} // namespace warmstate::config
