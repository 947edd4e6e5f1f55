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
 * @file warmstate_cli.cpp
 * Command-line front end: model, bound, variance-scan, train, meta-train.
 *
 * Exit codes: 0 success, 2 validation, 3 runtime, 4 IO.
 */
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "warmstate/warmstate.hpp"

namespace {

using namespace warmstate;
using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitIo = 4;

struct ModelArgs {
    std::string name;
    std::size_t n = 4;
    double x = 0.0;
    double J = 1.0;
    std::size_t max_eigenvalues = 16;
};

struct BoundArgs {
    std::string model = "heisenberg_field";
    std::size_t n = 4;
    std::size_t L = 4;
    double J = 1.0;
    double x_prev = 0.1;
    double x = 0.2;
    double eps = 0.0;
    double gamma = 0.5;
    double gamma_tilde = 0.5;
    std::optional<double> radius;
    std::optional<double> gap;
    std::optional<double> h_seminorm;
    std::optional<double> h1_seminorm;
    std::optional<std::size_t> M;
};

int cmd_model(const ModelArgs &a) {
    const auto h = models::family_by_name(a.name, a.n, a.J).at(a.x);
    const auto s = exact_spectrum(h);
    json terms = json::array();
    for (const auto &t : h.terms()) {
        terms.push_back({{"coeff", t.coeff}, {"string", t.string.str()}});
    }
    const auto k = std::min(a.max_eigenvalues, s.eigenvalues.size());
    json out = {{"model", a.name},
                {"n", a.n},
                {"x", a.x},
                {"J", a.J},
                {"num_terms", h.size()},
                {"terms", terms},
                {"eigenvalues",
                 std::vector<double>(s.eigenvalues.begin(),
                                     s.eigenvalues.begin() +
                                         static_cast<std::ptrdiff_t>(k))},
                {"num_eigenvalues", s.eigenvalues.size()},
                {"ground_energy", s.ground_energy()},
                {"first_excited", s.first_excited_value},
                {"gap", s.gap()},
                {"semi_norm", s.semi_norm()}};
    std::cout << io::dump(out);
    return 0;
}

int cmd_bound(const BoundArgs &a) {
    const auto ansatz = build_hea(a.n, a.L);
    BoundInputs in;
    in.M = a.M.value_or(ansatz.num_parameters());
    in.eps = a.eps;
    in.gamma = a.gamma;
    in.gamma_tilde = a.gamma_tilde;
    const bool need_model = !a.gap || !a.h_seminorm || !a.h1_seminorm;
    if (need_model) {
        const auto family = models::family_by_name(a.model, a.n, a.J);
        in.gap = reference_at(family, a.x_prev).gap;
        in.h_seminorm = reference_at(family, a.x).semi_norm;
        in.h1_seminorm = semi_norm(family.h1);
    }
    in.gap = a.gap.value_or(in.gap);
    in.h_seminorm = a.h_seminorm.value_or(in.h_seminorm);
    in.h1_seminorm = a.h1_seminorm.value_or(in.h1_seminorm);
    in.validate();
    const auto gate = first_valid_gate(ansatz);
    const std::optional<std::size_t> usable =
        gate && leading_gates_trivial(ansatz, *gate) ? gate : std::nullopt;
    const double r =
        a.radius.value_or(in.M >= 2 ? max_radius_vqe(in) : 0.0);
    const auto rep = variance_bound_vqe(in, r, a.x - a.x_prev, usable);
    std::cout << io::dump(io::to_json(rep));
    return 0;
}

config::RunConfig load_config(const std::string &path) {
    auto c = config::load(path);
    config::apply_seed_override(c, std::getenv("WARMSTATE_SEED"));
    return c;
}

std::string write_echo(const config::RunConfig &c, const fs::path &dir) {
    const auto echo = io::dump(config::to_json(c));
    io::write_file(dir / "config_echo.json", echo);
    return io::content_id(echo);
}

int cmd_variance_scan(const std::string &path) {
    const auto c = load_config(path);
    const fs::path dir = c.output_dir;
    const auto run_id = write_echo(c, dir);
    VarianceScanConfig sc;
    sc.model = c.model.name;
    sc.J = c.model.J;
    sc.ns = c.scan.ns;
    sc.layers = c.ansatz.layers;
    sc.single_axis = c.ansatz.single_axis;
    sc.radii = c.scan.radii;
    sc.samples = c.scan.samples;
    sc.x_train = c.scan.x_train;
    sc.x_eval = c.scan.x_eval;
    sc.train = c.train;
    const auto blocks = variance_scan(sc);
    io::write_file(dir / "variance_scan.csv", io::variance_scan_csv(blocks));

    std::vector<VarianceScanRow> rows;
    json training = json::array();
    for (const auto &b : blocks) {
        rows.insert(rows.end(), b.rows.begin(), b.rows.end());
        training.push_back({{"n", b.n},
                            {"x", b.training.x},
                            {"energy_learned", b.training.energy_learned},
                            {"e0", b.training.e0},
                            {"fidelity_gs", b.training.fidelity_gs},
                            {"iters_used", b.training.iters_used}});
    }
    json summary = {{"run_id", run_id}, {"training", training}};
    json peaks = json::array();
    for (const auto &[m, r] : rmax_by_M(rows)) {
        peaks.push_back({{"M", m}, {"r_max", r}});
    }
    summary["r_max"] = peaks;
    if (peaks.size() >= 3) {
        summary["r_max_fit"] = io::to_json(fit_rmax(rows));
    }
    if (blocks.size() >= 2) {
        bool positive = true;
        for (const auto &r : rows) {
            positive = positive && (r.var > 0.0 || r.r != c.scan.radii.back());
        }
        if (positive) {
            summary["log_variance_vs_n_at_largest_r"] =
                io::to_json(fit_log_variance_vs_n(rows, c.scan.radii.back()));
        }
    }
    if (c.format == "json") {
        json table = json::array();
        for (const auto &r : rows) {
            table.push_back({{"n", r.n}, {"L", r.L}, {"M", r.M}, {"r", r.r},
                             {"var", r.var}, {"se", r.se},
                             {"samples", r.samples}});
        }
        summary["rows"] = table;
    }
    io::write_file(dir / "scan_summary.json", io::dump(summary));
    std::cout << "variance-scan: " << rows.size() << " rows for "
              << blocks.size() << " qubit counts -> " << dir.string() << "\n";
    return 0;
}

int cmd_train(const std::string &path, bool meta) {
    const auto c = load_config(path);
    const fs::path dir = c.output_dir;
    const auto run_id = write_echo(c, dir);
    const auto family = config::build_family(c);
    const auto ansatz = config::build_ansatz(c, meta);
    const Schedule schedule{
        meta ? ScheduleMode::meta_incremental : ScheduleMode::vqe_path, c.xs};
    TrackingResult res;
    if (meta) {
        res.log = warm_start_meta(family, ansatz, schedule, c.train, c.test_xs);
        if (c.curve_points > 0) {
            res.curve = reference_curve(family, c.xs.front(), c.xs.back(),
                                        c.curve_points);
        }
        for (const auto &r : res.log.records) {
            res.ground += r.branch == Branch::ground;
            res.excited += r.branch == Branch::excited;
            res.neither += r.branch == Branch::neither;
        }
    } else {
        res = tracking_experiment(family, ansatz, schedule, c.train,
                                  c.curve_points);
    }
    if (c.format == "csv") {
        io::write_file(dir / "tracking.csv", io::tracking_csv(res.log));
        if (meta) {
            io::write_file(dir / "test_points.csv", io::test_points_csv(res.log));
        }
    }
    if (!res.curve.empty()) {
        io::write_file(dir / "reference_curve.csv", io::curve_csv(res.curve));
    }
    json summary = {{"run_id", run_id},
                    {"command", meta ? "meta-train" : "train"},
                    {"num_parameters", ansatz.num_parameters()},
                    {"branches",
                     {{"ground", res.ground},
                      {"excited", res.excited},
                      {"neither", res.neither}}}};
    double max_test_rel = 0.0;
    for (const auto &t : res.log.tests) {
        max_test_rel = std::max(max_test_rel, t.error() / t.semi_norm);
    }
    if (meta) {
        summary["max_test_error_relative"] = max_test_rel;
    }
    summary["run"] = io::to_json(res.log, c.format == "json");
    io::write_file(dir / "run.json", io::dump(summary));
    std::cout << (meta ? "meta-train" : "train") << ": "
              << res.log.records.size() << " points, ground=" << res.ground
              << " excited=" << res.excited << " neither=" << res.neither;
    if (meta) {
        std::cout << ", max test error/semi-norm=" << io::format_double(max_test_rel);
    }
    std::cout << " -> " << dir.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Warm-start VQE / Meta-VQE training and landscape bounds"};
    app.require_subcommand(1);
    std::size_t workers = 0;
    app.add_option("--workers", workers,
                   "Worker threads (0 = available parallelism)");

    ModelArgs margs;
    auto *model = app.add_subcommand("model", "Print terms and spectrum of H(x)");
    model->add_option("--name", margs.name, "heisenberg_field | xy | ising_jw")
        ->required();
    model->add_option("--n", margs.n, "Qubit count");
    model->add_option("--x", margs.x, "Path parameter");
    model->add_option("--J", margs.J, "Coupling");
    model->add_option("--max-eigenvalues", margs.max_eigenvalues,
                      "Number of lowest eigenvalues printed");

    BoundArgs bargs;
    auto *bound = app.add_subcommand("bound", "Print step/radius budgets and the variance bound");
    bound->add_option("--model", bargs.model);
    bound->add_option("--n", bargs.n);
    bound->add_option("--L", bargs.L, "HEA layers");
    bound->add_option("--J", bargs.J);
    bound->add_option("--x-prev", bargs.x_prev, "Previously solved x");
    bound->add_option("--x", bargs.x, "Next x");
    bound->add_option("--eps", bargs.eps, "Infidelity parameter, <= 1/sqrt(2)");
    bound->add_option("--gamma", bargs.gamma);
    bound->add_option("--gamma-tilde", bargs.gamma_tilde);
    bound->add_option("--radius", bargs.radius, "Hypercube half-width (default: max radius)");
    bound->add_option("--gap", bargs.gap, "Override the gap at x-prev");
    bound->add_option("--h-seminorm", bargs.h_seminorm, "Override ||H(x)||_s");
    bound->add_option("--h1-seminorm", bargs.h1_seminorm, "Override ||H1||_s");
    bound->add_option("--M", bargs.M, "Override the parameter count");

    std::string scan_path;
    auto *scan = app.add_subcommand("variance-scan", "Loss variance versus hypercube radius");
    scan->add_option("--config", scan_path, "JSON run configuration")->required();

    std::string train_path;
    auto *train = app.add_subcommand("train", "Warm-start VQE along the path");
    train->add_option("--config", train_path, "JSON run configuration")->required();

    std::string meta_path;
    auto *meta = app.add_subcommand("meta-train", "Warm-start Meta-VQE along the path");
    meta->add_option("--config", meta_path, "JSON run configuration")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        set_worker_count(workers);
        if (*model) {
            return cmd_model(margs);
        }
        if (*bound) {
            return cmd_bound(bargs);
        }
        if (*scan) {
            return cmd_variance_scan(scan_path);
        }
        if (*train) {
            return cmd_train(train_path, false);
        }
        if (*meta) {
            return cmd_train(meta_path, true);
        }
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitRuntime;
}
