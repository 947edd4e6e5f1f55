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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "warmstate/bounds.hpp"

using namespace warmstate;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Moments of f(alpha) for alpha ~ U[-r, r] by quadrature.
double uniform_mean(const std::function<double(double)> &f, double r) {
    return oracle::simpson(f, -r, r, 4000) / (2.0 * r);
}

double quad_var_cos2(double r) {
    const double m = uniform_mean([](double t) { return std::pow(std::cos(t), 2); }, r);
    const double m2 =
        uniform_mean([](double t) { return std::pow(std::cos(t), 4); }, r);
    return m2 - m * m;
}

} // namespace

TEST_CASE("sinc_and_kernels") {
    CHECK(sinc(0.0) == 1.0);
    CHECK_THAT(sinc(std::numbers::pi), WithinAbs(0.0, 1e-15));
    CHECK_THAT(sinc(1e-5), WithinAbs(std::sin(1e-5) / 1e-5, 1e-16));
    for (double r : {0.01, 0.3, 1.0, 2.7}) {
        CHECK_THAT(k_plus(r) + k_minus(r), WithinAbs(1.0, 1e-15));
        const double kp = uniform_mean(
            [](double t) { return std::pow(std::cos(t), 2); }, r);
        CHECK_THAT(k_plus(r), WithinAbs(kp, 1e-10));
    }
    CHECK(k_plus(0.0) == 1.0);
    CHECK_THROWS_AS(k_plus(-0.1), ValidationError);
}

TEST_CASE("h_exact_matches_quadrature") {
    for (double r : {0.001, 0.02, 0.049, 0.051, 0.1, 0.5, 1.0,
                     std::numbers::pi / 2, std::numbers::pi}) {
        const double ref = quad_var_cos2(r);
        CHECK_THAT(h_exact(r), WithinAbs(ref, 1e-12 + 1e-8 * ref));
    }
    CHECK(h_exact(0.0) == 0.0);
    // continuity across the series switch
    CHECK_THAT(h_exact(0.05 - 1e-12), WithinRel(h_exact(0.05 + 1e-12), 1e-9));
    // r = pi/2: cos^2 uniform over a full period, variance 1/8
    CHECK_THAT(h_exact(std::numbers::pi / 2), WithinAbs(0.125, 1e-14));
}

TEST_CASE("h_exact_small_radius_limit") {
    for (double r : {1e-3, 5e-3, 1e-2}) {
        CHECK_THAT(h_exact(r) / std::pow(r, 4), WithinRel(4.0 / 45.0, 1e-3));
    }
}

TEST_CASE("h_envelope_values_and_lower_bound_property") {
    CHECK(h_envelope(0.0) == 0.0);
    CHECK_THAT(h_envelope(std::sqrt(7.0) / 2.0), WithinAbs(0.0, 1e-16));
    CHECK_THAT(h_envelope(0.5),
               WithinAbs((1.0 - 1.0 / 7.0) * 4.0 * 0.0625 / 45.0, 1e-16));
    for (int i = 1; i <= 200; ++i) {
        const double r = 0.005 * i; // up to 1
        CHECK(h_envelope(r) <= h_exact(r));
    }
}

TEST_CASE("h_cov_diagonal_and_degenerate") {
    for (double r : {0.01, 0.2, 0.9}) {
        CHECK_THAT(h_cov(1.0, 1.0, r), WithinAbs(h_exact(r), 1e-12));
        CHECK_THAT(h_cov(1.0, 0.0, r), WithinAbs(0.0, 1e-15));
        CHECK_THAT(h_cov(0.7, 1.3, r), WithinAbs(h_cov(1.3, 0.7, r), 1e-15));
    }
}

TEST_CASE("h_cov_matches_quadrature_and_series_switch") {
    for (double a : {0.3, 1.0, 2.0}) {
        for (double b : {-0.5, 0.7, 1.5}) {
            for (double r : {0.01, 0.04, 0.4, 1.2}) {
                const auto ca = [a](double t) { return std::pow(std::cos(a * t), 2); };
                const auto cb = [b](double t) { return std::pow(std::cos(b * t), 2); };
                const double ref =
                    uniform_mean([&](double t) { return ca(t) * cb(t); }, r) -
                    uniform_mean(ca, r) * uniform_mean(cb, r);
                CHECK_THAT(h_cov(a, b, r), WithinAbs(ref, 1e-12 + 1e-7 * std::abs(ref)));
            }
        }
    }
}

TEST_CASE("h_cov_matches_monte_carlo") {
    std::mt19937_64 rng(31);
    const double a = 1.0;
    const double b = 0.7;
    const double r = 0.4;
    std::uniform_real_distribution<double> u(-r, r);
    const int n = 1000000;
    double sx = 0.0;
    double sy = 0.0;
    double sxy = 0.0;
    std::vector<double> prod(n);
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (int i = 0; i < n; ++i) {
        const double t = u(rng);
        xs[i] = std::pow(std::cos(a * t), 2);
        ys[i] = std::pow(std::cos(b * t), 2);
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = (xs[i] - mx) * (ys[i] - my);
        sxy += d;
        sq += d * d;
    }
    const double cov = sxy / (n - 1);
    const double se = std::sqrt((sq / n - cov * cov) / n);
    CHECK_THAT(h_cov(a, b, r), WithinAbs(cov, 3.0 * se));
    // the alternative normalization is a different quantity
    CHECK(std::abs(h_cov(a, b, r, true) - cov) > 10.0 * se);
}

TEST_CASE("h6_literal_values") {
    CHECK(h6(0.0, 0.0) == 0.0);
    CHECK_THAT(h6(1.0, 0.0), WithinRel(64.0 * 3.0 / 7.0, 1e-15));
    CHECK_THAT(h6(0.0, 1.0), WithinRel(64.0 * 3.0 / 7.0, 1e-15));
    const double s11 = 3.0 / 7 + 0.5 + 37.0 / 7 + 1.25 + 37.0 / 7 + 1.0 / 7 +
                       0.5 + 3.0 / 7;
    CHECK_THAT(h6(1.0, 1.0), WithinRel(64.0 * s11, 1e-15));
    // a b^5 appears twice (1/7 and 1/2) but a^5 b once (1/2)
    for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.5}}) {
        const double diff = h6(a, b) - h6(b, a);
        const double expected =
            64.0 * (a * std::pow(b, 5) - std::pow(a, 5) * b) / 7.0;
        CHECK_THAT(diff, WithinRel(expected, 1e-12));
        CHECK(diff != 0.0);
    }
}

TEST_CASE("max_step_vqe_examples") {
    BoundInputs in{.gap = 1.0, .h_seminorm = 5.0, .h1_seminorm = 10.0, .M = 8};
    in.eps = 0.0;
    CHECK_THAT(max_step_vqe(in), WithinAbs(0.05, 1e-15));
    auto zero_gap = in;
    zero_gap.gap = 0.0;
    CHECK(max_step_vqe(zero_gap) == 0.0);
    auto half = in;
    half.eps = std::sqrt(0.5);
    CHECK_THAT(max_step_vqe(half), WithinAbs(0.0, 1e-15));
    auto flat = in;
    flat.h1_seminorm = 0.0;
    CHECK(std::isinf(max_step_vqe(flat)));
}

TEST_CASE("max_step_meta_examples") {
    BoundInputs in{.gap = 1.0, .h_seminorm = 6.0, .h1_seminorm = 4.0, .M = 8};
    in.g_max_deriv = 1.0;
    CHECK_THAT(max_step_meta(in), WithinAbs(0.5 / 52.0, 1e-15));
    CHECK_THAT(max_step_meta(in), WithinAbs(0.009615, 1e-6));
    auto flat = in;
    flat.g_max_deriv = 0.0;
    CHECK_THAT(max_step_meta(flat), WithinAbs(max_step_vqe(flat), 1e-15));
    auto zero_gap = in;
    zero_gap.gap = 0.0;
    CHECK(max_step_meta(zero_gap) == 0.0);
    auto degenerate = flat;
    degenerate.h1_seminorm = 0.0;
    CHECK_THROWS_AS(max_step_meta(degenerate), ValidationError);
}

TEST_CASE("max_step_meta_quadratic_solves_its_condition") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 50; ++i) {
        BoundInputs in{.gap = u(rng), .h_seminorm = u(rng),
                       .h1_seminorm = u(rng), .M = 1 + static_cast<std::size_t>(u(rng) * 4)};
        in.eps = 0.1 * u(rng) / 5.0;
        in.g_max_deriv = u(rng) / 5.0;
        in.gamma_tilde = 0.999999;
        const double d = max_step_meta_quadratic(in) / in.gamma_tilde;
        const double mg = static_cast<double>(in.M) * in.g_max_deriv;
        const double lhs = -in.fidelity_margin() * in.gap +
                           d * (mg * in.h_seminorm + in.h1_seminorm) +
                           d * d * mg * in.h1_seminorm;
        CHECK_THAT(lhs, WithinAbs(0.0, 1e-12 * in.gap));
        // never looser than dropping the quadratic term
        in.gamma_tilde = 0.5;
        CHECK(max_step_meta_quadratic(in) <= max_step_meta(in) + 1e-15);
    }
}

TEST_CASE("max_radius_vqe_examples") {
    BoundInputs in{.gap = 1.0, .h_seminorm = 9.0, .h1_seminorm = 1.0, .M = 101};
    in.gamma = 1.0;
    in.gamma_tilde = 0.0;
    CHECK_THAT(max_radius_vqe(in), WithinAbs(std::sqrt(0.003), 1e-15));
    CHECK_THAT(max_radius_vqe(in), WithinAbs(0.05477, 1e-5));
    in.gap = 0.0;
    CHECK(max_radius_vqe(in) == 0.0);
    BoundInputs one{.gap = 1.0, .h_seminorm = 1.0, .M = 1};
    CHECK_THROWS_AS(max_radius_vqe(one), ValidationError);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t m = 2; m < 200; m += 7) {
        BoundInputs g{.gap = 0.8, .h_seminorm = 12.0, .M = m};
        const double r = max_radius_vqe(g);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("max_radius_meta_takes_minimum_branch") {
    BoundInputs in{.gap = 1.0, .h_seminorm = 6.0, .h1_seminorm = 4.0, .M = 10};
    in.g_max = 1.5;
    const std::vector<double> g1 = {0.5, 1.2};
    // hand evaluation of both branches
    const double gap_branch =
        3.0 / (1.5 * 1.5 * 9.0) * 0.5 * 1.0 / (6.0 + 1.0);
    double kernel = std::numeric_limits<double>::infinity();
    for (auto [a, b] : {std::pair{0.5, 0.5}, std::pair{0.5, 1.2},
                        std::pair{1.2, 1.2}}) {
        kernel = std::min(kernel, 4.0 * a * a * b * b / (45.0 * h6(a, b)));
    }
    CHECK_THAT(radius_meta_gap_term(in), WithinRel(gap_branch, 1e-14));
    CHECK_THAT(radius_meta_kernel_term(g1), WithinRel(kernel, 1e-14));
    CHECK_THAT(max_radius_meta(in, g1),
               WithinRel(std::sqrt(0.5 * std::min(gap_branch, kernel)), 1e-14));

    const std::vector<double> zeros = {0.0, 0.0};
    CHECK(max_radius_meta(in, zeros) == 0.0);
    auto tiny_gap = in;
    tiny_gap.gap = 1e-6;
    CHECK_THAT(max_radius_meta(tiny_gap, g1),
               WithinRel(std::sqrt(0.5 * radius_meta_gap_term(tiny_gap)), 1e-12));
}

TEST_CASE("variance_bound_examples") {
    BoundInputs in{.gap = 1.0, .h_seminorm = 1.0, .h1_seminorm = 1.0, .M = 2};
    const double expected =
        (1.0 - 0.04 / 7.0) * (4e-4 / 45.0) * 0.25 * 0.25;
    CHECK_THAT(variance_bound_formula(in, 0.1), WithinRel(expected, 1e-13));
    CHECK(variance_bound_formula(in, 0.0) == 0.0);
    auto half = in;
    half.eps = std::sqrt(0.5);
    CHECK_THAT(variance_bound_formula(half, 0.1), WithinAbs(0.0, 1e-20));
}

TEST_CASE("variance_bound_report_conditions") {
    BoundInputs in{.gap = 1.2, .h_seminorm = 16.0, .h1_seminorm = 12.0, .M = 64};
    in.eps = 0.01;
    const double rmax = max_radius_vqe(in);
    const double smax = max_step_vqe(in);

    auto ok = variance_bound_vqe(in, 0.9 * rmax, 0.9 * smax, 4);
    CHECK(ok.conditions_met());
    CHECK_THAT(ok.variance_lower,
               WithinRel(variance_bound_formula(in, 0.9 * rmax), 1e-15));
    CHECK(ok.first_valid_gate == std::optional<std::size_t>{4});

    auto far = variance_bound_vqe(in, 0.9 * rmax, 2.0 * smax);
    CHECK_FALSE(far.conditions.step_ok);
    CHECK(far.variance_lower == 0.0);

    auto wide = variance_bound_vqe(in, 2.0 * rmax, 0.0);
    CHECK_FALSE(wide.conditions.radius_ok);
    CHECK(wide.variance_lower == 0.0);

    auto no_gate = variance_bound_vqe(in, 0.5 * rmax, 0.0, std::nullopt);
    CHECK_FALSE(no_gate.conditions.first_gate_ok);
    CHECK(no_gate.variance_lower == 0.0);

    auto closed = in;
    closed.gap = 0.0;
    auto rep = variance_bound_vqe(closed, 0.0, 0.0);
    CHECK_FALSE(rep.conditions.gap_open);
    CHECK(rep.variance_lower == 0.0);

    auto flat = in;
    flat.h1_seminorm = 0.0;
    CHECK(variance_bound_vqe(flat, 0.1 * rmax, 5.0).step_unbounded);

    auto bad = in;
    bad.eps = 0.9;
    CHECK_THROWS_AS(variance_bound_vqe(bad, 0.01, 0.0), ValidationError);
    bad = in;
    bad.gamma = 1.0;
    CHECK_THROWS_AS(variance_bound_vqe(bad, 0.01, 0.0), ValidationError);
    CHECK_THROWS_AS(variance_bound_vqe(in, -0.01, 0.0), ValidationError);
}

TEST_CASE("first_valid_gate_examples") {
    Ansatz x_first(2);
    x_first.add_rotation(PauliString::parse("XI"));
    CHECK(first_valid_gate(x_first) == std::optional<std::size_t>{0});
    Ansatz all_z(2);
    all_z.add_rotation(PauliString::parse("ZI"));
    all_z.add_rotation(PauliString::parse("ZZ"));
    CHECK_FALSE(first_valid_gate(all_z).has_value());
    CHECK(first_valid_gate(build_hea(4, 1)) == std::optional<std::size_t>{4});
}
