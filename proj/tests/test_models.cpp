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

#include <random>

#include "oracles.hpp"
#include "warmstate/models.hpp"
#include "warmstate/spectrum.hpp"
#include "warmstate/statevector.hpp"

using namespace warmstate;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<oracle::Term> oracle_terms(const PauliSum &h) {
    std::vector<oracle::Term> out;
    for (const auto &t : h.terms()) {
        out.push_back({t.coeff, t.string.str()});
    }
    return out;
}

// Literal term lists written out by hand for n = 4.
std::vector<oracle::Term> heisenberg4(double x) {
    std::vector<oracle::Term> t = {{-1, "ZIII"}, {-1, "IZII"}, {-1, "IIZI"},
                                   {-1, "IIIZ"}};
    for (const char *bond : {"XXII", "IXXI", "IIXX", "XIIX", "YYII", "IYYI",
                             "IIYY", "YIIY", "ZZII", "IZZI", "IIZZ", "ZIIZ"}) {
        t.push_back({x, bond});
    }
    return t;
}

std::vector<oracle::Term> ising4(double x) {
    std::vector<oracle::Term> t = {{-1, "ZZII"}, {-1, "IZZI"}, {-1, "IIZZ"},
                                   {-1, "ZIIZ"}, {-1, "YXXY"}};
    for (const char *s : {"XIII", "IXII", "IIXI", "IIIX"}) {
        t.push_back({-x, s});
    }
    return t;
}

std::vector<oracle::Term> xy4(double x) {
    std::vector<oracle::Term> t;
    for (const char *s : {"XXII", "IXXI", "IIXX"}) {
        t.push_back({-(1 + x), s});
    }
    for (const char *s : {"YYII", "IYYI", "IIYY"}) {
        t.push_back({-(1 - x), s});
    }
    return t;
}

void check_same_operator(const PauliSum &h,
                         const std::vector<oracle::Term> &expected) {
    const auto ours = oracle::hamiltonian(h.num_qubits(), oracle_terms(h));
    const auto ref = oracle::hamiltonian(h.num_qubits(), expected);
    double d = 0.0;
    for (std::size_t i = 0; i < ours.a.size(); ++i) {
        d = std::max(d, std::abs(ours.a[i] - ref.a[i]));
    }
    CHECK(d < 1e-13);
}

} // namespace

TEST_CASE("builders_match_hand_written_term_lists") {
    for (double x : {0.0, 0.3, -1.2}) {
        check_same_operator(models::build_heisenberg_field(4, x),
                            heisenberg4(x));
        check_same_operator(models::build_ising_jw(4, x), ising4(x));
        check_same_operator(models::build_xy(4, x), xy4(x));
    }
}

TEST_CASE("term_counts") {
    CHECK(models::build_heisenberg_field(4, 0.0).size() == 4);
    CHECK(models::build_heisenberg_field(4, 0.5).size() == 4 + 3 * 4);
    CHECK(models::build_heisenberg_field(6, 0.5).size() == 6 + 3 * 6);
    CHECK(models::build_ising_jw(5, 0.7).size() == 2 * 5 + 1);
    CHECK(models::build_xy(6, 0.2).size() == 2 * 5);
}

TEST_CASE("xy_at_one_has_no_yy_terms") {
    auto h = models::build_xy(3, 1.0);
    REQUIRE(h.size() == 2);
    for (const auto &t : h.terms()) {
        CHECK(t.string.y_count() == 0);
        CHECK(t.coeff == -2.0);
    }
}

TEST_CASE("heisenberg_two_sites_merges_wrapped_bond") {
    auto h = models::build_heisenberg_field(2, 1.0);
    CHECK(h.coefficient(PauliString::parse("XX")) == 2.0);
    CHECK(h.coefficient(PauliString::parse("ZZ")) == 2.0);
    CHECK(h.size() == 5);
}

TEST_CASE("ising_reference_energy_on_all_zero_state") {
    auto h = models::build_ising_jw(4, 0.0);
    StateVector psi(4);
    CHECK_THAT(psi.expectation(h), WithinAbs(-4.0, 1e-14));
}

TEST_CASE("spectrum_matches_jacobi_oracle") {
    std::vector<PauliSum> cases = {
        models::build_heisenberg_field(4, 0.1),
        models::build_heisenberg_field(3, -0.4),
        models::build_xy(4, 0.35),
        models::build_ising_jw(4, 0.0),
        models::build_ising_jw(4, 1.3),
        models::build_xy(5, 1.0),
    };
    std::mt19937_64 rng(17);
    std::normal_distribution<double> coeff;
    for (int k = 0; k < 5; ++k) {
        std::vector<PauliTerm> terms;
        for (int t = 0; t < 6; ++t) {
            terms.push_back(
                {coeff(rng), PauliString::parse(oracle::random_label(3, rng))});
        }
        cases.emplace_back(3, terms);
    }
    for (const auto &h : cases) {
        const auto ours = exact_spectrum(h);
        const auto ref = oracle::hermitian_eigenvalues(
            oracle::hamiltonian(h.num_qubits(), oracle_terms(h)));
        REQUIRE(ours.eigenvalues.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK_THAT(ours.eigenvalues[i], WithinAbs(ref[i], 1e-9));
        }
        CHECK_THAT(ours.gap(), WithinAbs(ref[1] - ref[0], 1e-9));
        CHECK_THAT(semi_norm(h), WithinAbs(ref.back() - ref.front(), 1e-9));

        // ground vector: unit norm and H v = e0 v
        const auto m = oracle::hamiltonian(h.num_qubits(), oracle_terms(h));
        const auto hv = oracle::apply(m, ours.ground_vector);
        double resid = 0.0;
        double norm = 0.0;
        for (std::size_t i = 0; i < hv.size(); ++i) {
            resid += std::norm(hv[i] - ref[0] * ours.ground_vector[i]);
            norm += std::norm(ours.ground_vector[i]);
        }
        CHECK(std::sqrt(resid) < 1e-8);
        CHECK_THAT(norm, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("ising_ferromagnet_gap_from_dense_oracle") {
    auto h = models::build_ising_jw(4, 0.0);
    const auto ref =
        oracle::hermitian_eigenvalues(oracle::hamiltonian(4, ising4(0.0)));
    CHECK_THAT(ref[0], WithinAbs(-5.0, 1e-10));
    CHECK_THAT(spectral_gap(h), WithinAbs(2.0, 1e-9));
}

TEST_CASE("xy_gap_closes_at_isotropic_point") {
    CHECK_THAT(spectral_gap(models::build_xy(6, 1.0)), WithinAbs(0.0, 1e-9));
    CHECK(spectral_gap(models::build_xy(6, 0.0)) > 0.1);
}

TEST_CASE("semi_norm_is_scale_covariant_and_shift_invariant") {
    auto h = models::build_heisenberg_field(3, 0.2);
    const double s = semi_norm(h);
    CHECK_THAT(semi_norm(-2.5 * h), WithinAbs(2.5 * s, 1e-9));
    PauliSum shifted = h + PauliSum(3, {{4.0, PauliString::identity(3)}});
    CHECK_THAT(semi_norm(shifted), WithinAbs(s, 1e-9));
}

TEST_CASE("model_validation") {
    CHECK_THROWS_AS(models::heisenberg_field_family(1), ValidationError);
    CHECK_THROWS_AS(models::ising_jw_family(2), ValidationError);
    CHECK_THROWS_AS(models::family_by_name("potts", 4), ValidationError);
    CHECK_THROWS_AS(exact_spectrum(models::build_xy(15, 0.0)), SizeError);
    CHECK(models::family_by_name("xy", 3, 2.0).h0.coefficient(
              PauliString::parse("XXI")) == -2.0);
}
