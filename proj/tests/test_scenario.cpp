// Copyright 2026 The ebicert authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ebicert/ebi.hpp"
#include "ebicert/scenario.hpp"
#include "support.hpp"

using namespace ebicert;
using qlin::Operator;
using scenario::Behavior;
using scenario::Strategy;

namespace {

Strategy aligned_product_strategy() {
    Strategy s;
    s.dim_a = 2;
    s.dim_b = 2;
    s.state = qlin::tensor(qlin::Ket::basis(2, 0), qlin::Ket::basis(2, 0));
    s.alice_obs = {qlin::pauli_z(), qlin::pauli_z(), qlin::pauli_z()};
    s.bob_obs = {qlin::pauli_z(), qlin::pauli_z(), qlin::pauli_z(), qlin::pauli_z()};
    s.alice_povm = {Operator::identity(2), Operator::zero(2), Operator::zero(2), Operator::zero(2)};
    return s;
}

double total_variation(const Behavior &a, const Behavior &b) {
    double d = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 4; ++l)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    d += std::abs(a.joint_dichotomic[k][l][i][j] - b.joint_dichotomic[k][l][i][j]);
    for (int l = 0; l < 4; ++l)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 2; ++j) d += std::abs(a.joint_povm[l][i][j] - b.joint_povm[l][i][j]);
    return d;
}

} // namespace

TEST_CASE("reference behavior reproduces the hand-derived table") {
    const Strategy ref = ebi::reference_strategy();
    const Behavior b = scenario::behavior_of(ref);
    const double r3 = std::sqrt(3.0);

    for (int a = 0; a < 4; ++a) CHECK(b.povm_marginal[a] == doctest::Approx(0.25).epsilon(1e-12));

    CHECK(scenario::correlator(b, 1, 1) == doctest::Approx(1.0 / r3).epsilon(1e-12));
    CHECK(scenario::correlator(b, 1, 3) == doctest::Approx(-1.0 / r3).epsilon(1e-12));
    CHECK(b.joint_dichotomic[0][0][0][0] == doctest::Approx((1.0 + 1.0 / r3) / 4.0).epsilon(1e-12));

    // E_{a|4,l} table worked out from the Bloch directions: diagonal -1/4,
    // off-diagonal 1/12 for outcomes 1..3; the row of outcome 4 is uniform.
    for (int a = 1; a <= 3; ++a)
        for (int l = 1; l <= 3; ++l) {
            const double expected = a == l ? -0.25 : 1.0 / 12.0;
            CHECK(scenario::cond_expect(b, a, l) == doctest::Approx(expected).epsilon(1e-12));
        }
    for (int l = 1; l <= 3; ++l)
        CHECK(scenario::cond_expect(b, 4, l) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));

    CHECK(scenario::behavior_valid(b));
}

TEST_CASE("deterministic product strategy is deterministic") {
    const Behavior b = scenario::behavior_of(aligned_product_strategy());
    CHECK(b.joint_dichotomic[0][0][0][0] == doctest::Approx(1.0));
    CHECK(scenario::correlator(b, 1, 1) == doctest::Approx(1.0));
    CHECK(b.povm_marginal[0] == doctest::Approx(1.0));
}

TEST_CASE("behavior invariants hold for random strategies") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const Strategy s = testsupport::random_strategy(rng);
        const Behavior b = scenario::behavior_of(s);
        const auto d = scenario::behavior_diagnostics(b);
        CHECK(d.min_probability > -1e-12);
        CHECK(d.max_probability < 1.0 + 1e-12);
        CHECK(d.normalization_defect < 1e-10);
        CHECK(d.no_signaling_defect < 1e-10);

        for (int k = 1; k <= 3; ++k)
            for (int l = 1; l <= 4; ++l) CHECK(std::abs(scenario::correlator(b, k, l)) <= 1.0 + 1e-12);

        // sum_a E_{a|4,l} equals the unconditioned Bob expectation.
        for (int l = 1; l <= 4; ++l) {
            double sum = 0.0;
            for (int a = 1; a <= 4; ++a) sum += scenario::cond_expect(b, a, l);
            CHECK(sum == doctest::Approx(scenario::bob_expectation(b, l)).epsilon(1e-10));
        }
    }
}

TEST_CASE("strategy validation names the failing operator") {
    Strategy s = ebi::reference_strategy();
    s.alice_obs[1] = 0.5 * qlin::pauli_x(); // squares to 1/4, not 1
    try {
        scenario::behavior_of(s);
        FAIL("expected InvalidStrategy");
    } catch (const scenario::InvalidStrategy &e) {
        CHECK(std::string(e.what()).find("alice_obs[2]") != std::string::npos);
    }

    Strategy t = ebi::reference_strategy();
    t.alice_povm[0] = -1.0 * t.alice_povm[0];
    CHECK_THROWS_AS(scenario::behavior_of(t), scenario::InvalidStrategy);

    Strategy u = ebi::reference_strategy();
    u.state = qlin::Ket(4); // zero norm
    CHECK_THROWS_AS(scenario::behavior_of(u), scenario::InvalidStrategy);
}

TEST_CASE("correlator index range") {
    const Behavior b = scenario::behavior_of(ebi::reference_strategy());
    CHECK_THROWS_AS(scenario::correlator(b, 0, 1), scenario::IndexOutOfRange);
    CHECK_THROWS_AS(scenario::correlator(b, 4, 1), scenario::IndexOutOfRange);
    CHECK_THROWS_AS(scenario::cond_expect(b, 5, 1), scenario::IndexOutOfRange);
    CHECK_THROWS_AS(scenario::cond_expect(b, 1, 0), scenario::IndexOutOfRange);
}

TEST_CASE("sampling a deterministic strategy concentrates all counts") {
    const auto rec = scenario::sample(aligned_product_strategy(), 500, 42);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 4; ++l) {
            CHECK(rec.dichotomic[k][l][0][0] == 500);
            CHECK(rec.dichotomic[k][l][0][1] == 0);
            CHECK(rec.dichotomic[k][l][1][0] == 0);
            CHECK(rec.dichotomic[k][l][1][1] == 0);
        }
    for (int l = 0; l < 4; ++l) CHECK(rec.povm[l][0][0] == 500);
}

TEST_CASE("one shot per pair lands exactly one count") {
    const auto rec = scenario::sample(ebi::reference_strategy(), 1, 7);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 4; ++l) {
            std::int64_t sum = 0;
            for (int a = 0; a < 2; ++a)
                for (int bo = 0; bo < 2; ++bo) sum += rec.dichotomic[k][l][a][bo];
            CHECK(sum == 1);
        }
    for (int l = 0; l < 4; ++l) {
        std::int64_t sum = 0;
        for (int a = 0; a < 4; ++a)
            for (int bo = 0; bo < 2; ++bo) sum += rec.povm[l][a][bo];
        CHECK(sum == 1);
    }
}

TEST_CASE("sampling is reproducible and seed dependent") {
    const Strategy ref = ebi::reference_strategy();
    const auto a = scenario::sample(ref, 1000, 5);
    const auto b = scenario::sample(ref, 1000, 5);
    const auto c = scenario::sample(ref, 1000, 6);
    CHECK(a.dichotomic == b.dichotomic);
    CHECK(a.povm == b.povm);
    CHECK(a.dichotomic != c.dichotomic);
}

TEST_CASE("estimate of a large sample approaches the exact behavior") {
    const Strategy ref = ebi::reference_strategy();
    const Behavior exact = scenario::behavior_of(ref);
    const Behavior est = scenario::estimate(scenario::sample(ref, 1000000, 123));
    CHECK(est.estimated);
    CHECK(std::abs(scenario::correlator(est, 1, 1) - 1.0 / std::sqrt(3.0)) < 5e-3);
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 4; ++l)
            CHECK(std::abs(scenario::correlator(est, k, l) - scenario::correlator(exact, k, l)) < 5e-3);
}

TEST_CASE("statistical distance shrinks with more shots on average") {
    const Strategy ref = ebi::reference_strategy();
    const Behavior exact = scenario::behavior_of(ref);
    double coarse = 0.0, fine = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        coarse += total_variation(scenario::estimate(scenario::sample(ref, 1000, seed)), exact);
        fine += total_variation(scenario::estimate(scenario::sample(ref, 1000000, seed)), exact);
    }
    CHECK(fine < coarse);
}

TEST_CASE("counts serialization round trip") {
    const auto rec = scenario::sample(ebi::reference_strategy(), 250, 99);
    const std::string text = scenario::serialize_counts(rec);
    const auto back = scenario::parse_counts_text(text);
    CHECK(back.shots_per_pair == rec.shots_per_pair);
    CHECK(back.dichotomic == rec.dichotomic);
    CHECK(back.povm == rec.povm);
}

TEST_CASE("counts parser rejects malformed input") {
    CHECK_THROWS_AS(scenario::parse_counts_text(""), scenario::CountsParseError);
    CHECK_THROWS_AS(scenario::parse_counts_text("# shots-per-pair 10\n1 1 +1 +1 10\n"),
                    scenario::CountsParseError); // missing pairs
    const auto rec = scenario::sample(ebi::reference_strategy(), 10, 1);
    std::string text = scenario::serialize_counts(rec);
    text += "1 1 +1 +1 3\n"; // breaks the per-pair total
    CHECK_THROWS_AS(scenario::parse_counts_text(text), scenario::CountsParseError);
}

TEST_CASE("estimate rejects empty records") {
    scenario::CountRecord rec;
    CHECK_THROWS_AS(scenario::estimate(rec), scenario::EmptyRecord);
    CHECK_THROWS_AS(scenario::sample(ebi::reference_strategy(), 0, 0), scenario::EmptyRecord);
}
