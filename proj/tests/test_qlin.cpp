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
#include <random>

#include "ebicert/qlin.hpp"

using namespace ebicert;
using qlin::cplx;
using qlin::Ket;
using qlin::Operator;

namespace {

Operator random_hermitian(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Operator g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
    return 0.5 * (g + g.adjoint());
}

Ket phi_plus() {
    Ket k(4);
    k[0] = 1.0 / std::sqrt(2.0);
    k[3] = 1.0 / std::sqrt(2.0);
    return k;
}

} // namespace

TEST_CASE("tensor of identities and Paulis") {
    const Operator id4 = qlin::tensor(qlin::pauli_id(), qlin::pauli_id());
    CHECK((id4 - Operator::identity(4)).max_abs() == 0.0);

    const Operator zz = qlin::tensor(qlin::pauli_z(), qlin::pauli_z());
    CHECK(zz(0, 0).real() == doctest::Approx(1.0));
    CHECK(zz(1, 1).real() == doctest::Approx(-1.0));
    CHECK(zz(2, 2).real() == doctest::Approx(-1.0));
    CHECK(zz(3, 3).real() == doctest::Approx(1.0));
    CHECK(zz.norm() == doctest::Approx(2.0));
}

TEST_CASE("Y x Y expectation in the maximally correlated state is -1") {
    const Operator yy = qlin::tensor(qlin::pauli_y(), qlin::pauli_y());
    const cplx v = qlin::expval(phi_plus(), yy);
    CHECK(v.real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("tensor is associative and bilinear on random operators") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Operator a = random_hermitian(2, rng);
        const Operator b = random_hermitian(3, rng);
        const Operator c = random_hermitian(2, rng);
        const Operator left = qlin::tensor(qlin::tensor(a, b), c);
        const Operator right = qlin::tensor(a, qlin::tensor(b, c));
        CHECK((left - right).max_abs() < 1e-12);

        const cplx alpha(0.3, -1.1);
        const Operator lin = qlin::tensor(alpha * a + c, b);
        const Operator expanded = alpha * qlin::tensor(a, b) + qlin::tensor(c, b);
        CHECK((lin - expanded).max_abs() < 1e-12);
    }
}

TEST_CASE("Pauli algebra") {
    const auto &z = qlin::pauli_z();
    const auto &x = qlin::pauli_x();
    const auto &y = qlin::pauli_y();
    const auto &id = qlin::pauli_id();
    CHECK((z * z - id).max_abs() < 1e-15);
    CHECK((x * x - id).max_abs() < 1e-15);
    CHECK((y * y - id).max_abs() < 1e-15);
    const cplx i(0.0, 1.0);
    CHECK((z * x - i * y).max_abs() < 1e-15);
    CHECK((x * y - i * z).max_abs() < 1e-15);
    CHECK((y * z - i * x).max_abs() < 1e-15);
}

TEST_CASE("qubit eigendecomposition closed form") {
    SUBCASE("Z") {
        const auto eig = qlin::eig_hermitian(qlin::pauli_z());
        CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
        CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0));
    }
    SUBCASE("(Z+X)/sqrt(2) has unit Bloch vector") {
        const Operator m = (1.0 / std::sqrt(2.0)) * (qlin::pauli_z() + qlin::pauli_x());
        const auto eig = qlin::eig_hermitian(m);
        CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("1/2 + Z/4 reads off the diagonal") {
        const Operator m = 0.5 * qlin::pauli_id() + 0.25 * qlin::pauli_z();
        const auto eig = qlin::eig_hermitian(m);
        CHECK(eig.eigenvalues[0] == doctest::Approx(0.75));
        CHECK(eig.eigenvalues[1] == doctest::Approx(0.25));
    }
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
    std::mt19937_64 rng(11);
    for (int dim : {2, 3, 4, 5, 8}) {
        for (int trial = 0; trial < 25; ++trial) {
            const Operator m = random_hermitian(dim, rng);
            const auto eig = qlin::eig_hermitian(m);
            REQUIRE(static_cast<int>(eig.eigenvalues.size()) == dim);

            Operator rebuilt = Operator::zero(dim);
            for (int i = 0; i < dim; ++i)
                rebuilt += eig.eigenvalues[i] * qlin::outer(eig.eigenvectors[i], eig.eigenvectors[i]);
            CHECK((rebuilt - m).max_abs() < 1e-10);

            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j < dim; ++j) {
                    const cplx overlap = qlin::inner(eig.eigenvectors[i], eig.eigenvectors[j]);
                    CHECK(std::abs(overlap - (i == j ? 1.0 : 0.0)) < 1e-10);
                }
                const Ket mv = qlin::apply(m, eig.eigenvectors[i]);
                double defect = 0.0;
                for (int r = 0; r < dim; ++r)
                    defect = std::max(defect,
                                      std::abs(mv[r] - eig.eigenvalues[i] * eig.eigenvectors[i][r]));
                CHECK(defect < 1e-10);
            }
            for (size_t i = 1; i < eig.eigenvalues.size(); ++i)
                CHECK(eig.eigenvalues[i - 1] >= eig.eigenvalues[i]);
        }
    }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
    Operator m(2);
    m(0, 1) = 1.0; // missing the conjugate partner
    CHECK_THROWS_AS(qlin::eig_hermitian(m), qlin::NotHermitian);
}

TEST_CASE("partial trace") {
    SUBCASE("maximally entangled marginal is maximally mixed") {
        const Operator rho = qlin::outer(phi_plus(), phi_plus());
        const Operator red = qlin::partial_trace(rho, qlin::Subsystem::A, 2, 2);
        CHECK((red - 0.5 * Operator::identity(2)).max_abs() < 1e-12);
    }
    SUBCASE("product trace splits") {
        std::mt19937_64 rng(3);
        const Operator a = random_hermitian(2, rng);
        const Operator b = random_hermitian(3, rng);
        const Operator red = qlin::partial_trace(qlin::tensor(a, b), qlin::Subsystem::A, 2, 3);
        CHECK((red - b.trace() * a).max_abs() < 1e-12);
        const Operator red_b = qlin::partial_trace(qlin::tensor(a, b), qlin::Subsystem::B, 2, 3);
        CHECK((red_b - a.trace() * b).max_abs() < 1e-12);
    }
    SUBCASE("identity") {
        const Operator red = qlin::partial_trace(Operator::identity(4), qlin::Subsystem::B, 2, 2);
        CHECK((red - 2.0 * Operator::identity(2)).max_abs() < 1e-15);
    }
    SUBCASE("trace is preserved") {
        std::mt19937_64 rng(5);
        const Operator m = random_hermitian(6, rng);
        const Operator red = qlin::partial_trace(m, qlin::Subsystem::A, 2, 3);
        CHECK(std::abs(red.trace() - m.trace()) < 1e-12);
    }
    SUBCASE("dimension mismatch throws") {
        CHECK_THROWS_AS(qlin::partial_trace(Operator::identity(5), qlin::Subsystem::A, 2, 2),
                        qlin::DimensionMismatch);
    }
}

TEST_CASE("Bloch decomposition") {
    SUBCASE("projector onto |0>") {
        const Operator m = qlin::from_bloch({0.5, 0.5, 0.0, 0.0});
        CHECK(m(0, 0).real() == doctest::Approx(1.0));
        CHECK(m(1, 1).real() == doctest::Approx(0.0));
        CHECK(std::abs(m(0, 1)) < 1e-15);
    }
    SUBCASE("coefficients of Y") {
        const auto c = qlin::to_bloch(qlin::pauli_y());
        CHECK(c.c0 == doctest::Approx(0.0));
        CHECK(c.c1 == doctest::Approx(0.0));
        CHECK(c.c2 == doctest::Approx(0.0));
        CHECK(c.c3 == doctest::Approx(1.0));
    }
    SUBCASE("tetrahedron element from the maximal-violation measurement") {
        const double g = 1.0 / (4.0 * std::sqrt(3.0));
        const Operator m = qlin::from_bloch({0.25, -g, -g, -g});
        const Operator expected =
            0.25 * (qlin::pauli_id() -
                    (1.0 / std::sqrt(3.0)) * (qlin::pauli_z() + qlin::pauli_x() + qlin::pauli_y()));
        CHECK((m - expected).max_abs() < 1e-15);
    }
    SUBCASE("round trip on random coefficients") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int trial = 0; trial < 50; ++trial) {
            const qlin::BlochCoeffs c{u(rng), u(rng), u(rng), u(rng)};
            const auto back = qlin::to_bloch(qlin::from_bloch(c));
            CHECK(std::abs(back.c0 - c.c0) < 1e-12);
            CHECK(std::abs(back.c1 - c.c1) < 1e-12);
            CHECK(std::abs(back.c2 - c.c2) < 1e-12);
            CHECK(std::abs(back.c3 - c.c3) < 1e-12);
        }
    }
    SUBCASE("to_bloch rejects wrong dimension") {
        CHECK_THROWS_AS(qlin::to_bloch(Operator::identity(3)), qlin::DimensionMismatch);
    }
}
