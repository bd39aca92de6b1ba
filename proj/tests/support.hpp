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

// Shared generators for the test suites. Everything here is deliberately
// independent of the library's optimizer/certifier internals so it can serve
// as oracle-side machinery.

#pragma once

#include <cmath>
#include <random>

#include "ebicert/qlin.hpp"
#include "ebicert/scenario.hpp"

namespace ebicert::testsupport {

inline qlin::Operator random_hermitian(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    qlin::Operator g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = qlin::cplx(gauss(rng), gauss(rng));
    return 0.5 * (g + g.adjoint());
}

inline qlin::Ket random_ket(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    qlin::Ket k(dim);
    for (int i = 0; i < dim; ++i) k[i] = qlin::cplx(gauss(rng), gauss(rng));
    return k.normalized();
}

/// +-1 observable from the spectral sign of a random Hermitian matrix.
inline qlin::Operator random_dichotomic(int dim, std::mt19937_64 &rng) {
    const auto eig = qlin::eig_hermitian(random_hermitian(dim, rng));
    qlin::Operator out = qlin::Operator::zero(dim);
    for (int i = 0; i < dim; ++i) {
        const double s = eig.eigenvalues[i] >= 0.0 ? 1.0 : -1.0;
        out += s * qlin::outer(eig.eigenvectors[i], eig.eigenvectors[i]);
    }
    return out;
}

/// Four-outcome POVM A_a = S^{-1/2} G_a S^{-1/2} from random PSD seeds.
inline std::array<qlin::Operator, 4> random_povm(int dim, std::mt19937_64 &rng) {
    std::array<qlin::Operator, 4> seeds;
    qlin::Operator total = qlin::Operator::zero(dim);
    for (auto &g : seeds) {
        const qlin::Operator h = random_hermitian(dim, rng);
        g = h * h; // PSD
        total += g;
    }
    const auto eig = qlin::eig_hermitian(total);
    qlin::Operator inv_sqrt = qlin::Operator::zero(dim);
    for (int i = 0; i < dim; ++i)
        inv_sqrt +=
            (1.0 / std::sqrt(eig.eigenvalues[i])) * qlin::outer(eig.eigenvectors[i], eig.eigenvectors[i]);
    std::array<qlin::Operator, 4> povm;
    for (int a = 0; a < 4; ++a) povm[a] = inv_sqrt * seeds[a] * inv_sqrt;
    return povm;
}

inline scenario::Strategy random_strategy(std::mt19937_64 &rng, int dim_a = 2, int dim_b = 2) {
    scenario::Strategy s;
    s.dim_a = dim_a;
    s.dim_b = dim_b;
    s.state = random_ket(dim_a * dim_b, rng);
    for (int k = 0; k < 3; ++k) s.alice_obs[k] = random_dichotomic(dim_a, rng);
    for (int l = 0; l < 4; ++l) s.bob_obs[l] = random_dichotomic(dim_b, rng);
    s.alice_povm = random_povm(dim_a, rng);
    return s;
}

/// 3x3 rotation applied to the (Z, X, Y) components of a Bloch vector,
/// built from a random quaternion.
struct Rotation {
    double m[3][3];
};

inline Rotation random_rotation(std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    double q[4];
    double n = 0.0;
    for (double &x : q) {
        x = gauss(rng);
        n += x * x;
    }
    n = std::sqrt(n);
    for (double &x : q) x /= n;
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    Rotation r;
    r.m[0][0] = 1 - 2 * (y * y + z * z);
    r.m[0][1] = 2 * (x * y - w * z);
    r.m[0][2] = 2 * (x * z + w * y);
    r.m[1][0] = 2 * (x * y + w * z);
    r.m[1][1] = 1 - 2 * (x * x + z * z);
    r.m[1][2] = 2 * (y * z - w * x);
    r.m[2][0] = 2 * (x * z - w * y);
    r.m[2][1] = 2 * (y * z + w * x);
    r.m[2][2] = 1 - 2 * (x * x + y * y);
    return r;
}

} // namespace ebicert::testsupport
