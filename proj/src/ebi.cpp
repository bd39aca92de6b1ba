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

#include "ebicert/ebi.hpp"

#include <cmath>

namespace ebicert::ebi {

using qlin::Operator;
using scenario::Strategy;

double ebi_value(const scenario::Behavior &b) {
    double s = 0.0;
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 4; ++l) s += kSigns[k - 1][l - 1] * scenario::correlator(b, k, l);
    return s;
}

Strategy deterministic_strategy(const DeterministicAssignment &assign) {
    Strategy s;
    s.dim_a = 2;
    s.dim_b = 2;
    s.state = qlin::tensor(qlin::Ket::basis(2, 0), qlin::Ket::basis(2, 0));
    for (int k = 0; k < 3; ++k)
        s.alice_obs[k] = static_cast<qlin::cplx>(assign.alice[k]) * Operator::identity(2);
    for (int l = 0; l < 4; ++l)
        s.bob_obs[l] = static_cast<qlin::cplx>(assign.bob[l]) * Operator::identity(2);
    s.alice_povm = {Operator::identity(2), Operator::zero(2), Operator::zero(2), Operator::zero(2)};
    return s;
}

double deterministic_value(const DeterministicAssignment &assign) {
    return ebi_value(scenario::behavior_of(deterministic_strategy(assign)));
}

BruteforceResult classical_max_bruteforce() {
    BruteforceResult best;
    best.value = -1e300;
    for (int am = 0; am < 8; ++am) {
        for (int bm = 0; bm < 16; ++bm) {
            DeterministicAssignment assign;
            for (int k = 0; k < 3; ++k) assign.alice[k] = (am >> k) & 1 ? +1 : -1;
            for (int l = 0; l < 4; ++l) assign.bob[l] = (bm >> l) & 1 ? +1 : -1;
            const double v = deterministic_value(assign);
            if (v > best.value) {
                best.value = v;
                best.argmax = assign;
            }
        }
    }
    return best;
}

Strategy reference_strategy() {
    const double r3 = std::sqrt(3.0);
    Strategy s;
    s.dim_a = 2;
    s.dim_b = 2;

    qlin::Ket phi(4);
    phi[0] = 1.0 / std::sqrt(2.0);
    phi[3] = 1.0 / std::sqrt(2.0);
    s.state = phi;

    s.alice_obs = {qlin::pauli_z(), qlin::pauli_x(), qlin::pauli_y()};

    s.bob_obs = {
        scenario::qubit_observable(1 / r3, 1 / r3, -1 / r3),   // (Z+X-Y)/sqrt(3)
        scenario::qubit_observable(1 / r3, -1 / r3, 1 / r3),   // (Z-X+Y)/sqrt(3)
        scenario::qubit_observable(-1 / r3, 1 / r3, 1 / r3),   // (-Z+X+Y)/sqrt(3)
        scenario::qubit_observable(-1 / r3, -1 / r3, -1 / r3), // (-Z-X-Y)/sqrt(3)
    };

    // Four rank-one POVM elements (1 + u_a . sigma)/4 whose Bloch directions
    // u_a form a regular tetrahedron.
    const double g = 1.0 / (4.0 * r3);
    s.alice_povm = {
        qlin::from_bloch({0.25, -g, -g, -g}),
        qlin::from_bloch({0.25, -g, +g, +g}),
        qlin::from_bloch({0.25, +g, -g, +g}),
        qlin::from_bloch({0.25, +g, +g, -g}),
    };
    return s;
}

scenario::Behavior werner_behavior(double visibility) {
    const Strategy s = reference_strategy();
    const scenario::Behavior quantum = scenario::behavior_of(s);
    const Operator mixed = 0.25 * Operator::identity(4);
    const scenario::Behavior noise = scenario::behavior_of(s, mixed);
    return scenario::mix(quantum, noise, visibility);
}

scenario::Behavior uniform_noise_behavior() { return werner_behavior(0.0); }

} // namespace ebicert::ebi
