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

#include "ebicert/certifier.hpp"

#include <algorithm>
#include <cmath>

#include "ebicert/ebi.hpp"

namespace ebicert::certifier {

using qlin::Operator;
using scenario::Behavior;

namespace {

void require_povm_statistics(const Behavior &b) {
    for (int l = 0; l < 3; ++l) {
        double mass = 0.0;
        for (int a = 0; a < 4; ++a) mass += b.joint_povm[l][a][0] + b.joint_povm[l][a][1];
        if (mass <= 0.0) {
            throw MissingStatistics("no statistics for setting pair (4," + std::to_string(l + 1) + ")");
        }
    }
}

void require_full_statistics(const Behavior &b) {
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 4; ++l) {
            double mass = 0.0;
            for (int a = 0; a < 2; ++a) mass += b.joint_dichotomic[k][l][a][0] + b.joint_dichotomic[k][l][a][1];
            if (mass <= 0.0) {
                throw MissingStatistics("no statistics for setting pair (" + std::to_string(k + 1) +
                                        "," + std::to_string(l + 1) + ")");
            }
        }
    for (int l = 0; l < 4; ++l) {
        double mass = 0.0;
        for (int a = 0; a < 4; ++a) mass += b.joint_povm[l][a][0] + b.joint_povm[l][a][1];
        if (mass <= 0.0) {
            throw MissingStatistics("no statistics for setting pair (4," + std::to_string(l + 1) + ")");
        }
    }
}

} // namespace

QbitPovm reconstruct_q(const Behavior &b) {
    require_povm_statistics(b);
    const double h = std::sqrt(3.0) / 2.0;
    QbitPovm q;
    for (int a = 1; a <= 4; ++a) {
        const double e1 = scenario::cond_expect(b, a, 1);
        const double e2 = scenario::cond_expect(b, a, 2);
        const double e3 = scenario::cond_expect(b, a, 3);
        qlin::BlochCoeffs g;
        g.c0 = b.povm_marginal[a - 1];
        g.c1 = h * (e1 + e2);
        g.c2 = h * (e1 + e3);
        g.c3 = -h * (e2 + e3);
        q.gammas[a - 1] = g;
        q.operators[a - 1] = qlin::from_bloch(g);
    }
    return q;
}

ExtremalityReport check_extremality(const QbitPovm &q, const Behavior &b,
                                    const ExtremalityTolerances &tol) {
    ExtremalityReport rep;

    for (int a = 0; a < 4; ++a) {
        const auto &g = q.gammas[a];
        OutcomeChecks &oc = rep.outcomes[a];
        const double vec2 = g.c1 * g.c1 + g.c2 * g.c2 + g.c3 * g.c3;

        oc.trace_value = 2.0 * g.c0;
        oc.trace_ok = oc.trace_value > tol.trace_min;

        oc.det_value = g.c0 * g.c0 - vec2;

        const double e1 = scenario::cond_expect(b, a + 1, 1);
        const double e2 = scenario::cond_expect(b, a + 1, 2);
        const double e3 = scenario::cond_expect(b, a + 1, 3);
        const double marginal = b.povm_marginal[a];
        oc.det_identity_residual = (e1 + e2) * (e1 + e2) + (e1 + e3) * (e1 + e3) +
                                   (e2 + e3) * (e2 + e3) - (4.0 / 3.0) * marginal * marginal;
        // The residual equals -(4/3) det Q_a algebraically, so the 4/3 factor
        // makes this exactly the |det| <= det_zero test.
        oc.det_ok = std::abs(oc.det_identity_residual) <= (4.0 / 3.0) * tol.det_zero;

        oc.min_eigenvalue = g.c0 - std::sqrt(vec2);
        oc.positive_ok = oc.min_eigenvalue >= -tol.det_zero;
    }

    // Conditional-expectation matrix for outcomes 1..3 against B_1..B_3,
    // rows normalized by the outcome probability.
    double c[3][3] = {};
    for (int a = 0; a < 3; ++a) {
        const double marginal = b.povm_marginal[a];
        if (marginal > 0.0) {
            for (int l = 0; l < 3; ++l) c[a][l] = scenario::cond_expect(b, a + 1, l + 1) / marginal;
        }
    }
    // Singular values via the spectrum of C^T C.
    Operator gram(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int a = 0; a < 3; ++a) s += c[a][i] * c[a][j];
            gram(i, j) = s;
        }
    const auto eig = qlin::eig_hermitian(gram, 1e-8);
    for (int i = 0; i < 3; ++i)
        rep.rank_singular_values[i] = std::sqrt(std::max(0.0, eig.eigenvalues[i]));
    rep.rank_ok = rep.rank_singular_values[2] > tol.rank_min;

    double completeness = std::abs(q.gammas[0].c0 + q.gammas[1].c0 + q.gammas[2].c0 +
                                   q.gammas[3].c0 - 1.0);
    completeness = std::max(completeness, std::abs(q.gammas[0].c1 + q.gammas[1].c1 +
                                                   q.gammas[2].c1 + q.gammas[3].c1));
    completeness = std::max(completeness, std::abs(q.gammas[0].c2 + q.gammas[1].c2 +
                                                   q.gammas[2].c2 + q.gammas[3].c2));
    completeness = std::max(completeness, std::abs(q.gammas[0].c3 + q.gammas[1].c3 +
                                                   q.gammas[2].c3 + q.gammas[3].c3));
    rep.completeness_residual = completeness;
    rep.complete_ok = completeness <= tol.completeness_tol;

    bool all = rep.rank_ok && rep.complete_ok;
    for (const auto &oc : rep.outcomes) all = all && oc.trace_ok && oc.det_ok && oc.positive_ok;
    rep.extremal = all;
    return rep;
}

CertTolerances CertTolerances::for_shots(std::int64_t shots_per_pair) {
    CertTolerances t;
    const double se = 3.0 / std::sqrt(static_cast<double>(std::max<std::int64_t>(1, shots_per_pair)));
    t.s_tol = 12.0 * se;           // twelve estimated correlators enter S
    t.uniform_tol = se;
    t.extremality.det_zero = se;   // residual is quadratic in quantities of size <= 1
    t.extremality.completeness_tol = se;
    return t;
}

CertificationVerdict certify(const Behavior &b, const CertTolerances &tol) {
    require_full_statistics(b);

    CertificationVerdict v;
    v.s_value = ebi::ebi_value(b);
    v.s_tol = tol.s_tol;
    v.test1_pass = std::abs(v.s_value - ebi::kQuantumMax) <= tol.s_tol;

    double residual = 0.0;
    for (int a = 0; a < 4; ++a)
        residual = std::max(residual, std::abs(b.povm_marginal[a] - 0.25));
    v.uniformity_residual = residual;
    v.uniform_tol = tol.uniform_tol;

    const QbitPovm q = reconstruct_q(b);
    v.extremality = check_extremality(q, b, tol.extremality);
    v.test2_pass = residual <= tol.uniform_tol && v.extremality.extremal;

    const bool both = v.test1_pass && v.test2_pass;
    v.certified_bits = both ? 2.0 : 0.0;
    v.guessing_bound = both ? 0.25 : 1.0;
    return v;
}

} // namespace ebicert::certifier
