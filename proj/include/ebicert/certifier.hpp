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

/**
 * @file
 * The two device-independent tests. Test 1: the Bell value equals the maximum
 * quantum violation. Test 2: Alice's four outcomes are uniform and the qubit
 * measurement reconstructed from the statistics is an extremal four-outcome
 * POVM. Passing both certifies a guessing probability of 1/4, i.e. two bits.
 */

#pragma once

#include <array>
#include <stdexcept>

#include "ebicert/scenario.hpp"

namespace ebicert::certifier {

struct MissingStatistics : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The four operators Q_a rebuilt from statistics, with their coefficients in
/// the (1, Z, X, Y) basis:
///   gamma_a^0 = P(a|A_4)
///   gamma_a^1 = (sqrt(3)/2) (E_{a|4,1} + E_{a|4,2})
///   gamma_a^2 = (sqrt(3)/2) (E_{a|4,1} + E_{a|4,3})
///   gamma_a^3 = -(sqrt(3)/2) (E_{a|4,2} + E_{a|4,3})
struct QbitPovm {
    std::array<qlin::BlochCoeffs, 4> gammas;
    std::array<qlin::Operator, 4> operators;
};

QbitPovm reconstruct_q(const scenario::Behavior &b);

struct ExtremalityTolerances {
    double trace_min = 1e-6;        // tr Q_a must exceed this
    double det_zero = 1e-9;         // |det Q_a| below this counts as rank one
    double rank_min = 1e-6;         // smallest singular value of the 3x3 matrix
    double completeness_tol = 1e-9; // |sum_a Q_a - 1| entrywise
};

struct OutcomeChecks {
    double trace_value = 0.0;
    bool trace_ok = false;
    double det_value = 0.0;             // det Q_a
    double det_identity_residual = 0.0; // sum of squared pair sums minus (4/3) P(a)^2
    bool det_ok = false;                // judged on the identity residual
    double min_eigenvalue = 0.0;        // positivity diagnostic
    bool positive_ok = false;
};

struct ExtremalityReport {
    std::array<OutcomeChecks, 4> outcomes;
    // Singular values (descending) of the conditional-expectation matrix
    // [E_{a|4,l} / P(a|A_4)] for a, l in {1,2,3}; rows with P(a|A_4) = 0 are
    // zero. Full rank here is equivalent to linear independence of the four
    // gamma vectors when the marginals are nonzero.
    std::array<double, 3> rank_singular_values{};
    bool rank_ok = false;
    double completeness_residual = 0.0;
    bool complete_ok = false;
    bool extremal = false; // AND of every flag above
};

/// Evaluates the extremality conditions for Q built from behavior `b`:
/// positive trace, vanishing determinant (via the statistics-level identity),
/// and full rank of the conditional-expectation matrix. Never throws; all
/// diagnostics are carried in the report.
ExtremalityReport check_extremality(const QbitPovm &q, const scenario::Behavior &b,
                                    const ExtremalityTolerances &tol = {});

struct CertTolerances {
    double s_tol = 1e-9;
    double uniform_tol = 1e-9;
    ExtremalityTolerances extremality{};

    static CertTolerances exact() { return {}; }
    /// Heuristic widening for finite-shot behaviors: roughly three binomial
    /// standard errors per estimated quantity. The exact-point certificate is
    /// only proven at machine precision; this mode is diagnostic.
    static CertTolerances for_shots(std::int64_t shots_per_pair);
};

struct CertificationVerdict {
    bool test1_pass = false;
    double s_value = 0.0;
    double s_tol = 0.0;

    bool test2_pass = false;
    double uniformity_residual = 0.0;
    double uniform_tol = 0.0;
    ExtremalityReport extremality;

    double certified_bits = 0.0; // 2 when both tests pass, else 0
    double guessing_bound = 1.0; // 1/4 when both tests pass, else 1
};

/// Runs both tests against the stated tolerances. Throws MissingStatistics
/// when a required setting pair carries no probability mass at all.
CertificationVerdict certify(const scenario::Behavior &b,
                             const CertTolerances &tol = CertTolerances::exact());

} // namespace ebicert::certifier
