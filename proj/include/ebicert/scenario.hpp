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
 * Bipartite Bell strategies for the 3+1 x 4 scenario: Alice holds three
 * dichotomic observables and one four-outcome POVM, Bob holds four dichotomic
 * observables. Exact behaviors via the Born rule, finite-shot sampling, and
 * frequency estimation.
 *
 * Setting labels in the public API are 1-based (device buttons A1..A4,
 * B1..B4; Alice's setting 4 is the POVM). Dichotomic outcomes are the values
 * +1/-1; POVM outcomes are labels 1..4.
 */

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ebicert/qlin.hpp"

namespace ebicert::scenario {

struct InvalidStrategy : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct EmptyRecord : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CountsParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A shared pure state plus both parties' measurements. Degenerate dichotomic
/// observables (+-identity) are allowed; they model deterministic classical
/// assignments.
struct Strategy {
    int dim_a = 2;
    int dim_b = 2;
    qlin::Ket state;                             // on dim_a * dim_b
    std::array<qlin::Operator, 3> alice_obs;     // eigenvalues +-1
    std::array<qlin::Operator, 4> alice_povm;    // positive, sums to identity
    std::array<qlin::Operator, 4> bob_obs;       // eigenvalues +-1
};

/// Throws InvalidStrategy naming the offending operator.
void validate_strategy(const Strategy &s, double tol = qlin::kSpectralTol);

/// Full probability table of a strategy. Index order: dichotomic outcomes are
/// 0 for +1 and 1 for -1; POVM outcomes are 0..3 for labels 1..4.
struct Behavior {
    // P(a, b | A_k, B_l), k in 0..2, l in 0..3.
    std::array<std::array<std::array<std::array<double, 2>, 2>, 4>, 3> joint_dichotomic{};
    // P(a, b | A_4, B_l), l in 0..3, a in 0..3.
    std::array<std::array<std::array<double, 2>, 4>, 4> joint_povm{};
    std::array<double, 4> povm_marginal{}; // P(a | A_4)
    bool estimated = false;
};

struct BehaviorDiagnostics {
    double min_probability = 0.0;
    double max_probability = 0.0;
    double normalization_defect = 0.0; // worst |sum_over_outcomes - 1|
    double no_signaling_defect = 0.0;  // worst marginal dependence on the remote setting
};

BehaviorDiagnostics behavior_diagnostics(const Behavior &b);
bool behavior_valid(const Behavior &b, double tol = qlin::kSpectralTol);

Behavior behavior_of(const Strategy &s);
/// Same strategy evaluated on a density operator instead of s.state.
Behavior behavior_of(const Strategy &s, const qlin::Operator &rho);

/// Convex mixture w * lhs + (1 - w) * rhs.
Behavior mix(const Behavior &lhs, const Behavior &rhs, double w);

/// E_{k,l} = sum_{a,b} a b P(a,b|A_k,B_l); k in 1..3, l in 1..4.
double correlator(const Behavior &b, int k, int l);
/// E_{a|4,l} = sum_b b P(a,b|A_4,B_l); a in 1..4, l in 1..4.
double cond_expect(const Behavior &b, int a, int l);
/// Unconditioned <B_l> from the A_k table (any k gives the same value for a
/// no-signaling behavior; k = 1 is used).
double bob_expectation(const Behavior &b, int l);

/// Integer outcome counts per setting pair, all pairs measured the same
/// number of times.
struct CountRecord {
    std::int64_t shots_per_pair = 0;
    std::array<std::array<std::array<std::array<std::int64_t, 2>, 2>, 4>, 3> dichotomic{};
    std::array<std::array<std::array<std::int64_t, 2>, 4>, 4> povm{};
};

/// Draw i.i.d. finite statistics from the exact behavior of `s`. The stream
/// is a function of `seed` alone and is reproducible within one build.
CountRecord sample(const Strategy &s, std::int64_t shots_per_pair, std::uint64_t seed);

/// Relative frequencies. The result carries estimated = true; no-signaling
/// holds only up to sampling noise. Throws EmptyRecord for zero shots.
Behavior estimate(const CountRecord &c);

// Line-oriented text format: header lines starting with '#' carry the shot
// count and scenario shape, then one "<alice_setting> <bob_setting>
// <alice_outcome> <bob_outcome> <count>" line per cell.
std::string serialize_counts(const CountRecord &c);
CountRecord parse_counts(std::istream &in);
CountRecord parse_counts_text(const std::string &text);

/// n . (Z, X, Y) for a unit (or sub-unit) Bloch direction.
qlin::Operator qubit_observable(double nz, double nx, double ny);

} // namespace ebicert::scenario
