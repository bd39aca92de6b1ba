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
 * The elegant Bell inequality: the 3x4 sign pattern, the Bell value of a
 * behavior, the classical bound by exhaustive search, and the reference
 * quantum strategy that attains the maximum violation.
 */

#pragma once

#include <array>
#include <cmath>

#include "ebicert/scenario.hpp"

namespace ebicert::ebi {

/// Sign of E_{k,l} in the Bell functional, rows k = 1..3, columns l = 1..4.
inline constexpr std::array<std::array<int, 4>, 3> kSigns{{
    {+1, +1, -1, -1},
    {+1, -1, +1, -1},
    {+1, -1, -1, +1},
}};

inline constexpr double kClassicalBound = 6.0;
/// Maximum quantum value.
inline const double kQuantumMax = 4.0 * std::sqrt(3.0);

/// S = sum_{k,l} sign(k,l) E_{k,l}.
double ebi_value(const scenario::Behavior &b);

/// Local deterministic +-1 assignment for both parties.
struct DeterministicAssignment {
    std::array<int, 3> alice{+1, +1, +1};
    std::array<int, 4> bob{+1, +1, +1, +1};
};

/// A Strategy realizing the assignment with degenerate observables +-identity
/// on a product state (Alice's POVM deterministically reports outcome 1).
scenario::Strategy deterministic_strategy(const DeterministicAssignment &assign);

/// Bell value of a deterministic assignment, evaluated through the same
/// behavior pipeline as quantum strategies.
double deterministic_value(const DeterministicAssignment &assign);

struct BruteforceResult {
    double value = 0.0;
    DeterministicAssignment argmax;
};

/// Enumerates all 2^3 * 2^4 = 128 deterministic assignments.
BruteforceResult classical_max_bruteforce();

/// The maximal-violation strategy: state (|00> + |11>)/sqrt(2), Alice
/// measures the Pauli triple Z, X, Y plus the SIC-tetrahedron POVM, and Bob
/// measures the four diagonal directions (+-Z +-X +-Y)/sqrt(3).
scenario::Strategy reference_strategy();

/// Reference behavior mixed with white noise at the given visibility:
/// rho(v) = v |phi><phi| + (1 - v) * identity/4, same measurements.
scenario::Behavior werner_behavior(double visibility);

/// Behavior with every joint outcome uniformly random (all correlators
/// vanish); equals werner_behavior(0).
scenario::Behavior uniform_noise_behavior();

} // namespace ebicert::ebi
