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
 * Explicit adversary models. Eve holds a purifying system and a four-outcome
 * measurement guessing Alice's POVM outcome. The module evaluates her
 * guessing probability, optimizes her measurement with a certified upper
 * bound, and sweeps built-in attack families to exhibit the certification
 * theorem numerically: whenever both tests pass, no attack beats 1/4.
 */

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ebicert/certifier.hpp"
#include "ebicert/scenario.hpp"

namespace ebicert::adversary {

struct InvalidModel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidConditionals : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Tripartite pure-state model. Alice and Bob measure as in a Strategy; Eve
/// measures a four-outcome POVM on her factor, guessing outcome a when she
/// sees a.
struct TripartiteModel {
    int dim_a = 2;
    int dim_b = 2;
    int dim_e = 2;
    qlin::Ket state; // on dim_a * dim_b * dim_e
    std::array<qlin::Operator, 3> alice_obs;
    std::array<qlin::Operator, 4> alice_povm;
    std::array<qlin::Operator, 4> bob_obs;
    std::array<qlin::Operator, 4> eve_povm;
};

void validate_model(const TripartiteModel &m, double tol = qlin::kSpectralTol);

/// P(Eve guesses correctly) = sum_a <psi| A_{a|4} x 1_B x F_a |psi>.
double guess_prob(const TripartiteModel &m);

/// The Alice-Bob marginal behavior of the model (what the certifier sees).
scenario::Behavior model_behavior(const TripartiteModel &m);

/// Eve's unnormalized post-measurement ensemble: sigma_a = tr_AB[(A_{a|4} x
/// 1_B x 1_E) |psi><psi|]. These sum to her reduced state (trace one).
std::array<qlin::Operator, 4> eve_conditional_states(const TripartiteModel &m);

struct EveOptimum {
    std::array<qlin::Operator, 4> povm;
    double value = 0.0;       // sum_a tr(F_a sigma_a), a certified lower bound
    double upper_bound = 1.0; // tr Y for a verified Y >= sigma_a
    double gap = 1.0;
    bool exact = false;       // gap <= 1e-6
    int iterations = 0;
};

/// Maximizes sum_a tr(F_a sigma_a) over POVMs by fixed-point iteration, with
/// a dual feasible operator Y certifying an upper bound. Throws
/// InvalidConditionals for non-positive or badly normalized inputs.
EveOptimum optimal_eve_measurement(const std::array<qlin::Operator, 4> &conditionals,
                                   int max_iterations = 500, double objective_tol = 1e-10);

/// Convex classical attack: a hidden variable selects a strategy and a
/// deterministic guess in 1..4.
struct AttackBranch {
    double weight = 0.0;
    scenario::Strategy strategy;
    int eve_guess = 1;
};

struct ClassicalAttack {
    std::vector<AttackBranch> branches;
};

struct ClassicalGuess {
    double guessing_prob = 0.0;
    scenario::Behavior behavior; // the lambda-averaged observable behavior
};

ClassicalGuess classical_guess_prob(const ClassicalAttack &attack);

// Built-in attack families.

/// Reference state mixed with white noise at visibility v, Eve holding the
/// purification of the Werner state (dim 4).
TripartiteModel werner_model(double visibility);

/// Four hidden variables fixing Alice's POVM outcome (uniform weights, so the
/// output looks uniform), dichotomic parts pinned to a classical maximizer of
/// the Bell functional. With probability `knowledge` Eve's guess tracks the
/// hidden variable, otherwise she guesses 1.
ClassicalAttack classical_four_lambda_attack(double knowledge);

/// Eve's qubit partially copies Alice's computational basis; overlap
/// <e0|e1> = 1 - correlation. At correlation 0 the model is the reference
/// strategy with a detached Eve.
TripartiteModel partial_correlation_model(double correlation);

enum class AttackFamily { WernerVisibility, ClassicalFourLambda, PartialCorrelation };

std::string family_name(AttackFamily f);

struct SweepRow {
    std::string family;
    double parameter = 0.0;
    double s_value = 0.0;
    double uniformity_residual = 0.0;
    bool extremal = false;
    bool test1 = false;
    bool test2 = false;
    double g_lower = 0.0;
    double g_upper = 1.0;
    std::string error; // nonempty when this row failed; other rows continue
};

std::vector<SweepRow> attack_sweep(AttackFamily family, const std::vector<double> &grid,
                                   const certifier::CertTolerances &tol = certifier::CertTolerances::exact(),
                                   int jobs = 1);

/// All three families on an 11-point grid each (33 rows).
std::vector<SweepRow> default_attack_sweep(const certifier::CertTolerances &tol = certifier::CertTolerances::exact(),
                                           int jobs = 1);

} // namespace ebicert::adversary
