# Copyright 2026 The ebicert authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
import os
import subprocess

import pytest

import ebicert


SQRT3 = math.sqrt(3.0)


def test_quantum_maximum():
    behavior = ebicert.behavior_of(ebicert.reference_strategy())
    assert abs(ebicert.ebi_value(behavior) - 4 * SQRT3) < 1e-9
    assert ebicert.QUANTUM_MAX == pytest.approx(4 * SQRT3)


def test_classical_bound():
    result = ebicert.classical_max_bruteforce()
    assert result.value == pytest.approx(6.0, abs=1e-12)
    assert ebicert.deterministic_value(result.argmax) == pytest.approx(6.0, abs=1e-12)


def test_reference_certifies_two_bits():
    verdict = ebicert.certify(ebicert.behavior_of(ebicert.reference_strategy()))
    assert verdict.test1_pass and verdict.test2_pass
    assert verdict.certified_bits == 2.0
    assert verdict.guessing_bound == 0.25
    assert verdict.extremality.extremal


def test_reconstruction_matches_reference_povm():
    strategy = ebicert.reference_strategy()
    q = ebicert.reconstruct_q(ebicert.behavior_of(strategy))
    for built, reference in zip(q.operators, strategy.alice_povm):
        for row_b, row_r in zip(built.to_list(), reference.to_list()):
            for x, y in zip(row_b, row_r):
                assert abs(x - y) < 1e-10


def test_werner_scaling_and_rejection():
    behavior = ebicert.werner_behavior(0.5)
    assert ebicert.ebi_value(behavior) == pytest.approx(2 * SQRT3, abs=1e-9)
    verdict = ebicert.certify(behavior)
    assert not verdict.test1_pass
    assert verdict.certified_bits == 0.0


def test_counts_round_trip():
    record = ebicert.sample(ebicert.reference_strategy(), 100000, 7)
    text = ebicert.serialize_counts(record)
    estimated = ebicert.estimate(ebicert.parse_counts(text))
    assert estimated.estimated
    assert abs(ebicert.ebi_value(estimated) - 4 * SQRT3) < 0.1


def test_guessing_probability_endpoints():
    model = ebicert.werner_model(1.0)
    assert ebicert.guess_prob(model) == pytest.approx(0.25, abs=1e-12)
    opt = ebicert.optimal_eve_measurement(ebicert.eve_conditional_states(model))
    assert opt.upper_bound <= 0.25 + 1e-9

    attack = ebicert.classical_four_lambda_attack(1.0)
    cg = ebicert.classical_guess_prob(attack)
    assert cg.guessing_prob == pytest.approx(1.0)
    assert not ebicert.certify(cg.behavior).test1_pass


def test_sweep_theorem_holds():
    rows = ebicert.attack_sweep("werner", [0.0, 0.5, 1.0])
    assert len(rows) == 3
    for row in rows:
        assert row.error == ""
        if row.test1 and row.test2:
            assert row.g_upper <= 0.25 + 1e-9


def test_seesaw_reaches_maximum():
    result = ebicert.seesaw_maximize(seed=5)
    assert result.converged
    assert result.s_value == pytest.approx(4 * SQRT3, abs=1e-9)
    assert result.round_values == sorted(result.round_values)


def test_cli_binary_certifies():
    cli = os.environ.get("EBICERT_CLI")
    if not cli:
        pytest.skip("EBICERT_CLI not set")
    proc = subprocess.run(
        [cli, "certify", "--source", "builtin-reference"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert "certified_bits: 2" in proc.stdout
    assert proc.returncode == 0
