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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ebicert/adversary.hpp"
#include "ebicert/certifier.hpp"
#include "ebicert/ebi.hpp"
#include "ebicert/optimizer.hpp"
#include "ebicert/scenario.hpp"

namespace py = pybind11;
using namespace ebicert;
using qlin::cplx;
using qlin::Ket;
using qlin::Operator;

namespace {

Operator operator_from_rows(const std::vector<std::vector<cplx>> &rows) {
    const int dim = static_cast<int>(rows.size());
    std::vector<cplx> entries;
    entries.reserve(static_cast<size_t>(dim) * dim);
    for (const auto &row : rows) {
        if (static_cast<int>(row.size()) != dim) {
            throw qlin::DimensionMismatch("Operator rows must form a square matrix");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return Operator(dim, std::move(entries));
}

std::vector<std::vector<cplx>> operator_rows(const Operator &m) {
    std::vector<std::vector<cplx>> rows(m.dim(), std::vector<cplx>(m.dim()));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) rows[i][j] = m(i, j);
    return rows;
}

adversary::AttackFamily family_from_name(const std::string &name) {
    if (name == "werner") return adversary::AttackFamily::WernerVisibility;
    if (name == "classical-four-lambda") return adversary::AttackFamily::ClassicalFourLambda;
    if (name == "partial-correlation") return adversary::AttackFamily::PartialCorrelation;
    throw py::value_error("unknown attack family '" + name + "'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bell-strategy simulation and device-independent randomness "
              "certification for the elegant Bell inequality";

    m.attr("QUANTUM_MAX") = ebi::kQuantumMax;
    m.attr("CLASSICAL_BOUND") = ebi::kClassicalBound;

    py::class_<Operator>(m, "Operator")
        .def(py::init(&operator_from_rows), py::arg("rows"))
        .def_property_readonly("dim", &Operator::dim)
        .def("to_list", &operator_rows)
        .def("trace", [](const Operator &op) { return op.trace(); })
        .def("is_hermitian", &Operator::is_hermitian, py::arg("tol") = qlin::kAlgebraTol)
        .def("__repr__", [](const Operator &op) {
            return "<Operator dim=" + std::to_string(op.dim()) + ">";
        });

    py::class_<Ket>(m, "Ket")
        .def(py::init<std::vector<cplx>>(), py::arg("amplitudes"))
        .def_property_readonly("dim", &Ket::dim)
        .def("to_list",
             [](const Ket &k) {
                 std::vector<cplx> amps(static_cast<size_t>(k.dim()));
                 for (int i = 0; i < k.dim(); ++i) amps[static_cast<size_t>(i)] = k[i];
                 return amps;
             })
        .def("norm", &Ket::norm);

    py::class_<qlin::BlochCoeffs>(m, "BlochCoeffs")
        .def(py::init([](double c0, double c1, double c2, double c3) {
                 return qlin::BlochCoeffs{c0, c1, c2, c3};
             }),
             py::arg("c0"), py::arg("c1"), py::arg("c2"), py::arg("c3"))
        .def_readwrite("c0", &qlin::BlochCoeffs::c0)
        .def_readwrite("c1", &qlin::BlochCoeffs::c1)
        .def_readwrite("c2", &qlin::BlochCoeffs::c2)
        .def_readwrite("c3", &qlin::BlochCoeffs::c3)
        .def("__repr__", [](const qlin::BlochCoeffs &c) {
            return "BlochCoeffs(" + std::to_string(c.c0) + ", " + std::to_string(c.c1) + ", " +
                   std::to_string(c.c2) + ", " + std::to_string(c.c3) + ")";
        });

    m.def("tensor", py::overload_cast<const Operator &, const Operator &>(&qlin::tensor));
    m.def("tensor_ket", py::overload_cast<const Ket &, const Ket &>(&qlin::tensor));
    m.def("from_bloch", &qlin::from_bloch);
    m.def("to_bloch", &qlin::to_bloch, py::arg("operator"), py::arg("herm_tol") = qlin::kAlgebraTol);
    m.def("pauli_id", &qlin::pauli_id, py::return_value_policy::copy);
    m.def("pauli_z", &qlin::pauli_z, py::return_value_policy::copy);
    m.def("pauli_x", &qlin::pauli_x, py::return_value_policy::copy);
    m.def("pauli_y", &qlin::pauli_y, py::return_value_policy::copy);
    m.def(
        "eig_hermitian",
        [](const Operator &op, double tol) {
            const auto eig = qlin::eig_hermitian(op, tol);
            return py::make_tuple(eig.eigenvalues, eig.eigenvectors);
        },
        py::arg("operator"), py::arg("herm_tol") = qlin::kAlgebraTol,
        "Eigenvalues (descending) and orthonormal eigenvectors");

    py::class_<scenario::Strategy>(m, "Strategy")
        .def(py::init<>())
        .def_readwrite("dim_a", &scenario::Strategy::dim_a)
        .def_readwrite("dim_b", &scenario::Strategy::dim_b)
        .def_readwrite("state", &scenario::Strategy::state)
        .def_readwrite("alice_obs", &scenario::Strategy::alice_obs)
        .def_readwrite("alice_povm", &scenario::Strategy::alice_povm)
        .def_readwrite("bob_obs", &scenario::Strategy::bob_obs);

    py::class_<scenario::Behavior>(m, "Behavior")
        .def_readonly("povm_marginal", &scenario::Behavior::povm_marginal)
        .def_readonly("estimated", &scenario::Behavior::estimated)
        .def("correlator", &scenario::correlator, py::arg("k"), py::arg("l"))
        .def("cond_expect", &scenario::cond_expect, py::arg("a"), py::arg("l"))
        .def("joint_dichotomic",
             [](const scenario::Behavior &b, int k, int l) {
                 if (k < 1 || k > 3 || l < 1 || l > 4) throw py::index_error("setting pair");
                 return b.joint_dichotomic[k - 1][l - 1];
             })
        .def("joint_povm", [](const scenario::Behavior &b, int l) {
            if (l < 1 || l > 4) throw py::index_error("bob setting");
            return b.joint_povm[l - 1];
        });

    py::class_<scenario::CountRecord>(m, "CountRecord")
        .def_readonly("shots_per_pair", &scenario::CountRecord::shots_per_pair);

    m.def("validate_strategy", &scenario::validate_strategy, py::arg("strategy"),
          py::arg("tol") = qlin::kSpectralTol);
    m.def("behavior_of",
          py::overload_cast<const scenario::Strategy &>(&scenario::behavior_of));
    m.def("behavior_of_density",
          py::overload_cast<const scenario::Strategy &, const Operator &>(&scenario::behavior_of),
          py::arg("strategy"), py::arg("rho"));
    m.def("mix", &scenario::mix, py::arg("lhs"), py::arg("rhs"), py::arg("w"));
    m.def("sample", &scenario::sample, py::arg("strategy"), py::arg("shots_per_pair"),
          py::arg("seed"));
    m.def("estimate", &scenario::estimate);
    m.def("serialize_counts", &scenario::serialize_counts);
    m.def("parse_counts", &scenario::parse_counts_text, py::arg("text"));

    m.def("ebi_value", &ebi::ebi_value);
    m.def("reference_strategy", &ebi::reference_strategy);
    m.def("werner_behavior", &ebi::werner_behavior, py::arg("visibility"));
    m.def("uniform_noise_behavior", &ebi::uniform_noise_behavior);

    py::class_<ebi::DeterministicAssignment>(m, "DeterministicAssignment")
        .def(py::init<>())
        .def_readwrite("alice", &ebi::DeterministicAssignment::alice)
        .def_readwrite("bob", &ebi::DeterministicAssignment::bob);
    py::class_<ebi::BruteforceResult>(m, "BruteforceResult")
        .def_readonly("value", &ebi::BruteforceResult::value)
        .def_readonly("argmax", &ebi::BruteforceResult::argmax);
    m.def("classical_max_bruteforce", &ebi::classical_max_bruteforce);
    m.def("deterministic_strategy", &ebi::deterministic_strategy);
    m.def("deterministic_value", &ebi::deterministic_value);

    py::class_<certifier::QbitPovm>(m, "QbitPovm")
        .def_readonly("gammas", &certifier::QbitPovm::gammas)
        .def_readonly("operators", &certifier::QbitPovm::operators);

    py::class_<certifier::ExtremalityTolerances>(m, "ExtremalityTolerances")
        .def(py::init<>())
        .def_readwrite("trace_min", &certifier::ExtremalityTolerances::trace_min)
        .def_readwrite("det_zero", &certifier::ExtremalityTolerances::det_zero)
        .def_readwrite("rank_min", &certifier::ExtremalityTolerances::rank_min)
        .def_readwrite("completeness_tol", &certifier::ExtremalityTolerances::completeness_tol);

    py::class_<certifier::OutcomeChecks>(m, "OutcomeChecks")
        .def_readonly("trace_value", &certifier::OutcomeChecks::trace_value)
        .def_readonly("trace_ok", &certifier::OutcomeChecks::trace_ok)
        .def_readonly("det_value", &certifier::OutcomeChecks::det_value)
        .def_readonly("det_identity_residual", &certifier::OutcomeChecks::det_identity_residual)
        .def_readonly("det_ok", &certifier::OutcomeChecks::det_ok)
        .def_readonly("min_eigenvalue", &certifier::OutcomeChecks::min_eigenvalue)
        .def_readonly("positive_ok", &certifier::OutcomeChecks::positive_ok);

    py::class_<certifier::ExtremalityReport>(m, "ExtremalityReport")
        .def_readonly("outcomes", &certifier::ExtremalityReport::outcomes)
        .def_readonly("rank_singular_values", &certifier::ExtremalityReport::rank_singular_values)
        .def_readonly("rank_ok", &certifier::ExtremalityReport::rank_ok)
        .def_readonly("completeness_residual", &certifier::ExtremalityReport::completeness_residual)
        .def_readonly("complete_ok", &certifier::ExtremalityReport::complete_ok)
        .def_readonly("extremal", &certifier::ExtremalityReport::extremal);

    py::class_<certifier::CertTolerances>(m, "CertTolerances")
        .def(py::init<>())
        .def_static("exact", &certifier::CertTolerances::exact)
        .def_static("for_shots", &certifier::CertTolerances::for_shots, py::arg("shots_per_pair"))
        .def_readwrite("s_tol", &certifier::CertTolerances::s_tol)
        .def_readwrite("uniform_tol", &certifier::CertTolerances::uniform_tol)
        .def_readwrite("extremality", &certifier::CertTolerances::extremality);

    py::class_<certifier::CertificationVerdict>(m, "CertificationVerdict")
        .def_readonly("test1_pass", &certifier::CertificationVerdict::test1_pass)
        .def_readonly("s_value", &certifier::CertificationVerdict::s_value)
        .def_readonly("s_tol", &certifier::CertificationVerdict::s_tol)
        .def_readonly("test2_pass", &certifier::CertificationVerdict::test2_pass)
        .def_readonly("uniformity_residual", &certifier::CertificationVerdict::uniformity_residual)
        .def_readonly("uniform_tol", &certifier::CertificationVerdict::uniform_tol)
        .def_readonly("extremality", &certifier::CertificationVerdict::extremality)
        .def_readonly("certified_bits", &certifier::CertificationVerdict::certified_bits)
        .def_readonly("guessing_bound", &certifier::CertificationVerdict::guessing_bound);

    m.def("reconstruct_q", &certifier::reconstruct_q);
    m.def("check_extremality", &certifier::check_extremality, py::arg("q"), py::arg("behavior"),
          py::arg("tol") = certifier::ExtremalityTolerances{});
    m.def("certify", &certifier::certify, py::arg("behavior"),
          py::arg("tol") = certifier::CertTolerances::exact());

    py::class_<adversary::TripartiteModel>(m, "TripartiteModel")
        .def(py::init<>())
        .def_readwrite("dim_a", &adversary::TripartiteModel::dim_a)
        .def_readwrite("dim_b", &adversary::TripartiteModel::dim_b)
        .def_readwrite("dim_e", &adversary::TripartiteModel::dim_e)
        .def_readwrite("state", &adversary::TripartiteModel::state)
        .def_readwrite("alice_obs", &adversary::TripartiteModel::alice_obs)
        .def_readwrite("alice_povm", &adversary::TripartiteModel::alice_povm)
        .def_readwrite("bob_obs", &adversary::TripartiteModel::bob_obs)
        .def_readwrite("eve_povm", &adversary::TripartiteModel::eve_povm);

    py::class_<adversary::EveOptimum>(m, "EveOptimum")
        .def_readonly("povm", &adversary::EveOptimum::povm)
        .def_readonly("value", &adversary::EveOptimum::value)
        .def_readonly("upper_bound", &adversary::EveOptimum::upper_bound)
        .def_readonly("gap", &adversary::EveOptimum::gap)
        .def_readonly("exact", &adversary::EveOptimum::exact)
        .def_readonly("iterations", &adversary::EveOptimum::iterations);

    py::class_<adversary::AttackBranch>(m, "AttackBranch")
        .def(py::init<>())
        .def_readwrite("weight", &adversary::AttackBranch::weight)
        .def_readwrite("strategy", &adversary::AttackBranch::strategy)
        .def_readwrite("eve_guess", &adversary::AttackBranch::eve_guess);

    py::class_<adversary::ClassicalAttack>(m, "ClassicalAttack")
        .def(py::init<>())
        .def_readwrite("branches", &adversary::ClassicalAttack::branches);

    py::class_<adversary::ClassicalGuess>(m, "ClassicalGuess")
        .def_readonly("guessing_prob", &adversary::ClassicalGuess::guessing_prob)
        .def_readonly("behavior", &adversary::ClassicalGuess::behavior);

    py::class_<adversary::SweepRow>(m, "SweepRow")
        .def_readonly("family", &adversary::SweepRow::family)
        .def_readonly("parameter", &adversary::SweepRow::parameter)
        .def_readonly("s_value", &adversary::SweepRow::s_value)
        .def_readonly("uniformity_residual", &adversary::SweepRow::uniformity_residual)
        .def_readonly("extremal", &adversary::SweepRow::extremal)
        .def_readonly("test1", &adversary::SweepRow::test1)
        .def_readonly("test2", &adversary::SweepRow::test2)
        .def_readonly("g_lower", &adversary::SweepRow::g_lower)
        .def_readonly("g_upper", &adversary::SweepRow::g_upper)
        .def_readonly("error", &adversary::SweepRow::error);

    m.def("guess_prob", &adversary::guess_prob);
    m.def("model_behavior", &adversary::model_behavior);
    m.def("eve_conditional_states", &adversary::eve_conditional_states);
    m.def("optimal_eve_measurement", &adversary::optimal_eve_measurement, py::arg("conditionals"),
          py::arg("max_iterations") = 500, py::arg("objective_tol") = 1e-10);
    m.def("classical_guess_prob", &adversary::classical_guess_prob);
    m.def("werner_model", &adversary::werner_model, py::arg("visibility"));
    m.def("classical_four_lambda_attack", &adversary::classical_four_lambda_attack,
          py::arg("knowledge"));
    m.def("partial_correlation_model", &adversary::partial_correlation_model,
          py::arg("correlation"));
    m.def(
        "attack_sweep",
        [](const std::string &family, const std::vector<double> &grid,
           const certifier::CertTolerances &tol, int jobs) {
            return adversary::attack_sweep(family_from_name(family), grid, tol, jobs);
        },
        py::arg("family"), py::arg("grid"), py::arg("tol") = certifier::CertTolerances::exact(),
        py::arg("jobs") = 1);
    m.def("default_attack_sweep", &adversary::default_attack_sweep,
          py::arg("tol") = certifier::CertTolerances::exact(), py::arg("jobs") = 1);

    py::class_<optimizer::SeesawConfig>(m, "SeesawConfig")
        .def(py::init<>())
        .def_readwrite("max_rounds", &optimizer::SeesawConfig::max_rounds)
        .def_readwrite("convergence_eps", &optimizer::SeesawConfig::convergence_eps)
        .def_readwrite("seed", &optimizer::SeesawConfig::seed)
        .def_readwrite("local_dim", &optimizer::SeesawConfig::local_dim);

    py::class_<optimizer::SeesawResult>(m, "SeesawResult")
        .def_readonly("s_value", &optimizer::SeesawResult::s_value)
        .def_readonly("strategy", &optimizer::SeesawResult::strategy)
        .def_readonly("round_values", &optimizer::SeesawResult::round_values)
        .def_readonly("converged", &optimizer::SeesawResult::converged);

    m.def("bell_operator", &optimizer::bell_operator, py::arg("alice_obs"), py::arg("bob_obs"));
    m.def(
        "seesaw_maximize",
        [](std::uint64_t seed, int max_rounds, double convergence_eps, int local_dim) {
            optimizer::SeesawConfig cfg;
            cfg.seed = seed;
            cfg.max_rounds = max_rounds;
            cfg.convergence_eps = convergence_eps;
            cfg.local_dim = local_dim;
            return optimizer::seesaw_maximize(cfg);
        },
        py::arg("seed") = 0, py::arg("max_rounds") = 10000, py::arg("convergence_eps") = 1e-12,
        py::arg("local_dim") = 2);
    m.def("seesaw_from", &optimizer::seesaw_from, py::arg("start"), py::arg("config"));
}
