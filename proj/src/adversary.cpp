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

#include "ebicert/adversary.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "ebicert/ebi.hpp"

namespace ebicert::adversary {

using qlin::cplx;
using qlin::Ket;
using qlin::Operator;
using scenario::Behavior;
using scenario::Strategy;

namespace {

void check_povm(const std::array<Operator, 4> &povm, int dim, const std::string &name, double tol) {
    Operator sum = Operator::zero(dim);
    for (int i = 0; i < 4; ++i) {
        const auto &e = povm[i];
        const std::string en = name + "[" + std::to_string(i + 1) + "]";
        if (e.dim() != dim) throw InvalidModel(en + ": wrong dimension");
        if (e.hermiticity_defect() > tol) throw InvalidModel(en + ": not Hermitian");
        const auto eig = qlin::eig_hermitian(e, 1e-8);
        if (eig.eigenvalues.back() < -tol) {
            throw InvalidModel(en + ": negative eigenvalue " + std::to_string(eig.eigenvalues.back()));
        }
        sum += e;
    }
    const double defect = (sum - Operator::identity(dim)).max_abs();
    if (defect > tol) throw InvalidModel(name + ": completeness defect " + std::to_string(defect));
}

Strategy ab_part(const TripartiteModel &m) {
    Strategy s;
    s.dim_a = m.dim_a;
    s.dim_b = m.dim_b;
    s.state = Ket::basis(m.dim_a * m.dim_b, 0); // placeholder; evaluation uses rho
    s.alice_obs = m.alice_obs;
    s.alice_povm = m.alice_povm;
    s.bob_obs = m.bob_obs;
    return s;
}

struct SpectralSplit {
    Operator pinv_sqrt;
    Operator support;
};

SpectralSplit pseudo_inverse_sqrt(const Operator &m) {
    const auto eig = qlin::eig_hermitian(m, 1e-8);
    const double top = eig.eigenvalues.empty() ? 0.0 : std::max(0.0, eig.eigenvalues.front());
    const double thresh = 1e-13 * std::max(1.0, top);
    SpectralSplit out{Operator::zero(m.dim()), Operator::zero(m.dim())};
    for (size_t i = 0; i < eig.eigenvalues.size(); ++i) {
        if (eig.eigenvalues[i] > thresh) {
            const Operator proj = qlin::outer(eig.eigenvectors[i], eig.eigenvectors[i]);
            out.pinv_sqrt += (1.0 / std::sqrt(eig.eigenvalues[i])) * proj;
            out.support += proj;
        }
    }
    return out;
}

Operator positive_part(const Operator &m) {
    const auto eig = qlin::eig_hermitian(m, 1e-8);
    Operator out = Operator::zero(m.dim());
    for (size_t i = 0; i < eig.eigenvalues.size(); ++i) {
        if (eig.eigenvalues[i] > 0.0)
            out += eig.eigenvalues[i] * qlin::outer(eig.eigenvectors[i], eig.eigenvectors[i]);
    }
    return out;
}

double max_eigenvalue(const Operator &m) {
    return qlin::eig_hermitian(m, 1e-8).eigenvalues.front();
}

double real_trace_product(const Operator &a, const Operator &b) {
    cplx t = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) t += a(i, j) * b(j, i);
    return t.real();
}

} // namespace

void validate_model(const TripartiteModel &m, double tol) {
    const int d = m.dim_a * m.dim_b * m.dim_e;
    if (m.state.dim() != d) {
        throw InvalidModel("state: dimension " + std::to_string(m.state.dim()) + ", expected " +
                           std::to_string(d));
    }
    if (std::abs(m.state.norm() - 1.0) > tol) {
        throw InvalidModel("state: norm " + std::to_string(m.state.norm()));
    }
    try {
        Strategy s = ab_part(m);
        scenario::validate_strategy(s, tol);
    } catch (const scenario::InvalidStrategy &e) {
        throw InvalidModel(e.what());
    }
    check_povm(m.eve_povm, m.dim_e, "eve_povm", tol);
}

double guess_prob(const TripartiteModel &m) {
    validate_model(m);
    const Operator id_b = Operator::identity(m.dim_b);
    double g = 0.0;
    for (int a = 0; a < 4; ++a) {
        const Operator joint = qlin::tensor(qlin::tensor(m.alice_povm[a], id_b), m.eve_povm[a]);
        g += qlin::expval(m.state, joint).real();
    }
    return g;
}

Behavior model_behavior(const TripartiteModel &m) {
    validate_model(m);
    const Operator rho = qlin::outer(m.state, m.state);
    const Operator rho_ab =
        qlin::partial_trace(rho, qlin::Subsystem::A, m.dim_a * m.dim_b, m.dim_e);
    return scenario::behavior_of(ab_part(m), rho_ab);
}

std::array<Operator, 4> eve_conditional_states(const TripartiteModel &m) {
    const Operator rho = qlin::outer(m.state, m.state);
    const Operator id_be = Operator::identity(m.dim_b * m.dim_e);
    std::array<Operator, 4> out;
    for (int a = 0; a < 4; ++a) {
        const Operator big = qlin::tensor(m.alice_povm[a], id_be) * rho;
        out[a] = qlin::partial_trace(big, qlin::Subsystem::B, m.dim_a * m.dim_b, m.dim_e);
    }
    return out;
}

EveOptimum optimal_eve_measurement(const std::array<Operator, 4> &conditionals,
                                   int max_iterations, double objective_tol) {
    const int d = conditionals[0].dim();
    double total = 0.0;
    for (const auto &sigma : conditionals) {
        if (sigma.dim() != d) throw InvalidConditionals("conditional states differ in dimension");
        if (sigma.hermiticity_defect() > 1e-8) throw InvalidConditionals("conditional state not Hermitian");
        const auto eig = qlin::eig_hermitian(sigma, 1e-8);
        if (eig.eigenvalues.back() < -1e-9) {
            throw InvalidConditionals("conditional state has negative eigenvalue " +
                                      std::to_string(eig.eigenvalues.back()));
        }
        total += sigma.trace().real();
    }
    if (std::abs(total - 1.0) > 1e-8) {
        throw InvalidConditionals("conditional states have total trace " + std::to_string(total));
    }

    const Operator id = Operator::identity(d);
    auto complete = [&](std::array<Operator, 4> &f, const Operator &support) {
        const Operator rest = 0.25 * (id - support);
        for (auto &fa : f) fa += rest;
    };
    auto objective = [&](const std::array<Operator, 4> &f) {
        double v = 0.0;
        for (int a = 0; a < 4; ++a) v += real_trace_product(f[a], conditionals[a]);
        return v;
    };

    // Pretty-good-measurement start.
    Operator rho = Operator::zero(d);
    for (const auto &sigma : conditionals) rho += sigma;
    const SpectralSplit rho_split = pseudo_inverse_sqrt(rho);
    std::array<Operator, 4> f;
    for (int a = 0; a < 4; ++a) f[a] = rho_split.pinv_sqrt * conditionals[a] * rho_split.pinv_sqrt;
    complete(f, rho_split.support);

    EveOptimum best;
    best.povm = f;
    best.value = objective(f);

    // Fixed-point iteration on the weighted conditional states:
    // F_a <- L^{-1/2} sigma_a F_a sigma_a L^{-1/2}, L = sum_b sigma_b F_b sigma_b.
    double prev = best.value;
    int it = 0;
    for (; it < max_iterations; ++it) {
        Operator lambda = Operator::zero(d);
        std::array<Operator, 4> weighted;
        for (int a = 0; a < 4; ++a) {
            weighted[a] = conditionals[a] * f[a] * conditionals[a];
            lambda += weighted[a];
        }
        const SpectralSplit ls = pseudo_inverse_sqrt(lambda);
        std::array<Operator, 4> next;
        for (int a = 0; a < 4; ++a) next[a] = ls.pinv_sqrt * weighted[a] * ls.pinv_sqrt;
        complete(next, ls.support);
        const double value = objective(next);
        f = next;
        if (value > best.value) {
            best.value = value;
            best.povm = next;
        }
        if (std::abs(value - prev) < objective_tol) {
            ++it;
            break;
        }
        prev = value;
    }
    best.iterations = it;

    // Dual certificate: lift Y above every sigma_a by adding positive parts,
    // then close any remaining defect with an exact uniform shift.
    Operator y = Operator::zero(d);
    for (int a = 0; a < 4; ++a) {
        const Operator m = best.povm[a] * conditionals[a];
        y += 0.5 * (m + m.adjoint());
    }
    for (int pass = 0; pass < 50; ++pass) {
        bool lifted = false;
        for (int a = 0; a < 4; ++a) {
            const Operator defect = positive_part(conditionals[a] - y);
            if (defect.max_abs() > 1e-14) {
                y += defect;
                lifted = true;
            }
        }
        if (!lifted) break;
    }
    double shift = 0.0;
    for (int a = 0; a < 4; ++a) shift = std::max(shift, max_eigenvalue(conditionals[a] - y));
    y += (std::max(shift, 0.0) + 1e-12) * id;

    best.upper_bound = y.trace().real();
    best.gap = best.upper_bound - best.value;
    best.exact = best.gap <= 1e-6;
    return best;
}

ClassicalGuess classical_guess_prob(const ClassicalAttack &attack) {
    if (attack.branches.empty()) throw InvalidModel("classical attack has no branches");
    double wsum = 0.0;
    for (const auto &br : attack.branches) {
        if (br.weight < -1e-12) throw InvalidModel("classical attack has a negative weight");
        if (br.eve_guess < 1 || br.eve_guess > 4) throw InvalidModel("eve_guess out of range");
        wsum += br.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-10) {
        throw InvalidModel("classical attack weights sum to " + std::to_string(wsum));
    }

    auto add_scaled = [](Behavior &acc, const Behavior &b, double w) {
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 4; ++l)
                for (int a = 0; a < 2; ++a)
                    for (int bo = 0; bo < 2; ++bo)
                        acc.joint_dichotomic[k][l][a][bo] += w * b.joint_dichotomic[k][l][a][bo];
        for (int l = 0; l < 4; ++l)
            for (int a = 0; a < 4; ++a)
                for (int bo = 0; bo < 2; ++bo) acc.joint_povm[l][a][bo] += w * b.joint_povm[l][a][bo];
        for (int a = 0; a < 4; ++a) acc.povm_marginal[a] += w * b.povm_marginal[a];
    };

    ClassicalGuess out;
    for (const auto &br : attack.branches) {
        const Behavior b = scenario::behavior_of(br.strategy);
        out.guessing_prob += br.weight * b.povm_marginal[br.eve_guess - 1];
        add_scaled(out.behavior, b, br.weight);
    }
    return out;
}

TripartiteModel werner_model(double visibility) {
    if (visibility < 0.0 || visibility > 1.0) {
        throw InvalidModel("werner visibility must lie in [0, 1]");
    }
    const Strategy ref = ebi::reference_strategy();
    const double r2 = 1.0 / std::sqrt(2.0);
    Ket phi_p(4), phi_m(4), psi_p(4), psi_m(4);
    phi_p[0] = r2;
    phi_p[3] = r2;
    phi_m[0] = r2;
    phi_m[3] = -r2;
    psi_p[1] = r2;
    psi_p[2] = r2;
    psi_m[1] = r2;
    psi_m[2] = -r2;
    const std::array<Ket, 4> bell{phi_p, phi_m, psi_p, psi_m};
    const std::array<double, 4> weights{visibility + (1.0 - visibility) / 4.0,
                                        (1.0 - visibility) / 4.0, (1.0 - visibility) / 4.0,
                                        (1.0 - visibility) / 4.0};

    TripartiteModel m;
    m.dim_a = 2;
    m.dim_b = 2;
    m.dim_e = 4;
    Ket state(16);
    for (int i = 0; i < 4; ++i) {
        const Ket term = qlin::tensor(bell[i], Ket::basis(4, i));
        for (int j = 0; j < 16; ++j) state[j] += std::sqrt(weights[i]) * term[j];
    }
    m.state = state;
    m.alice_obs = ref.alice_obs;
    m.alice_povm = ref.alice_povm;
    m.bob_obs = ref.bob_obs;
    const Operator quarter = 0.25 * Operator::identity(4);
    m.eve_povm = {quarter, quarter, quarter, quarter};
    return m;
}

ClassicalAttack classical_four_lambda_attack(double knowledge) {
    if (knowledge < 0.0 || knowledge > 1.0) {
        throw InvalidModel("knowledge must lie in [0, 1]");
    }
    const auto argmax = ebi::classical_max_bruteforce().argmax;
    ClassicalAttack attack;
    for (int outcome = 1; outcome <= 4; ++outcome) {
        Strategy s = ebi::deterministic_strategy(argmax);
        s.alice_povm = {Operator::zero(2), Operator::zero(2), Operator::zero(2), Operator::zero(2)};
        s.alice_povm[outcome - 1] = Operator::identity(2);
        attack.branches.push_back({knowledge / 4.0, s, outcome});
        attack.branches.push_back({(1.0 - knowledge) / 4.0, s, 1});
    }
    return attack;
}

TripartiteModel partial_correlation_model(double correlation) {
    if (correlation < 0.0 || correlation > 1.0) {
        throw InvalidModel("correlation must lie in [0, 1]");
    }
    const Strategy ref = ebi::reference_strategy();
    TripartiteModel m;
    m.dim_a = 2;
    m.dim_b = 2;
    m.dim_e = 2;

    const double overlap = 1.0 - correlation;
    Ket e0(2), e1(2);
    e0[0] = 1.0;
    e1[0] = overlap;
    e1[1] = std::sqrt(std::max(0.0, 1.0 - overlap * overlap));

    Ket state(8);
    const double r2 = 1.0 / std::sqrt(2.0);
    const Ket term0 = qlin::tensor(qlin::tensor(Ket::basis(2, 0), Ket::basis(2, 0)), e0);
    const Ket term1 = qlin::tensor(qlin::tensor(Ket::basis(2, 1), Ket::basis(2, 1)), e1);
    for (int j = 0; j < 8; ++j) state[j] = r2 * (term0[j] + term1[j]);
    m.state = state;
    m.alice_obs = ref.alice_obs;
    m.alice_povm = ref.alice_povm;
    m.bob_obs = ref.bob_obs;
    const Operator quarter = 0.25 * Operator::identity(2);
    m.eve_povm = {quarter, quarter, quarter, quarter};
    return m;
}

std::string family_name(AttackFamily f) {
    switch (f) {
    case AttackFamily::WernerVisibility: return "werner";
    case AttackFamily::ClassicalFourLambda: return "classical-four-lambda";
    case AttackFamily::PartialCorrelation: return "partial-correlation";
    }
    return "unknown";
}

namespace {

SweepRow sweep_one(AttackFamily family, double parameter, const certifier::CertTolerances &tol) {
    SweepRow row;
    row.family = family_name(family);
    row.parameter = parameter;
    try {
        Behavior behavior;
        if (family == AttackFamily::ClassicalFourLambda) {
            const ClassicalGuess cg = classical_guess_prob(classical_four_lambda_attack(parameter));
            behavior = cg.behavior;
            row.g_lower = cg.guessing_prob;
            row.g_upper = cg.guessing_prob;
        } else {
            TripartiteModel model = family == AttackFamily::WernerVisibility
                                        ? werner_model(parameter)
                                        : partial_correlation_model(parameter);
            behavior = model_behavior(model);
            const EveOptimum opt = optimal_eve_measurement(eve_conditional_states(model));
            model.eve_povm = opt.povm;
            const double direct = guess_prob(model);
            row.g_lower = std::max(opt.value, direct);
            row.g_upper = opt.upper_bound;
        }
        const certifier::CertificationVerdict v = certifier::certify(behavior, tol);
        row.s_value = v.s_value;
        row.uniformity_residual = v.uniformity_residual;
        row.extremal = v.extremality.extremal;
        row.test1 = v.test1_pass;
        row.test2 = v.test2_pass;
    } catch (const std::exception &e) {
        row.error = e.what();
    }
    return row;
}

} // namespace

std::vector<SweepRow> attack_sweep(AttackFamily family, const std::vector<double> &grid,
                                   const certifier::CertTolerances &tol, int jobs) {
    std::vector<SweepRow> rows(grid.size());
    if (jobs <= 1 || grid.size() <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) rows[i] = sweep_one(family, grid[i], tol);
        return rows;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
            rows[i] = sweep_one(family, grid[i], tol);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(jobs, static_cast<int>(grid.size()));
    pool.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
    return rows;
}

std::vector<SweepRow> default_attack_sweep(const certifier::CertTolerances &tol, int jobs) {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    std::vector<SweepRow> rows;
    for (AttackFamily family : {AttackFamily::WernerVisibility, AttackFamily::ClassicalFourLambda,
                                AttackFamily::PartialCorrelation}) {
        auto part = attack_sweep(family, grid, tol, jobs);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

} // namespace ebicert::adversary
