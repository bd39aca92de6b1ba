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

#include "ebicert/optimizer.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ebicert/certifier.hpp"
#include "ebicert/ebi.hpp"

namespace ebicert::optimizer {

using qlin::cplx;
using qlin::Ket;
using qlin::Operator;
using scenario::Strategy;

namespace {

void check_config(const SeesawConfig &cfg) {
    if (cfg.max_rounds < 1) throw std::invalid_argument("seesaw: max_rounds must be >= 1");
    if (!(cfg.convergence_eps > 0.0)) throw std::invalid_argument("seesaw: convergence_eps must be > 0");
    if (cfg.local_dim < 2) throw std::invalid_argument("seesaw: local_dim must be >= 2");
}

// Canonical phase: first significant amplitude made real positive.
Ket canonical(const Ket &v) {
    for (int i = 0; i < v.dim(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > 1e-12) {
            const cplx phase = std::conj(v[i]) / mag;
            Ket out(v.dim());
            for (int j = 0; j < v.dim(); ++j) out[j] = v[j] * phase;
            return out;
        }
    }
    return v;
}

bool lex_greater(const Ket &a, const Ket &b) {
    for (int i = 0; i < a.dim(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() > b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() > b[i].imag();
    }
    return false;
}

// Top eigenvector with a deterministic tie-break over a (near-)degenerate top
// eigenvalue: canonical phase, then lexicographically largest amplitudes.
Ket top_eigenvector(const Operator &m) {
    const auto eig = qlin::eig_hermitian(m, 1e-8);
    const double top = eig.eigenvalues.front();
    Ket best = canonical(eig.eigenvectors.front());
    for (size_t i = 1; i < eig.eigenvalues.size(); ++i) {
        if (top - eig.eigenvalues[i] > 1e-12) break;
        const Ket cand = canonical(eig.eigenvectors[i]);
        if (lex_greater(cand, best)) best = cand;
    }
    return best.normalized();
}

Operator random_observable(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Operator g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
    Operator h = 0.5 * (g + g.adjoint());
    // Traceless seeds give nondegenerate spectral signs; a +-identity start
    // locks a party into a classical fixed point.
    h -= (h.trace() / static_cast<double>(dim)) * Operator::identity(dim);
    return spectral_sign(h);
}

double bell_value(const Strategy &s) {
    return qlin::expval(s.state, bell_operator(s.alice_obs, s.bob_obs)).real();
}

// One full seesaw round: state, then Bob's observables, then Alice's.
void round_update(Strategy &s) {
    s.state = top_eigenvector(bell_operator(s.alice_obs, s.bob_obs));
    const Operator rho = qlin::outer(s.state, s.state);
    const Operator id_a = Operator::identity(s.dim_a);
    const Operator id_b = Operator::identity(s.dim_b);

    for (int l = 0; l < 4; ++l) {
        Operator d = Operator::zero(s.dim_a);
        for (int k = 0; k < 3; ++k)
            d += static_cast<cplx>(ebi::kSigns[k][l]) * s.alice_obs[k];
        const Operator w =
            qlin::partial_trace(qlin::tensor(d, id_b) * rho, qlin::Subsystem::B, s.dim_a, s.dim_b);
        s.bob_obs[l] = spectral_sign(w);
    }
    for (int k = 0; k < 3; ++k) {
        Operator c = Operator::zero(s.dim_b);
        for (int l = 0; l < 4; ++l)
            c += static_cast<cplx>(ebi::kSigns[k][l]) * s.bob_obs[l];
        const Operator v =
            qlin::partial_trace(qlin::tensor(id_a, c) * rho, qlin::Subsystem::A, s.dim_a, s.dim_b);
        s.alice_obs[k] = spectral_sign(v);
    }
}

// Rebuild the SIC tetrahedron in the frame of Alice's converged observables.
// The reference sign pattern and its Y-mirrored twin both produce a valid
// POVM; keep whichever reconstructs with the smaller rank-one residual.
void attach_povm(Strategy &s) {
    const std::array<qlin::Operator, 4> fallback = ebi::reference_strategy().alice_povm;
    if (s.dim_a != 2 || s.dim_b != 2) {
        s.alice_povm = {Operator::identity(s.dim_a), Operator::zero(s.dim_a),
                        Operator::zero(s.dim_a), Operator::zero(s.dim_a)};
        return;
    }

    double axes[3][3];
    for (int k = 0; k < 3; ++k) {
        const auto bl = qlin::to_bloch(s.alice_obs[k], 1e-8);
        axes[k][0] = bl.c1;
        axes[k][1] = bl.c2;
        axes[k][2] = bl.c3;
    }
    Operator gram(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            gram(i, j) = axes[i][0] * axes[j][0] + axes[i][1] * axes[j][1] + axes[i][2] * axes[j][2];
    const auto eig = qlin::eig_hermitian(gram, 1e-8);
    if (eig.eigenvalues.back() < 0.2) {
        s.alice_povm = fallback; // degenerate frame, e.g. a classical fixed point
        return;
    }
    // Loewdin orthonormalization: O = G^{-1/2} A.
    Operator gih(3);
    for (size_t i = 0; i < 3; ++i) {
        const Operator proj = qlin::outer(eig.eigenvectors[i], eig.eigenvectors[i]);
        gih += (1.0 / std::sqrt(eig.eigenvalues[i])) * proj;
    }
    double ortho[3][3];
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 3; ++c) {
            double v = 0.0;
            for (int j = 0; j < 3; ++j) v += gih(i, j).real() * axes[j][c];
            ortho[i][c] = v;
        }

    const int patterns[2][4][3] = {
        {{-1, -1, -1}, {-1, +1, +1}, {+1, -1, +1}, {+1, +1, -1}},
        {{-1, -1, +1}, {-1, +1, -1}, {+1, -1, -1}, {+1, +1, +1}},
    };
    const double r3 = std::sqrt(3.0);
    double best_residual = 1e300;
    std::array<Operator, 4> best = fallback;
    for (const auto &pattern : patterns) {
        std::array<Operator, 4> povm;
        for (int a = 0; a < 4; ++a) {
            double u[3] = {0.0, 0.0, 0.0};
            for (int k = 0; k < 3; ++k)
                for (int c = 0; c < 3; ++c) u[c] += pattern[a][k] * ortho[k][c] / r3;
            povm[a] = qlin::from_bloch({0.25, 0.25 * u[0], 0.25 * u[1], 0.25 * u[2]});
        }
        Strategy cand = s;
        cand.alice_povm = povm;
        double residual = 0.0;
        try {
            const auto behavior = scenario::behavior_of(cand);
            const auto rep = certifier::check_extremality(certifier::reconstruct_q(behavior), behavior);
            for (const auto &oc : rep.outcomes)
                residual = std::max(residual, std::abs(oc.det_identity_residual));
        } catch (const std::exception &) {
            continue;
        }
        if (residual < best_residual) {
            best_residual = residual;
            best = povm;
        }
    }
    s.alice_povm = best;
}

SeesawResult run_seesaw(Strategy s, const SeesawConfig &cfg) {
    SeesawResult res;
    for (int round = 0; round < cfg.max_rounds; ++round) {
        const Strategy before = s;
        round_update(s);
        const double value = bell_value(s);
        if (!res.round_values.empty()) {
            const double prev = res.round_values.back();
            if (value < prev) {
                // A genuine drop would be a bug; a sub-eps one is rounding at
                // the fixed point. Keep the better iterate either way.
                if (prev - value > cfg.convergence_eps) {
                    throw std::logic_error("seesaw: objective decreased by " +
                                           std::to_string(prev - value));
                }
                s = before;
                res.converged = true;
                break;
            }
            if (value - prev < cfg.convergence_eps) {
                res.round_values.push_back(value);
                res.converged = true;
                break;
            }
        }
        res.round_values.push_back(value);
    }
    attach_povm(s);
    res.strategy = s;
    res.s_value = res.round_values.empty() ? bell_value(s) : res.round_values.back();
    return res;
}

} // namespace

Operator bell_operator(const std::array<Operator, 3> &alice_obs,
                       const std::array<Operator, 4> &bob_obs) {
    Operator out = Operator::zero(alice_obs[0].dim() * bob_obs[0].dim());
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 4; ++l)
            out += static_cast<cplx>(ebi::kSigns[k][l]) * qlin::tensor(alice_obs[k], bob_obs[l]);
    return out;
}

Operator spectral_sign(const Operator &m) {
    const auto eig = qlin::eig_hermitian(m, 1e-8);
    Operator out = Operator::zero(m.dim());
    for (size_t i = 0; i < eig.eigenvalues.size(); ++i) {
        const double sign = eig.eigenvalues[i] >= 0.0 ? 1.0 : -1.0;
        out += sign * qlin::outer(eig.eigenvectors[i], eig.eigenvectors[i]);
    }
    return out;
}

SeesawResult seesaw_maximize(const SeesawConfig &cfg) {
    check_config(cfg);
    std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    Strategy s;
    s.dim_a = cfg.local_dim;
    s.dim_b = cfg.local_dim;
    s.state = Ket::basis(cfg.local_dim * cfg.local_dim, 0); // replaced in round one
    for (int k = 0; k < 3; ++k) s.alice_obs[k] = random_observable(cfg.local_dim, rng);
    for (int l = 0; l < 4; ++l) s.bob_obs[l] = random_observable(cfg.local_dim, rng);
    s.alice_povm = {Operator::identity(cfg.local_dim), Operator::zero(cfg.local_dim),
                    Operator::zero(cfg.local_dim), Operator::zero(cfg.local_dim)};
    return run_seesaw(std::move(s), cfg);
}

SeesawResult seesaw_from(const Strategy &start, const SeesawConfig &cfg) {
    check_config(cfg);
    return run_seesaw(start, cfg);
}

} // namespace ebicert::optimizer
