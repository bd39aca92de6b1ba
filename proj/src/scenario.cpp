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

#include "ebicert/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace ebicert::scenario {

using qlin::cplx;
using qlin::Operator;

namespace {

double min_eigenvalue(const Operator &m) {
    const auto eig = qlin::eig_hermitian(m, 1e-8);
    return eig.eigenvalues.back();
}

void check_dichotomic(const Operator &o, int dim, const std::string &name, double tol) {
    if (o.dim() != dim) {
        throw InvalidStrategy(name + ": dimension " + std::to_string(o.dim()) +
                              ", expected " + std::to_string(dim));
    }
    if (o.hermiticity_defect() > tol) {
        throw InvalidStrategy(name + ": Hermiticity defect " +
                              std::to_string(o.hermiticity_defect()));
    }
    const double defect = (o * o - Operator::identity(dim)).max_abs();
    if (defect > tol) {
        throw InvalidStrategy(name + ": square deviates from identity by " +
                              std::to_string(defect));
    }
}

// P(a,b) = tr[(Pi_a (x) Pi_b) rho], computed for all outcome cells at once.
template <typename AliceOps, typename BobProjs>
void joint_table(const Operator &rho, const AliceOps &alice, const BobProjs &bob,
                 int dim_a, int dim_b, double *out, int bob_stride) {
    for (size_t ai = 0; ai < alice.size(); ++ai) {
        for (size_t bi = 0; bi < bob.size(); ++bi) {
            const Operator joint = qlin::tensor(alice[ai], bob[bi]);
            cplx p = 0.0;
            const int d = dim_a * dim_b;
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) p += joint(r, c) * rho(c, r);
            out[ai * bob_stride + bi] = p.real();
        }
    }
}

} // namespace

void validate_strategy(const Strategy &s, double tol) {
    const int d = s.dim_a * s.dim_b;
    if (s.state.dim() != d) {
        throw InvalidStrategy("state: dimension " + std::to_string(s.state.dim()) +
                              ", expected " + std::to_string(d));
    }
    if (std::abs(s.state.norm() - 1.0) > tol) {
        throw InvalidStrategy("state: norm " + std::to_string(s.state.norm()));
    }
    for (int k = 0; k < 3; ++k) {
        check_dichotomic(s.alice_obs[k], s.dim_a, "alice_obs[" + std::to_string(k + 1) + "]", tol);
    }
    for (int l = 0; l < 4; ++l) {
        check_dichotomic(s.bob_obs[l], s.dim_b, "bob_obs[" + std::to_string(l + 1) + "]", tol);
    }
    Operator sum = Operator::zero(s.dim_a);
    for (int a = 0; a < 4; ++a) {
        const auto &e = s.alice_povm[a];
        const std::string name = "alice_povm[" + std::to_string(a + 1) + "]";
        if (e.dim() != s.dim_a) throw InvalidStrategy(name + ": wrong dimension");
        if (e.hermiticity_defect() > tol) {
            throw InvalidStrategy(name + ": Hermiticity defect " +
                                  std::to_string(e.hermiticity_defect()));
        }
        const double lo = min_eigenvalue(e);
        if (lo < -tol) {
            throw InvalidStrategy(name + ": negative eigenvalue " + std::to_string(lo));
        }
        sum += e;
    }
    const double completeness = (sum - Operator::identity(s.dim_a)).max_abs();
    if (completeness > tol) {
        throw InvalidStrategy("alice_povm: completeness defect " + std::to_string(completeness));
    }
}

Behavior behavior_of(const Strategy &s) {
    return behavior_of(s, qlin::outer(s.state, s.state));
}

Behavior behavior_of(const Strategy &s, const Operator &rho) {
    validate_strategy(s);
    if (rho.dim() != s.dim_a * s.dim_b) {
        throw InvalidStrategy("density operator: dimension mismatch with strategy");
    }

    // Dichotomic observables become eigenprojectors (1 +- M)/2; degenerate
    // observables yield a zero projector on one side, i.e. a deterministic
    // outcome.
    auto projectors = [](const Operator &m) {
        const Operator id = Operator::identity(m.dim());
        return std::array<Operator, 2>{0.5 * (id + m), 0.5 * (id - m)};
    };

    std::array<std::array<Operator, 2>, 3> alice_proj;
    for (int k = 0; k < 3; ++k) alice_proj[k] = projectors(s.alice_obs[k]);
    std::array<std::array<Operator, 2>, 4> bob_proj;
    for (int l = 0; l < 4; ++l) bob_proj[l] = projectors(s.bob_obs[l]);

    Behavior b;
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 4; ++l) {
            double cells[4];
            joint_table(rho, alice_proj[k], bob_proj[l], s.dim_a, s.dim_b, cells, 2);
            for (int a = 0; a < 2; ++a)
                for (int bo = 0; bo < 2; ++bo) b.joint_dichotomic[k][l][a][bo] = cells[a * 2 + bo];
        }
    }
    for (int l = 0; l < 4; ++l) {
        double cells[8];
        joint_table(rho, s.alice_povm, bob_proj[l], s.dim_a, s.dim_b, cells, 2);
        for (int a = 0; a < 4; ++a)
            for (int bo = 0; bo < 2; ++bo) b.joint_povm[l][a][bo] = cells[a * 2 + bo];
    }
    for (int a = 0; a < 4; ++a) {
        double m = 0.0;
        for (int l = 0; l < 4; ++l)
            m += b.joint_povm[l][a][0] + b.joint_povm[l][a][1];
        b.povm_marginal[a] = m / 4.0;
    }
    return b;
}

Behavior mix(const Behavior &lhs, const Behavior &rhs, double w) {
    Behavior out;
    const double v = 1.0 - w;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 4; ++l)
            for (int a = 0; a < 2; ++a)
                for (int bo = 0; bo < 2; ++bo)
                    out.joint_dichotomic[k][l][a][bo] =
                        w * lhs.joint_dichotomic[k][l][a][bo] + v * rhs.joint_dichotomic[k][l][a][bo];
    for (int l = 0; l < 4; ++l)
        for (int a = 0; a < 4; ++a)
            for (int bo = 0; bo < 2; ++bo)
                out.joint_povm[l][a][bo] = w * lhs.joint_povm[l][a][bo] + v * rhs.joint_povm[l][a][bo];
    for (int a = 0; a < 4; ++a)
        out.povm_marginal[a] = w * lhs.povm_marginal[a] + v * rhs.povm_marginal[a];
    out.estimated = lhs.estimated || rhs.estimated;
    return out;
}

BehaviorDiagnostics behavior_diagnostics(const Behavior &b) {
    BehaviorDiagnostics d;
    d.min_probability = 1.0;
    d.max_probability = 0.0;
    auto see = [&d](double p) {
        d.min_probability = std::min(d.min_probability, p);
        d.max_probability = std::max(d.max_probability, p);
    };

    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 4; ++l) {
            double sum = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int bo = 0; bo < 2; ++bo) {
                    see(b.joint_dichotomic[k][l][a][bo]);
                    sum += b.joint_dichotomic[k][l][a][bo];
                }
            d.normalization_defect = std::max(d.normalization_defect, std::abs(sum - 1.0));
        }
    for (int l = 0; l < 4; ++l) {
        double sum = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int bo = 0; bo < 2; ++bo) {
                see(b.joint_povm[l][a][bo]);
                sum += b.joint_povm[l][a][bo];
            }
        d.normalization_defect = std::max(d.normalization_defect, std::abs(sum - 1.0));
    }

    // Alice-side no-signaling: her marginals must not depend on Bob's l.
    for (int k = 0; k < 3; ++k)
        for (int a = 0; a < 2; ++a) {
            double lo = 1.0, hi = 0.0;
            for (int l = 0; l < 4; ++l) {
                const double m = b.joint_dichotomic[k][l][a][0] + b.joint_dichotomic[k][l][a][1];
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
            d.no_signaling_defect = std::max(d.no_signaling_defect, hi - lo);
        }
    for (int a = 0; a < 4; ++a) {
        double lo = 1.0, hi = 0.0;
        for (int l = 0; l < 4; ++l) {
            const double m = b.joint_povm[l][a][0] + b.joint_povm[l][a][1];
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        d.no_signaling_defect = std::max(d.no_signaling_defect, hi - lo);
    }
    // Bob-side no-signaling across Alice's settings (POVM setting included).
    for (int l = 0; l < 4; ++l)
        for (int bo = 0; bo < 2; ++bo) {
            double lo = 1.0, hi = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double m = b.joint_dichotomic[k][l][0][bo] + b.joint_dichotomic[k][l][1][bo];
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
            double povm_m = 0.0;
            for (int a = 0; a < 4; ++a) povm_m += b.joint_povm[l][a][bo];
            lo = std::min(lo, povm_m);
            hi = std::max(hi, povm_m);
            d.no_signaling_defect = std::max(d.no_signaling_defect, hi - lo);
        }
    return d;
}

bool behavior_valid(const Behavior &b, double tol) {
    const auto d = behavior_diagnostics(b);
    if (d.min_probability < -qlin::kAlgebraTol - tol) return false;
    if (d.max_probability > 1.0 + qlin::kAlgebraTol + tol) return false;
    if (d.normalization_defect > tol) return false;
    if (!b.estimated && d.no_signaling_defect > tol) return false;
    return true;
}

double correlator(const Behavior &b, int k, int l) {
    if (k < 1 || k > 3 || l < 1 || l > 4) {
        throw IndexOutOfRange("correlator: setting pair (" + std::to_string(k) + "," +
                              std::to_string(l) + ") out of range");
    }
    const auto &t = b.joint_dichotomic[k - 1][l - 1];
    return t[0][0] - t[0][1] - t[1][0] + t[1][1];
}

double cond_expect(const Behavior &b, int a, int l) {
    if (a < 1 || a > 4 || l < 1 || l > 4) {
        throw IndexOutOfRange("cond_expect: outcome/setting (" + std::to_string(a) + "," +
                              std::to_string(l) + ") out of range");
    }
    const auto &row = b.joint_povm[l - 1][a - 1];
    return row[0] - row[1];
}

double bob_expectation(const Behavior &b, int l) {
    if (l < 1 || l > 4) throw IndexOutOfRange("bob_expectation: setting out of range");
    const auto &t = b.joint_dichotomic[0][l - 1];
    return t[0][0] - t[0][1] + t[1][0] - t[1][1];
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Multinomial draw via the conditional-binomial decomposition.
template <size_t N>
void draw_cells(std::mt19937_64 &rng, std::int64_t shots, const std::array<double, N> &probs,
                std::array<std::int64_t, N> &counts) {
    double remaining_p = 0.0;
    for (double p : probs) remaining_p += std::max(0.0, p);
    std::int64_t remaining = shots;
    for (size_t i = 0; i + 1 < N && remaining > 0; ++i) {
        const double p = std::max(0.0, probs[i]);
        double cond = remaining_p > 0.0 ? p / remaining_p : 0.0;
        cond = std::clamp(cond, 0.0, 1.0);
        std::binomial_distribution<std::int64_t> dist(remaining, cond);
        const std::int64_t k = dist(rng);
        counts[i] = k;
        remaining -= k;
        remaining_p -= p;
    }
    counts[N - 1] = remaining;
}

} // namespace

CountRecord sample(const Strategy &s, std::int64_t shots_per_pair, std::uint64_t seed) {
    if (shots_per_pair < 1) throw EmptyRecord("sample: shots_per_pair must be >= 1");
    const Behavior b = behavior_of(s);
    CountRecord rec;
    rec.shots_per_pair = shots_per_pair;
    int pair_index = 0;
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 4; ++l, ++pair_index) {
            std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(pair_index))));
            std::array<double, 4> probs{b.joint_dichotomic[k][l][0][0], b.joint_dichotomic[k][l][0][1],
                                        b.joint_dichotomic[k][l][1][0], b.joint_dichotomic[k][l][1][1]};
            std::array<std::int64_t, 4> cells{};
            draw_cells(rng, shots_per_pair, probs, cells);
            rec.dichotomic[k][l][0][0] = cells[0];
            rec.dichotomic[k][l][0][1] = cells[1];
            rec.dichotomic[k][l][1][0] = cells[2];
            rec.dichotomic[k][l][1][1] = cells[3];
        }
    }
    for (int l = 0; l < 4; ++l, ++pair_index) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(pair_index))));
        std::array<double, 8> probs;
        for (int a = 0; a < 4; ++a)
            for (int bo = 0; bo < 2; ++bo) probs[a * 2 + bo] = b.joint_povm[l][a][bo];
        std::array<std::int64_t, 8> cells{};
        draw_cells(rng, shots_per_pair, probs, cells);
        for (int a = 0; a < 4; ++a)
            for (int bo = 0; bo < 2; ++bo) rec.povm[l][a][bo] = cells[a * 2 + bo];
    }
    return rec;
}

Behavior estimate(const CountRecord &c) {
    if (c.shots_per_pair < 1) throw EmptyRecord("estimate: record has no shots");
    const double n = static_cast<double>(c.shots_per_pair);
    Behavior b;
    b.estimated = true;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 4; ++l)
            for (int a = 0; a < 2; ++a)
                for (int bo = 0; bo < 2; ++bo)
                    b.joint_dichotomic[k][l][a][bo] = static_cast<double>(c.dichotomic[k][l][a][bo]) / n;
    for (int l = 0; l < 4; ++l)
        for (int a = 0; a < 4; ++a)
            for (int bo = 0; bo < 2; ++bo)
                b.joint_povm[l][a][bo] = static_cast<double>(c.povm[l][a][bo]) / n;
    for (int a = 0; a < 4; ++a) {
        double m = 0.0;
        for (int l = 0; l < 4; ++l) m += b.joint_povm[l][a][0] + b.joint_povm[l][a][1];
        b.povm_marginal[a] = m / 4.0;
    }
    return b;
}

std::string serialize_counts(const CountRecord &c) {
    std::ostringstream out;
    out << "# ebicert counts v1\n";
    out << "# shots-per-pair " << c.shots_per_pair << "\n";
    out << "# alice-settings 3 dichotomic (outcomes +1/-1) + setting 4 four-outcome (1..4)\n";
    out << "# bob-settings 4 dichotomic (outcomes +1/-1)\n";
    out << "# columns: alice_setting bob_setting alice_outcome bob_outcome count\n";
    auto sign = [](int idx) { return idx == 0 ? "+1" : "-1"; };
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 4; ++l)
            for (int a = 0; a < 2; ++a)
                for (int bo = 0; bo < 2; ++bo)
                    out << (k + 1) << ' ' << (l + 1) << ' ' << sign(a) << ' ' << sign(bo) << ' '
                        << c.dichotomic[k][l][a][bo] << "\n";
    for (int l = 0; l < 4; ++l)
        for (int a = 0; a < 4; ++a)
            for (int bo = 0; bo < 2; ++bo)
                out << 4 << ' ' << (l + 1) << ' ' << (a + 1) << ' ' << sign(bo) << ' '
                    << c.povm[l][a][bo] << "\n";
    return out.str();
}

CountRecord parse_counts(std::istream &in) {
    CountRecord rec;
    std::int64_t shots = -1;
    std::array<std::array<bool, 4>, 4> seen{}; // [alice_setting-1][bob_setting-1]
    std::string line;
    int lineno = 0;
    auto fail = [&lineno](const std::string &msg) {
        throw CountsParseError("counts line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string word;
            hs >> word;
            if (word == "shots-per-pair") {
                if (!(hs >> shots) || shots < 1) fail("bad shots-per-pair header");
            }
            continue;
        }
        std::istringstream ls(line);
        int k = 0, l = 0;
        std::string a_str, b_str;
        std::int64_t count = 0;
        if (!(ls >> k >> l >> a_str >> b_str >> count)) fail("expected 5 fields");
        if (count < 0) fail("negative count");
        if (l < 1 || l > 4) fail("bob setting out of range");
        const int bo = b_str == "+1" ? 0 : b_str == "-1" ? 1 : -1;
        if (bo < 0) fail("bob outcome must be +1 or -1");
        if (k >= 1 && k <= 3) {
            const int a = a_str == "+1" ? 0 : a_str == "-1" ? 1 : -1;
            if (a < 0) fail("alice outcome must be +1 or -1 for dichotomic settings");
            rec.dichotomic[k - 1][l - 1][a][bo] += count;
            seen[k - 1][l - 1] = true;
        } else if (k == 4) {
            int a = 0;
            try {
                a = std::stoi(a_str);
            } catch (const std::exception &) {
                fail("alice outcome must be 1..4 for the POVM setting");
            }
            if (a < 1 || a > 4) fail("alice outcome must be 1..4 for the POVM setting");
            rec.povm[l - 1][a - 1][bo] += count;
            seen[3][l - 1] = true;
        } else {
            fail("alice setting out of range");
        }
    }
    if (shots < 1) throw CountsParseError("counts: missing shots-per-pair header");
    rec.shots_per_pair = shots;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
            if (!seen[k][l]) {
                throw CountsParseError("counts: no data for setting pair (" +
                                       std::to_string(k + 1) + "," + std::to_string(l + 1) + ")");
            }
    // Per-pair totals must match the declared shot count.
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 4; ++l) {
            std::int64_t sum = 0;
            for (int a = 0; a < 2; ++a)
                for (int bo = 0; bo < 2; ++bo) sum += rec.dichotomic[k][l][a][bo];
            if (sum != shots) {
                throw CountsParseError("counts: pair (" + std::to_string(k + 1) + "," +
                                       std::to_string(l + 1) + ") sums to " + std::to_string(sum) +
                                       ", declared " + std::to_string(shots));
            }
        }
    for (int l = 0; l < 4; ++l) {
        std::int64_t sum = 0;
        for (int a = 0; a < 4; ++a)
            for (int bo = 0; bo < 2; ++bo) sum += rec.povm[l][a][bo];
        if (sum != shots) {
            throw CountsParseError("counts: pair (4," + std::to_string(l + 1) + ") sums to " +
                                   std::to_string(sum) + ", declared " + std::to_string(shots));
        }
    }
    return rec;
}

CountRecord parse_counts_text(const std::string &text) {
    std::istringstream in(text);
    return parse_counts(in);
}

qlin::Operator qubit_observable(double nz, double nx, double ny) {
    return from_bloch(qlin::BlochCoeffs{0.0, nz, nx, ny});
}

} // namespace ebicert::scenario
