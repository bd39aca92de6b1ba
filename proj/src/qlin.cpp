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

#include "ebicert/qlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ebicert::qlin {

namespace {

void require_same_dim(const Operator &a, const Operator &b, const char *what) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(std::string(what) + ": dims " + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()));
    }
}

} // namespace

Operator::Operator(int dim, std::vector<cplx> entries) : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<size_t>(dim) * dim) {
        throw DimensionMismatch("Operator: entry count does not match dim*dim");
    }
}

Operator Operator::identity(int dim) {
    Operator m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Operator &Operator::operator+=(const Operator &other) {
    require_same_dim(*this, other, "operator+=");
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

Operator &Operator::operator-=(const Operator &other) {
    require_same_dim(*this, other, "operator-=");
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

Operator &Operator::operator*=(cplx scale) {
    for (auto &e : entries_) e *= scale;
    return *this;
}

Operator Operator::adjoint() const {
    Operator out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

cplx Operator::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double Operator::norm() const {
    double s = 0.0;
    for (const auto &e : entries_) s += std::norm(e);
    return std::sqrt(s);
}

double Operator::max_abs() const {
    double m = 0.0;
    for (const auto &e : entries_) m = std::max(m, std::abs(e));
    return m;
}

double Operator::hermiticity_defect() const {
    double d = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

Operator operator+(Operator a, const Operator &b) { return a += b; }
Operator operator-(Operator a, const Operator &b) { return a -= b; }
Operator operator*(cplx scale, Operator a) { return a *= scale; }
Operator operator*(Operator a, cplx scale) { return a *= scale; }

Operator operator*(const Operator &a, const Operator &b) {
    require_same_dim(a, b, "matrix product");
    const int n = a.dim();
    Operator out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Ket Ket::basis(int dim, int index) {
    Ket v(dim);
    v[index] = 1.0;
    return v;
}

double Ket::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

Ket Ket::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("Ket::normalized: zero vector");
    Ket out = *this;
    for (int i = 0; i < out.dim(); ++i) out[i] /= n;
    return out;
}

cplx inner(const Ket &a, const Ket &b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("inner: ket dims differ");
    cplx s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

Operator outer(const Ket &a, const Ket &b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("outer: ket dims differ");
    Operator out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out(i, j) = a[i] * std::conj(b[j]);
    return out;
}

Ket apply(const Operator &m, const Ket &v) {
    if (m.dim() != v.dim()) throw DimensionMismatch("apply: operator vs ket dim");
    Ket out(v.dim());
    for (int i = 0; i < m.dim(); ++i) {
        cplx s = 0.0;
        for (int j = 0; j < m.dim(); ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

cplx expval(const Ket &psi, const Operator &m) { return inner(psi, apply(m, psi)); }

Operator tensor(const Operator &a, const Operator &b) {
    const int da = a.dim(), db = b.dim();
    Operator out(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (int k = 0; k < db; ++k)
                for (int l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
        }
    return out;
}

Ket tensor(const Ket &a, const Ket &b) {
    Ket out(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int k = 0; k < b.dim(); ++k) out[i * b.dim() + k] = a[i] * b[k];
    return out;
}

Operator partial_trace(const Operator &m, Subsystem keep, int dim_a, int dim_b) {
    if (m.dim() != dim_a * dim_b) {
        throw DimensionMismatch("partial_trace: operator dim " + std::to_string(m.dim()) +
                                " != " + std::to_string(dim_a) + "*" + std::to_string(dim_b));
    }
    if (keep == Subsystem::A) {
        Operator out(dim_a);
        for (int i = 0; i < dim_a; ++i)
            for (int j = 0; j < dim_a; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < dim_b; ++k) s += m(i * dim_b + k, j * dim_b + k);
                out(i, j) = s;
            }
        return out;
    }
    Operator out(dim_b);
    for (int i = 0; i < dim_b; ++i)
        for (int j = 0; j < dim_b; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < dim_a; ++k) s += m(k * dim_b + i, k * dim_b + j);
            out(i, j) = s;
        }
    return out;
}

namespace {

// Off-diagonal Frobenius norm, the Jacobi convergence measure.
double offdiag_norm(const Operator &m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// Cyclic Jacobi for complex Hermitian matrices. Each (p,q) step first rotates
// the phase of column/row q so the pivot becomes real, then applies a real
// Givens rotation annihilating it. V accumulates eigenvectors as columns.
void jacobi_hermitian(Operator &a, Operator &v, int max_sweeps, double off_tol) {
    const int n = a.dim();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(a) < off_tol) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double beta = std::abs(apq);
                if (beta < 1e-300) continue;
                // Phase absorption: column q *= e^{-i phi}, row q *= e^{+i phi}.
                const cplx phase = apq / beta; // e^{i phi}
                const cplx ph_conj = std::conj(phase);
                for (int i = 0; i < n; ++i) {
                    a(i, q) *= ph_conj;
                    a(q, i) *= phase;
                    v(i, q) *= ph_conj;
                }
                const double alpha = a(p, p).real();
                const double gamma = a(q, q).real();
                const double tau = (gamma - alpha) / (2.0 * beta);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // A <- J^T A J with J = [[c, s], [-s, c]] acting on (p, q).
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }
}

EigResult eig_qubit(const Operator &m) {
    const BlochCoeffs c{0.5 * (m(0, 0) + m(1, 1)).real(),
                        0.5 * (m(0, 0) - m(1, 1)).real(),
                        (0.5 * (m(0, 1) + m(1, 0))).real(),
                        (0.5 * cplx(0, 1) * (m(0, 1) - m(1, 0))).real()};
    const double r = std::sqrt(c.c1 * c.c1 + c.c2 * c.c2 + c.c3 * c.c3);
    EigResult out;
    out.eigenvalues = {c.c0 + r, c.c0 - r};
    if (r < 1e-300) {
        out.eigenvectors = {Ket::basis(2, 0), Ket::basis(2, 1)};
        return out;
    }
    const double nz = c.c1 / r, nx = c.c2 / r, ny = c.c3 / r;
    Ket plus(2), minus(2);
    if (nz >= 0.0) {
        const double s = std::sqrt(2.0 * (1.0 + nz));
        plus[0] = (1.0 + nz) / s;
        plus[1] = cplx(nx, ny) / s;
        minus[0] = cplx(-nx, ny) / s;
        minus[1] = (1.0 + nz) / s;
    } else {
        const double s = std::sqrt(2.0 * (1.0 - nz));
        plus[0] = cplx(nx, -ny) / s;
        plus[1] = (1.0 - nz) / s;
        minus[0] = (1.0 - nz) / s;
        minus[1] = cplx(-nx, -ny) / s;
    }
    out.eigenvectors = {plus, minus};
    return out;
}

} // namespace

EigResult eig_hermitian(const Operator &m, double herm_tol) {
    if (m.dim() == 0) throw DimensionMismatch("eig_hermitian: empty operator");
    if (!m.is_hermitian(herm_tol)) {
        throw NotHermitian("eig_hermitian: Hermiticity defect " +
                           std::to_string(m.hermiticity_defect()));
    }
    if (m.dim() == 2) return eig_qubit(m);

    Operator a = m;
    // Symmetrize away the sub-tolerance defect so Jacobi sees an exactly
    // Hermitian matrix.
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = i; j < a.dim(); ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
        a(i, i) = a(i, i).real();
    }
    Operator v = Operator::identity(a.dim());
    jacobi_hermitian(a, v, /*max_sweeps=*/100, /*off_tol=*/1e-12);

    const int n = m.dim();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigResult out;
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (int idx : order) {
        out.eigenvalues.push_back(a(idx, idx).real());
        Ket vec(n);
        for (int i = 0; i < n; ++i) vec[i] = v(i, idx);
        out.eigenvectors.push_back(vec);
    }
    return out;
}

const Operator &pauli_id() {
    static const Operator m = Operator::identity(2);
    return m;
}

const Operator &pauli_z() {
    static const Operator m(2, {1.0, 0.0, 0.0, -1.0});
    return m;
}

const Operator &pauli_x() {
    static const Operator m(2, {0.0, 1.0, 1.0, 0.0});
    return m;
}

const Operator &pauli_y() {
    static const Operator m(2, {0.0, cplx(0, -1), cplx(0, 1), 0.0});
    return m;
}

Operator from_bloch(const BlochCoeffs &c) {
    Operator m(2);
    m(0, 0) = c.c0 + c.c1;
    m(1, 1) = c.c0 - c.c1;
    m(0, 1) = cplx(c.c2, -c.c3);
    m(1, 0) = cplx(c.c2, c.c3);
    return m;
}

BlochCoeffs to_bloch(const Operator &m, double herm_tol) {
    if (m.dim() != 2) throw DimensionMismatch("to_bloch: operator must be 2x2");
    if (!m.is_hermitian(herm_tol)) {
        throw NotHermitian("to_bloch: Hermiticity defect " +
                           std::to_string(m.hermiticity_defect()));
    }
    // c_k = tr(m sigma_k) / 2 with sigma = (1, Z, X, Y).
    return BlochCoeffs{0.5 * (m(0, 0) + m(1, 1)).real(),
                       0.5 * (m(0, 0) - m(1, 1)).real(),
                       (0.5 * (m(0, 1) + m(1, 0))).real(),
                       (0.5 * cplx(0, 1) * (m(0, 1) - m(1, 0))).real()};
}

} // namespace ebicert::qlin
