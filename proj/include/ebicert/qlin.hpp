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
 * Minimal dense complex linear algebra for small Hilbert spaces (dim <= ~16):
 * Hermitian operators, kets, tensor products, partial traces, a Hermitian
 * eigensolver, and the qubit Bloch decomposition.
 */

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebicert::qlin {

using cplx = std::complex<double>;

// Canonical comparison tolerances used across the toolkit.
inline constexpr double kAlgebraTol = 1e-12;  // entrywise algebraic identities
inline constexpr double kSpectralTol = 1e-10; // eigensolver guarantees
inline constexpr double kEndToEndTol = 1e-9;  // pipeline-level checks

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotHermitian : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense square complex matrix, row-major. Values are immutable in spirit:
/// all toolkit operations build new operators rather than mutating shared ones.
class Operator {
  public:
    Operator() = default;
    explicit Operator(int dim) : dim_(dim), entries_(static_cast<size_t>(dim) * dim) {}
    Operator(int dim, std::vector<cplx> entries);

    static Operator identity(int dim);
    static Operator zero(int dim) { return Operator(dim); }

    int dim() const { return dim_; }

    cplx operator()(int i, int j) const { return entries_[static_cast<size_t>(i) * dim_ + j]; }
    cplx &operator()(int i, int j) { return entries_[static_cast<size_t>(i) * dim_ + j]; }

    Operator &operator+=(const Operator &other);
    Operator &operator-=(const Operator &other);
    Operator &operator*=(cplx scale);

    Operator adjoint() const;
    cplx trace() const;

    /// Frobenius norm.
    double norm() const;
    double max_abs() const;

    /// Largest entrywise deviation from A = A^dagger.
    double hermiticity_defect() const;
    bool is_hermitian(double tol = kAlgebraTol) const { return hermiticity_defect() <= tol; }

  private:
    int dim_ = 0;
    std::vector<cplx> entries_;
};

Operator operator+(Operator a, const Operator &b);
Operator operator-(Operator a, const Operator &b);
Operator operator*(cplx scale, Operator a);
Operator operator*(Operator a, cplx scale);
Operator operator*(const Operator &a, const Operator &b); // matrix product

/// Column vector of complex amplitudes.
class Ket {
  public:
    Ket() = default;
    explicit Ket(int dim) : amps_(static_cast<size_t>(dim)) {}
    explicit Ket(std::vector<cplx> amps) : amps_(std::move(amps)) {}

    static Ket basis(int dim, int index);

    int dim() const { return static_cast<int>(amps_.size()); }
    cplx operator[](int i) const { return amps_[static_cast<size_t>(i)]; }
    cplx &operator[](int i) { return amps_[static_cast<size_t>(i)]; }

    double norm() const;
    Ket normalized() const;

  private:
    std::vector<cplx> amps_;
};

cplx inner(const Ket &a, const Ket &b);        // <a|b>
Operator outer(const Ket &a, const Ket &b);    // |a><b|
Ket apply(const Operator &m, const Ket &v);    // m|v>
cplx expval(const Ket &psi, const Operator &m); // <psi|m|psi>

Operator tensor(const Operator &a, const Operator &b);
Ket tensor(const Ket &a, const Ket &b);

enum class Subsystem { A, B };

/// Trace out one factor of a bipartite operator with factor dimensions (dim_a, dim_b).
Operator partial_trace(const Operator &m, Subsystem keep, int dim_a, int dim_b);

struct EigResult {
    std::vector<double> eigenvalues; // descending
    std::vector<Ket> eigenvectors;   // orthonormal, matching order
};

/// Eigendecomposition of a Hermitian matrix. Closed form (Bloch) for dim 2,
/// cyclic Jacobi sweeps for larger dimensions. Throws NotHermitian when the
/// input fails the Hermiticity check at `herm_tol`.
EigResult eig_hermitian(const Operator &m, double herm_tol = kAlgebraTol);

// Pauli operators. Component order everywhere in this toolkit is (1, Z, X, Y);
// keeping that order fixed is what makes the gamma indices unambiguous.
const Operator &pauli_id();
const Operator &pauli_z();
const Operator &pauli_x();
const Operator &pauli_y();

/// Coefficients of (1, Z, X, Y) for a 2x2 Hermitian operator.
struct BlochCoeffs {
    double c0 = 0.0;
    double c1 = 0.0; // Z
    double c2 = 0.0; // X
    double c3 = 0.0; // Y
};

Operator from_bloch(const BlochCoeffs &c);
BlochCoeffs to_bloch(const Operator &m, double herm_tol = kAlgebraTol);

} // namespace ebicert::qlin
