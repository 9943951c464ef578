// Copyright 2026 The memslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>

namespace memslab {

using Complex = std::complex<double>;

/// Raised when a caller breaks an operation's documented precondition
/// (bad index, out-of-range parameter, wrong shape of input data).
class ContractViolation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Dense square complex matrix with compile-time dimension, row-major.
///
/// Only the tiny shapes needed for two- and three-qubit work are
/// instantiated in the library (2, 3, 4, 8); everything is stack allocated.
template <std::size_t N> class Matrix {
  public:
    static constexpr std::size_t dim = N;

    constexpr Matrix() = default;

    /// Row-major initializer; missing trailing entries stay zero.
    Matrix(std::initializer_list<Complex> row_major) {
        if (row_major.size() > N * N) {
            throw ContractViolation("too many matrix entries");
        }
        std::size_t k = 0;
        for (const Complex &z : row_major) {
            data_[k++] = z;
        }
    }

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static Matrix diagonal(const std::array<double, N> &d) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

    Matrix adjoint() const {
        Matrix out;
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t c = 0; c < N; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    Matrix conjugate() const {
        Matrix out;
        for (std::size_t k = 0; k < N * N; ++k) {
            out.data_[k] = std::conj(data_[k]);
        }
        return out;
    }

    Matrix transpose() const {
        Matrix out;
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t c = 0; c < N; ++c) {
                out(c, r) = (*this)(r, c);
            }
        }
        return out;
    }

    Complex trace() const {
        Complex t{};
        for (std::size_t i = 0; i < N; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    Matrix &operator+=(const Matrix &o) {
        for (std::size_t k = 0; k < N * N; ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        for (std::size_t k = 0; k < N * N; ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    Matrix &operator*=(Complex s) {
        for (Complex &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= Complex(s); }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        Matrix out;
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t k = 0; k < N; ++k) {
                const Complex ark = a(r, k);
                if (ark == Complex{}) {
                    continue;
                }
                for (std::size_t c = 0; c < N; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

    bool operator==(const Matrix &) const = default;

    const std::array<Complex, N * N> &entries() const { return data_; }

  private:
    std::array<Complex, N * N> data_{};
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;
using Matrix8 = Matrix<8>;

template <std::size_t N> using Vector = std::array<Complex, N>;

/// Largest entrywise modulus of a - b.
template <std::size_t N> double max_abs_diff(const Matrix<N> &a, const Matrix<N> &b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < N * N; ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

/// max |m_ij - conj(m_ji)|
template <std::size_t N> double hermiticity_residual(const Matrix<N> &m) {
    double worst = 0.0;
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = r; c < N; ++c) {
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return worst;
}

/// Kronecker product; entry (B*i + k, B*j + l) = a(i,j) * b(k,l).
template <std::size_t A, std::size_t B> Matrix<A * B> kron(const Matrix<A> &a, const Matrix<B> &b) {
    Matrix<A * B> out;
    for (std::size_t i = 0; i < A; ++i) {
        for (std::size_t j = 0; j < A; ++j) {
            for (std::size_t k = 0; k < B; ++k) {
                for (std::size_t l = 0; l < B; ++l) {
                    out(B * i + k, B * j + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Two-qubit tensor product of single-qubit operators.
inline Matrix4 tensor(const Matrix2 &a, const Matrix2 &b) { return kron(a, b); }

/// |v><v|
template <std::size_t N> Matrix<N> outer(const Vector<N> &v) {
    Matrix<N> out;
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) {
            out(r, c) = v[r] * std::conj(v[c]);
        }
    }
    return out;
}

template <std::size_t N> Vector<N> apply(const Matrix<N> &m, const Vector<N> &v) {
    Vector<N> out{};
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) {
            out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

namespace pauli {
inline Matrix2 identity() { return Matrix2::identity(); }
inline Matrix2 x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Matrix2 y() { return {0.0, Complex(0, -1), Complex(0, 1), 0.0}; }
inline Matrix2 z() { return {1.0, 0.0, 0.0, -1.0}; }
/// index 0..3 -> I, X, Y, Z
Matrix2 by_index(int k);
} // namespace pauli

/// Eigen-decomposition of a Hermitian matrix. `values` are sorted descending
/// and column c of `vectors` is the eigenvector of values[c].
template <std::size_t N> struct EigenSystem {
    std::array<double, N> values{};
    Matrix<N> vectors;
};

/// Hermiticity tolerance accepted by the eigensolvers.
inline constexpr double kHermitianTolerance = 1e-10;

/// Cyclic complex Jacobi rotations. Sweep order is fixed, so results are
/// bit-reproducible. Throws ContractViolation("not hermitian") when the input
/// deviates from Hermitian by more than kHermitianTolerance.
template <std::size_t N> EigenSystem<N> hermitian_eigensystem(const Matrix<N> &m);

template <std::size_t N> std::array<double, N> hermitian_eigenvalues(const Matrix<N> &m) {
    return hermitian_eigensystem(m).values;
}

/// Singular values (descending) by one-sided Jacobi orthogonalization.
/// Small singular values come out with absolute accuracy ~ eps * ||m||,
/// which the square root of eigenvalues of m^H m cannot deliver.
template <std::size_t N> std::array<double, N> singular_values(const Matrix<N> &m);

// ---------------------------------------------------------------------------
// Two-qubit states

/// Entries of a candidate density matrix outside these tolerances are rejected.
inline constexpr double kHermitianStateTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;
/// Eigenvalues above this count toward the rank.
inline constexpr double kRankThreshold = 1e-10;

enum class ViolationKind { kNotHermitian, kTraceNotOne, kNotPositive, kNotFinite };

struct Violation {
    ViolationKind kind;
    double residual;

    std::string message() const;
};

class InvalidState : public std::runtime_error {
  public:
    explicit InvalidState(Violation v) : std::runtime_error(v.message()), violation_(v) {}
    const Violation &violation() const { return violation_; }

  private:
    Violation violation_;
};

/// First violated density-matrix condition, or nullopt when `m` is a valid
/// two-qubit state.
std::optional<Violation> check_density(const Matrix4 &m);

/// Validated two-qubit density matrix in the |00>,|01>,|10>,|11> basis.
class DensityMatrix {
  public:
    /// Throws InvalidState on the first violated condition.
    static DensityMatrix from_matrix(const Matrix4 &m);

    const Matrix4 &matrix() const { return m_; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  private:
    explicit DensityMatrix(const Matrix4 &m) : m_(m) {}
    Matrix4 m_;
};

inline DensityMatrix validate_density(const Matrix4 &m) { return DensityMatrix::from_matrix(m); }

/// Eigenvalues of a two-qubit state, descending, with numerical negatives in
/// [-1e-10, 0) clamped to zero.
class Spectrum {
  public:
    /// Sorts and clamps; throws ContractViolation if an entry is below
    /// -1e-10 or the sum is off by more than 1e-10.
    static Spectrum from_values(std::array<double, 4> values);

    const std::array<double, 4> &values() const { return lambda_; }
    double operator[](std::size_t i) const { return lambda_[i]; }
    int rank() const;

  private:
    std::array<double, 4> lambda_{};
};

Spectrum spectrum_of(const DensityMatrix &rho);

int rank_of(const DensityMatrix &rho);

enum class Subsystem { kA, kB };

/// Partial transpose on one qubit. The result is Hermitian with unit trace
/// but need not be positive.
Matrix4 partial_transpose(const Matrix4 &m, Subsystem which);
inline Matrix4 partial_transpose(const DensityMatrix &rho, Subsystem which) {
    return partial_transpose(rho.matrix(), which);
}

/// Three-qubit pure state; amplitude index is 4*q1 + 2*q2 + q3.
class PureState3Q {
  public:
    /// Throws ContractViolation unless the squared norm is 1 within 1e-12.
    explicit PureState3Q(const Vector<8> &amplitudes);
    /// Normalizes the given amplitudes first.
    static PureState3Q normalized(Vector<8> amplitudes);

    const Vector<8> &amplitudes() const { return amp_; }

  private:
    Vector<8> amp_;
};

/// Reduced state of the two qubits left after tracing `traced_qubit`
/// (1, 2 or 3) out of |psi><psi|; remaining qubits keep their order.
DensityMatrix partial_trace(const PureState3Q &psi, int traced_qubit);

} // namespace memslab
