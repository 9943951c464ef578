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

// Random generators and Eigen-backed reference computations shared by the
// unit tests. Nothing here calls into the library's numerics.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "memslab/qcore.hpp"

namespace memslab::testing {

using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;

template <std::size_t N> CMat to_eigen(const Matrix<N> &m) {
    CMat out(N, N);
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
        }
    }
    return out;
}

inline Matrix4 from_eigen4(const CMat &m) {
    Matrix4 out;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out(r, c) = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

inline std::vector<double> oracle_eigenvalues(const CMat &m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

inline std::vector<double> oracle_singular_values(const CMat &m) {
    Eigen::JacobiSVD<CMat> svd(m);
    const auto &s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

inline CMat pauli_eigen(int k) {
    CMat p(2, 2);
    switch (k) {
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0; break;
    case 3: p << 1, 0, 0, -1; break;
    default: p << 1, 0, 0, 1; break;
    }
    return p;
}

inline CMat kron_eigen(const CMat &a, const CMat &b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Wootters concurrence from the eigenvalues of rho * (sy sy) rho^* (sy sy).
/// Accurate to ~1e-12 only for full-rank states (square roots of tiny
/// eigenvalues amplify rounding).
inline double oracle_concurrence(const CMat &rho) {
    const CMat yy = kron_eigen(pauli_eigen(2), pauli_eigen(2));
    const CMat r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<CMat> es(r);
    std::vector<double> l;
    for (Eigen::Index i = 0; i < 4; ++i) {
        l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
    }
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// T_nm = Tr(rho sigma_n ⊗ sigma_m).
inline Eigen::Matrix3d oracle_correlation(const CMat &rho) {
    Eigen::Matrix3d t;
    for (int n = 1; n <= 3; ++n) {
        for (int m = 1; m <= 3; ++m) {
            t(n - 1, m - 1) = (rho * kron_eigen(pauli_eigen(n), pauli_eigen(m))).trace().real();
        }
    }
    return t;
}

/// max over unit a, a', b, b' of the CHSH operator, via the two largest
/// eigenvalues of T^T T.
inline double oracle_bell(const CMat &rho) {
    const Eigen::Matrix3d t = oracle_correlation(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t);
    const auto &u = es.eigenvalues(); // ascending
    return 2.0 * std::sqrt(std::max(0.0, u(2) + u(1)));
}

inline double oracle_opt_fidelity(const CMat &rho) {
    const Eigen::Matrix3d t = oracle_correlation(rho);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(t);
    return 0.5 * (1.0 + svd.singularValues().sum() / 3.0);
}

inline CMat oracle_partial_transpose_b(const CMat &rho) {
    CMat out(4, 4);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                for (int d = 0; d < 2; ++d) {
                    out(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
                }
            }
        }
    }
    return out;
}

/// Hand-rolled generators for property tests.
class Gen {
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
    std::complex<double> cnormal() { return {normal(), normal()}; }

    template <std::size_t N> Matrix<N> hermitian() {
        Matrix<N> m;
        for (std::size_t r = 0; r < N; ++r) {
            m(r, r) = normal();
            for (std::size_t c = r + 1; c < N; ++c) {
                m(r, c) = cnormal();
                m(c, r) = std::conj(m(r, c));
            }
        }
        return m;
    }

    /// Ginibre-induced state G G^H / Tr, full rank almost surely.
    Matrix4 density() {
        Matrix4 g;
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                g(r, c) = cnormal();
            }
        }
        Matrix4 m = g * g.adjoint();
        const double tr = m.trace().real();
        return m * (1.0 / tr);
    }

    /// X state with random diagonal and coherences inside the positivity cone.
    Matrix4 x_state() {
        std::array<double, 4> d{};
        double s = 0.0;
        for (double &x : d) {
            x = -std::log(uniform(1e-12, 1.0));
            s += x;
        }
        for (double &x : d) {
            x /= s;
        }
        Matrix4 m = Matrix4::diagonal(d);
        m(0, 3) = std::polar(uniform() * std::sqrt(d[0] * d[3]), uniform(0.0, 2.0 * M_PI));
        m(3, 0) = std::conj(m(0, 3));
        m(1, 2) = std::polar(uniform() * std::sqrt(d[1] * d[2]), uniform(0.0, 2.0 * M_PI));
        m(2, 1) = std::conj(m(1, 2));
        return m;
    }

    Matrix2 unitary2() {
        const double a = uniform(0.0, 2.0 * M_PI);
        const double b = std::acos(uniform(-1.0, 1.0));
        const double c = uniform(0.0, 2.0 * M_PI);
        const double g = uniform(0.0, 2.0 * M_PI);
        const std::complex<double> ph = std::polar(1.0, g);
        const std::complex<double> ea = std::polar(1.0, -a / 2), ec = std::polar(1.0, -c / 2);
        return Matrix2{ph * ea * std::cos(b / 2) * ec, -ph * ea * std::sin(b / 2) * std::conj(ec),
                       ph * std::conj(ea) * std::sin(b / 2) * ec, ph * std::conj(ea) * std::cos(b / 2) * std::conj(ec)};
    }

    Vector<2> qubit() {
        Vector<2> v{cnormal(), cnormal()};
        const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        v[0] /= n;
        v[1] /= n;
        return v;
    }

  private:
    std::mt19937_64 rng_;
};

/// (U ⊗ V) rho (U ⊗ V)^H
inline Matrix4 local_rotate(const Matrix4 &rho, const Matrix2 &u, const Matrix2 &v) {
    const Matrix4 w = kron(u, v);
    return w * rho * w.adjoint();
}

} // namespace memslab::testing
