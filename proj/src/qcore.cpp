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

#include "memslab/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace memslab {

Matrix2 pauli::by_index(int k) {
    switch (k) {
    case 0:
        return identity();
    case 1:
        return x();
    case 2:
        return y();
    case 3:
        return z();
    default:
        throw ContractViolation("pauli index must be 0..3");
    }
}

namespace {

constexpr int kMaxSweeps = 100;

template <std::size_t N> double off_diagonal_norm(const Matrix<N> &a) {
    double sum = 0.0;
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) {
            if (r != c) {
                sum += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(sum);
}

template <std::size_t N> double frobenius_norm(const Matrix<N> &a) {
    double sum = 0.0;
    for (const Complex &z : a.entries()) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

// tan(theta) for the smaller of the two rotations zeroing a 2x2 symmetric
// block with off-diagonal `off` > 0 and diagonal difference `diff` = d_q - d_p.
double jacobi_tangent(double diff, double off) {
    const double tau = diff / (2.0 * off);
    const double sign = tau >= 0.0 ? 1.0 : -1.0;
    return sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
}

} // namespace

template <std::size_t N> EigenSystem<N> hermitian_eigensystem(const Matrix<N> &m) {
    for (const Complex &z : m.entries()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ContractViolation("matrix has non-finite entries");
        }
    }
    if (hermiticity_residual(m) > kHermitianTolerance) {
        throw ContractViolation("not hermitian");
    }

    // Work on the exactly Hermitian part so rounding noise in the input
    // cannot break the rotation algebra.
    Matrix<N> a = 0.5 * (m + m.adjoint());
    Matrix<N> v = Matrix<N>::identity();
    const double stop = 1e-13 * std::max(1.0, frobenius_norm(a));

    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) {
                    continue;
                }
                const Complex phase = apq / r; // e^{i phi}
                const double t = jacobi_tangent(a(q, q).real() - a(p, p).real(), r);
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q); A <- G^H A G.
                const Complex e_minus = std::conj(phase);
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * e_minus * akq;
                    a(k, q) = s * akp + c * e_minus * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * e_minus * vkq;
                    v(k, q) = s * vkp + c * e_minus * vkq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::array<std::size_t, N> order{};
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem<N> out;
    for (std::size_t c = 0; c < N; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < N; ++r) {
            out.vectors(r, c) = v(r, order[c]);
        }
    }
    return out;
}

template <std::size_t N> std::array<double, N> singular_values(const Matrix<N> &m) {
    Matrix<N> a = m;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t j = 0; j + 1 < N; ++j) {
            for (std::size_t k = j + 1; k < N; ++k) {
                double alpha = 0.0;
                double beta = 0.0;
                Complex gamma{};
                for (std::size_t r = 0; r < N; ++r) {
                    alpha += std::norm(a(r, j));
                    beta += std::norm(a(r, k));
                    gamma += std::conj(a(r, j)) * a(r, k);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                const Complex unphase = std::conj(gamma) / g;
                const double t = jacobi_tangent(beta - alpha, g);
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t r = 0; r < N; ++r) {
                    const Complex aj = a(r, j);
                    const Complex bk = unphase * a(r, k);
                    a(r, j) = c * aj - s * bk;
                    a(r, k) = s * aj + c * bk;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }
    std::array<double, N> sv{};
    for (std::size_t c = 0; c < N; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < N; ++r) {
            sum += std::norm(a(r, c));
        }
        sv[c] = std::sqrt(sum);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

template EigenSystem<2> hermitian_eigensystem(const Matrix<2> &);
template EigenSystem<3> hermitian_eigensystem(const Matrix<3> &);
template EigenSystem<4> hermitian_eigensystem(const Matrix<4> &);
template EigenSystem<8> hermitian_eigensystem(const Matrix<8> &);
template std::array<double, 2> singular_values(const Matrix<2> &);
template std::array<double, 3> singular_values(const Matrix<3> &);
template std::array<double, 4> singular_values(const Matrix<4> &);
template std::array<double, 8> singular_values(const Matrix<8> &);

// ---------------------------------------------------------------------------

std::string Violation::message() const {
    std::ostringstream os;
    switch (kind) {
    case ViolationKind::kNotHermitian:
        os << "not hermitian";
        break;
    case ViolationKind::kTraceNotOne:
        os << "trace != 1";
        break;
    case ViolationKind::kNotPositive:
        os << "not positive semidefinite";
        break;
    case ViolationKind::kNotFinite:
        os << "non-finite entries";
        break;
    }
    os << " (residual " << residual << ")";
    return os.str();
}

std::optional<Violation> check_density(const Matrix4 &m) {
    for (const Complex &z : m.entries()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return Violation{ViolationKind::kNotFinite, std::numeric_limits<double>::infinity()};
        }
    }
    const double herm = hermiticity_residual(m);
    if (herm > kHermitianStateTolerance) {
        return Violation{ViolationKind::kNotHermitian, herm};
    }
    const double trace_err = std::abs(m.trace() - 1.0);
    if (trace_err > kTraceTolerance) {
        return Violation{ViolationKind::kTraceNotOne, trace_err};
    }
    const double min_eig = hermitian_eigenvalues(m).back();
    if (min_eig < -kPositivityTolerance) {
        return Violation{ViolationKind::kNotPositive, -min_eig};
    }
    return std::nullopt;
}

DensityMatrix DensityMatrix::from_matrix(const Matrix4 &m) {
    if (auto v = check_density(m)) {
        throw InvalidState(*v);
    }
    return DensityMatrix(m);
}

Spectrum Spectrum::from_values(std::array<double, 4> values) {
    std::sort(values.begin(), values.end(), std::greater<>());
    for (double &x : values) {
        if (!(x >= -kPositivityTolerance)) {
            throw ContractViolation("spectrum has a negative eigenvalue");
        }
        if (x < 0.0) {
            x = 0.0;
        }
    }
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-10) {
        throw ContractViolation("spectrum does not sum to one");
    }
    Spectrum s;
    s.lambda_ = values;
    return s;
}

int Spectrum::rank() const {
    return static_cast<int>(
        std::count_if(lambda_.begin(), lambda_.end(), [](double x) { return x > kRankThreshold; }));
}

Spectrum spectrum_of(const DensityMatrix &rho) {
    return Spectrum::from_values(hermitian_eigenvalues(rho.matrix()));
}

int rank_of(const DensityMatrix &rho) { return spectrum_of(rho).rank(); }

Matrix4 partial_transpose(const Matrix4 &m, Subsystem which) {
    // Index i = 2*a + b, a the first qubit.
    Matrix4 out;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t a2 = 0; a2 < 2; ++a2) {
                for (std::size_t b2 = 0; b2 < 2; ++b2) {
                    const Complex z = m(2 * a + b, 2 * a2 + b2);
                    if (which == Subsystem::kB) {
                        out(2 * a + b2, 2 * a2 + b) = z;
                    } else {
                        out(2 * a2 + b, 2 * a + b2) = z;
                    }
                }
            }
        }
    }
    return out;
}

PureState3Q::PureState3Q(const Vector<8> &amplitudes) : amp_(amplitudes) {
    double norm2 = 0.0;
    for (const Complex &z : amp_) {
        norm2 += std::norm(z);
    }
    if (std::abs(norm2 - 1.0) > 1e-12) {
        throw ContractViolation("three-qubit state is not normalized");
    }
}

PureState3Q PureState3Q::normalized(Vector<8> amplitudes) {
    double norm2 = 0.0;
    for (const Complex &z : amplitudes) {
        norm2 += std::norm(z);
    }
    if (!(norm2 > 0.0)) {
        throw ContractViolation("cannot normalize a zero vector");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (Complex &z : amplitudes) {
        z *= scale;
    }
    return PureState3Q(amplitudes);
}

DensityMatrix partial_trace(const PureState3Q &psi, int traced_qubit) {
    if (traced_qubit < 1 || traced_qubit > 3) {
        throw ContractViolation("traced qubit must be 1, 2 or 3");
    }
    // Bit position (from the most significant) of the traced qubit.
    const int shift = 3 - traced_qubit;
    const auto &amp = psi.amplitudes();

    // Map a 3-qubit index to the 2-qubit index of the qubits that remain.
    auto reduced_index = [shift](std::size_t i) -> std::size_t {
        const std::size_t low = i & ((std::size_t{1} << shift) - 1);
        const std::size_t high = i >> (shift + 1);
        return (high << shift) | low;
    };

    Matrix4 rho;
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            if (((i >> shift) & 1U) != ((j >> shift) & 1U)) {
                continue;
            }
            rho(reduced_index(i), reduced_index(j)) += amp[i] * std::conj(amp[j]);
        }
    }
    return DensityMatrix::from_matrix(rho);
}

} // namespace memslab
