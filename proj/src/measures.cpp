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

#include "memslab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace memslab {

namespace {

// Eigenvalues at or below this are treated as exact zeros when forming
// sqrt(p) e for the Wootters decomposition and sqrt(l2 l4) in C*. A true
// zero comes back as ~1e-17 from a rotated matrix; its square root would
// otherwise leak ~1e-9 into both quantities.
constexpr double kZeroEigenvalue = 1e-14;

bool on_x_pattern(std::size_t r, std::size_t c) { return r == c || r + c == 3; }

} // namespace

NotXState::NotXState(double worst)
    : std::runtime_error("not an X state (largest off-pattern entry " + std::to_string(worst) + ")"),
      worst_(worst) {}

Matrix<3> CorrelationMatrix::as_matrix() const {
    Matrix<3> m;
    for (std::size_t n = 0; n < 3; ++n) {
        for (std::size_t k = 0; k < 3; ++k) {
            m(n, k) = t[n][k];
        }
    }
    return m;
}

double linear_entropy(const DensityMatrix &rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    double purity = 0.0;
    for (const Complex &z : rho.matrix().entries()) {
        purity += std::norm(z);
    }
    return 4.0 / 3.0 * (1.0 - purity);
}

XStateView as_x_state(const DensityMatrix &rho) {
    double worst = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (!on_x_pattern(r, c)) {
                worst = std::max(worst, std::abs(rho(r, c)));
            }
        }
    }
    if (worst > kXPatternTolerance) {
        throw NotXState(worst);
    }
    XStateView v;
    v.rho11 = rho(0, 0).real();
    v.rho22 = rho(1, 1).real();
    v.rho33 = rho(2, 2).real();
    v.rho44 = rho(3, 3).real();
    v.rho14 = rho(0, 3);
    v.rho23 = rho(1, 2);
    return v;
}

bool is_x_state(const DensityMatrix &rho) {
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (!on_x_pattern(r, c) && std::abs(rho(r, c)) > kXPatternTolerance) {
                return false;
            }
        }
    }
    return true;
}

double concurrence_x(const XStateView &v) {
    const double k1 = std::abs(v.rho14) - std::sqrt(std::max(0.0, v.rho22 * v.rho33));
    const double k2 = std::abs(v.rho23) - std::sqrt(std::max(0.0, v.rho11 * v.rho44));
    return 2.0 * std::max({0.0, k1, k2});
}

double concurrence_general(const DensityMatrix &rho) {
    const auto eig = hermitian_eigensystem(rho.matrix());
    Matrix4 scaled; // columns sqrt(p_i) e_i
    for (std::size_t c = 0; c < 4; ++c) {
        const double p = eig.values[c];
        const double w = p > kZeroEigenvalue ? std::sqrt(p) : 0.0;
        for (std::size_t r = 0; r < 4; ++r) {
            scaled(r, c) = w * eig.vectors(r, c);
        }
    }
    const Matrix4 yy = tensor(pauli::y(), pauli::y());
    const Matrix4 tau = scaled.transpose() * yy * scaled;
    const auto lam = singular_values(tau);
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

bool is_entangled(const DensityMatrix &rho) {
    const auto eig = hermitian_eigenvalues(partial_transpose(rho, Subsystem::kB));
    return eig.back() < -kPositivityTolerance;
}

CorrelationMatrix correlation_matrix(const DensityMatrix &rho) {
    const std::array<Matrix2, 3> sigma{pauli::x(), pauli::y(), pauli::z()};
    CorrelationMatrix out;
    for (std::size_t n = 0; n < 3; ++n) {
        for (std::size_t m = 0; m < 3; ++m) {
            const Complex tr = (rho.matrix() * tensor(sigma[n], sigma[m])).trace();
            if (std::abs(tr.imag()) > 1e-10) {
                throw std::logic_error("correlation trace has an imaginary part");
            }
            out.t[n][m] = tr.real();
        }
    }
    return out;
}

double n_value(const CorrelationMatrix &t) {
    const auto sv = singular_values(t.as_matrix());
    return sv[0] + sv[1] + sv[2];
}

double opt_fidelity(const DensityMatrix &rho) { return 0.5 * (1.0 + n_value(correlation_matrix(rho)) / 3.0); }

double bell_x(const XStateView &v) {
    const double a14 = std::abs(v.rho14);
    const double a23 = std::abs(v.rho23);
    const double u1 = 4.0 * (a14 + a23) * (a14 + a23);
    const double zz = v.rho11 + v.rho44 - v.rho22 - v.rho33;
    const double u2 = zz * zz;
    const double u3 = 4.0 * (a14 - a23) * (a14 - a23);
    return std::max(2.0 * std::sqrt(u1 + u2), 2.0 * std::sqrt(u1 + u3));
}

double bell_generic(const CorrelationMatrix &t) {
    const auto sv = singular_values(t.as_matrix());
    return 2.0 * std::sqrt(sv[0] * sv[0] + sv[1] * sv[1]);
}

double bell_generic(const DensityMatrix &rho) { return bell_generic(correlation_matrix(rho)); }

double c_star(const Spectrum &s) {
    const double l4 = s[3] <= kZeroEigenvalue ? 0.0 : s[3];
    return s[0] - s[2] - 2.0 * std::sqrt(s[1] * l4);
}

bool is_mems(const DensityMatrix &rho) {
    const double c = concurrence_general(rho);
    return c > 0.0 && std::abs(c - c_star(spectrum_of(rho))) <= kMemsTolerance;
}

MeasureBundle measure_all(const DensityMatrix &rho) {
    MeasureBundle m;
    m.s_l = linear_entropy(rho);
    m.c = concurrence_general(rho);
    m.c_star = c_star(spectrum_of(rho));
    const CorrelationMatrix t = correlation_matrix(rho);
    m.f = 0.5 * (1.0 + n_value(t) / 3.0);
    m.b = is_x_state(rho) ? bell_x(as_x_state(rho)) : bell_generic(t);
    return m;
}

} // namespace memslab
