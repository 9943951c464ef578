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

#include <array>
#include <stdexcept>

#include "memslab/qcore.hpp"

namespace memslab {

/// Entries of an X-shaped two-qubit state (nonzero only on the diagonal and
/// anti-diagonal). Indices are 1-based to mirror the usual matrix labels.
struct XStateView {
    double rho11 = 0.0;
    double rho22 = 0.0;
    double rho33 = 0.0;
    double rho44 = 0.0;
    Complex rho14;
    Complex rho23;
};

class NotXState : public std::runtime_error {
  public:
    explicit NotXState(double worst);
    double worst_entry() const { return worst_; }

  private:
    double worst_;
};

/// Entries outside the X pattern must have modulus at most this.
inline constexpr double kXPatternTolerance = 1e-10;

/// Pauli correlations T_nm = Tr(rho sigma_n ⊗ sigma_m), n,m over x,y,z.
struct CorrelationMatrix {
    std::array<std::array<double, 3>, 3> t{};

    double operator()(std::size_t n, std::size_t m) const { return t[n][m]; }
    Matrix<3> as_matrix() const;
};

/// Tolerance used by the MEMS predicate |C - C*|.
inline constexpr double kMemsTolerance = 1e-9;

struct MeasureBundle {
    double s_l = 0.0;
    double c = 0.0;
    double c_star = 0.0;
    double f = 0.0;
    double b = 0.0;
};

/// 4/3 (1 - Tr rho^2)
double linear_entropy(const DensityMatrix &rho);

/// Throws NotXState carrying the largest offending modulus.
XStateView as_x_state(const DensityMatrix &rho);
bool is_x_state(const DensityMatrix &rho);

/// 2 max(0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44))
double concurrence_x(const XStateView &v);

/// Wootters concurrence for any two-qubit state.
///
/// The Wootters lambdas are computed as singular values of
/// tau = V^T (sigma_y ⊗ sigma_y) V, where the columns of V are the
/// eigenvectors of rho scaled by sqrt(eigenvalue). This avoids square roots
/// of near-zero eigenvalues of rho * rho~, which would otherwise inject
/// ~1e-8 noise for rank-deficient states.
double concurrence_general(const DensityMatrix &rho);

/// PPT test: smallest eigenvalue of the partial transpose below -1e-10.
bool is_entangled(const DensityMatrix &rho);

/// Throws std::logic_error if a trace has an imaginary part above 1e-10.
CorrelationMatrix correlation_matrix(const DensityMatrix &rho);

/// Sum of singular values of T, in [0, 3].
double n_value(const CorrelationMatrix &t);

/// (1 + N/3) / 2. Not clamped at the classical 2/3.
double opt_fidelity(const DensityMatrix &rho);

double bell_x(const XStateView &v);

/// 2 sqrt(sum of the two largest eigenvalues of T^T T).
double bell_generic(const CorrelationMatrix &t);
double bell_generic(const DensityMatrix &rho);

/// lambda1 - lambda3 - 2 sqrt(lambda2 lambda4); signed.
double c_star(const Spectrum &s);

bool is_mems(const DensityMatrix &rho);

/// All scalar functionals of one state. C uses the Wootters route, B the
/// X-state formula when rho has X shape and the generic formula otherwise.
MeasureBundle measure_all(const DensityMatrix &rho);

} // namespace memslab
