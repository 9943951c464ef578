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

#include "memslab/telesim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "memslab/random.hpp"

namespace memslab::telesim {

namespace {

constexpr std::array<BellOutcome, 4> kOutcomes{BellOutcome::kPhiPlus, BellOutcome::kPhiMinus, BellOutcome::kPsiPlus,
                                               BellOutcome::kPsiMinus};

Matrix2 pauli_of(PauliOp op) { return pauli::by_index(static_cast<int>(op)); }

// <phi| U sigma U^H |phi>
double corrected_overlap(const Matrix2 &sigma, PauliOp op, const Vector<2> &phi) {
    const Matrix2 u = pauli_of(op);
    const Vector<2> w = memslab::apply(u.adjoint(), phi); // U^H |phi>
    Complex acc{};
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            acc += std::conj(w[r]) * sigma(r, c) * w[c];
        }
    }
    return acc.real();
}

Vector<4> maximally_entangled(double a, double b, double c) {
    const Complex ea(std::cos(a / 2), -std::sin(a / 2));
    const Complex ec(std::cos(c / 2), -std::sin(c / 2));
    const double cb = std::cos(b / 2);
    const double sb = std::sin(b / 2);
    // U = Rz(a) Ry(b) Rz(c)
    Matrix2 u;
    u(0, 0) = ea * cb * ec;
    u(0, 1) = -ea * sb * std::conj(ec);
    u(1, 0) = std::conj(ea) * sb * ec;
    u(1, 1) = std::conj(ea) * cb * std::conj(ec);
    const double h = 1.0 / std::numbers::sqrt2;
    Vector<4> v{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            v[2 * i + j] = h * u(j, i);
        }
    }
    return v;
}

double overlap(const DensityMatrix &rho, const Vector<4> &v) {
    Complex acc{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            acc += std::conj(v[r]) * rho(r, c) * v[c];
        }
    }
    return acc.real();
}

} // namespace

CorrectionTable CorrectionTable::from_code(int code) {
    if (code < 0 || code >= 256) {
        throw ContractViolation("correction table code must be in [0, 256)");
    }
    CorrectionTable t;
    for (std::size_t k = 0; k < 4; ++k) {
        t.ops[k] = static_cast<PauliOp>(code % 4);
        code /= 4;
    }
    return t;
}

int CorrectionTable::code() const {
    int code = 0;
    for (std::size_t k = 4; k-- > 0;) {
        code = code * 4 + static_cast<int>(ops[k]);
    }
    return code;
}

std::string CorrectionTable::to_string() const {
    static constexpr const char *kOutcomeNames[4] = {"Phi+", "Phi-", "Psi+", "Psi-"};
    static constexpr const char *kOpNames[4] = {"I", "X", "Y", "Z"};
    std::string s;
    for (std::size_t k = 0; k < 4; ++k) {
        if (k) {
            s += ',';
        }
        s += kOutcomeNames[k];
        s += ':';
        s += kOpNames[static_cast<int>(ops[k])];
    }
    return s;
}

CorrectionTable psi_plus_table() {
    CorrectionTable t;
    t.ops = {PauliOp::kX, PauliOp::kY, PauliOp::kI, PauliOp::kZ};
    return t;
}

Vector<4> bell_ket(BellOutcome k) {
    const double h = 1.0 / std::numbers::sqrt2;
    switch (k) {
    case BellOutcome::kPhiPlus:
        return {h, 0.0, 0.0, h};
    case BellOutcome::kPhiMinus:
        return {h, 0.0, 0.0, -h};
    case BellOutcome::kPsiPlus:
        return {0.0, h, h, 0.0};
    case BellOutcome::kPsiMinus:
        return {0.0, h, -h, 0.0};
    }
    throw ContractViolation("unknown Bell outcome");
}

Matrix2 bob_conditional_state(const DensityMatrix &rho, const Vector<2> &phi, BellOutcome k) {
    // Full state Omega = |phi><phi| ⊗ rho on (input, alice, bob), index 4i + 2a + b.
    // sigma(b, b') = sum_{x, x'} conj(beta[x]) Omega(2x + b, 2x' + b') beta[x'], x = 2i + a.
    const Vector<4> beta = bell_ket(k);
    Matrix2 sigma;
    for (std::size_t x = 0; x < 4; ++x) {
        if (beta[x] == Complex{}) {
            continue;
        }
        const std::size_t i = x >> 1;
        const std::size_t a = x & 1U;
        for (std::size_t x2 = 0; x2 < 4; ++x2) {
            if (beta[x2] == Complex{}) {
                continue;
            }
            const std::size_t i2 = x2 >> 1;
            const std::size_t a2 = x2 & 1U;
            const Complex weight = std::conj(beta[x]) * beta[x2] * phi[i] * std::conj(phi[i2]);
            for (std::size_t b = 0; b < 2; ++b) {
                for (std::size_t b2 = 0; b2 < 2; ++b2) {
                    sigma(b, b2) += weight * rho(2 * a + b, 2 * a2 + b2);
                }
            }
        }
    }
    return sigma;
}

double teleport_fidelity(const DensityMatrix &rho, const CorrectionTable &table, const Vector<2> &phi) {
    double f = 0.0;
    for (BellOutcome k : kOutcomes) {
        f += corrected_overlap(bob_conditional_state(rho, phi, k), table[k], phi);
    }
    return f;
}

std::array<Vector<2>, 6> six_state_design() {
    const double h = 1.0 / std::numbers::sqrt2;
    const Complex i(0.0, 1.0);
    return {{
        {1.0, 0.0},
        {0.0, 1.0},
        {h, h},
        {h, -h},
        {h, h * i},
        {h, -h * i},
    }};
}

double channel_avg_fidelity(const DensityMatrix &rho, const CorrectionTable &table) {
    double sum = 0.0;
    for (const Vector<2> &phi : six_state_design()) {
        sum += teleport_fidelity(rho, table, phi);
    }
    return sum / 6.0;
}

OptimalCorrection optimize_corrections(const DensityMatrix &rho) {
    // Fidelity is additive over outcomes: tabulate the design-averaged
    // contribution of each (outcome, correction) pair once.
    std::array<std::array<double, 4>, 4> contribution{};
    const auto design = six_state_design();
    for (std::size_t k = 0; k < 4; ++k) {
        for (const Vector<2> &phi : design) {
            const Matrix2 sigma = bob_conditional_state(rho, phi, kOutcomes[k]);
            for (std::size_t u = 0; u < 4; ++u) {
                contribution[k][u] += corrected_overlap(sigma, static_cast<PauliOp>(u), phi) / 6.0;
            }
        }
    }

    OptimalCorrection best;
    best.fidelity = -1.0;
    for (int code = 0; code < 256; ++code) {
        const CorrectionTable t = CorrectionTable::from_code(code);
        double f = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            f += contribution[k][static_cast<std::size_t>(t.ops[k])];
        }
        if (f > best.fidelity) {
            best = {t, f};
        }
    }
    return best;
}

TeleportReport exact_teleport(const DensityMatrix &rho, const CorrectionTable &table) {
    TeleportReport r;
    r.avg_fidelity = channel_avg_fidelity(rho, table);
    r.method = Method::kExact2Design;
    return r;
}

TeleportReport mc_teleport(const DensityMatrix &rho, const CorrectionTable &table, std::size_t n_samples,
                           std::uint64_t seed) {
    if (n_samples < 100) {
        throw ContractViolation("Monte Carlo teleportation needs at least 100 samples");
    }
    constexpr std::uint64_t kDomain = domain_tag("telesim-mc");
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        Stream stream(seed, kDomain, i);
        const double z = 2.0 * stream.uniform() - 1.0;
        const double phase = 2.0 * std::numbers::pi * stream.uniform();
        const Vector<2> phi{std::sqrt(0.5 * (1.0 + z)),
                            std::polar(std::sqrt(std::max(0.0, 0.5 * (1.0 - z))), phase)};
        const double f = teleport_fidelity(rho, table, phi);
        const double delta = f - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (f - mean);
    }
    const double n = static_cast<double>(n_samples);
    TeleportReport r;
    r.avg_fidelity = mean;
    r.method = Method::kMonteCarlo;
    r.n_samples = n_samples;
    r.std_error = std::sqrt(std::max(0.0, m2 / (n - 1.0)) / n);
    return r;
}

Matrix4 magic_basis() {
    const double h = 1.0 / std::numbers::sqrt2;
    const Complex mi(0.0, -h);
    Matrix4 q;
    q(0, 0) = h;
    q(3, 0) = h;
    q(0, 1) = mi;
    q(3, 1) = -mi;
    q(1, 2) = mi;
    q(2, 2) = mi;
    q(1, 3) = h;
    q(2, 3) = -h;
    return q;
}

double fully_entangled_fraction(const DensityMatrix &rho) {
    const Matrix4 q = magic_basis();
    const Matrix4 in_magic = q.adjoint() * rho.matrix() * q;
    Matrix4 re;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            re(r, c) = in_magic(r, c).real();
        }
    }
    // Symmetrize away rounding before the Hermitian solver sees it.
    re = 0.5 * (re + re.transpose());
    return hermitian_eigenvalues(re)[0];
}

double fef_by_search(const DensityMatrix &rho) {
    constexpr int kGridAngles = 16;
    constexpr int kGridTilt = 9;
    constexpr int kStarts = 4;
    const double two_pi = 2.0 * std::numbers::pi;

    struct Point {
        double a, b, c, value;
    };
    std::vector<Point> grid;
    for (int ia = 0; ia < kGridAngles; ++ia) {
        for (int ib = 0; ib < kGridTilt; ++ib) {
            for (int ic = 0; ic < kGridAngles; ++ic) {
                const double a = two_pi * ia / kGridAngles;
                const double b = std::numbers::pi * ib / (kGridTilt - 1);
                const double c = two_pi * ic / kGridAngles;
                grid.push_back({a, b, c, overlap(rho, maximally_entangled(a, b, c))});
            }
        }
    }
    std::partial_sort(grid.begin(), grid.begin() + kStarts, grid.end(),
                      [](const Point &x, const Point &y) { return x.value > y.value; });

    double best = grid.front().value;
    for (int s = 0; s < kStarts; ++s) {
        Point p = grid[static_cast<std::size_t>(s)];
        double step = two_pi / kGridAngles;
        while (step > 1e-9) {
            bool moved = false;
            for (int axis = 0; axis < 3; ++axis) {
                for (double dir : {1.0, -1.0}) {
                    Point q = p;
                    (axis == 0 ? q.a : axis == 1 ? q.b : q.c) += dir * step;
                    q.value = overlap(rho, maximally_entangled(q.a, q.b, q.c));
                    if (q.value > p.value) {
                        p = q;
                        moved = true;
                    }
                }
            }
            if (!moved) {
                step *= 0.5;
            }
        }
        best = std::max(best, p.value);
    }
    return best;
}

} // namespace memslab::telesim
