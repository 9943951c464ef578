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

#include <gtest/gtest.h>

#include <cmath>

#include "memslab/families.hpp"
#include "memslab/measures.hpp"
#include "test_support.hpp"

using namespace memslab;
using namespace memslab::telesim;
namespace mt = memslab::testing;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1));
    }
    return out;
}

// Full 8x8 simulation: measure qubits (in, alice) in the Bell basis with
// projectors, correct bob, and read off the fidelity. Independent of the
// library's contraction and table code.
double oracle_fidelity(const Matrix4 &rho, const std::array<int, 4> &ops, const Vector<2> &phi) {
    using CMat = mt::CMat;
    CMat in(2, 2);
    in << phi[0] * std::conj(phi[0]), phi[0] * std::conj(phi[1]), phi[1] * std::conj(phi[0]),
        phi[1] * std::conj(phi[1]);
    const CMat total = mt::kron_eigen(in, mt::to_eigen(rho));
    const double h = 1.0 / std::sqrt(2.0);
    // Bell kets in the order Phi+, Phi-, Psi+, Psi-.
    const std::array<std::array<double, 4>, 4> bell{{{h, 0, 0, h}, {h, 0, 0, -h}, {0, h, h, 0}, {0, h, -h, 0}}};
    double fid = 0.0;
    for (int k = 0; k < 4; ++k) {
        Eigen::VectorXcd b(4);
        for (int i = 0; i < 4; ++i) {
            b(i) = bell[k][i];
        }
        const CMat proj = mt::kron_eigen(b * b.adjoint(), CMat::Identity(2, 2));
        const CMat post = proj * total * proj;
        // Trace out the first two qubits.
        CMat bob = CMat::Zero(2, 2);
        for (int a = 0; a < 4; ++a) {
            bob += post.block(2 * a, 2 * a, 2, 2);
        }
        const CMat u = mt::pauli_eigen(ops[k]);
        const CMat out = u * bob * u.adjoint();
        Eigen::Vector2cd v(phi[0], phi[1]);
        fid += (v.adjoint() * out * v)(0, 0).real();
    }
    return fid;
}

std::array<int, 4> ops_of(const CorrectionTable &t) {
    return {static_cast<int>(t.ops[0]), static_cast<int>(t.ops[1]), static_cast<int>(t.ops[2]),
            static_cast<int>(t.ops[3])};
}

DensityMatrix werner(double p) { return make_state(FamilyId::kWerner, p); }

} // namespace

TEST(CorrectionTable, CodesAndText) {
    for (int code = 0; code < 256; ++code) {
        EXPECT_EQ(CorrectionTable::from_code(code).code(), code);
    }
    EXPECT_THROW(CorrectionTable::from_code(256), ContractViolation);
    EXPECT_THROW(CorrectionTable::from_code(-1), ContractViolation);
    EXPECT_EQ(psi_plus_table().to_string(), "Phi+:X,Phi-:Y,Psi+:I,Psi-:Z");
}

TEST(Protocol, ConditionalStatesSumToBobMarginalTimesHalf) {
    mt::Gen g(51);
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix rho = DensityMatrix::from_matrix(g.density());
        const Vector<2> phi = g.qubit();
        double prob = 0.0;
        for (int k = 0; k < 4; ++k) {
            prob += bob_conditional_state(rho, phi, static_cast<BellOutcome>(k)).trace().real();
        }
        EXPECT_NEAR(prob, 1.0, 1e-12);
    }
}

TEST(Protocol, MatchesFullSimulation) {
    mt::Gen g(52);
    for (int i = 0; i < 100; ++i) {
        const Matrix4 m = g.density();
        const DensityMatrix rho = DensityMatrix::from_matrix(m);
        const Vector<2> phi = g.qubit();
        const CorrectionTable t = CorrectionTable::from_code(static_cast<int>(g.uniform(0, 256)));
        EXPECT_NEAR(teleport_fidelity(rho, t, phi), oracle_fidelity(m, ops_of(t), phi), 1e-12);
    }
}

TEST(Protocol, SixStateDesignIsNormalized) {
    for (const Vector<2> &v : six_state_design()) {
        EXPECT_NEAR(std::norm(v[0]) + std::norm(v[1]), 1.0, 1e-15);
    }
}

TEST(ChannelFidelity, SpecExamples) {
    EXPECT_NEAR(channel_avg_fidelity(make_state(FamilyId::kPsiPlus), psi_plus_table()), 1.0, 1e-14);
    for (int code : {0, 37, 255}) {
        EXPECT_NEAR(channel_avg_fidelity(make_state(FamilyId::kMaxMixed), CorrectionTable::from_code(code)), 0.5, 1e-14);
    }
    EXPECT_NEAR(optimize_corrections(werner(0.8)).fidelity, 0.9, 1e-12);
}

TEST(ChannelFidelity, DesignEqualsSphereAverage) {
    // Dense deterministic Bloch-sphere quadrature of the full simulation.
    mt::Gen g(53);
    for (int i = 0; i < 5; ++i) {
        const Matrix4 m = g.density();
        const CorrectionTable t = CorrectionTable::from_code(static_cast<int>(g.uniform(0, 256)));
        double acc = 0.0, wsum = 0.0;
        const int nt = 60, np = 60;
        for (int a = 0; a < nt; ++a) {
            const double theta = (a + 0.5) * M_PI / nt;
            for (int b = 0; b < np; ++b) {
                const double ph = (b + 0.5) * 2 * M_PI / np;
                const Vector<2> v{std::cos(theta / 2), std::polar(std::sin(theta / 2), ph)};
                acc += std::sin(theta) * oracle_fidelity(m, ops_of(t), v);
                wsum += std::sin(theta);
            }
        }
        EXPECT_NEAR(channel_avg_fidelity(DensityMatrix::from_matrix(m), t), acc / wsum, 1e-4);
    }
}

TEST(Optimize, SpecExamples) {
    for (double p : {0.4, 0.6, 0.8, 1.0}) {
        EXPECT_NEAR(optimize_corrections(werner(p)).fidelity, (1 + p) / 2, 1e-9);
    }
    EXPECT_NEAR(optimize_corrections(make_state(FamilyId::kMaxMixed)).fidelity, 0.5, 1e-12);
    const double r1 = optimize_corrections(make_state(FamilyId::kRho1, 0.5)).fidelity;
    EXPECT_LE(r1, 16.0 / 18.0 + 1e-9);
    EXPECT_NEAR(r1, 16.0 / 18.0, 1e-9);
}

TEST(Optimize, IsExhaustiveMaximum) {
    mt::Gen g(54);
    for (int i = 0; i < 5; ++i) {
        const DensityMatrix rho = DensityMatrix::from_matrix(g.density());
        const OptimalCorrection best = optimize_corrections(rho);
        double brute = -1.0;
        int first = -1;
        for (int code = 0; code < 256; ++code) {
            const double f = channel_avg_fidelity(rho, CorrectionTable::from_code(code));
            if (f > brute + 1e-15) {
                brute = f;
                first = code;
            }
        }
        EXPECT_NEAR(best.fidelity, brute, 1e-14);
        EXPECT_EQ(best.table.code(), first);
    }
}

// Property: soundness on random states, saturation and FEF agreement on the families.
TEST(OptimizeProperty, SoundnessAndSaturation) {
    mt::Gen g(55);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix rho = DensityMatrix::from_matrix(g.density());
        EXPECT_LE(optimize_corrections(rho).fidelity, opt_fidelity(rho) + 1e-9);
    }
    for (FamilyId id : kParametricFamilies) {
        for (double p : grid(0.0, 1.0, 41)) {
            const DensityMatrix rho = make_state(id, p);
            const double f = opt_fidelity(rho);
            SCOPED_TRACE(std::string(family_token(id)) + " p=" + std::to_string(p));
            EXPECT_NEAR(optimize_corrections(rho).fidelity, f, 1e-9);
            EXPECT_NEAR((2 * fully_entangled_fraction(rho) + 1) / 3, f, 1e-6);
        }
    }
}

TEST(Fef, SpecExamples) {
    EXPECT_NEAR(fully_entangled_fraction(make_state(FamilyId::kPsiPlus)), 1.0, 1e-12);
    EXPECT_NEAR(fully_entangled_fraction(werner(0.8)), 0.85, 1e-12);
    EXPECT_NEAR(fully_entangled_fraction(rho_m()), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR((2 * fully_entangled_fraction(rho_m()) + 1) / 3, 7.0 / 9.0, 1e-12);
}

TEST(Fef, MagicBasisIsUnitaryAndMaximallyEntangled) {
    const Matrix4 q = magic_basis();
    EXPECT_LT(max_abs_diff(q.adjoint() * q, Matrix4::identity()), 1e-15);
    for (std::size_t c = 0; c < 4; ++c) {
        Vector<4> v{q(0, c), q(1, c), q(2, c), q(3, c)};
        EXPECT_NEAR(concurrence_general(DensityMatrix::from_matrix(outer(v))), 1.0, 1e-12);
    }
}

TEST(Fef, IndependentSearchAgrees) {
    mt::Gen g(56);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = DensityMatrix::from_matrix(g.density());
        EXPECT_NEAR(fef_by_search(rho), fully_entangled_fraction(rho), 1e-6);
    }
    for (FamilyId id : kParametricFamilies) {
        const DensityMatrix rho = make_state(id, 0.7);
        EXPECT_NEAR(fef_by_search(rho), fully_entangled_fraction(rho), 1e-6);
    }
}

TEST(MonteCarlo, SpecExamples) {
    const TeleportReport w = mc_teleport(werner(0.8), optimize_corrections(werner(0.8)).table, 100000, 1);
    ASSERT_TRUE(w.std_error && w.n_samples);
    EXPECT_EQ(*w.n_samples, 100000u);
    EXPECT_EQ(w.method, Method::kMonteCarlo);
    EXPECT_LE(std::abs(w.avg_fidelity - 0.9), 3 * *w.std_error + 1e-12);

    const TeleportReport pp = mc_teleport(make_state(FamilyId::kPsiPlus), psi_plus_table(), 1000, 3);
    EXPECT_NEAR(pp.avg_fidelity, 1.0, 1e-12);
    EXPECT_NEAR(*pp.std_error, 0.0, 1e-12);

    const TeleportReport mm = mc_teleport(make_state(FamilyId::kMaxMixed), psi_plus_table(), 10000, 4);
    EXPECT_LE(std::abs(mm.avg_fidelity - 0.5), 3 * *mm.std_error + 1e-12);

    EXPECT_THROW(mc_teleport(werner(0.8), psi_plus_table(), 99, 1), ContractViolation);
}

TEST(MonteCarlo, ExactReportShape) {
    const TeleportReport r = exact_teleport(werner(0.8), psi_plus_table());
    EXPECT_EQ(r.method, Method::kExact2Design);
    EXPECT_FALSE(r.n_samples);
    EXPECT_FALSE(r.std_error);
}

TEST(MonteCarlo, DeterministicPerSeed) {
    const DensityMatrix rho = make_state(FamilyId::kRho1, 0.3);
    const auto a = mc_teleport(rho, psi_plus_table(), 500, 9);
    const auto b = mc_teleport(rho, psi_plus_table(), 500, 9);
    const auto c = mc_teleport(rho, psi_plus_table(), 500, 10);
    EXPECT_EQ(a.avg_fidelity, b.avg_fidelity);
    EXPECT_NE(a.avg_fidelity, c.avg_fidelity);
}

// Property: over 50 seeds the MC mean is unbiased within 3 pooled standard errors.
TEST(MonteCarloProperty, Unbiased) {
    const DensityMatrix rho = make_state(FamilyId::kRho3, 0.8);
    const OptimalCorrection best = optimize_corrections(rho);
    double sum = 0.0, var = 0.0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        const TeleportReport r = mc_teleport(rho, best.table, 2000, static_cast<std::uint64_t>(s));
        sum += r.avg_fidelity;
        var += *r.std_error * *r.std_error;
    }
    const double pooled = std::sqrt(var) / seeds;
    EXPECT_LE(std::abs(sum / seeds - best.fidelity), 3 * pooled);
}
