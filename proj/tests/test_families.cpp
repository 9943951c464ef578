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

#include "memslab/families.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <numbers>

#include "memslab/measures.hpp"

using namespace memslab;

namespace {

struct Tabulated {
    FamilyId id;
    double lo;
    std::function<double(double)> s_l, c, f;
};

// Expressions typed in independently of the library's closed_forms().
std::vector<Tabulated> tabulated() {
    return {
        {FamilyId::kRho1, 0.0, [](double p) { return 8.0 / 27.0 * (1 - p) * (p + 2); },
         [](double p) { return (2 + p) / 3; }, [](double p) { return (4 * p + 14) / 18; }},
        {FamilyId::kRho2, 0.6, [](double p) { return 2.0 / 3.0 * (1 + 2 * p / 3 - 7 * p * p / 9); },
         [](double p) { return 2 * p / 3; }, [](double p) { return (2 * p + 12) / 18; }},
        {FamilyId::kRho3, 0.0, [](double p) { return 1 - 11 * p * p / 27; },
         [](double p) { return std::max(0.0, 2 * p / 3 - std::sqrt((1 - p) * (3 + p) / 12)); },
         [](double p) { return (9 + 5 * p) / 18; }},
        {FamilyId::kWerner, 0.0, [](double p) { return 1 - p * p; },
         [](double p) { return std::max(0.0, (3 * p - 1) / 2); }, [](double p) { return (p + 1) / 2; }},
        {FamilyId::kMjwk, 0.0,
         [](double p) { return p < 2.0 / 3 ? (8 - 6 * p * p) / 9 : 8 * p * (1 - p) / 3; },
         [](double p) { return p; }, [](double p) { return p < 2.0 / 3 ? (5 + 3 * p) / 9 : (1 + 2 * p) / 3; }},
    };
}

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1));
    }
    return out;
}

int expected_rank(FamilyId id, double p) {
    switch (id) {
    case FamilyId::kWerner: return p < 1 ? 4 : 1;
    case FamilyId::kMjwk: return p < 2.0 / 3 ? 3 : (p < 1 ? 2 : 1);
    case FamilyId::kRho1: return p < 1 ? 2 : 1;
    case FamilyId::kRho2: return p == 0 || p == 1 ? 2 : 3;
    case FamilyId::kRho3: return p < 1 ? 4 : 2;
    default: return 0;
    }
}

} // namespace

TEST(Tokens, RoundTrip) {
    const std::vector<std::string> expected{"werner", "mjwk", "rho1", "rho2", "rho3", "rhom", "rhog", "maxmixed", "psiplus"};
    std::vector<std::string> got;
    for (FamilyId id : kAllFamilies) {
        got.emplace_back(family_token(id));
        EXPECT_EQ(parse_family(family_token(id)), id);
    }
    EXPECT_EQ(got, expected);
    EXPECT_THROW(parse_family("Werner"), ContractViolation);
    EXPECT_THROW(parse_family(""), ContractViolation);
}

TEST(MakeState, SpecExamples) {
    EXPECT_LT(max_abs_diff(make_state(FamilyId::kWerner, 0.0).matrix(), 0.25 * Matrix4::identity()), 1e-15);
    const Matrix4 m = rho_m().matrix();
    EXPECT_LT(max_abs_diff(make_state(FamilyId::kRho1, 0.0).matrix(), m), 1e-12);
    EXPECT_LT(max_abs_diff(make_state(FamilyId::kRho2, 1.0).matrix(), m), 1e-12);
    EXPECT_LT(max_abs_diff(make_state(FamilyId::kRho3, 1.0).matrix(), m), 1e-12);

    Matrix4 mj = Matrix4::diagonal({1.0 / 3, 1.0 / 3, 0.0, 1.0 / 3});
    mj(0, 3) = mj(3, 0) = 0.25;
    EXPECT_LT(max_abs_diff(make_state(FamilyId::kMjwk, 0.5).matrix(), mj), 1e-15);
}

TEST(MakeState, ConstantStates) {
    Matrix4 m = Matrix4::diagonal({1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0});
    m(1, 2) = m(2, 1) = 1.0 / 3;
    EXPECT_LT(max_abs_diff(rho_m().matrix(), m), 1e-15);
    EXPECT_LT(max_abs_diff(rho_g().matrix(), Matrix4::diagonal({0, 0.5, 0.5, 0})), 1e-15);
    // Constant states ignore p, even outside [0, 1].
    EXPECT_EQ(make_state(FamilyId::kRhoM, 0.3).matrix(), rho_m().matrix());
    EXPECT_EQ(make_state(FamilyId::kRhoG, 7.0).matrix(), rho_g().matrix());
    Matrix4 pp;
    pp(1, 1) = pp(2, 2) = pp(1, 2) = pp(2, 1) = 0.5;
    EXPECT_LT(max_abs_diff(make_state(FamilyId::kPsiPlus).matrix(), pp), 1e-15);
}

TEST(MakeState, MjwkBranchPointUsesRankTwoBranch) {
    const DensityMatrix at = make_state(FamilyId::kMjwk, 2.0 / 3.0);
    EXPECT_NEAR(at(0, 0).real(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(at(1, 1).real(), 1.0 / 3.0, 1e-15);
    EXPECT_EQ(rank_of(at), 2);
    EXPECT_EQ(rank_of(make_state(FamilyId::kMjwk, 0.6)), 3);
}

TEST(MakeState, RejectsOutOfRange) {
    for (FamilyId id : kParametricFamilies) {
        EXPECT_THROW(make_state(id, -0.01), ContractViolation);
        EXPECT_THROW(make_state(id, 1.01), ContractViolation);
        EXPECT_THROW(make_state(id, std::nan("")), ContractViolation);
    }
}

TEST(ClosedForms, MatchNumericsAndTable) {
    for (const Tabulated &t : tabulated()) {
        const ClosedForms cf = closed_forms(t.id);
        for (double p : grid(t.lo, 1.0, 101)) {
            const DensityMatrix rho = make_state(t.id, p);
            SCOPED_TRACE(std::string(family_token(t.id)) + " p=" + std::to_string(p));
            EXPECT_NEAR(linear_entropy(rho), t.s_l(p), 1e-9);
            EXPECT_NEAR(concurrence_general(rho), t.c(p), 1e-9);
            EXPECT_NEAR(opt_fidelity(rho), t.f(p), 1e-9);
            EXPECT_NEAR(cf.s_l(p), t.s_l(p), 1e-14);
            EXPECT_NEAR(cf.c(p), t.c(p), 1e-14);
            EXPECT_NEAR(cf.f(p), t.f(p), 1e-14);
        }
    }
    EXPECT_THROW(closed_forms(FamilyId::kRhoG), ContractViolation);
}

TEST(ClosedForms, WernerBell) {
    const ClosedForms cf = closed_forms(FamilyId::kWerner);
    ASSERT_TRUE(cf.b.has_value());
    for (double p : grid(0.0, 1.0, 101)) {
        EXPECT_NEAR(bell_x(as_x_state(make_state(FamilyId::kWerner, p))), 2 * std::numbers::sqrt2 * p, 1e-9);
        EXPECT_NEAR((*cf.b)(p), 2 * std::numbers::sqrt2 * p, 1e-15);
    }
}

TEST(ClosedForms, MjwkContinuityAtBranchPoint) {
    const ClosedForms cf = closed_forms(FamilyId::kMjwk);
    const double below = std::nextafter(2.0 / 3.0, 0.0);
    EXPECT_NEAR(cf.s_l(below), 16.0 / 27.0, 1e-12);
    EXPECT_NEAR(cf.s_l(2.0 / 3.0), 16.0 / 27.0, 1e-12);
    EXPECT_NEAR(cf.f(below), 7.0 / 9.0, 1e-12);
    EXPECT_NEAR(cf.f(2.0 / 3.0), 7.0 / 9.0, 1e-12);
}

TEST(FamilySpec, SpecExamples) {
    const FamilySpec w = family_spec(FamilyId::kWerner);
    ASSERT_TRUE(w.entangled_range);
    EXPECT_EQ(w.entangled_range->lo, 1.0 / 3.0);
    EXPECT_FALSE(w.entangled_range->lo_closed);
    EXPECT_TRUE(w.entangled_range->hi_closed);

    const FamilySpec r3 = family_spec(FamilyId::kRho3);
    ASSERT_TRUE(r3.entangled_range);
    EXPECT_NEAR(r3.entangled_range->lo, 0.548232, 1e-6);
    EXPECT_NEAR(r3.entangled_range->lo, 3.0 / (1.0 + 2.0 * std::sqrt(5.0)), 1e-15);

    const FamilySpec r2 = family_spec(FamilyId::kRho2);
    ASSERT_TRUE(r2.mems_range);
    EXPECT_EQ(r2.mems_range->lo, 0.6);
    EXPECT_TRUE(r2.mems_range->lo_closed);
    EXPECT_EQ(r2.mems_range->hi, 1.0);
    EXPECT_EQ(r2.study_range.lo, 0.6);

    EXPECT_FALSE(family_spec(FamilyId::kRhoG).entangled_range);
    EXPECT_FALSE(family_spec(FamilyId::kMaxMixed).mems_range);
    EXPECT_FALSE(family_spec(FamilyId::kRhoM).takes_parameter);
}

// Property: the declared entangled and MEMS ranges agree with the measures on a grid.
TEST(FamilySpecProperty, RangesMatchMeasures) {
    for (FamilyId id : kParametricFamilies) {
        const FamilySpec s = family_spec(id);
        for (double p : grid(0.0, 1.0, 201)) {
            const DensityMatrix rho = make_state(id, p);
            const bool ent = s.entangled_range && s.entangled_range->contains(p);
            const bool mems = s.mems_range && s.mems_range->contains(p);
            SCOPED_TRACE(std::string(family_token(id)) + " p=" + std::to_string(p));
            EXPECT_EQ(is_entangled(rho), ent);
            EXPECT_EQ(is_mems(rho), mems);
        }
    }
}

// Property: rank profile on a grid.
TEST(FamilySpecProperty, RankProfile) {
    for (FamilyId id : kParametricFamilies) {
        for (double p : grid(0.0, 1.0, 101)) {
            EXPECT_EQ(rank_of(make_state(id, p)), expected_rank(id, p)) << family_token(id) << " p=" << p;
        }
    }
}

TEST(Intervals, ContainmentRespectsOpenEnds) {
    const Interval open_lo{1.0 / 3.0, 1.0, false, true};
    EXPECT_FALSE(open_lo.contains(1.0 / 3.0));
    EXPECT_TRUE(open_lo.contains(1.0));
    EXPECT_TRUE(Interval{}.contains(0.0));
    const Interval unit{0.0, 1.0, true, true};
    EXPECT_TRUE(unit.contains(open_lo));
    EXPECT_FALSE(open_lo.contains(unit));
    EXPECT_TRUE(open_lo.contains(Interval{0.5, 1.0, true, true}));
}
