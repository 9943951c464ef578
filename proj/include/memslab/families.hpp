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
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "memslab/qcore.hpp"

namespace memslab {

enum class FamilyId { kWerner, kMjwk, kRho1, kRho2, kRho3, kRhoM, kRhoG, kMaxMixed, kPsiPlus };

inline constexpr std::array<FamilyId, 9> kAllFamilies{
    FamilyId::kWerner, FamilyId::kMjwk,     FamilyId::kRho1,   FamilyId::kRho2,    FamilyId::kRho3,
    FamilyId::kRhoM,   FamilyId::kRhoG,     FamilyId::kMaxMixed, FamilyId::kPsiPlus};

/// Families that come with closed-form S_L, C and F.
inline constexpr std::array<FamilyId, 5> kParametricFamilies{FamilyId::kWerner, FamilyId::kMjwk, FamilyId::kRho1,
                                                             FamilyId::kRho2, FamilyId::kRho3};

/// Stable CLI token: werner, mjwk, rho1, rho2, rho3, rhom, rhog, maxmixed, psiplus.
std::string_view family_token(FamilyId id);
/// Throws ContractViolation on an unknown token.
FamilyId parse_family(std::string_view token);

/// Parameter interval with independently open or closed ends.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(double p) const {
        return (lo_closed ? p >= lo : p > lo) && (hi_closed ? p <= hi : p < hi);
    }
    bool contains(const Interval &o) const {
        return (o.lo > lo || (o.lo == lo && (lo_closed || !o.lo_closed))) &&
               (o.hi < hi || (o.hi == hi && (hi_closed || !o.hi_closed)));
    }
};

struct FamilySpec {
    FamilyId id;
    Interval parameter_range;
    std::optional<Interval> entangled_range; // nullopt: never entangled
    std::optional<Interval> mems_range;      // nullopt: never MEMS
    /// Default sweep range; narrower than parameter_range for rho2 (MEMS part only).
    Interval study_range;
    std::string rank_profile;
    bool takes_parameter = true;
};

/// Analytic S_L(p), C(p), F(p) and, for Werner only, B(p).
struct ClosedForms {
    std::function<double(double)> s_l;
    std::function<double(double)> c;
    std::function<double(double)> f;
    std::optional<std::function<double(double)>> b;
};

/// (|01> + |10>)/sqrt(2)
Vector<4> psi_plus_ket();
/// Tr_1 of the W-state projector.
DensityMatrix rho_m();
/// Tr_2 of the projector on (|100> + |011>)/sqrt(2).
DensityMatrix rho_g();

/// 3(2 sqrt5 - 1)/19, entanglement onset of rho3.
double rho3_entanglement_threshold();

/// MJWK switches to gamma = p/2 at and above this parameter.
inline constexpr double kMjwkBranchPoint = 2.0 / 3.0;

/// Throws ContractViolation if p is outside the family's parameter range.
/// Constant states (rhom, rhog, maxmixed, psiplus) ignore p.
DensityMatrix make_state(FamilyId id, double p = 0.0);

/// Throws ContractViolation for families without closed forms.
ClosedForms closed_forms(FamilyId id);

FamilySpec family_spec(FamilyId id);

} // namespace memslab
