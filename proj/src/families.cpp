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

#include <cmath>
#include <string>

namespace memslab {

namespace {

constexpr Interval kUnit{0.0, 1.0, true, true};

Matrix4 psi_plus_projector() { return outer(psi_plus_ket()); }

Matrix4 max_mixed() { return 0.25 * Matrix4::identity(); }

Matrix4 mjwk(double p) {
    const double gamma = p < kMjwkBranchPoint ? 1.0 / 3.0 : p / 2.0;
    Matrix4 m;
    m(0, 0) = gamma;
    m(1, 1) = 1.0 - 2.0 * gamma;
    m(3, 3) = gamma;
    m(0, 3) = p / 2.0;
    m(3, 0) = p / 2.0;
    return m;
}

void require_in(const Interval &range, double p, FamilyId id) {
    if (!std::isfinite(p) || !range.contains(p)) {
        throw ContractViolation("parameter p=" + std::to_string(p) + " outside the range of family " +
                                std::string(family_token(id)));
    }
}

} // namespace

std::string_view family_token(FamilyId id) {
    switch (id) {
    case FamilyId::kWerner:
        return "werner";
    case FamilyId::kMjwk:
        return "mjwk";
    case FamilyId::kRho1:
        return "rho1";
    case FamilyId::kRho2:
        return "rho2";
    case FamilyId::kRho3:
        return "rho3";
    case FamilyId::kRhoM:
        return "rhom";
    case FamilyId::kRhoG:
        return "rhog";
    case FamilyId::kMaxMixed:
        return "maxmixed";
    case FamilyId::kPsiPlus:
        return "psiplus";
    }
    return "?";
}

FamilyId parse_family(std::string_view token) {
    for (FamilyId id : kAllFamilies) {
        if (family_token(id) == token) {
            return id;
        }
    }
    throw ContractViolation("unknown family '" + std::string(token) + "'");
}

Vector<4> psi_plus_ket() {
    const double h = 1.0 / std::sqrt(2.0);
    return {0.0, h, h, 0.0};
}

DensityMatrix rho_m() {
    const double a = 1.0 / std::sqrt(3.0);
    Vector<8> w{};
    w[0b100] = a;
    w[0b010] = a;
    w[0b001] = a;
    return partial_trace(PureState3Q::normalized(w), 1);
}

DensityMatrix rho_g() {
    const double a = 1.0 / std::sqrt(2.0);
    Vector<8> g{};
    g[0b100] = a;
    g[0b011] = a;
    return partial_trace(PureState3Q::normalized(g), 2);
}

double rho3_entanglement_threshold() { return 3.0 * (2.0 * std::sqrt(5.0) - 1.0) / 19.0; }

DensityMatrix make_state(FamilyId id, double p) {
    const FamilySpec spec = family_spec(id);
    if (spec.takes_parameter) {
        require_in(spec.parameter_range, p, id);
    }
    switch (id) {
    case FamilyId::kWerner:
        return DensityMatrix::from_matrix((1.0 - p) * max_mixed() + p * psi_plus_projector());
    case FamilyId::kMjwk:
        return DensityMatrix::from_matrix(mjwk(p));
    case FamilyId::kRho1:
        return DensityMatrix::from_matrix((1.0 - p) * rho_m().matrix() + p * psi_plus_projector());
    case FamilyId::kRho2:
        return DensityMatrix::from_matrix((1.0 - p) * rho_g().matrix() + p * rho_m().matrix());
    case FamilyId::kRho3:
        return DensityMatrix::from_matrix((1.0 - p) * max_mixed() + p * rho_m().matrix());
    case FamilyId::kRhoM:
        return rho_m();
    case FamilyId::kRhoG:
        return rho_g();
    case FamilyId::kMaxMixed:
        return DensityMatrix::from_matrix(max_mixed());
    case FamilyId::kPsiPlus:
        return DensityMatrix::from_matrix(psi_plus_projector());
    }
    throw ContractViolation("unknown family");
}

ClosedForms closed_forms(FamilyId id) {
    ClosedForms cf;
    switch (id) {
    case FamilyId::kWerner:
        cf.s_l = [](double p) { return 1.0 - p * p; };
        cf.c = [](double p) { return std::max(0.0, (3.0 * p - 1.0) / 2.0); };
        cf.f = [](double p) { return (p + 1.0) / 2.0; };
        cf.b = [](double p) { return 2.0 * std::sqrt(2.0) * p; };
        return cf;
    case FamilyId::kMjwk:
        cf.s_l = [](double p) {
            return p < kMjwkBranchPoint ? (8.0 - 6.0 * p * p) / 9.0 : (8.0 * p - 8.0 * p * p) / 3.0;
        };
        cf.c = [](double p) { return p; };
        cf.f = [](double p) { return p < kMjwkBranchPoint ? (5.0 + 3.0 * p) / 9.0 : (2.0 * p + 1.0) / 3.0; };
        return cf;
    case FamilyId::kRho1:
        cf.s_l = [](double p) { return 8.0 / 27.0 * (1.0 - p) * (p + 2.0); };
        cf.c = [](double p) { return (2.0 + p) / 3.0; };
        cf.f = [](double p) { return (4.0 * p + 14.0) / 18.0; };
        return cf;
    case FamilyId::kRho2:
        cf.s_l = [](double p) { return 2.0 / 3.0 * (1.0 + 2.0 * p / 3.0 - 7.0 * p * p / 9.0); };
        cf.c = [](double p) { return 2.0 * p / 3.0; };
        cf.f = [](double p) { return (2.0 * p + 12.0) / 18.0; };
        return cf;
    case FamilyId::kRho3:
        cf.s_l = [](double p) { return 1.0 - 11.0 * p * p / 27.0; };
        // The tabulated expression goes negative below the entanglement
        // onset; concurrence itself is clamped at zero there.
        cf.c = [](double p) { return std::max(0.0, 2.0 * p / 3.0 - std::sqrt((1.0 - p) * (3.0 + p) / 12.0)); };
        cf.f = [](double p) { return (9.0 + 5.0 * p) / 18.0; };
        return cf;
    default:
        throw ContractViolation("family " + std::string(family_token(id)) + " has no closed forms");
    }
}

FamilySpec family_spec(FamilyId id) {
    FamilySpec s{id, kUnit, std::nullopt, std::nullopt, kUnit, "", true};
    switch (id) {
    case FamilyId::kWerner:
        s.entangled_range = Interval{1.0 / 3.0, 1.0, false, true};
        s.mems_range = s.entangled_range;
        s.rank_profile = "4 for p<1; 1 at p=1";
        break;
    case FamilyId::kMjwk:
        s.entangled_range = Interval{0.0, 1.0, false, true};
        s.mems_range = s.entangled_range;
        s.rank_profile = "3 for p<2/3; 2 for 2/3<=p<1; 1 at p=1";
        break;
    case FamilyId::kRho1:
        s.entangled_range = kUnit;
        s.mems_range = kUnit;
        s.rank_profile = "2 for p<1; 1 at p=1";
        break;
    case FamilyId::kRho2:
        s.entangled_range = Interval{0.0, 1.0, false, true};
        s.mems_range = Interval{0.6, 1.0, true, true};
        s.study_range = *s.mems_range;
        s.rank_profile = "2 at p=0; 3 for 0<p<1; 2 at p=1";
        break;
    case FamilyId::kRho3:
        s.entangled_range = Interval{rho3_entanglement_threshold(), 1.0, false, true};
        s.mems_range = s.entangled_range;
        s.rank_profile = "4 for p<1; 2 at p=1";
        break;
    case FamilyId::kRhoM:
        s.entangled_range = kUnit;
        s.mems_range = kUnit;
        s.rank_profile = "2";
        s.takes_parameter = false;
        break;
    case FamilyId::kPsiPlus:
        s.entangled_range = kUnit;
        s.mems_range = kUnit;
        s.rank_profile = "1";
        s.takes_parameter = false;
        break;
    case FamilyId::kRhoG:
        s.rank_profile = "2";
        s.takes_parameter = false;
        break;
    case FamilyId::kMaxMixed:
        s.rank_profile = "4";
        s.takes_parameter = false;
        break;
    }
    return s;
}

} // namespace memslab
