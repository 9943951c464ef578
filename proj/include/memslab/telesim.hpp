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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "memslab/qcore.hpp"

namespace memslab::telesim {

// Direct simulation of one-qubit teleportation through a two-qubit resource.
//
// Qubit order is (input, alice, bob). Alice measures (input, alice) in the
// Bell basis; Bob applies the Pauli correction the table assigns to the
// outcome. The resource's first qubit is Alice's, the second Bob's.

/// Bell-measurement outcomes, in table order.
enum class BellOutcome { kPhiPlus = 0, kPhiMinus = 1, kPsiPlus = 2, kPsiMinus = 3 };

enum class PauliOp { kI = 0, kX = 1, kY = 2, kZ = 3 };

/// Explicit outcome -> correction assignment. There are 4^4 = 256 tables;
/// code() packs them as sum ops[k] * 4^k.
struct CorrectionTable {
    std::array<PauliOp, 4> ops{PauliOp::kI, PauliOp::kI, PauliOp::kI, PauliOp::kI};

    static CorrectionTable from_code(int code);
    int code() const;
    PauliOp operator[](BellOutcome k) const { return ops[static_cast<std::size_t>(k)]; }
    /// e.g. "Phi+:X,Phi-:Y,Psi+:I,Psi-:Z"
    std::string to_string() const;

    bool operator==(const CorrectionTable &) const = default;
};

/// Table that teleports perfectly through |psi+>.
CorrectionTable psi_plus_table();

/// Normalized Bell state of (input, alice) for an outcome.
Vector<4> bell_ket(BellOutcome k);

/// Bob's unnormalized conditional state <beta_k| (|phi><phi| ⊗ rho) |beta_k>;
/// its trace is the outcome probability.
Matrix2 bob_conditional_state(const DensityMatrix &rho, const Vector<2> &phi, BellOutcome k);

/// Fidelity <phi| output |phi> after the full protocol for one input.
double teleport_fidelity(const DensityMatrix &rho, const CorrectionTable &table, const Vector<2> &phi);

/// The six Pauli eigenstates (a projective 2-design on the Bloch sphere).
std::array<Vector<2>, 6> six_state_design();

/// Input-averaged fidelity, exact via the six-state design.
double channel_avg_fidelity(const DensityMatrix &rho, const CorrectionTable &table);

struct OptimalCorrection {
    CorrectionTable table;
    double fidelity = 0.0;
};

/// Exhaustive search over all 256 tables; first table wins ties.
OptimalCorrection optimize_corrections(const DensityMatrix &rho);

enum class Method { kExact2Design, kMonteCarlo };

struct TeleportReport {
    double avg_fidelity = 0.0;
    Method method = Method::kExact2Design;
    std::optional<std::size_t> n_samples;
    std::optional<double> std_error;
};

TeleportReport exact_teleport(const DensityMatrix &rho, const CorrectionTable &table);

/// Inputs uniform on the Bloch sphere; sample i uses the stream
/// (seed, domain_tag("telesim-mc"), i). Throws ContractViolation for
/// n_samples < 100.
TeleportReport mc_teleport(const DensityMatrix &rho, const CorrectionTable &table, std::size_t n_samples,
                           std::uint64_t seed);

/// Magic basis as columns: (|00>+|11>)/√2, -i(|00>-|11>)/√2,
/// -i(|01>+|10>)/√2, (|01>-|10>)/√2. Every maximally entangled state is a
/// real combination of these up to a global phase.
Matrix4 magic_basis();

/// Largest eigenvalue of Re(Q^H rho Q) with Q the magic basis.
double fully_entangled_fraction(const DensityMatrix &rho);

/// Independent check of fully_entangled_fraction: maximizes
/// <Phi|rho|Phi> over |Phi> = (I ⊗ U)|Phi+>, U = Rz(a) Ry(b) Rz(c), by a
/// coarse grid followed by pattern-search refinement.
double fef_by_search(const DensityMatrix &rho);

} // namespace memslab::telesim
