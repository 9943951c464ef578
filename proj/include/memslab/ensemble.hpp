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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "memslab/qcore.hpp"
#include "memslab/random.hpp"

namespace memslab {

/// Nonlocality regions, in order of increasing degree of nonlocality.
///   R1  not entangled
///   R2  entangled, F <= 2/3 (useless for teleportation)
///   R3  F > 2/3, no CHSH violation (B <= 2)
///   R4  B > 2, F below the Gisin bound
///   R5  F at or above the Gisin bound
enum class Region { kR1 = 1, kR2, kR3, kR4, kR5 };

std::string_view region_token(Region r);
/// Throws ContractViolation on anything but "R1".."R5".
Region parse_region(std::string_view token);

/// 1/2 + sqrt(3/2) arctan(sqrt 2) / pi
double gisin_bound();

struct RegionThresholds {
    double f_classical = 2.0 / 3.0;
    double b_classical = 2.0;
    double f_gisin = gisin_bound();
};

struct StateRecord {
    std::uint64_t index = 0;
    int rank = 0;
    Spectrum lambda;
    double s_l = 0.0;
    double c = 0.0;
    double c_star = 0.0;
    double f = 0.0;
    double b = 0.0;
    Region region = Region::kR1;
};

struct EnsembleManifest {
    std::uint64_t seed = 0;
    int rank = 0;
    std::size_t count = 0;
    std::string generator_version;
    std::string created; // ISO-8601, UTC
};

struct Ensemble {
    EnsembleManifest manifest;
    std::vector<StateRecord> records;
};

/// Version string written into manifests; covers the stream, the spectrum
/// law and the record layout.
inline constexpr std::string_view kGeneratorVersion = "memslab-ensemble-v1/memslab-stream-splitmix64-v1";

/// Flat Dirichlet draw on the (rank-1)-simplex, sorted descending and padded
/// with zeros. Draws with an entry <= 1e-10 are redrawn from the same stream.
Spectrum sample_spectrum(int rank, Stream &stream);

/// lambda1 |psi+><psi+| + lambda2 |00><00| + lambda3 |psi-><psi-| + lambda4 |11><11|
DensityMatrix build_ih_state(const Spectrum &spec);

Region classify_region(const StateRecord &rec, const RegionThresholds &th = {});

/// Record `index` of the (seed, rank) ensemble; depends on nothing else.
StateRecord make_record(std::uint64_t seed, int rank, std::uint64_t index, const RegionThresholds &th = {});

/// Serial reference generator.
std::vector<StateRecord> generate_records_serial(int rank, std::size_t count, std::uint64_t seed);

/// OpenMP generator. threads <= 0 uses the runtime default. Output is
/// identical to generate_records_serial for every thread count.
std::vector<StateRecord> generate_records(int rank, std::size_t count, std::uint64_t seed, int threads = 0);

/// Records plus a manifest stamped with the current UTC time.
Ensemble generate_ensemble(int rank, std::size_t count, std::uint64_t seed, int threads = 0);

struct CmaxEstimate {
    double f0 = 0.0;
    double c_max = 0.0;           // largest c among records with |f - f0| <= band
    double c_rank2_analytic = 0.0; // (3 f0 - 1)/2
    std::size_t band_count = 0;
};

struct CmaxThresholds {
    CmaxEstimate classical; // F = 2/3
    CmaxEstimate gisin;     // F = Gisin bound
};

/// Throws std::runtime_error when no record falls into a band.
CmaxThresholds cmax_thresholds(std::span<const StateRecord> pooled, const RegionThresholds &th = {},
                               double band = 1e-3);

} // namespace memslab
