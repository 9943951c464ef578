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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "memslab/ensemble.hpp"
#include "memslab/families.hpp"
#include "memslab/io.hpp"
#include "memslab/telesim.hpp"

namespace memslab {

// ---------------------------------------------------------------------------
// Family sweeps

SweepRow sweep_row(FamilyId id, double p);

/// `steps` equally spaced points from p_min to p_max inclusive. Throws
/// ContractViolation unless steps >= 2, p_min < p_max and the interval lies
/// inside the family's parameter range.
std::vector<SweepRow> sweep_family(FamilyId id, double p_min, double p_max, std::size_t steps);

// ---------------------------------------------------------------------------
// Figure datasets

enum class FigureId { kFig1, kFig2, kFig3, kFig4 };

std::string_view figure_token(FigureId id);
FigureId parse_figure(std::string_view token);

struct Series {
    std::string name;
    std::string source; // input file, or "builtin:<family>"
    std::vector<std::array<double, 2>> points;
};

struct ReferenceLine {
    char axis = 'y'; // 'x': vertical line x = value; 'y': horizontal line y = value
    double value = 0.0;
    std::string label;
};

struct FigureDataset {
    FigureId id = FigureId::kFig1;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<ReferenceLine> thresholds;
};

using LabeledSweep = std::pair<std::string, std::vector<SweepRow>>;
using LabeledEnsemble = std::pair<std::string, std::vector<StateRecord>>;

/// Sweeps behind the family-curve figures: werner, mjwk, rho1, rho2, rho3 on
/// `steps` points. rho2 covers only its MEMS range unless `full_range`.
std::vector<LabeledSweep> default_curve_sweeps(std::size_t steps = 1001, bool full_range = false);

/// fig1 (F vs S_L) or fig2 (F vs C). Points of each family are sorted by
/// the x coordinate, which eliminates the parameter numerically.
FigureDataset family_curves(FigureId id, const std::vector<LabeledSweep> &sweeps);

/// `k` records per rank chosen without replacement by a seeded shuffle keyed
/// (seed, domain_tag("subsample"), rank); original order is kept. Ranks with
/// at most k records are returned whole.
std::vector<StateRecord> subsample_per_rank(const std::vector<StateRecord> &records, std::size_t k,
                                            std::uint64_t seed);

/// fig3 (F vs S_L) or fig4 (signed C* vs B). One series per rank. fig4
/// thresholds use the full pooled ensemble even when the scatter is
/// subsampled.
FigureDataset ensemble_scatter(FigureId id, const std::vector<LabeledEnsemble> &inputs,
                               std::optional<std::size_t> subsample = std::nullopt, std::uint64_t seed = 0);

/// Writes <out> (CSV: series,source,x,y), <out>.json (labels, series
/// sources and counts, reference lines) and <out>.gp (gnuplot stub).
void write_figure(const FigureDataset &fig, const std::filesystem::path &out);

/// Linear interpolation of a series sorted by x; nullopt outside its x span.
std::optional<double> interpolate(const Series &s, double x);

// ---------------------------------------------------------------------------
// Teleportation oracle runs

enum class TelesimMode { kExact, kMonteCarlo };

struct TelesimResult {
    std::string family;
    double p = 0.0;
    double analytic_f = 0.0;
    double oracle_f = 0.0;
    double gap = 0.0; // analytic - oracle
    telesim::CorrectionTable table;
    TelesimMode mode = TelesimMode::kExact;
    std::optional<std::size_t> n_samples;
    std::optional<double> std_error;
    double fef_fidelity = 0.0; // (2 FEF + 1)/3
};

/// Optimizes the Pauli table exactly, then evaluates it either exactly or by
/// Monte Carlo.
TelesimResult run_telesim(FamilyId id, double p, TelesimMode mode, std::size_t n_samples = 100000,
                          std::uint64_t seed = 1);

nlohmann::json telesim_to_json(const TelesimResult &r);

} // namespace memslab
