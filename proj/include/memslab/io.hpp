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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "memslab/ensemble.hpp"

namespace memslab {

/// One grid point of a family sweep.
struct SweepRow {
    std::string family;
    double p = 0.0;
    double s_l = 0.0;
    double c = 0.0;
    double c_star = 0.0;
    double f = 0.0;
    double b = 0.0;
    int rank = 0;
    bool is_mems = false;
};

inline constexpr std::string_view kSweepHeader = "family,p,s_l,c,c_star,f,b,rank,is_mems";
inline constexpr std::string_view kEnsembleHeader = "index,rank,l1,l2,l3,l4,s_l,c,c_star,f,b,region";

/// 12 significant digits, shortest general form, '.' decimal point
/// regardless of the global locale.
std::string format_number(double v);

/// Throws std::runtime_error naming the field on malformed input.
double parse_number(std::string_view text);

void write_sweep_csv(std::ostream &os, std::span<const SweepRow> rows);
std::vector<SweepRow> read_sweep_csv(std::istream &is);

void write_ensemble_csv(std::ostream &os, std::span<const StateRecord> records);
std::string ensemble_csv(std::span<const StateRecord> records);
/// Reads back values at CSV precision (12 significant digits).
std::vector<StateRecord> read_ensemble_csv(std::istream &is);

nlohmann::json manifest_to_json(const EnsembleManifest &m);
EnsembleManifest manifest_from_json(const nlohmann::json &j);
/// <csv path>.manifest.json
std::filesystem::path manifest_path_for(const std::filesystem::path &csv_path);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

/// Writes via a temporary in the same directory then renames.
void write_text_file(const std::filesystem::path &path, std::string_view contents);
std::string read_text_file(const std::filesystem::path &path);

} // namespace memslab
