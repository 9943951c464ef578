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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace memslab::verify {

/// One measured quantity compared against a bound.
struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct CriterionResult {
    int number = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool passed() const;
};

struct Options {
    std::size_t ensemble_count = 30000;
    std::uint64_t ensemble_seed = 42;
    std::size_t mc_samples = 100000;
    std::uint64_t mc_seed = 1;
    std::vector<int> thread_counts{1, 2, 4};
};

CriterionResult mixed_family_closed_forms();
CriterionResult werner_mjwk_closed_forms();
CriterionResult rho1_mjwk_coincidence();
CriterionResult endpoint_identities();
CriterionResult thresholds_by_bisection();
CriterionResult ensemble_invariants(const Options &opt);
CriterionResult cross_validation_oracles();
CriterionResult teleportation_oracle(const Options &opt);
CriterionResult gisin_constant();
CriterionResult determinism(const Options &opt);

/// All ten criteria, in order.
std::vector<CriterionResult> run_all(const Options &opt = {});

/// One PASS/FAIL line per criterion followed by its indented checks.
/// Returns true when every criterion passed.
bool print_report(std::ostream &os, const std::vector<CriterionResult> &results);

} // namespace memslab::verify
