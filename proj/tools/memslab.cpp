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

// memslab command line: family sweeps, random ensembles, figure datasets,
// the acceptance report and the teleportation oracle.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "memslab/ensemble.hpp"
#include "memslab/families.hpp"
#include "memslab/io.hpp"
#include "memslab/pipeline.hpp"
#include "memslab/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct SweepArgs {
    std::string family;
    std::optional<double> p_min;
    std::optional<double> p_max;
    std::size_t steps = 101;
    std::string out;
};

struct EnsembleArgs {
    int rank = 0;
    std::size_t count = 30000;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out;
};

struct FiguresArgs {
    std::string id;
    std::vector<std::string> inputs;
    std::string out;
    std::optional<std::size_t> subsample;
    std::uint64_t seed = 0;
    std::size_t steps = 1001;
    bool full_range = false;
};

struct TelesimArgs {
    std::string family;
    double p = 0.0;
    std::string mode = "exact";
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
};

int run_sweep(const SweepArgs &a) {
    const memslab::FamilyId id = memslab::parse_family(a.family);
    const memslab::FamilySpec spec = memslab::family_spec(id);
    const double lo = a.p_min.value_or(spec.study_range.lo);
    const double hi = a.p_max.value_or(spec.study_range.hi);
    const auto rows = memslab::sweep_family(id, lo, hi, a.steps);
    std::ostringstream os;
    memslab::write_sweep_csv(os, rows);
    memslab::write_text_file(a.out, os.str());
    std::cout << "wrote " << rows.size() << " rows to " << a.out << '\n';
    return kExitOk;
}

int run_ensemble(const EnsembleArgs &a) {
    const memslab::Ensemble ens = memslab::generate_ensemble(a.rank, a.count, a.seed, a.threads);
    const std::string csv = memslab::ensemble_csv(ens.records);
    memslab::write_text_file(a.out, csv);
    memslab::write_text_file(memslab::manifest_path_for(a.out), memslab::manifest_to_json(ens.manifest).dump(2) + "\n");
    std::cout << "wrote " << ens.records.size() << " states to " << a.out << "\nsha256 " << memslab::sha256_hex(csv)
              << '\n';
    return kExitOk;
}

int run_figures(const FiguresArgs &a) {
    const memslab::FigureId id = memslab::parse_figure(a.id);
    memslab::FigureDataset fig;
    if (id == memslab::FigureId::kFig1 || id == memslab::FigureId::kFig2) {
        std::vector<memslab::LabeledSweep> sweeps;
        if (a.inputs.empty()) {
            sweeps = memslab::default_curve_sweeps(a.steps, a.full_range);
        }
        for (const std::string &path : a.inputs) {
            std::istringstream is(memslab::read_text_file(path));
            sweeps.emplace_back(path, memslab::read_sweep_csv(is));
        }
        fig = memslab::family_curves(id, sweeps);
    } else {
        if (a.inputs.empty()) {
            throw CLI::ValidationError("--in", "fig3 and fig4 need at least one ensemble CSV");
        }
        std::vector<memslab::LabeledEnsemble> inputs;
        for (const std::string &path : a.inputs) {
            std::istringstream is(memslab::read_text_file(path));
            inputs.emplace_back(path, memslab::read_ensemble_csv(is));
        }
        fig = memslab::ensemble_scatter(id, inputs, a.subsample, a.seed);
    }
    memslab::write_figure(fig, a.out);
    std::size_t points = 0;
    for (const auto &s : fig.series) {
        points += s.points.size();
    }
    std::cout << "wrote " << fig.series.size() << " series (" << points << " points) to " << a.out << '\n';
    return kExitOk;
}

int run_verify() {
    const auto results = memslab::verify::run_all();
    return memslab::verify::print_report(std::cout, results) ? kExitOk : kExitVerifyFailed;
}

int run_telesim(const TelesimArgs &a) {
    const memslab::FamilyId id = memslab::parse_family(a.family);
    const auto mode = a.mode == "mc" ? memslab::TelesimMode::kMonteCarlo : memslab::TelesimMode::kExact;
    const memslab::TelesimResult r = memslab::run_telesim(id, a.p, mode, a.samples, a.seed);
    std::cout << memslab::telesim_to_json(r).dump(2) << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Two-qubit MEMS analysis toolkit"};
    app.require_subcommand(1);

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Evaluate a state family on a parameter grid");
    sweep_cmd->add_option("--family", sweep.family, "werner, mjwk, rho1, rho2, rho3, ...")->required();
    sweep_cmd->add_option("--p-min", sweep.p_min, "Lower end of the grid (default: family study range)");
    sweep_cmd->add_option("--p-max", sweep.p_max, "Upper end of the grid (default: family study range)");
    sweep_cmd->add_option("--steps", sweep.steps, "Number of grid points")->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out, "Output CSV")->required();

    EnsembleArgs ens;
    auto *ens_cmd = app.add_subcommand("ensemble", "Sample random states of a fixed rank");
    ens_cmd->add_option("--rank", ens.rank, "2, 3 or 4")->required()->check(CLI::Range(2, 4));
    ens_cmd->add_option("--count", ens.count, "Number of states")->capture_default_str()->check(CLI::PositiveNumber);
    ens_cmd->add_option("--seed", ens.seed, "Stream seed")->required();
    ens_cmd->add_option("--threads", ens.threads, "Worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    ens_cmd->add_option("--out", ens.out, "Output CSV; manifest goes to <out>.manifest.json")->required();

    FiguresArgs figs;
    auto *fig_cmd = app.add_subcommand("figures", "Build plot-ready figure datasets");
    fig_cmd->add_option("--id", figs.id, "fig1, fig2, fig3 or fig4")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
    fig_cmd->add_option("--in", figs.inputs, "Sweep CSVs (fig1, fig2) or ensemble CSVs (fig3, fig4)")
        ->check(CLI::ExistingFile);
    fig_cmd->add_option("--out", figs.out, "Output CSV; also writes <out>.json and <out>.gp")->required();
    fig_cmd->add_option("--subsample", figs.subsample, "Keep this many states per rank")->check(CLI::PositiveNumber);
    fig_cmd->add_option("--seed", figs.seed, "Subsample seed")->capture_default_str();
    fig_cmd->add_option("--steps", figs.steps, "Grid points for built-in family sweeps")->capture_default_str();
    fig_cmd->add_flag("--full-range", figs.full_range, "Built-in rho2 sweep over [0,1] instead of its MEMS range");

    auto *verify_cmd = app.add_subcommand("verify", "Run the acceptance checks");

    TelesimArgs tele;
    auto *tele_cmd = app.add_subcommand("telesim", "Teleportation oracle for one state");
    tele_cmd->add_option("--family", tele.family, "State family token")->required();
    tele_cmd->add_option("--p", tele.p, "Family parameter")->capture_default_str();
    tele_cmd->add_option("--mode", tele.mode, "exact or mc")
        ->capture_default_str()
        ->check(CLI::IsMember({"exact", "mc"}));
    tele_cmd->add_option("--samples", tele.samples, "Monte Carlo samples")->capture_default_str();
    tele_cmd->add_option("--seed", tele.seed, "Monte Carlo seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sweep_cmd->parsed()) {
            return run_sweep(sweep);
        }
        if (ens_cmd->parsed()) {
            return run_ensemble(ens);
        }
        if (fig_cmd->parsed()) {
            return run_figures(figs);
        }
        if (verify_cmd->parsed()) {
            return run_verify();
        }
        if (tele_cmd->parsed()) {
            return run_telesim(tele);
        }
    } catch (const std::exception &e) {
        std::cerr << "memslab: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
