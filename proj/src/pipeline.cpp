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

#include "memslab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <locale>
#include <map>
#include <numeric>
#include <sstream>

#include "memslab/measures.hpp"
#include "memslab/random.hpp"

namespace memslab {

SweepRow sweep_row(FamilyId id, double p) {
    const DensityMatrix rho = make_state(id, p);
    const MeasureBundle m = measure_all(rho);
    SweepRow row;
    row.family = std::string(family_token(id));
    row.p = p;
    row.s_l = m.s_l;
    row.c = m.c;
    row.c_star = m.c_star;
    row.f = m.f;
    row.b = m.b;
    row.rank = rank_of(rho);
    row.is_mems = m.c > 0.0 && std::abs(m.c - m.c_star) <= kMemsTolerance;
    return row;
}

std::vector<SweepRow> sweep_family(FamilyId id, double p_min, double p_max, std::size_t steps) {
    if (steps < 2) {
        throw ContractViolation("a sweep needs at least 2 steps");
    }
    if (!(p_min < p_max)) {
        throw ContractViolation("sweep needs p_min < p_max");
    }
    const FamilySpec spec = family_spec(id);
    if (!spec.parameter_range.contains(Interval{p_min, p_max, true, true})) {
        throw ContractViolation("sweep range [" + format_number(p_min) + ", " + format_number(p_max) +
                                "] is outside the parameter range of " + std::string(family_token(id)));
    }
    std::vector<SweepRow> rows;
    rows.reserve(steps);
    const double span = p_max - p_min;
    for (std::size_t i = 0; i < steps; ++i) {
        const double p = i + 1 == steps ? p_max : p_min + span * static_cast<double>(i) / static_cast<double>(steps - 1);
        rows.push_back(sweep_row(id, p));
    }
    return rows;
}

std::string_view figure_token(FigureId id) {
    switch (id) {
    case FigureId::kFig1:
        return "fig1";
    case FigureId::kFig2:
        return "fig2";
    case FigureId::kFig3:
        return "fig3";
    case FigureId::kFig4:
        return "fig4";
    }
    return "?";
}

FigureId parse_figure(std::string_view token) {
    for (FigureId id : {FigureId::kFig1, FigureId::kFig2, FigureId::kFig3, FigureId::kFig4}) {
        if (figure_token(id) == token) {
            return id;
        }
    }
    throw ContractViolation("unknown figure '" + std::string(token) + "'");
}

std::vector<LabeledSweep> default_curve_sweeps(std::size_t steps, bool full_range) {
    std::vector<LabeledSweep> out;
    for (FamilyId id : kParametricFamilies) {
        const FamilySpec spec = family_spec(id);
        const Interval range = full_range ? spec.parameter_range : spec.study_range;
        out.emplace_back("builtin:" + std::string(family_token(id)), sweep_family(id, range.lo, range.hi, steps));
    }
    return out;
}

namespace {

std::vector<ReferenceLine> fidelity_lines() {
    return {{'y', 2.0 / 3.0, "F=2/3"}, {'y', gisin_bound(), "F=F_gisin"}};
}

void sort_by_x(Series &s) {
    std::stable_sort(s.points.begin(), s.points.end(),
                     [](const std::array<double, 2> &a, const std::array<double, 2> &b) { return a[0] < b[0]; });
}

} // namespace

FigureDataset family_curves(FigureId id, const std::vector<LabeledSweep> &sweeps) {
    if (id != FigureId::kFig1 && id != FigureId::kFig2) {
        throw ContractViolation("family curves are fig1 or fig2");
    }
    FigureDataset fig;
    fig.id = id;
    fig.x_label = id == FigureId::kFig1 ? "S_L" : "C";
    fig.y_label = "F";
    fig.thresholds = fidelity_lines();

    // One series per family token, in order of first appearance.
    std::vector<std::string> order;
    std::map<std::string, Series> by_family;
    for (const auto &[source, rows] : sweeps) {
        for (const SweepRow &r : rows) {
            auto [it, inserted] = by_family.try_emplace(r.family);
            if (inserted) {
                it->second.name = r.family;
                it->second.source = source;
                order.push_back(r.family);
            } else if (it->second.source.find(source) == std::string::npos) {
                it->second.source += ";" + source;
            }
            it->second.points.push_back({id == FigureId::kFig1 ? r.s_l : r.c, r.f});
        }
    }
    for (const std::string &name : order) {
        Series s = std::move(by_family[name]);
        sort_by_x(s);
        fig.series.push_back(std::move(s));
    }
    return fig;
}

std::vector<StateRecord> subsample_per_rank(const std::vector<StateRecord> &records, std::size_t k,
                                            std::uint64_t seed) {
    constexpr std::uint64_t kDomain = domain_tag("subsample");
    std::map<int, std::vector<std::size_t>> by_rank;
    for (std::size_t i = 0; i < records.size(); ++i) {
        by_rank[records[i].rank].push_back(i);
    }
    std::vector<std::size_t> keep;
    for (auto &[rank, idx] : by_rank) {
        if (idx.size() > k) {
            Stream stream(seed, kDomain, static_cast<std::uint64_t>(rank));
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(stream.next_u64() % (idx.size() - i));
                std::swap(idx[i], idx[j]);
            }
            idx.resize(k);
        }
        keep.insert(keep.end(), idx.begin(), idx.end());
    }
    std::sort(keep.begin(), keep.end());
    std::vector<StateRecord> out;
    out.reserve(keep.size());
    for (std::size_t i : keep) {
        out.push_back(records[i]);
    }
    return out;
}

FigureDataset ensemble_scatter(FigureId id, const std::vector<LabeledEnsemble> &inputs,
                               std::optional<std::size_t> subsample, std::uint64_t seed) {
    if (id != FigureId::kFig3 && id != FigureId::kFig4) {
        throw ContractViolation("ensemble scatters are fig3 or fig4");
    }
    if (inputs.empty()) {
        throw ContractViolation("ensemble figures need at least one ensemble input");
    }
    FigureDataset fig;
    fig.id = id;
    fig.x_label = id == FigureId::kFig3 ? "S_L" : "B";
    fig.y_label = id == FigureId::kFig3 ? "F" : "C_star";

    std::vector<StateRecord> pooled;
    std::map<int, std::string> sources;
    for (const auto &[source, records] : inputs) {
        for (const StateRecord &r : records) {
            auto [it, inserted] = sources.try_emplace(r.rank, source);
            if (!inserted && it->second.find(source) == std::string::npos) {
                it->second += ";" + source;
            }
        }
        pooled.insert(pooled.end(), records.begin(), records.end());
    }
    if (pooled.empty()) {
        throw ContractViolation("ensemble inputs contain no records");
    }

    const std::vector<StateRecord> shown = subsample ? subsample_per_rank(pooled, *subsample, seed) : pooled;
    std::map<int, Series> by_rank;
    for (const StateRecord &r : shown) {
        Series &s = by_rank[r.rank];
        s.points.push_back(id == FigureId::kFig3 ? std::array<double, 2>{r.s_l, r.f} : std::array<double, 2>{r.b, r.c_star});
    }
    for (auto &[rank, s] : by_rank) {
        s.name = "rank" + std::to_string(rank);
        s.source = sources[rank];
        fig.series.push_back(std::move(s));
    }

    if (id == FigureId::kFig3) {
        fig.thresholds = fidelity_lines();
    } else {
        const CmaxThresholds cm = cmax_thresholds(pooled);
        fig.thresholds = {{'x', 2.0, "B=2"},
                          {'y', 0.0, "C=0"},
                          {'y', cm.classical.c_max, "C_max(F=2/3)"},
                          {'y', cm.gisin.c_max, "C_max(F=F_gisin)"}};
    }
    return fig;
}

void write_figure(const FigureDataset &fig, const std::filesystem::path &out) {
    std::ostringstream csv;
    csv.imbue(std::locale::classic());
    csv << "series,source,x,y\n";
    for (const Series &s : fig.series) {
        for (const auto &pt : s.points) {
            csv << s.name << ',' << s.source << ',' << format_number(pt[0]) << ',' << format_number(pt[1]) << '\n';
        }
    }
    write_text_file(out, csv.str());

    nlohmann::json meta;
    meta["figure_id"] = std::string(figure_token(fig.id));
    meta["x"] = fig.x_label;
    meta["y"] = fig.y_label;
    meta["data"] = out.filename().string();
    meta["series"] = nlohmann::json::array();
    for (const Series &s : fig.series) {
        meta["series"].push_back({{"name", s.name}, {"source", s.source}, {"points", s.points.size()}});
    }
    meta["thresholds"] = nlohmann::json::array();
    for (const ReferenceLine &l : fig.thresholds) {
        meta["thresholds"].push_back({{"axis", std::string(1, l.axis)}, {"value", l.value}, {"label", l.label}});
    }
    write_text_file(std::filesystem::path(out.string() + ".json"), meta.dump(2) + "\n");

    const bool scatter = fig.id == FigureId::kFig3 || fig.id == FigureId::kFig4;
    std::ostringstream gp;
    gp.imbue(std::locale::classic());
    gp << "# gnuplot stub for " << figure_token(fig.id) << "\n"
       << "set datafile separator ','\n"
       << "set xlabel '" << fig.x_label << "'\n"
       << "set ylabel '" << fig.y_label << "'\n";
    for (const ReferenceLine &l : fig.thresholds) {
        if (l.axis == 'x') {
            gp << "set arrow from " << format_number(l.value) << ", graph 0 to " << format_number(l.value)
               << ", graph 1 nohead dt 2\n";
        } else {
            gp << "set arrow from graph 0, first " << format_number(l.value) << " to graph 1, first "
               << format_number(l.value) << " nohead dt 2\n";
        }
    }
    gp << "plot \\\n";
    for (std::size_t i = 0; i < fig.series.size(); ++i) {
        const std::string &name = fig.series[i].name;
        gp << "  '" << out.filename().string() << "' every ::1 using (strcol(1) eq '" << name
           << "' ? $3 : NaN):4 with " << (scatter ? "points pt 7 ps 0.3" : "lines") << " title '" << name << "'"
           << (i + 1 < fig.series.size() ? ", \\\n" : "\n");
    }
    write_text_file(std::filesystem::path(out.string() + ".gp"), gp.str());
}

std::optional<double> interpolate(const Series &s, double x) {
    const auto &pts = s.points;
    if (pts.empty() || x < pts.front()[0] || x > pts.back()[0]) {
        return std::nullopt;
    }
    auto hi = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const std::array<double, 2> &p, double v) { return p[0] < v; });
    if (hi == pts.begin()) {
        return (*hi)[1];
    }
    auto lo = hi - 1;
    const double dx = (*hi)[0] - (*lo)[0];
    if (dx <= 0.0) {
        return std::max((*lo)[1], (*hi)[1]);
    }
    const double w = (x - (*lo)[0]) / dx;
    return (1.0 - w) * (*lo)[1] + w * (*hi)[1];
}

TelesimResult run_telesim(FamilyId id, double p, TelesimMode mode, std::size_t n_samples, std::uint64_t seed) {
    const DensityMatrix rho = make_state(id, p);
    TelesimResult r;
    r.family = std::string(family_token(id));
    r.p = p;
    r.analytic_f = opt_fidelity(rho);
    const telesim::OptimalCorrection best = telesim::optimize_corrections(rho);
    r.table = best.table;
    r.mode = mode;
    if (mode == TelesimMode::kExact) {
        r.oracle_f = best.fidelity;
    } else {
        const telesim::TeleportReport mc = telesim::mc_teleport(rho, best.table, n_samples, seed);
        r.oracle_f = mc.avg_fidelity;
        r.n_samples = mc.n_samples;
        r.std_error = mc.std_error;
    }
    r.gap = r.analytic_f - r.oracle_f;
    r.fef_fidelity = (2.0 * telesim::fully_entangled_fraction(rho) + 1.0) / 3.0;
    return r;
}

nlohmann::json telesim_to_json(const TelesimResult &r) {
    nlohmann::json j{{"family", r.family},
                     {"p", r.p},
                     {"mode", r.mode == TelesimMode::kExact ? "exact" : "mc"},
                     {"analytic_f", r.analytic_f},
                     {"oracle_f", r.oracle_f},
                     {"gap", r.gap},
                     {"fef_f", r.fef_fidelity},
                     {"table", r.table.to_string()}};
    if (r.n_samples) {
        j["n_samples"] = *r.n_samples;
    }
    if (r.std_error) {
        j["std_error"] = *r.std_error;
    }
    return j;
}

} // namespace memslab
