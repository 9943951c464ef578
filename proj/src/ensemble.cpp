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

#include "memslab/ensemble.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "memslab/measures.hpp"

namespace memslab {

namespace {

void require_rank(int rank) {
    if (rank < 2 || rank > 4) {
        throw ContractViolation("ensemble rank must be 2, 3 or 4");
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::string_view region_token(Region r) {
    switch (r) {
    case Region::kR1:
        return "R1";
    case Region::kR2:
        return "R2";
    case Region::kR3:
        return "R3";
    case Region::kR4:
        return "R4";
    case Region::kR5:
        return "R5";
    }
    return "?";
}

Region parse_region(std::string_view token) {
    for (Region r : {Region::kR1, Region::kR2, Region::kR3, Region::kR4, Region::kR5}) {
        if (region_token(r) == token) {
            return r;
        }
    }
    throw ContractViolation("unknown region '" + std::string(token) + "'");
}

double gisin_bound() {
    return 0.5 + std::sqrt(1.5) * std::atan(std::numbers::sqrt2) / std::numbers::pi;
}

Spectrum sample_spectrum(int rank, Stream &stream) {
    require_rank(rank);
    std::array<double, 4> lambda{};
    for (;;) {
        double total = 0.0;
        for (int i = 0; i < rank; ++i) {
            lambda[i] = stream.exponential();
            total += lambda[i];
        }
        if (!(total > 0.0)) {
            continue;
        }
        bool degenerate = false;
        for (int i = 0; i < rank; ++i) {
            lambda[i] /= total;
            degenerate = degenerate || lambda[i] <= kRankThreshold;
        }
        if (!degenerate) {
            break;
        }
    }
    for (int i = rank; i < 4; ++i) {
        lambda[i] = 0.0;
    }
    return Spectrum::from_values(lambda);
}

DensityMatrix build_ih_state(const Spectrum &spec) {
    const double l1 = spec[0];
    const double l2 = spec[1];
    const double l3 = spec[2];
    const double l4 = spec[3];
    Matrix4 m;
    m(0, 0) = l2;
    m(1, 1) = 0.5 * (l1 + l3);
    m(2, 2) = 0.5 * (l1 + l3);
    m(3, 3) = l4;
    m(1, 2) = 0.5 * (l1 - l3);
    m(2, 1) = 0.5 * (l1 - l3);
    return DensityMatrix::from_matrix(m);
}

Region classify_region(const StateRecord &rec, const RegionThresholds &th) {
    if (rec.c <= 1e-12) {
        return Region::kR1;
    }
    if (rec.f <= th.f_classical) {
        return Region::kR2;
    }
    if (rec.b <= th.b_classical) {
        return Region::kR3;
    }
    if (rec.f < th.f_gisin) {
        return Region::kR4;
    }
    return Region::kR5;
}

StateRecord make_record(std::uint64_t seed, int rank, std::uint64_t index, const RegionThresholds &th) {
    Stream stream(seed, static_cast<std::uint64_t>(rank), index);
    const DensityMatrix rho = build_ih_state(sample_spectrum(rank, stream));
    const XStateView view = as_x_state(rho);

    StateRecord rec;
    rec.index = index;
    rec.rank = rank;
    rec.lambda = spectrum_of(rho);
    rec.s_l = linear_entropy(rho);
    rec.c = concurrence_x(view);
    rec.c_star = c_star(rec.lambda);
    rec.f = opt_fidelity(rho);
    rec.b = bell_x(view);
    rec.region = classify_region(rec, th);
    return rec;
}

std::vector<StateRecord> generate_records_serial(int rank, std::size_t count, std::uint64_t seed) {
    require_rank(rank);
    const RegionThresholds th;
    std::vector<StateRecord> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(make_record(seed, rank, i, th));
    }
    return out;
}

std::vector<StateRecord> generate_records(int rank, std::size_t count, std::uint64_t seed, int threads) {
    require_rank(rank);
    const RegionThresholds th;
    std::vector<StateRecord> out(count);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto n = static_cast<std::int64_t>(count);

#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nthreads)
#else
    (void)threads;
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = make_record(seed, rank, static_cast<std::uint64_t>(i), th);
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

Ensemble generate_ensemble(int rank, std::size_t count, std::uint64_t seed, int threads) {
    if (count < 1) {
        throw ContractViolation("ensemble count must be at least 1");
    }
    Ensemble e;
    e.records = generate_records(rank, count, seed, threads);
    e.manifest = EnsembleManifest{seed, rank, count, std::string(kGeneratorVersion), utc_timestamp()};
    return e;
}

CmaxThresholds cmax_thresholds(std::span<const StateRecord> pooled, const RegionThresholds &th, double band) {
    if (pooled.empty()) {
        throw ContractViolation("cmax_thresholds needs a nonempty ensemble");
    }
    auto estimate = [&](double f0) {
        CmaxEstimate e;
        e.f0 = f0;
        e.c_rank2_analytic = (3.0 * f0 - 1.0) / 2.0;
        e.c_max = -std::numeric_limits<double>::infinity();
        for (const StateRecord &r : pooled) {
            if (std::abs(r.f - f0) <= band) {
                e.c_max = std::max(e.c_max, r.c);
                ++e.band_count;
            }
        }
        if (e.band_count == 0) {
            throw std::runtime_error("no records with |F - " + std::to_string(f0) +
                                     "| <= band; use a larger ensemble or a wider band");
        }
        return e;
    };
    return CmaxThresholds{estimate(th.f_classical), estimate(th.f_gisin)};
}

} // namespace memslab
