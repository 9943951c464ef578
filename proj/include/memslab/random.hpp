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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace memslab {

/// Counter-based random stream keyed by (seed, domain, index).
///
/// Draw k of a stream is mix64(key + k * golden), where key is a mix of the
/// three key words. Any draw of any stream can be computed without touching
/// another stream, so parallel loops that key one stream per item produce
/// identical output for every thread count. The construction is pinned:
/// changing any constant here must bump kStreamVersion.
///
///   mix64(z):  z ^= z >> 30; z *= 0xbf58476d1ce4e5b9;
///              z ^= z >> 27; z *= 0x94d049bb133111eb; z ^= z >> 31
///   key     =  mix64(mix64(mix64(seed ^ 0x6a09e667f3bcc908) ^ domain) ^ index)
///   draw k  =  mix64(key + k * 0x9e3779b97f4a7c15), k = 1, 2, ...
///   uniform =  (draw >> 11) * 2^-53
class Stream {
  public:
    static constexpr std::string_view kStreamVersion = "memslab-stream-splitmix64-v1";

    Stream(std::uint64_t seed, std::uint64_t domain, std::uint64_t index)
        : key_(mix64(mix64(mix64(seed ^ 0x6a09e667f3bcc908ULL) ^ domain) ^ index)) {}

    static constexpr std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t next_u64() {
        ++counter_;
        return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exponential(1), strictly positive and finite.
    double exponential() { return -std::log1p(-uniform()); }

    /// Uniformly distributed point on the unit sphere.
    void unit_sphere(double &x, double &y, double &z) {
        z = 2.0 * uniform() - 1.0;
        const double phi = 2.0 * std::numbers::pi * uniform();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        x = r * std::cos(phi);
        y = r * std::sin(phi);
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// FNV-1a hash of a label, used to key named stream domains ("subsample", ...).
constexpr std::uint64_t domain_tag(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : label) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace memslab
