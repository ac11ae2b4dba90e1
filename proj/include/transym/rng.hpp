// Copyright 2026 The transym Authors
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
#include <random>
#include <string_view>

namespace transym {

/// Seeded generator used everywhere randomness appears.
///
/// The bit stream is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard (the 10000th draw from the default seed is
/// 9981545732273789042). Uniform and Gaussian variates are derived here
/// rather than through <random> distributions, whose algorithms are
/// implementation-defined, so identical seeds give identical draws on every
/// conforming toolchain.
class Rng {
   public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/u53/box-muller";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal();
    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi);

    /// Independent child stream; deterministic in (parent seed, stream index).
    static Rng split(std::uint64_t seed, std::uint64_t stream);

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace transym
