// Copyright 2026 The pdc-toolkit Authors
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

#ifndef PDC_RNG_H
#define PDC_RNG_H

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace pdc {

/// Deterministic random stream. Wraps std::mt19937_64 but does its own
/// integer and real sampling so output is identical across standard
/// libraries. Independent substreams are derived with `split`.
class Rng {
   public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }
    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();
    /// Index drawn from a discrete distribution whose weights sum to ~1.
    std::size_t sample(std::span<const double> probs);

    /// Child stream keyed by `label`; does not advance this stream.
    Rng split(std::uint64_t label) const;
    Rng split(std::string_view label) const;

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace pdc

#endif  // PDC_RNG_H
