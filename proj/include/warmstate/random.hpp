// Copyright 2026 The WarmState Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file random.hpp
 * Counter-based random streams: every (seed, counter) pair names an
 * independent, reproducible generator, so results never depend on the
 * order in which parallel work is scheduled.
 */
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace warmstate {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Hashes a seed together with a path of integers into a child seed.
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(seed);
    for (auto p : path) {
        h = splitmix64(h ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

inline std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t counter) {
    return std::mt19937_64(derive_seed(seed, {counter}));
}

/**
 * @brief Seeded stream handing out one counter value per logical evaluation.
 *
 * Identical (seed, counter) pairs always reproduce the same draws.
 */
class NoiseStream {
  public:
    explicit NoiseStream(std::uint64_t seed = 0, std::uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t counter() const { return counter_; }

    /// Reserves `count` consecutive counter values and returns the first.
    std::uint64_t reserve(std::uint64_t count = 1) {
        const auto first = counter_;
        counter_ += count;
        return first;
    }

    [[nodiscard]] std::mt19937_64 engine(std::uint64_t counter) const {
        return engine_for(seed_, counter);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

} // namespace warmstate
