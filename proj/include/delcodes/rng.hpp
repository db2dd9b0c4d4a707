/**************************************************************************
 * Copyright 2026 The delcodes Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

// std::mt19937_64 has a fully specified output sequence; the standard
// distributions do not, so bounded draws go through uniform_below() to keep
// codebooks and trial streams identical across standard libraries.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <unordered_set>
#include <vector>

namespace delcodes {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based seed derivation: seed = splitmix64 folded over
/// (master, c0, c1, ...). Trial (strategy s, fraction f, trial t) uses
/// derive_seed(master, {s, f, t}).
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> counters) {
    std::uint64_t h = splitmix64(master);
    for (auto c : counters) h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
    return h;
}

/// Uniform integer in [0, bound), bound >= 1.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

/// Uniformly random size-count subset of [0, n), sorted ascending (Floyd).
inline std::vector<std::size_t> sample_subset(Rng& rng, std::size_t n, std::size_t count) {
    count = std::min(count, n);
    std::unordered_set<std::size_t> chosen;
    std::vector<std::size_t> out;
    out.reserve(count);
    for (std::size_t j = n - count; j < n; ++j) {
        auto t = static_cast<std::size_t>(uniform_below(rng, j + 1));
        if (!chosen.insert(t).second) {
            chosen.insert(j);
            out.push_back(j);
        } else {
            out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Fisher-Yates over uniform_below, in place.
template <class T>
void shuffle(Rng& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

}  // namespace delcodes
