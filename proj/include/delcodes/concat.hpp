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

// Pieces shared by the three concatenated schemes: parameter profiles, inner
// codebook provisioning, the (i, c_i) labelling and conflict removal.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "delcodes/error.hpp"
#include "delcodes/innercode.hpp"
#include "delcodes/rsouter.hpp"

namespace delcodes {

enum class Profile { PaperAsymptotic, Desk };

constexpr std::string_view to_string(Profile p) noexcept { return p == Profile::Desk ? "DESK" : "PAPER_ASYMPTOTIC"; }

inline Profile parse_profile(std::string_view s) {
    if (s == "desk" || s == "DESK") return Profile::Desk;
    if (s == "paper" || s == "PAPER_ASYMPTOTIC") return Profile::PaperAsymptotic;
    fail(Errc::ParseError, "unknown profile '" + std::string(s) + "' (expected paper or desk)");
}

/// How a scheme obtains its inner codebook.
struct BuildOptions {
    CandidatePolicy policy = CandidatePolicy::SeededRandom;
    std::uint64_t seed = 0;
    std::uint64_t attempt_cap = std::uint64_t{1} << 22;
    /// LEX streams longer than this are refused up front.
    std::uint64_t lex_stream_guard = std::uint64_t{1} << 32;
    /// Reused instead of running the greedy search when present.
    std::optional<Codebook> cached;
};

namespace detail {

inline bool lex_stream_fits(std::uint32_t k, std::size_t m, std::uint64_t guard) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (total > guard / k) return false;
        total *= k;
    }
    return true;
}

/// Runs `build` (a greedy constructor taking GreedyOptions) for `needed`
/// codewords, or validates and truncates the cached book against `shape`.
template <class Build>
Codebook provision_inner(const Codebook& shape, std::size_t needed, const BuildOptions& opt, Build&& build) {
    if (opt.cached) {
        const Codebook& c = *opt.cached;
        const bool same = c.kind == shape.kind && c.k == shape.k && c.m == shape.m && c.delta == shape.delta &&
                          c.beta == shape.beta && c.list_size == shape.list_size;
        if (!same) fail(Errc::InvalidOverride, "cached codebook parameters differ from the scheme's inner code");
        if (c.size() < needed)
            fail(Errc::InfeasibleAtDeskScale, "cached codebook holds " + std::to_string(c.size()) + " codewords, scheme needs " +
                                                  std::to_string(needed));
        Codebook out = c;
        out.codewords.resize(needed);
        return out;
    }
    if (opt.policy == CandidatePolicy::Lex && !lex_stream_fits(shape.k, shape.m, opt.lex_stream_guard))
        fail(Errc::InfeasibleAtDeskScale, "LEX candidate stream k^m = " + std::to_string(shape.k) + "^" + std::to_string(shape.m) +
                                              " exceeds the stream guard");
    GreedyOptions g;
    g.target_size = needed;
    g.policy = opt.policy;
    g.seed = opt.seed;
    g.attempt_cap = opt.attempt_cap;
    try {
        return build(g);
    } catch (const TargetUnreachableError& e) {
        fail(Errc::InfeasibleAtDeskScale, "inner codebook search stopped at " + std::to_string(e.achieved()) + " of " +
                                              std::to_string(needed) + " codewords (k=" + std::to_string(shape.k) +
                                              ", m=" + std::to_string(shape.m) + ", delta=" + to_string(shape.delta) + ")");
    } catch (const Error& e) {
        if (e.code() == Errc::GuardExceeded) fail(Errc::InfeasibleAtDeskScale, e.what());
        throw;
    }
}

}  // namespace detail

/// Inner message index of the labelled outer symbol (i, c).
constexpr std::size_t pair_index(std::size_t i, RawElem c, std::uint64_t field_order) noexcept {
    return i * static_cast<std::size_t>(field_order) + c;
}

struct OuterPair {
    std::size_t index = 0;
    RawElem value = 0;
    friend auto operator<=>(const OuterPair&, const OuterPair&) = default;
};

constexpr OuterPair split_pair_index(std::size_t flat, std::uint64_t field_order) noexcept {
    return {flat / static_cast<std::size_t>(field_order), static_cast<RawElem>(flat % field_order)};
}

struct ResolvedOuter {
    std::vector<OuterSymbol> received;
    std::size_t conflicts = 0;  // indices dropped because they carried more than one value
    std::size_t erasures = 0;   // indices left empty, conflicts included
};

/// Keeps (i, r_i) when i was claimed by exactly one value; every index that
/// received two distinct values is erased.
inline ResolvedOuter resolve_pairs(std::size_t n, const std::vector<OuterPair>& pairs) {
    std::vector<std::optional<RawElem>> slot(n);
    std::vector<bool> clash(n, false);
    for (const auto& p : pairs) {
        if (p.index >= n) continue;
        if (!slot[p.index]) slot[p.index] = p.value;
        else if (*slot[p.index] != p.value) clash[p.index] = true;
    }
    ResolvedOuter out;
    out.received.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (clash[i]) {
            ++out.conflicts;
            continue;
        }
        out.received[i] = slot[i];
    }
    for (const auto& s : out.received) out.erasures += !s;
    return out;
}

/// Wrong values s and erased coordinates r of a received outer vector
/// measured against the transmitted codeword.
struct OuterDamage {
    std::size_t errors = 0;
    std::size_t erasures = 0;
    std::size_t correct = 0;
};

inline OuterDamage outer_damage(const std::vector<OuterSymbol>& received, const std::vector<RawElem>& codeword) {
    OuterDamage d;
    for (std::size_t i = 0; i < received.size(); ++i) {
        if (!received[i]) ++d.erasures;
        else if (*received[i] != codeword[i]) ++d.errors;
        else ++d.correct;
    }
    return d;
}

/// Uniform message over the RS field.
inline std::vector<RawElem> random_message(Rng& rng, const RsParams& rs) {
    std::vector<RawElem> msg(rs.n_prime);
    for (auto& v : msg) v = static_cast<RawElem>(uniform_below(rng, rs.field.order()));
    return msg;
}

/// Exact test of x >= n (1 - c sqrt(eps)) for integers x, n and rationals c, eps.
inline bool at_least_one_minus_sqrt(std::int64_t x, std::int64_t n, const Rational& c, const Rational& eps) {
    const std::int64_t gap = n - x;
    if (gap <= 0) return true;
    return Rational(gap * gap) <= c * c * eps * Rational(n * n);
}

/// Exact test of x <= n (1 + c sqrt(eps)).
inline bool at_most_one_plus_sqrt(std::int64_t x, std::int64_t n, const Rational& c, const Rational& eps) {
    const std::int64_t gap = x - n;
    if (gap <= 0) return true;
    return Rational(gap * gap) <= c * c * eps * Rational(n * n);
}

}  // namespace delcodes
