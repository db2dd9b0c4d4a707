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

// Budgeted adversarial deletion channel and the trial runner.
//
// Strategies see the transmitted word together with its layout (inner
// codeword intervals, buffers, header groups, window grid) and emit a
// deletion pattern of at most `budget` positions. Every strategy is a pure
// function of its inputs and seed.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "delcodes/error.hpp"
#include "delcodes/rational.hpp"
#include "delcodes/rng.hpp"
#include "delcodes/seqkit.hpp"

namespace delcodes {

/// Strictly increasing 0-based positions to delete.
struct DeletionPattern {
    std::vector<std::size_t> positions;
    std::size_t size() const noexcept { return positions.size(); }
    friend bool operator==(const DeletionPattern&, const DeletionPattern&) = default;
};

inline void validate_pattern(const DeletionPattern& p, std::size_t length) {
    for (std::size_t i = 0; i < p.positions.size(); ++i) {
        if (p.positions[i] >= length) fail(Errc::PatternOutOfRange, "position " + std::to_string(p.positions[i]) + " beyond word length");
        if (i && p.positions[i] <= p.positions[i - 1]) fail(Errc::PatternOutOfRange, "positions must be strictly increasing");
    }
}

inline Word apply_deletions(const Word& w, const DeletionPattern& p) {
    validate_pattern(p, w.size());
    std::vector<Symbol> out;
    out.reserve(w.size() - p.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (next < p.positions.size() && p.positions[next] == i) {
            ++next;
            continue;
        }
        out.push_back(w[i]);
    }
    return Word(std::move(out), w.alphabet_size());
}

enum class Strategy { Random, BlockErase, MergeAttack, BufferKill, DensityAttack, WindowShift, GreedyLcs };

inline constexpr std::array<Strategy, 7> kAllStrategies = {Strategy::Random,        Strategy::BlockErase,  Strategy::MergeAttack,
                                                           Strategy::BufferKill,    Strategy::DensityAttack, Strategy::WindowShift,
                                                           Strategy::GreedyLcs};

constexpr std::string_view to_string(Strategy s) noexcept {
    switch (s) {
    case Strategy::Random: return "RANDOM";
    case Strategy::BlockErase: return "BLOCK_ERASE";
    case Strategy::MergeAttack: return "MERGE_ATTACK";
    case Strategy::BufferKill: return "BUFFER_KILL";
    case Strategy::DensityAttack: return "DENSITY_ATTACK";
    case Strategy::WindowShift: return "WINDOW_SHIFT";
    case Strategy::GreedyLcs: return "GREEDY_LCS";
    }
    return "?";
}

/// Accepts the canonical names case-insensitively.
inline Strategy parse_strategy(std::string_view text) {
    std::string up(text);
    for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (auto s : kAllStrategies)
        if (to_string(s) == up) return s;
    std::string names;
    for (auto s : kAllStrategies) names += (names.empty() ? "" : ", ") + std::string(to_string(s));
    fail(Errc::ParseError, "unknown strategy '" + std::string(text) + "'; valid: " + names);
}

/// Layout of a transmitted word as seen by the adversary.
struct Geometry {
    std::vector<Interval> blocks;             // inner codewords
    std::vector<Word> block_words;            // inner codeword of each block (payload alphabet)
    const std::vector<Word>* codebook = nullptr;  // all inner codewords, for GREEDY_LCS
    std::vector<std::uint32_t> block_group;   // header of each block; empty when blocks carry none
    std::vector<Interval> buffers;            // zero separators
    std::size_t buffer_threshold = 0;         // zero runs this long read as buffers
    std::size_t erase_cost = 0;               // deletions that leave a block undecodable
    std::size_t window_step = 0;              // decoding grid step, 0 when the decoder has no grid
};

struct AttackKnobs {
    std::optional<std::size_t> erase_cost;  // BLOCK_ERASE deletions per block
    std::optional<std::size_t> kill_count;  // BUFFER_KILL zeros removed per buffer
    bool spend_leftover = true;             // spend what the targeted phase leaves on random positions
};

inline bool applicable(Strategy s, const Geometry& g) {
    switch (s) {
    case Strategy::BufferKill:
    case Strategy::DensityAttack: return !g.buffers.empty() && g.buffer_threshold > 0;
    case Strategy::GreedyLcs: return g.codebook != nullptr && g.block_words.size() == g.blocks.size();
    default: return true;
    }
}

namespace detail {

class PatternBuilder {
public:
    PatternBuilder(std::size_t length, std::size_t budget) : deleted_(length, false), budget_(budget) {}

    std::size_t remaining() const noexcept { return budget_ - used_; }
    bool is_deleted(std::size_t i) const { return deleted_[i]; }

    bool remove(std::size_t i) {
        if (deleted_[i]) return true;
        if (used_ == budget_) return false;
        deleted_[i] = true;
        ++used_;
        return true;
    }

    void spend_randomly(Rng& rng) {
        std::vector<std::size_t> alive;
        for (std::size_t i = 0; i < deleted_.size(); ++i)
            if (!deleted_[i]) alive.push_back(i);
        for (auto j : sample_subset(rng, alive.size(), remaining())) remove(alive[j]);
    }

    DeletionPattern finish() const {
        DeletionPattern p;
        for (std::size_t i = 0; i < deleted_.size(); ++i)
            if (deleted_[i]) p.positions.push_back(i);
        if (p.size() > budget_) fail(Errc::BudgetExceeded, "strategy emitted more deletions than its budget");
        return p;
    }

private:
    std::vector<bool> deleted_;
    std::size_t budget_;
    std::size_t used_ = 0;
};

inline std::vector<std::size_t> shuffled_indices(Rng& rng, std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    shuffle(rng, v);
    return v;
}

// Positions of `a` outside one LCS alignment with `b`.
inline std::vector<std::size_t> outside_lcs(const Word& a, const Word& b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<std::vector<std::uint16_t>> dp(n + 1, std::vector<std::uint16_t>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = m; j-- > 0;)
            dp[i][j] = a[i] == b[j] ? dp[i + 1][j + 1] + 1 : std::max(dp[i + 1][j], dp[i][j + 1]);
    std::vector<std::size_t> out;
    std::size_t i = 0, j = 0;
    while (i < n) {
        if (j < m && a[i] == b[j] && dp[i][j] == dp[i + 1][j + 1] + 1) {
            ++i, ++j;
        } else if (j < m && dp[i][j + 1] >= dp[i + 1][j]) {
            ++j;
        } else {
            out.push_back(i++);
        }
    }
    return out;
}

inline void attack_block_erase(PatternBuilder& pb, Rng& rng, const Geometry& g, const AttackKnobs& knobs) {
    for (auto b : shuffled_indices(rng, g.blocks.size())) {
        const auto& blk = g.blocks[b];
        const std::size_t cost = std::min(blk.len, std::max<std::size_t>(1, knobs.erase_cost.value_or(g.erase_cost ? g.erase_cost : blk.len)));
        if (pb.remaining() < cost) break;
        for (auto off : sample_subset(rng, blk.len, cost)) pb.remove(blk.start + off);
    }
}

inline void attack_merge(PatternBuilder& pb, Rng& rng, const Geometry& g, std::size_t inner_len) {
    const std::size_t nb = g.blocks.size();
    if (nb == 0) return;
    if (!g.block_group.empty()) {
        // Delete every block between two blocks sharing a header, then trim the
        // pair so the merged block has a decodable length.
        std::vector<bool> used(nb, false);
        for (auto a : shuffled_indices(rng, nb)) {
            std::size_t b = a + 1;
            while (b < nb && g.block_group[b] != g.block_group[a]) ++b;
            if (b >= nb || used[a] || used[b]) continue;
            std::size_t cost = 0;
            for (std::size_t x = a + 1; x < b; ++x) cost += g.blocks[x].len;
            if (cost > pb.remaining()) continue;
            for (std::size_t x = a; x <= b; ++x) used[x] = true;
            for (std::size_t x = a + 1; x < b; ++x)
                for (std::size_t i = g.blocks[x].start; i < g.blocks[x].end(); ++i) pb.remove(i);
            const auto& A = g.blocks[a];
            const auto& B = g.blocks[b];
            const std::size_t keep = inner_len ? inner_len : A.len;
            if (A.len + B.len > keep && pb.remaining() >= A.len + B.len - keep) {
                const std::size_t from_a = static_cast<std::size_t>(uniform_below(rng, std::min(keep, A.len) + 1));
                const std::size_t from_b = std::min(keep - from_a, B.len);
                for (std::size_t i = A.start; i < A.end() - from_a; ++i) pb.remove(i);
                for (std::size_t i = B.start + from_b; i < B.end(); ++i) pb.remove(i);
            }
        }
        return;
    }
    if (!g.buffers.empty()) {
        // Delete the ones of whole codewords so the neighbouring buffers fuse.
        for (auto b : shuffled_indices(rng, nb)) {
            const auto& blk = g.blocks[b];
            for (std::size_t i = blk.start; i < blk.end() && pb.remaining(); ++i)
                if (!pb.is_deleted(i) && g.block_words[b][i - blk.start] != 0) pb.remove(i);
            if (!pb.remaining()) break;
        }
        return;
    }
    // No separators: delete a run centred on block boundaries.
    for (auto b : shuffled_indices(rng, nb)) {
        if (b == 0) continue;
        const std::size_t center = g.blocks[b].start;
        const std::size_t half = std::min(pb.remaining(), g.blocks[b].len) / 2;
        for (std::size_t i = center - std::min(center, half); i < std::min(center + half + 1, g.blocks.back().end()); ++i)
            if (!pb.remove(i)) return;
        if (!pb.remaining()) return;
    }
}

inline void attack_buffer_kill(PatternBuilder& pb, Rng& rng, const Geometry& g, const AttackKnobs& knobs) {
    for (auto b : shuffled_indices(rng, g.buffers.size())) {
        const auto& buf = g.buffers[b];
        const std::size_t kill = std::min(buf.len, knobs.kill_count.value_or(buf.len + 1 > g.buffer_threshold ? buf.len + 1 - g.buffer_threshold : 1));
        const std::size_t take = std::min(kill, pb.remaining());
        if (take == 0) break;
        for (auto off : sample_subset(rng, buf.len, take)) pb.remove(buf.start + off);
    }
}

// Cheapest set of ones whose deletion joins `threshold` zeros of the block.
inline std::optional<std::vector<std::size_t>> cheapest_new_buffer(const Word& w, std::size_t threshold) {
    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == 0) zeros.push_back(i);
    if (threshold == 0 || zeros.size() < threshold) return std::nullopt;
    std::size_t best = 0, best_cost = SIZE_MAX;
    for (std::size_t a = 0; a + threshold <= zeros.size(); ++a) {
        const std::size_t cost = zeros[a + threshold - 1] - zeros[a] + 1 - threshold;
        if (cost < best_cost) best_cost = cost, best = a;
    }
    std::vector<std::size_t> ones;
    for (std::size_t i = zeros[best]; i <= zeros[best + threshold - 1]; ++i)
        if (w[i] != 0) ones.push_back(i);
    return ones;
}

inline void attack_density(PatternBuilder& pb, Rng& rng, const Geometry& g) {
    for (auto b : shuffled_indices(rng, g.blocks.size())) {
        const auto ones = cheapest_new_buffer(g.block_words[b], g.buffer_threshold);
        if (!ones || ones->size() > pb.remaining()) continue;
        for (auto i : *ones) pb.remove(g.blocks[b].start + i);
    }
}

inline void attack_window_shift(PatternBuilder& pb, Rng& rng, const Geometry& g) {
    const std::size_t step = std::max<std::size_t>(g.window_step, 1);
    const std::size_t shift = (step + 1) / 2;
    bool progress = true;
    while (pb.remaining() && progress) {
        progress = false;
        for (auto b : shuffled_indices(rng, g.blocks.size())) {
            const auto& blk = g.blocks[b];
            const std::size_t off = static_cast<std::size_t>(uniform_below(rng, std::min(step, blk.len)));
            for (std::size_t i = blk.start + off, k = 0; i < blk.end() && k < shift; ++i) {
                if (pb.is_deleted(i)) continue;
                if (!pb.remove(i)) return;
                ++k;
                progress = true;
            }
        }
    }
}

inline void attack_greedy_lcs(PatternBuilder& pb, Rng& rng, const Geometry& g) {
    struct Target {
        std::size_t block;
        std::vector<std::size_t> cut;
    };
    std::vector<Target> targets;
    for (auto b : shuffled_indices(rng, g.blocks.size())) {
        const Word& c = g.block_words[b];
        const Word* partner = nullptr;
        std::size_t best = 0;
        for (const auto& other : *g.codebook) {
            if (other == c) continue;
            const auto l = lcs(c, other);
            if (!partner || l > best) partner = &other, best = l;
        }
        if (partner) targets.push_back({b, outside_lcs(c, *partner)});
    }
    std::stable_sort(targets.begin(), targets.end(), [](const Target& x, const Target& y) { return x.cut.size() < y.cut.size(); });
    for (const auto& t : targets) {
        if (t.cut.size() > pb.remaining()) continue;
        for (auto i : t.cut) pb.remove(g.blocks[t.block].start + i);
    }
}

}  // namespace detail

/// Budget-respecting deletion pattern for `strategy`. GREEDY_LCS reduces the
/// cheapest blocks to a longest common subsequence with their nearest other
/// codeword. Throws OutOfRange for a strategy the layout cannot support.
inline DeletionPattern attack(Strategy strategy, const Word& transmitted, const Geometry& g, std::size_t budget, std::uint64_t seed,
                              const AttackKnobs& knobs = {}) {
    if (budget > transmitted.size()) fail(Errc::OutOfRange, "budget exceeds the transmitted length");
    if (!applicable(strategy, g)) fail(Errc::OutOfRange, std::string(to_string(strategy)) + " needs layout the scheme does not provide");
    Rng rng(seed);
    detail::PatternBuilder pb(transmitted.size(), budget);
    const std::size_t inner_len = g.blocks.empty() ? 0 : g.blocks.front().len;
    switch (strategy) {
    case Strategy::Random: break;
    case Strategy::BlockErase: detail::attack_block_erase(pb, rng, g, knobs); break;
    case Strategy::MergeAttack: detail::attack_merge(pb, rng, g, inner_len); break;
    case Strategy::BufferKill: detail::attack_buffer_kill(pb, rng, g, knobs); break;
    case Strategy::DensityAttack: detail::attack_density(pb, rng, g); break;
    case Strategy::WindowShift: detail::attack_window_shift(pb, rng, g); break;
    case Strategy::GreedyLcs: detail::attack_greedy_lcs(pb, rng, g); break;
    }
    if (strategy == Strategy::Random || knobs.spend_leftover) pb.spend_randomly(rng);
    return pb.finish();
}

// ---------------------------------------------------------------------------
// Exhaustive patterns

/// Calls fn(pattern) for every pattern of size <= max_size over [0, length),
/// by size then lexicographically; stops early when fn returns false.
/// Returns the number of patterns visited.
template <class Fn>
std::uint64_t for_each_pattern(std::size_t length, std::size_t max_size, Fn&& fn) {
    std::uint64_t visited = 0;
    DeletionPattern p;
    for (std::size_t size = 0; size <= std::min(max_size, length); ++size) {
        p.positions.resize(size);
        for (std::size_t i = 0; i < size; ++i) p.positions[i] = i;
        while (true) {
            ++visited;
            if (!fn(static_cast<const DeletionPattern&>(p))) return visited;
            std::size_t i = size;
            while (i-- > 0 && p.positions[i] == length - size + i) {}
            if (i == static_cast<std::size_t>(-1)) break;
            ++p.positions[i];
            for (std::size_t j = i + 1; j < size; ++j) p.positions[j] = p.positions[j - 1] + 1;
        }
    }
    return visited;
}

/// Minimax search: the first pattern within budget whose received word makes
/// `defeated` true, or nullopt when none does.
template <class Pred>
std::optional<DeletionPattern> find_defeating_pattern(const Word& w, std::size_t budget, Pred&& defeated) {
    std::optional<DeletionPattern> hit;
    for_each_pattern(w.size(), budget, [&](const DeletionPattern& p) {
        if (defeated(apply_deletions(w, p))) {
            hit = p;
            return false;
        }
        return true;
    });
    return hit;
}

// ---------------------------------------------------------------------------
// Trials

/// Ordered telemetry fields of one trial.
using Telemetry = std::vector<std::pair<std::string, std::int64_t>>;

struct Evaluation {
    bool success = false;
    bool ledger_ok = true;  // per-trial lemma inequalities
    std::string outcome;
    Telemetry telemetry;
};

struct TrialReport {
    std::string scheme;
    Strategy strategy = Strategy::Random;
    Rational fraction{0};
    std::size_t budget = 0;
    std::uint64_t seed = 0;
    std::size_t trial = 0;
    std::size_t length = 0;
    std::size_t pattern_size = 0;
    bool success = false;
    bool ledger_ok = true;
    std::string outcome;
    double rate = 0;
    Telemetry telemetry;
    std::optional<double> wall_ms;
};

struct TrialOptions {
    /// Budget against the codeword symbols only (excluding buffers) instead
    /// of the full transmitted length.
    bool budget_codewords_only = false;
    bool timing = false;
    AttackKnobs knobs;
};

/// A scheme adapter provides:
///   std::string id() const;  double rate() const;
///   std::vector<RawElem>-like message_type random_message(Rng&) const;
///   Word encode(const message_type&) const;
///   Geometry geometry(const Word& transmitted) const;
///   std::size_t codeword_symbols() const;
///   Evaluation evaluate(const message_type&, const Word& transmitted,
///                       const DeletionPattern&, const Word& received) const;
template <class S>
concept TrialScheme = requires(const S& s, Rng& rng, const Word& w, const DeletionPattern& p) {
    { s.id() } -> std::convertible_to<std::string>;
    { s.rate() } -> std::convertible_to<double>;
    { s.codeword_symbols() } -> std::convertible_to<std::size_t>;
    { s.encode(s.random_message(rng)) } -> std::same_as<Word>;
    { s.geometry(w) } -> std::same_as<Geometry>;
    { s.evaluate(s.random_message(rng), w, p, w) } -> std::same_as<Evaluation>;
};

/// Seed of trial t in cell (strategy s, fraction index f): derive_seed(master, {s, f, t}).
/// The message is drawn from that seed; the attack uses derive_seed(seed, {1}).
template <TrialScheme S>
TrialReport run_trial(const S& scheme, Strategy strategy, const Rational& fraction, std::uint64_t seed, std::size_t trial,
                      const TrialOptions& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed);
    const auto msg = scheme.random_message(rng);
    const Word sent = scheme.encode(msg);
    const Geometry g = scheme.geometry(sent);
    const std::size_t base = opt.budget_codewords_only ? scheme.codeword_symbols() : sent.size();
    const auto budget = static_cast<std::size_t>(std::clamp<std::int64_t>(floor_mul(fraction, static_cast<std::int64_t>(base)), 0,
                                                                           static_cast<std::int64_t>(sent.size())));
    TrialReport r;
    r.scheme = scheme.id();
    r.strategy = strategy;
    r.fraction = fraction;
    r.budget = budget;
    r.seed = seed;
    r.trial = trial;
    r.length = sent.size();
    r.rate = scheme.rate();
    const auto pattern = attack(strategy, sent, g, budget, derive_seed(seed, {1}), opt.knobs);
    if (pattern.size() > budget) fail(Errc::BudgetExceeded, "pattern larger than budget");
    r.pattern_size = pattern.size();
    const Word received = apply_deletions(sent, pattern);
    auto ev = scheme.evaluate(msg, sent, pattern, received);
    r.success = ev.success;
    r.ledger_ok = ev.ledger_ok;
    r.outcome = std::move(ev.outcome);
    r.telemetry = std::move(ev.telemetry);
    if (opt.timing) r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Full factorial sweep in (strategy, fraction, trial) order. Failures are
/// recorded in the reports, never thrown.
template <TrialScheme S>
std::vector<TrialReport> run_trials(const S& scheme, const std::vector<Strategy>& strategies, const std::vector<Rational>& fractions,
                                    std::size_t trials, std::uint64_t master_seed, const TrialOptions& opt = {}) {
    std::vector<TrialReport> out;
    for (auto s : strategies)
        for (std::size_t f = 0; f < fractions.size(); ++f)
            for (std::size_t t = 0; t < trials; ++t) {
                const auto seed = derive_seed(master_seed, {static_cast<std::uint64_t>(s), f, t});
                try {
                    out.push_back(run_trial(scheme, s, fractions[f], seed, t, opt));
                } catch (const Error& e) {
                    TrialReport r;
                    r.scheme = scheme.id();
                    r.strategy = s;
                    r.fraction = fractions[f];
                    r.seed = seed;
                    r.trial = t;
                    r.success = false;
                    r.ledger_ok = false;
                    r.outcome = std::string("error: ") + e.what();
                    out.push_back(std::move(r));
                }
            }
    return out;
}

}  // namespace delcodes
