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

// Trial adapters binding each construction to the channel runner.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "delcodes/channel.hpp"
#include "delcodes/highnoise.hpp"
#include "delcodes/hirate.hpp"
#include "delcodes/listdec.hpp"

namespace delcodes {

namespace detail {

inline std::int64_t as_i64(std::size_t v) { return static_cast<std::int64_t>(v); }

// Number of pattern positions inside each block.
inline std::vector<std::size_t> deletions_per_block(const std::vector<Interval>& blocks, const DeletionPattern& p) {
    std::vector<std::size_t> out(blocks.size(), 0);
    std::size_t b = 0;
    for (auto pos : p.positions) {
        while (b < blocks.size() && blocks[b].end() <= pos) ++b;
        if (b < blocks.size() && blocks[b].start <= pos) ++out[b];
    }
    return out;
}

inline std::vector<Interval> even_blocks(std::size_t count, std::size_t len, std::size_t gap) {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back({i * (len + gap), len});
    return out;
}

}  // namespace detail

class HighNoiseScheme {
public:
    using message_type = std::vector<RawElem>;

    explicit HighNoiseScheme(const HighNoiseSpec& spec) : spec_(&spec), rate_(hn_rate_report(spec).rate) {}

    std::string id() const { return "highnoise"; }
    double rate() const { return rate_; }
    std::size_t codeword_symbols() const { return spec_->params.length(); }
    message_type random_message(Rng& rng) const { return delcodes::random_message(rng, spec_->rs); }
    Word encode(const message_type& m) const { return hn_encode(*spec_, m).flatten(); }

    Geometry geometry(const Word& sent) const {
        const auto& p = spec_->params;
        const auto hw = HeaderedWord::unflatten(sent, p.D, p.k);
        Geometry g;
        g.blocks = detail::even_blocks(p.n, p.m, 0);
        for (std::size_t i = 0; i < p.n; ++i) {
            std::vector<Symbol> payload;
            for (std::size_t j = 0; j < p.m; ++j) payload.push_back(hw[i * p.m + j].payload);
            g.block_words.emplace_back(std::move(payload), p.k);
            g.block_group.push_back(static_cast<std::uint32_t>(i % p.D));
        }
        g.codebook = &spec_->inner.codewords;
        g.erase_cost = p.m - p.min_block() + 1;
        return g;
    }

    /// Ledger: 2s + r < n (1 - eps/2) for the outer vector handed to the RS decoder.
    Evaluation evaluate(const message_type& msg, const Word&, const DeletionPattern&, const Word& received) const {
        const auto& p = spec_->params;
        const auto res = hn_decode(*spec_, HeaderedWord::unflatten(received, p.D, p.k));
        const auto& t = res.telemetry;
        const auto dmg = outer_damage(t.outer, rs_encode_raw(spec_->rs, msg));
        Evaluation ev;
        ev.success = res.message && *res.message == msg;
        const Rational lhs(detail::as_i64(2 * dmg.errors + dmg.erasures));
        ev.ledger_ok = lhs < Rational(detail::as_i64(p.n)) * (1 - p.epsilon / 2);
        ev.outcome = ev.success ? "decoded" : (res.message ? "wrong_message" : "decode_failure");
        ev.telemetry = {{"blocks", detail::as_i64(t.blocks)},
                        {"short_blocks", detail::as_i64(t.short_blocks)},
                        {"long_blocks", detail::as_i64(t.long_blocks)},
                        {"inner_successes", detail::as_i64(t.inner_successes)},
                        {"inner_failures", detail::as_i64(t.inner_failures)},
                        {"conflicts", detail::as_i64(t.conflicts)},
                        {"outer_errors", detail::as_i64(dmg.errors)},
                        {"outer_erasures", detail::as_i64(dmg.erasures)},
                        {"rs_corrected", detail::as_i64(t.rs_corrected)}};
        return ev;
    }

    const HighNoiseSpec& spec() const { return *spec_; }

private:
    const HighNoiseSpec* spec_;
    double rate_;
};

class HiRateScheme {
public:
    using message_type = std::vector<RawElem>;

    explicit HiRateScheme(const HiRateSpec& spec) : spec_(&spec), rate_(br_rate_report(spec).rate) {}

    std::string id() const { return "hirate"; }
    double rate() const { return rate_; }
    std::size_t codeword_symbols() const { return spec_->params.codeword_symbols(); }
    message_type random_message(Rng& rng) const { return delcodes::random_message(rng, spec_->rs); }
    Word encode(const message_type& m) const { return br_encode(*spec_, m); }

    Geometry geometry(const Word& sent) const {
        const auto& p = spec_->params;
        Geometry g;
        g.blocks = detail::even_blocks(p.n, p.m, p.buffer_len);
        for (const auto& b : g.blocks) g.block_words.push_back(sent.substr(b.start, b.len));
        for (std::size_t i = 0; i + 1 < p.n; ++i) g.buffers.push_back({g.blocks[i].end(), p.buffer_len});
        g.buffer_threshold = p.threshold();
        g.codebook = &spec_->inner.codewords;
        g.erase_cost = p.m - p.decodable_length() + 1;
        return g;
    }

    /// Ledger: window count within (1 +- 2 sqrt(eps)) n, incorrect windows at
    /// most 6 sqrt(eps) n, correct outer values at least (1 - 12 sqrt(eps)) n.
    Evaluation evaluate(const message_type& msg, const Word&, const DeletionPattern&, const Word& received) const {
        const auto& p = spec_->params;
        const auto res = br_decode(*spec_, received);
        const auto& t = res.telemetry;
        const auto c = rs_encode_raw(spec_->rs, msg);
        const auto dmg = outer_damage(t.outer, c);
        std::size_t incorrect = 0;
        for (const auto& wp : t.window_pairs)
            if (!wp || wp->index >= p.n || c[wp->index] != wp->value) ++incorrect;
        const auto n = detail::as_i64(p.n);
        const auto W = detail::as_i64(t.windows);
        const bool bracket = at_least_one_minus_sqrt(W, n, 2, p.epsilon) && at_most_one_plus_sqrt(W, n, 2, p.epsilon);
        const bool few_bad = Rational(detail::as_i64(incorrect * incorrect)) <= 36 * p.epsilon * Rational(n * n);
        const bool many_good = at_least_one_minus_sqrt(detail::as_i64(dmg.correct), n, 12, p.epsilon);
        Evaluation ev;
        ev.success = res.message && *res.message == msg;
        ev.ledger_ok = bracket && few_bad && many_good;
        ev.outcome = ev.success ? "decoded" : (res.message ? "wrong_message" : "decode_failure");
        ev.telemetry = {{"windows", W},
                        {"window_bracket_ok", bracket},
                        {"short_windows", detail::as_i64(t.short_windows)},
                        {"long_windows", detail::as_i64(t.long_windows)},
                        {"inner_successes", detail::as_i64(t.inner_successes)},
                        {"inner_failures", detail::as_i64(t.inner_failures)},
                        {"incorrect_windows", detail::as_i64(incorrect)},
                        {"conflicts", detail::as_i64(t.conflicts)},
                        {"outer_correct", detail::as_i64(dmg.correct)},
                        {"outer_errors", detail::as_i64(dmg.errors)},
                        {"outer_erasures", detail::as_i64(dmg.erasures)},
                        {"rs_corrected", detail::as_i64(t.rs_corrected)}};
        return ev;
    }

    const HiRateSpec& spec() const { return *spec_; }

private:
    const HiRateSpec* spec_;
    double rate_;
};

class ListDecScheme {
public:
    using message_type = std::vector<RawElem>;

    explicit ListDecScheme(const ListDecSpec& spec) : spec_(&spec), rate_(ld_report(spec).rate) {}

    std::string id() const { return "listdec"; }
    double rate() const { return rate_; }
    std::size_t codeword_symbols() const { return spec_->params.length(); }
    message_type random_message(Rng& rng) const { return delcodes::random_message(rng, spec_->rs); }
    Word encode(const message_type& m) const { return ld_encode(*spec_, m); }

    Geometry geometry(const Word& sent) const {
        const auto& p = spec_->params;
        Geometry g;
        g.blocks = detail::even_blocks(p.N, p.m, 0);
        for (const auto& b : g.blocks) g.block_words.push_back(sent.substr(b.start, b.len));
        g.codebook = &spec_->inner.codewords;
        g.erase_cost = p.good_block_deletions() + 1;
        g.window_step = p.step();
        return g;
    }

    /// Success: the message is in the output list. Ledger: at least ceil(eps N)
    /// blocks lost no more than floor((1/2 - 2 delta) m) symbols, and no full
    /// window fit L or more inner codewords.
    Evaluation evaluate(const message_type& msg, const Word&, const DeletionPattern& pattern, const Word& received) const {
        const auto& p = spec_->params;
        const auto res = ld_decode(*spec_, received);
        const auto& t = res.telemetry;
        const auto per_block = detail::deletions_per_block(detail::even_blocks(p.N, p.m, 0), pattern);
        const auto good = static_cast<std::size_t>(
            std::count_if(per_block.begin(), per_block.end(), [&](std::size_t d) { return d <= p.good_block_deletions(); }));
        const auto c = rs_encode_raw(spec_->rs, msg);
        std::size_t true_pairs = 0;
        for (std::size_t i = 0; i < p.N; ++i) true_pairs += res.candidates.pairs.count(OuterPair{i, c[i]});
        Evaluation ev;
        ev.success = std::find(res.messages.begin(), res.messages.end(), msg) != res.messages.end();
        ev.ledger_ok = good >= p.agreement() && t.list_bound_violations == 0;
        ev.outcome = ev.success ? "in_list" : "missing";
        ev.telemetry = {{"windows", detail::as_i64(t.windows)},
                        {"good_blocks", detail::as_i64(good)},
                        {"true_pairs", detail::as_i64(true_pairs)},
                        {"window_list_max", detail::as_i64(t.window_list_max)},
                        {"list_bound_violations", detail::as_i64(t.list_bound_violations)},
                        {"candidate_pairs", detail::as_i64(t.candidate_pairs)},
                        {"sum_sets", detail::as_i64(t.sum_sets)},
                        {"ell_budget", t.ell_budget},
                        {"output_size", detail::as_i64(t.output_size)}};
        return ev;
    }

    const ListDecSpec& spec() const { return *spec_; }

private:
    const ListDecSpec* spec_;
    double rate_;
};

}  // namespace delcodes
