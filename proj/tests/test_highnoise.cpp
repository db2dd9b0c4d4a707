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

#include "delcodes/highnoise.hpp"

#include <sstream>

#include "delcodes/channel.hpp"
#include "test_util.hpp"

using namespace delcodes;

namespace {

HnOverrides tiny_overrides() {
    HnOverrides ov;
    ov.D = 4;
    ov.k = 64;
    ov.m = 8;
    ov.n = 5;
    return ov;
}

const HighNoiseSpec& tiny() {
    static const HighNoiseSpec spec = [] {
        BuildOptions opt;
        opt.seed = 1;
        return hn_make_spec(Rational(1, 2), 5, Profile::Desk, tiny_overrides(), opt);
    }();
    return spec;
}

HeaderedWord headers(std::initializer_list<std::uint32_t> hs) {
    std::vector<HeaderedSymbol> s;
    for (auto h : hs) s.push_back({h, 0});
    return HeaderedWord(std::move(s), 4, 2);
}

HeaderedWord drop(const HeaderedWord& w, std::size_t from, std::size_t len) {
    std::vector<HeaderedSymbol> s(w.symbols());
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(from), s.begin() + static_cast<std::ptrdiff_t>(from + len));
    return HeaderedWord(std::move(s), w.header_modulus(), w.payload_alphabet());
}

}  // namespace

TEST(HnParams, PaperProfile) {
    const auto p = hn_make_params(Rational(1, 2), 8, Profile::PaperAsymptotic);
    EXPECT_EQ(p.D, 16u);
    EXPECT_EQ(p.m, 72u);
    EXPECT_EQ(p.n_prime, 2u);
    EXPECT_EQ(p.k, 512u);
    EXPECT_EQ(p.n, 8u);
    EXPECT_EQ(p.inner_needed(), 64u);
    EXPECT_EQ(p.inner_delta(), Rational(3, 4));
    EXPECT_EQ(p.min_block(), 18u);
}

TEST(HnParams, DeskOverridesAndRange) {
    auto ov = tiny_overrides();
    ov.k = 4;
    ov.n_prime = 1;
    const auto p = hn_make_params(Rational(1, 2), 5, Profile::Desk, ov);
    EXPECT_EQ(p.D, 4u);
    EXPECT_EQ(p.k, 4u);
    EXPECT_EQ(p.length(), 40u);
    EXPECT_ERRC(hn_make_params(Rational(9, 10), 5, Profile::Desk), OutOfRange);
    EXPECT_ERRC(hn_make_params(Rational(0), 5, Profile::Desk), OutOfRange);
    EXPECT_ERRC(hn_make_params(Rational(1, 2), 5, Profile::PaperAsymptotic, ov), InvalidOverride);
    EXPECT_ERRC(hn_make_params(Rational(1, 2), 6, Profile::Desk), NotPrimePower);
    ov.n = 6;
    EXPECT_ERRC(hn_make_params(Rational(1, 2), 5, Profile::Desk, ov), InvalidOverride);
    ov.n = 5;
    ov.D = 1;
    EXPECT_ERRC(hn_make_params(Rational(1, 2), 5, Profile::Desk, ov), InvalidOverride);
}

TEST(HnSpec, InfeasibleInnerCodeIsReported) {
    auto ov = tiny_overrides();
    ov.k = 4;
    BuildOptions opt;
    opt.attempt_cap = 20000;
    EXPECT_ERRC(hn_make_spec(Rational(1, 2), 5, Profile::Desk, ov, opt), InfeasibleAtDeskScale);
}

TEST(HnSpec, InnerCodeSeparated) {
    const auto& s = tiny();
    EXPECT_EQ(s.inner.size(), 25u);
    EXPECT_EQ(s.inner.delta, Rational(3, 4));
    EXPECT_FALSE(find_separation_violation(s.inner));
}

TEST(HnSpec, CachedCodebookReproducesSpec) {
    const auto& s = tiny();
    BuildOptions opt;
    opt.cached = s.inner;
    EXPECT_EQ(hn_make_spec(s.params, opt), s);
    auto wrong = s.inner;
    wrong.m = 9;
    opt.cached = wrong;
    EXPECT_ERRC(hn_make_spec(s.params, opt), InvalidOverride);
}

TEST(HnEncode, HeadersCycle) {
    const auto& s = tiny();
    const auto w = hn_encode(s, std::vector<RawElem>{0, 0});
    ASSERT_EQ(w.size(), s.params.length());
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_EQ(w[i].header, (i / 8) % 4);
    for (std::size_t b = 0; b < 5; ++b)
        for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(w[b * 8 + j].payload, s.inner.codewords[pair_index(b, 0, 5)][j]);
}

TEST(HnPartition, Examples) {
    const auto blocks = hn_partition_blocks(headers({0, 0, 1, 3, 3}));
    ASSERT_EQ(blocks.size(), 3u);
    EXPECT_EQ(blocks[0], (Block{{0, 2}, 0}));
    EXPECT_EQ(blocks[1], (Block{{2, 1}, 1}));
    EXPECT_EQ(blocks[2], (Block{{3, 2}, 3}));
    EXPECT_TRUE(hn_partition_blocks(HeaderedWord({}, 4, 2)).empty());
    EXPECT_EQ(hn_partition_blocks(headers({2, 2, 2})).size(), 1u);
}

TEST(HnPartitionProperty, IsAPartition) {
    Rng rng(4);
    for (int it = 0; it < 200; ++it) {
        std::vector<HeaderedSymbol> s(uniform_below(rng, 40));
        for (auto& x : s) x = {static_cast<std::uint32_t>(uniform_below(rng, 3)), 0};
        const HeaderedWord w(s, 3, 2);
        std::size_t pos = 0;
        const auto blocks = hn_partition_blocks(w);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            ASSERT_EQ(blocks[b].span.start, pos);
            ASSERT_GT(blocks[b].span.len, 0u);
            for (std::size_t i = blocks[b].span.start; i < blocks[b].span.end(); ++i) ASSERT_EQ(w[i].header, blocks[b].header);
            if (b) {
                ASSERT_NE(blocks[b].header, blocks[b - 1].header);
            }
            pos = blocks[b].span.end();
        }
        ASSERT_EQ(pos, w.size());
    }
}

TEST(HnDecode, NoDeletions) {
    const auto& s = tiny();
    const std::vector<RawElem> msg = {3, 1};
    const auto res = hn_decode(s, hn_encode(s, msg));
    ASSERT_TRUE(res.ok());
    EXPECT_EQ(*res.message, msg);
    EXPECT_EQ(res.telemetry.blocks, 5u);
    EXPECT_EQ(res.telemetry.inner_successes, 5u);
    EXPECT_EQ(res.telemetry.conflicts, 0u);
}

TEST(HnDecode, WholeBlockErased) {
    const auto& s = tiny();
    const std::vector<RawElem> msg = {2, 4};
    const auto res = hn_decode(s, drop(hn_encode(s, msg), 16, 8));
    ASSERT_TRUE(res.ok());
    EXPECT_EQ(*res.message, msg);
    EXPECT_EQ(res.telemetry.erasures, 1u);
}

TEST(HnDecode, MergedBlocksAcrossHeaders) {
    // Deleting blocks 1..3 brings blocks 0 and 4 (both header 0) together:
    // the 16-symbol run is too long and both indices are erased.
    const auto& s = tiny();
    const std::vector<RawElem> msg = {1, 1};
    const auto res = hn_decode(s, drop(hn_encode(s, msg), 8, 24));
    EXPECT_EQ(res.telemetry.long_blocks, 1u);
    EXPECT_EQ(res.telemetry.erasures, 5u);
    EXPECT_FALSE(res.ok());
}

TEST(HnDecodeProperty, LongSubsequencesDecode) {
    const auto& s = tiny();
    Rng rng(8);
    const std::size_t lo = s.params.min_block();
    for (std::size_t i = 0; i < s.inner.size(); ++i)
        for (int it = 0; it < 50; ++it) {
            const std::size_t keep = lo + uniform_below(rng, s.params.m - lo + 1);
            const auto pos = sample_subset(rng, s.params.m, keep);
            std::vector<Symbol> sub;
            for (auto p : pos) sub.push_back(s.inner.codewords[i][p]);
            const auto d = inner_decode_unique(s.inner, sub);
            ASSERT_TRUE(d.ok());
            ASSERT_EQ(d.index, i);
            ASSERT_EQ(split_pair_index(d.index, 5), (OuterPair{i / 5, static_cast<RawElem>(i % 5)}));
        }
}

TEST(HnPairs, FlatIndexBijection) {
    for (std::size_t i = 0; i < 7; ++i)
        for (RawElem c = 0; c < 11; ++c) {
            const auto flat = pair_index(i, c, 11);
            EXPECT_EQ(split_pair_index(flat, 11), (OuterPair{i, c}));
            EXPECT_LT(flat, 77u);
        }
}

TEST(HnRate, Decomposition) {
    const auto& s = tiny();
    const auto r = hn_rate_report(s);
    EXPECT_NEAR(r.rate, r.outer_rate * r.inner_rate * r.header_factor, 1e-12);
    EXPECT_DOUBLE_EQ(r.outer_claim, 0.125);
    EXPECT_DOUBLE_EQ(r.overall_claim, 0.25);
    EXPECT_NEAR(r.header_factor, 6.0 / 8.0, 1e-12);
}

TEST(HeaderedWordIo, RoundTrips) {
    const auto& s = tiny();
    const auto w = hn_encode(s, std::vector<RawElem>{4, 2});
    std::stringstream text;
    write_headered_text(text, w);
    EXPECT_EQ(read_headered_text(text, 4, 64), w);
    std::stringstream bin;
    write_headered_binary(bin, w);
    EXPECT_EQ(bin.str().size(), 4 * w.size());
    EXPECT_EQ(read_headered_binary(bin, 4, 64), w);
    EXPECT_EQ(HeaderedWord::unflatten(w.flatten(), 4, 64), w);

    std::stringstream bad("1:2\nx\n");
    EXPECT_ERRC(read_headered_text(bad, 4, 64), ParseError);
    std::stringstream odd(std::string("\x01\x00\x00", 3));
    EXPECT_ERRC(read_headered_binary(odd, 4, 64), ParseError);
    std::stringstream big("5:1\n");
    EXPECT_ERRC(read_headered_text(big, 4, 64), OutOfRange);
}
