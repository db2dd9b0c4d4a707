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

#include "delcodes/hirate.hpp"

#include <sstream>

#include "test_util.hpp"

using namespace delcodes;

namespace {

Word W(std::string_view s) { return Word::parse(s, 2); }

HrOverrides small_overrides() {
    HrOverrides ov;
    ov.delta = Rational(1, 8);
    ov.beta = Rational(1, 12);
    ov.m = 24;
    ov.buffer_len = 4;
    ov.n = 3;
    ov.n_prime = 1;
    return ov;
}

const HiRateSpec& small() {
    static const HiRateSpec spec = [] {
        BuildOptions opt;
        opt.seed = 1;
        return br_make_spec(Rational(1, 32), 3, Profile::Desk, small_overrides(), opt);
    }();
    return spec;
}

Word cut(const Word& w, std::size_t from, std::size_t len) {
    std::vector<Symbol> s(w.begin(), w.end());
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(from), s.begin() + static_cast<std::ptrdiff_t>(from + len));
    return Word(std::move(s), 2);
}

}  // namespace

TEST(HrParams, PaperProfile) {
    const auto p = br_make_params(Rational(1, 6400), 256, Profile::PaperAsymptotic);
    EXPECT_EQ(p.delta, Rational(1, 2));
    EXPECT_EQ(p.beta, Rational(1, 8));
    EXPECT_EQ(p.h, 6400u);
    EXPECT_EQ(p.n, 256u);
    EXPECT_EQ(p.n_prime, 256u - 77u);
    EXPECT_FALSE(p.field_order());
    EXPECT_EQ(p.m, 0u);
    EXPECT_ERRC(br_make_spec(p), InfeasibleAtDeskScale);
}

TEST(HrParams, Validation) {
    EXPECT_ERRC(br_make_params(Rational(1, 2), 16, Profile::PaperAsymptotic), OutOfRange);
    EXPECT_ERRC(br_make_params(Rational(1, 2), 16, Profile::Desk), InvalidOverride);
    EXPECT_ERRC(br_make_params(Rational(1, 32), 3, Profile::PaperAsymptotic, small_overrides()), InvalidOverride);
    EXPECT_ERRC(br_make_params(Rational(0), 3, Profile::Desk, small_overrides()), OutOfRange);
    auto ov = small_overrides();
    ov.n = 4;
    EXPECT_ERRC(br_make_params(Rational(1, 32), 3, Profile::Desk, ov), InvalidOverride);
    ov = small_overrides();
    ov.delta = Rational(1);
    EXPECT_ERRC(br_make_params(Rational(1, 32), 3, Profile::Desk, ov), InvalidOverride);
}

TEST(HrParams, Geometry) {
    const auto& p = small().params;
    EXPECT_EQ(p.threshold(), 2u);
    EXPECT_EQ(p.decodable_length(), 21u);
    EXPECT_EQ(p.length(), 80u);
    EXPECT_EQ(p.codeword_symbols(), 72u);
    EXPECT_EQ(*p.field_order(), 3u);
}

TEST(HrSpec, InnerCodeDenseAndSeparated) {
    const auto& s = small();
    EXPECT_EQ(s.inner.size(), 9u);
    EXPECT_EQ(s.inner.kind, CodeKind::Dense);
    EXPECT_FALSE(find_density_violation(s.inner));
    EXPECT_FALSE(find_separation_violation(s.inner));
    for (const auto& c : s.inner.codewords) EXPECT_TRUE(runs_of_zero(c, s.params.threshold()).empty());
}

TEST(HrEncode, Structure) {
    const auto& s = small();
    const std::vector<RawElem> msg = {2};
    const auto w = br_encode(s, msg);
    ASSERT_EQ(w.size(), 80u);
    const auto c = rs_encode_raw(s.rs, msg);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(w.substr(i * 28, 24), s.inner.codewords[pair_index(i, c[i], 3)]);
        if (i) {
            EXPECT_EQ(w.substr(i * 28 - 4, 4), Word::zeros(4));
        }
    }

    // Two positions over a hand-made inner code: codeword, buffer, codeword.
    HiRateSpec toy = s;
    toy.params.n = 2;
    toy.params.m = 4;
    toy.params.buffer_len = 2;
    toy.rs = make_rs_params(make_field(3), 2, 1);
    toy.inner.m = 4;
    toy.inner.codewords.assign(6, W("1011"));
    toy.inner.codewords[pair_index(1, 0, 3)] = W("1101");
    EXPECT_EQ(br_encode(toy, std::vector<RawElem>{0}), W("1011001101"));
    toy.params.n = 1;
    toy.rs = make_rs_params(make_field(3), 1, 1);
    EXPECT_EQ(br_encode(toy, std::vector<RawElem>{0}), W("1011"));
}

TEST(HrWindows, Examples) {
    EXPECT_EQ(br_windows(3, W("111000000101")), (std::vector<DecodingWindow>{{0, 3}, {9, 3}}));
    EXPECT_EQ(br_windows(3, W("00111")), (std::vector<DecodingWindow>{{2, 3}}));
    EXPECT_EQ(br_windows(3, W("1100")), (std::vector<DecodingWindow>{{0, 2}}));
    EXPECT_TRUE(br_windows(3, W("0000")).empty());
    EXPECT_TRUE(br_windows(3, Word({}, 2)).empty());
    EXPECT_EQ(br_windows(2, W("1001")), (std::vector<DecodingWindow>{{0, 1}, {3, 1}}));
}

TEST(HrWindowsProperty, WindowsAvoidLongRuns) {
    Rng rng(6);
    for (int it = 0; it < 500; ++it) {
        std::vector<Symbol> s(uniform_below(rng, 60));
        for (auto& x : s) x = uniform_below(rng, 3) ? 1 : 0;
        const Word w(s, 2);
        const std::size_t T = 1 + uniform_below(rng, 4);
        std::size_t prev_end = 0;
        for (const auto& win : br_windows(T, w)) {
            ASSERT_GE(win.start, prev_end);
            ASSERT_GT(win.len, 0u);
            ASSERT_TRUE(runs_of_zero(w.substr(win.start, win.len), T).empty());
            prev_end = win.end();
        }
        // Every one lies in some window.
        const auto wins = br_windows(T, w);
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] == 1) {
                ASSERT_TRUE(std::any_of(wins.begin(), wins.end(), [&](const DecodingWindow& d) { return i >= d.start && i < d.end(); }));
            }
    }
}

TEST(HrDecode, NoDeletions) {
    const auto& s = small();
    for (RawElem v = 0; v < 3; ++v) {
        const std::vector<RawElem> msg = {v};
        const auto res = br_decode(s, br_encode(s, msg));
        ASSERT_TRUE(res.ok());
        EXPECT_EQ(*res.message, msg);
        EXPECT_EQ(res.telemetry.windows, 3u);
        EXPECT_EQ(res.telemetry.inner_successes, 3u);
        EXPECT_EQ(res.telemetry.window_pairs.size(), 3u);
    }
}

TEST(HrDecode, WholeCodewordDeleted) {
    const auto& s = small();
    const std::vector<RawElem> msg = {1};
    const auto res = br_decode(s, cut(br_encode(s, msg), 28, 24));
    ASSERT_TRUE(res.ok());
    EXPECT_EQ(*res.message, msg);
    EXPECT_EQ(res.telemetry.windows, 2u);
    EXPECT_EQ(res.telemetry.erasures, 1u);
}

TEST(HrDecode, RejectsNonBinary) { EXPECT_ERRC(br_decode(small(), Word::parse("012", 3)), NotBinary); }

TEST(HrDecodeProperty, FewDeletionsPerCodeword) {
    // Deletions inside codewords never produce a wrong pair; a deleted one can
    // open a zero run and split a window, which only costs an erasure.
    const auto& s = small();
    Rng rng(12);
    for (int it = 0; it < 100; ++it) {
        const std::vector<RawElem> msg = {static_cast<RawElem>(uniform_below(rng, 3))};
        const auto w = br_encode(s, msg);
        std::vector<Symbol> out;
        for (std::size_t i = 0; i < 3; ++i) {
            if (i) out.insert(out.end(), 4, 0);
            const auto keep = sample_subset(rng, 24, 24 - uniform_below(rng, 4));
            for (auto p : keep) out.push_back(w[i * 28 + p]);
        }
        const auto res = br_decode(s, Word(out, 2));
        const auto c = rs_encode_raw(s.rs, msg);
        for (const auto& pr : res.telemetry.window_pairs) {
            if (pr) {
                ASSERT_EQ(pr->value, c[pr->index]);
            }
        }
        ASSERT_EQ(res.telemetry.conflicts, 0u);
        if (res.telemetry.erasures < 3) {
            ASSERT_TRUE(res.ok());
            ASSERT_EQ(*res.message, msg);
        }
    }
}

TEST(HrRate, Factors) {
    const auto r = br_rate_report(small());
    EXPECT_NEAR(r.buffer_factor, 72.0 / 80.0, 1e-12);
    EXPECT_NEAR(r.rate, r.outer_rate * r.inner_rate * r.buffer_factor, 1e-12);
    EXPECT_NEAR(r.buffer_claim, 8.0 / 9.0, 1e-12);
}

TEST(PackedBits, RoundTrip) {
    for (const char* s : {"", "1", "10110010", "101100101", "0000000000000000001"}) {
        std::stringstream ss;
        write_bits_packed(ss, W(s));
        EXPECT_EQ(ss.str().size(), 8 + (std::strlen(s) + 7) / 8);
        EXPECT_EQ(read_bits_packed(ss), W(s));
    }
    std::stringstream trunc(std::string("\x09\0\0\0\0\0\0\0\x01", 9));
    EXPECT_ERRC(read_bits_packed(trunc), ParseError);
    std::stringstream shorthead(std::string("\x01\0", 2));
    EXPECT_ERRC(read_bits_packed(shorthead), ParseError);
}
