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

#include "delcodes/listdec.hpp"

#include "test_util.hpp"

using namespace delcodes;

namespace {

const ListDecSpec& small() {
    static const ListDecSpec spec = [] {
        LdOverrides ov;
        ov.delta = Rational(1, 10);
        ov.m = 10;
        ov.L = 4;
        BuildOptions opt;
        opt.policy = CandidatePolicy::Lex;
        return ld_make_spec(Rational(1, 3), LdOuter{3, 3, 1}, Profile::Desk, ov, opt);
    }();
    return spec;
}

std::vector<Interval> starts(std::initializer_list<std::size_t> ss, std::size_t w) {
    std::vector<Interval> out;
    for (auto s : ss) out.push_back({s, w});
    return out;
}

}  // namespace

TEST(LdParams, PaperProfile) {
    const auto p = ld_make_params(Rational(1, 5), LdOuter{16, 16, 2}, Profile::PaperAsymptotic);
    EXPECT_EQ(p.delta, Rational(1, 20));
    EXPECT_EQ(p.inner_delta(), Rational(9, 20));
    EXPECT_EQ(p.window_len(), static_cast<std::size_t>(ceil_mul(Rational(11, 20), static_cast<std::int64_t>(p.m))));
    EXPECT_EQ(p.ell(), 8000);
    EXPECT_EQ(p.agreement(), 4u);
    EXPECT_GE(p.L, 2u);
}

TEST(LdParams, Validation) {
    EXPECT_ERRC(ld_make_params(Rational(1, 2), LdOuter{5, 3, 1}, Profile::Desk), OutOfRange);
    EXPECT_ERRC(ld_make_params(Rational(0), LdOuter{5, 3, 1}, Profile::Desk), OutOfRange);
    EXPECT_ERRC(ld_make_params(Rational(1, 3), LdOuter{5, 6, 1}, Profile::Desk), InvalidOverride);
    EXPECT_ERRC(ld_make_params(Rational(1, 3), LdOuter{5, 3, 4}, Profile::Desk), InvalidOverride);
    EXPECT_ERRC(ld_make_params(Rational(1, 3), LdOuter{6, 3, 1}, Profile::Desk), NotPrimePower);
    LdOverrides ov;
    ov.L = 1;
    EXPECT_ERRC(ld_make_params(Rational(1, 3), LdOuter{5, 3, 1}, Profile::Desk, ov), InvalidOverride);
    EXPECT_ERRC(ld_make_params(Rational(1, 3), LdOuter{5, 3, 1}, Profile::PaperAsymptotic, ov), InvalidOverride);
    ov = {};
    ov.delta = Rational(1, 2);
    EXPECT_ERRC(ld_make_params(Rational(1, 3), LdOuter{5, 3, 1}, Profile::Desk, ov), InvalidOverride);
}

TEST(LdParams, SmallGeometry) {
    const auto& p = small().params;
    EXPECT_EQ(p.window_len(), 6u);
    EXPECT_EQ(p.step(), 1u);
    EXPECT_EQ(p.good_block_deletions(), 3u);
    EXPECT_EQ(p.agreement(), 1u);
    EXPECT_EQ(p.length(), 30u);
    EXPECT_EQ(small().inner.size(), 9u);
}

TEST(LdSpec, RecoveryGuard) {
    const auto p = ld_make_params(Rational(1, 3), LdOuter{5, 5, 3}, Profile::Desk);
    EXPECT_ERRC(ld_make_spec(p, {}, 100), InfeasibleAtDeskScale);
}

TEST(LdWindows, Examples) {
    EXPECT_EQ(ld_windows(6, 1, 20), starts({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}, 6));
    EXPECT_EQ(ld_windows(6, 1, 6), starts({0}, 6));
    EXPECT_EQ(ld_windows(6, 1, 4), starts({0}, 4));
    EXPECT_EQ(ld_windows(6, 4, 20), starts({0, 4, 8, 12, 14}, 6));
    EXPECT_EQ(ld_windows(6, 7, 20), starts({0, 7, 14}, 6));
    EXPECT_TRUE(ld_windows(6, 1, 0).empty());
}

TEST(LdWindowsProperty, CoverEverySpan) {
    // Every interval of length w + step - 1 contains a whole window.
    for (std::size_t w = 1; w <= 8; ++w)
        for (std::size_t step = 1; step <= 4; ++step)
            for (std::size_t len = w; len <= 30; ++len) {
                const auto wins = ld_windows(w, step, len);
                ASSERT_TRUE(std::is_sorted(wins.begin(), wins.end(), [](auto& a, auto& b) { return a.start < b.start; }));
                for (const auto& x : wins) ASSERT_LE(x.end(), len);
                for (std::size_t a = 0; a + w + step - 1 <= len; ++a)
                    ASSERT_TRUE(std::any_of(wins.begin(), wins.end(), [&](const Interval& x) { return x.start >= a && x.end() <= a + w + step - 1; }))
                        << "w=" << w << " step=" << step << " len=" << len << " a=" << a;
            }
}

TEST(LdEncode, Structure) {
    const auto& s = small();
    const std::vector<RawElem> msg = {2};
    const auto w = ld_encode(s, msg);
    ASSERT_EQ(w.size(), 30u);
    const auto c = rs_encode_raw(s.rs, msg);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(w.substr(i * 10, 10), s.inner.codewords[pair_index(i, c[i], 3)]);
}

TEST(LdDecode, NoDeletions) {
    const auto& s = small();
    for (RawElem v = 0; v < 3; ++v) {
        const std::vector<RawElem> msg = {v};
        const auto res = ld_decode(s, ld_encode(s, msg));
        EXPECT_NE(std::find(res.messages.begin(), res.messages.end(), msg), res.messages.end());
        EXPECT_EQ(res.telemetry.list_bound_violations, 0u);
        EXPECT_EQ(res.telemetry.windows, 25u);
        EXPECT_LE(res.telemetry.window_list_max, 3u);
        EXPECT_EQ(res.telemetry.output_size, res.messages.size());
        EXPECT_TRUE(std::is_sorted(res.messages.begin(), res.messages.end()));
    }
}

TEST(LdDecode, ShortAndEmptyInput) {
    const auto& s = small();
    const auto res = ld_decode(s, Word({}, 2));
    EXPECT_EQ(res.telemetry.windows, 0u);
    EXPECT_TRUE(res.messages.empty());
    EXPECT_ERRC(ld_decode(s, Word::parse("2", 3)), NotBinary);
}

TEST(LdDecodeProperty, GoodBlocksYieldTruePairs) {
    const auto& s = small();
    const auto& p = s.params;
    Rng rng(31);
    for (int it = 0; it < 300; ++it) {
        const std::vector<RawElem> msg = {static_cast<RawElem>(uniform_below(rng, 3))};
        const auto w = ld_encode(s, msg);
        const auto c = rs_encode_raw(s.rs, msg);
        std::vector<Symbol> out;
        std::size_t good = 0;
        std::vector<bool> is_good(p.N);
        for (std::size_t i = 0; i < p.N; ++i) {
            const std::size_t del = uniform_below(rng, p.m + 1);
            is_good[i] = del <= p.good_block_deletions();
            good += is_good[i];
            for (auto x : sample_subset(rng, p.m, p.m - del)) out.push_back(w[i * p.m + x]);
        }
        const auto res = ld_decode(s, Word(out, 2));
        for (std::size_t i = 0; i < p.N; ++i) {
            if (is_good[i]) {
                ASSERT_TRUE(res.candidates.pairs.count(OuterPair{i, c[i]})) << "block " << i;
            }
        }
        if (good >= p.agreement()) {
            ASSERT_NE(std::find(res.messages.begin(), res.messages.end(), msg), res.messages.end());
        }
        for (const auto& m : res.messages) {
            const auto cw = rs_encode_raw(s.rs, m);
            std::size_t agree = 0;
            for (std::size_t i = 0; i < p.N; ++i) agree += res.candidates.pairs.count(OuterPair{i, cw[i]});
            ASSERT_GE(agree, p.agreement());
        }
    }
}

TEST(LdReport, Fields) {
    const auto r = ld_report(small());
    EXPECT_NEAR(r.rate, std::log2(3.0) / 30.0, 1e-12);
    EXPECT_EQ(r.window_len, 6u);
    EXPECT_EQ(r.step, 1u);
    EXPECT_EQ(r.ell, 1000);
    EXPECT_EQ(r.pv_s, 2);
    EXPECT_NEAR(r.inner_list_claim, 100.0, 1e-9);
}
