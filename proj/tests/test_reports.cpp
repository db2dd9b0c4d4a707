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

#include "delcodes/reports.hpp"

#include <filesystem>
#include <sstream>

#include "test_util.hpp"

using namespace delcodes;
namespace fs = std::filesystem;

namespace {

TrialReport sample(bool timed) {
    TrialReport r;
    r.scheme = "hirate";
    r.strategy = Strategy::BufferKill;
    r.fraction = Rational(1, 32);
    r.budget = 25;
    r.seed = 0xfedcba9876543210ULL;
    r.trial = 7;
    r.length = 820;
    r.pattern_size = 25;
    r.success = true;
    r.ledger_ok = false;
    r.outcome = "decoded";
    r.rate = 0.1234567890123;
    r.telemetry = {{"windows", 16}, {"conflicts", 0}, {"outer_errors", -1}};
    if (timed) r.wall_ms = 1.5;
    return r;
}

void expect_same(const TrialReport& a, const TrialReport& b) {
    EXPECT_EQ(a.scheme, b.scheme);
    EXPECT_EQ(a.strategy, b.strategy);
    EXPECT_EQ(a.fraction, b.fraction);
    EXPECT_EQ(a.budget, b.budget);
    EXPECT_EQ(a.seed, b.seed);
    EXPECT_EQ(a.trial, b.trial);
    EXPECT_EQ(a.length, b.length);
    EXPECT_EQ(a.pattern_size, b.pattern_size);
    EXPECT_EQ(a.success, b.success);
    EXPECT_EQ(a.ledger_ok, b.ledger_ok);
    EXPECT_EQ(a.outcome, b.outcome);
    EXPECT_EQ(a.rate, b.rate);
    EXPECT_EQ(a.telemetry, b.telemetry);
    EXPECT_EQ(a.wall_ms, b.wall_ms);
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("delcodes_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                   "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const char* name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

}  // namespace

TEST(TrialJson, FieldOrder) {
    const auto line = to_json(sample(false)).dump();
    EXPECT_EQ(line.find("{\"scheme\":\"hirate\",\"strategy\":\"BUFFER_KILL\",\"fraction\":\"1/32\",\"budget\":25"), 0u);
    EXPECT_EQ(line.find("wall_ms"), std::string::npos);
    EXPECT_NE(line.find("\"telemetry\":{\"windows\":16,\"conflicts\":0,\"outer_errors\":-1}"), std::string::npos);
    EXPECT_NE(to_json(sample(true)).dump().find("\"wall_ms\":1.5"), std::string::npos);
}

TEST(TrialJson, RoundTrip) {
    std::stringstream ss;
    write_reports(ss, {sample(false), sample(true)});
    const auto back = read_reports(ss);
    ASSERT_EQ(back.size(), 2u);
    expect_same(back[0], sample(false));
    expect_same(back[1], sample(true));
}

TEST(TrialJson, Malformed) {
    std::stringstream a("{not json\n");
    EXPECT_ERRC(read_reports(a), ParseError);
    std::stringstream b("{\"scheme\":\"x\"}\n");
    EXPECT_ERRC(read_reports(b), ParseError);
    auto j = to_json(sample(false));
    j["strategy"] = "nope";
    std::stringstream c(j.dump() + "\n");
    EXPECT_ERRC(read_reports(c), ParseError);
}

TEST(Summary, Cells) {
    auto a = sample(false), b = sample(false), c = sample(false);
    b.success = false;
    c.fraction = Rational(1, 2);
    const auto cells = summarize({a, b, c});
    ASSERT_EQ(cells.size(), 2u);
    EXPECT_EQ(cells[0].trials, 2u);
    EXPECT_EQ(cells[0].successes, 1u);
    EXPECT_EQ(cells[0].ledger_failures, 2u);
    EXPECT_EQ(cells[1].fraction, Rational(1, 2));
}

TEST(SpecFiles, RoundTripAllSchemes) {
    TempDir dir;
    HnOverrides hov;
    hov.D = 4;
    hov.k = 64;
    hov.m = 8;
    hov.n = 5;
    BuildOptions seeded;
    seeded.seed = 1;
    HrOverrides rov;
    rov.delta = Rational(1, 8);
    rov.beta = Rational(1, 12);
    rov.m = 24;
    rov.buffer_len = 4;
    rov.n = 3;
    rov.n_prime = 1;
    LdOverrides lov;
    lov.delta = Rational(1, 10);
    lov.m = 10;
    lov.L = 4;
    BuildOptions lex;
    lex.policy = CandidatePolicy::Lex;
    const std::vector<AnySpec> specs = {hn_make_spec(Rational(1, 2), 5, Profile::Desk, hov, seeded),
                                        br_make_spec(Rational(1, 32), 3, Profile::Desk, rov, seeded),
                                        ld_make_spec(Rational(1, 3), LdOuter{3, 3, 1}, Profile::Desk, lov, lex)};
    for (const auto& s : specs) {
        save_spec(s, dir.file("spec.json"), dir.file("inner.cb"));
        const auto back = load_spec(dir.file("spec.json"), dir.file("inner.cb"));
        EXPECT_EQ(scheme_name(back), scheme_name(s));
        EXPECT_TRUE(back == s) << scheme_name(s);
        EXPECT_EQ(spec_to_json(back), spec_to_json(s));
    }
}

TEST(SpecFiles, Errors) {
    TempDir dir;
    EXPECT_ERRC(load_spec(dir.file("missing.json"), dir.file("missing.cb")), ParseError);
    {
        std::ofstream(dir.file("bad.json")) << "{\"scheme\":\"warp\",\"profile\":\"DESK\"}";
        std::ofstream cb(dir.file("x.cb"));
        save_codebook(greedy_unique(2, 3, Rational(1, 3), GreedyOptions{0, CandidatePolicy::Lex}), cb);
    }
    EXPECT_ERRC(load_spec(dir.file("bad.json"), dir.file("x.cb")), ParseError);
    std::ofstream(dir.file("trunc.json")) << "{\"scheme\":";
    EXPECT_ERRC(load_spec(dir.file("trunc.json"), dir.file("x.cb")), ParseError);
    std::ofstream(dir.file("hn.json")) << "{\"scheme\":\"highnoise\",\"profile\":\"DESK\",\"epsilon\":\"1/2\"}";
    EXPECT_ERRC(load_spec(dir.file("hn.json"), dir.file("x.cb")), ParseError);
}
