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

// Trial records as JSON lines, and scheme spec files.
//
// A spec file is a JSON object holding the scheme name and its parameters;
// the inner codebook lives in a separate file in the codebook text format.
// Loading rebuilds the spec from the parameters with the codebook as cache,
// so a loaded spec equals the one that was saved.

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "delcodes/channel.hpp"
#include "delcodes/highnoise.hpp"
#include "delcodes/hirate.hpp"
#include "delcodes/listdec.hpp"

namespace delcodes {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Trial records

inline ojson to_json(const TrialReport& r) {
    ojson j;
    j["scheme"] = r.scheme;
    j["strategy"] = std::string(to_string(r.strategy));
    j["fraction"] = to_string(r.fraction);
    j["budget"] = r.budget;
    j["seed"] = r.seed;
    j["trial"] = r.trial;
    j["length"] = r.length;
    j["pattern_size"] = r.pattern_size;
    j["success"] = r.success;
    j["ledger_ok"] = r.ledger_ok;
    j["outcome"] = r.outcome;
    j["rate"] = r.rate;
    ojson t = ojson::object();
    for (const auto& [k, v] : r.telemetry) t[k] = v;
    j["telemetry"] = std::move(t);
    if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
    return j;
}

inline TrialReport trial_report_from_json(const ojson& j) {
    try {
        TrialReport r;
        r.scheme = j.at("scheme").get<std::string>();
        r.strategy = parse_strategy(j.at("strategy").get<std::string>());
        r.fraction = parse_rational(j.at("fraction").get<std::string>());
        r.budget = j.at("budget").get<std::size_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.trial = j.at("trial").get<std::size_t>();
        r.length = j.at("length").get<std::size_t>();
        r.pattern_size = j.at("pattern_size").get<std::size_t>();
        r.success = j.at("success").get<bool>();
        r.ledger_ok = j.at("ledger_ok").get<bool>();
        r.outcome = j.at("outcome").get<std::string>();
        r.rate = j.at("rate").get<double>();
        for (const auto& [k, v] : j.at("telemetry").items()) r.telemetry.emplace_back(k, v.get<std::int64_t>());
        if (j.contains("wall_ms")) r.wall_ms = j.at("wall_ms").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::ParseError, std::string("malformed trial record: ") + e.what());
    }
}

inline void write_reports(std::ostream& os, const std::vector<TrialReport>& reports) {
    for (const auto& r : reports) os << to_json(r).dump() << '\n';
}

inline std::vector<TrialReport> read_reports(std::istream& is) {
    std::vector<TrialReport> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        ojson j;
        try {
            j = ojson::parse(line);
        } catch (const nlohmann::json::exception& e) {
            fail(Errc::ParseError, std::string("malformed trial record: ") + e.what());
        }
        out.push_back(trial_report_from_json(j));
    }
    return out;
}

/// Success counts per (strategy, fraction) cell, in first-seen order.
struct CellSummary {
    Strategy strategy = Strategy::Random;
    Rational fraction{0};
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::size_t ledger_failures = 0;
};

inline std::vector<CellSummary> summarize(const std::vector<TrialReport>& reports) {
    std::vector<CellSummary> out;
    for (const auto& r : reports) {
        auto it = std::find_if(out.begin(), out.end(), [&](const CellSummary& c) { return c.strategy == r.strategy && c.fraction == r.fraction; });
        if (it == out.end()) {
            out.push_back({r.strategy, r.fraction, 0, 0, 0});
            it = std::prev(out.end());
        }
        ++it->trials;
        it->successes += r.success;
        it->ledger_failures += !r.ledger_ok;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spec files

using AnySpec = std::variant<HighNoiseSpec, HiRateSpec, ListDecSpec>;

inline std::string scheme_name(const AnySpec& s) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, HighNoiseSpec>) return "highnoise";
            else if constexpr (std::is_same_v<T, HiRateSpec>) return "hirate";
            else return "listdec";
        },
        s);
}

inline ojson params_to_json(const HnParams& p) {
    return ojson{{"scheme", "highnoise"}, {"profile", std::string(to_string(p.profile))},
                 {"epsilon", to_string(p.epsilon)}, {"D", p.D}, {"k", p.k}, {"m", p.m}, {"n", p.n}, {"q", p.q}, {"n_prime", p.n_prime}};
}

inline ojson params_to_json(const HrParams& p) {
    return ojson{{"scheme", "hirate"},       {"profile", std::string(to_string(p.profile))},
                 {"epsilon", to_string(p.epsilon)}, {"delta", to_string(p.delta)}, {"beta", to_string(p.beta)},
                 {"buffer_len", p.buffer_len}, {"m", p.m}, {"n", p.n}, {"q", p.q}, {"h", p.h}, {"n_prime", p.n_prime}};
}

inline ojson params_to_json(const LdParams& p) {
    return ojson{{"scheme", "listdec"}, {"profile", std::string(to_string(p.profile))},
                 {"epsilon", to_string(p.epsilon)}, {"delta", to_string(p.delta)}, {"m", p.m}, {"L", p.L},
                 {"q", p.q}, {"N", p.N}, {"K", p.K}};
}

inline ojson spec_to_json(const AnySpec& s) {
    return std::visit(
        [](const auto& v) {
            auto j = params_to_json(v.params);
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ListDecSpec>) j["recovery_guard"] = v.recovery_guard;
            return j;
        },
        s);
}

inline const Codebook& inner_of(const AnySpec& s) {
    return std::visit([](const auto& v) -> const Codebook& { return v.inner; }, s);
}

namespace detail {

inline Rational json_rational(const ojson& j, const char* key) { return parse_rational(j.at(key).get<std::string>()); }

}  // namespace detail

/// Rebuilds a spec from its JSON parameters, using `inner` as the codebook.
inline AnySpec spec_from_json(const ojson& j, const Codebook& inner) {
    BuildOptions opt;
    opt.cached = inner;
    std::string scheme;
    try {
        scheme = j.at("scheme").get<std::string>();
        const Profile profile = parse_profile(j.at("profile").get<std::string>());
        if (scheme == "highnoise") {
            HnParams p;
            p.profile = profile;
            p.epsilon = detail::json_rational(j, "epsilon");
            p.D = j.at("D").get<std::uint32_t>();
            p.k = j.at("k").get<std::uint32_t>();
            p.m = j.at("m").get<std::size_t>();
            p.n = j.at("n").get<std::size_t>();
            p.q = j.at("q").get<std::uint64_t>();
            p.n_prime = j.at("n_prime").get<std::size_t>();
            return hn_make_spec(p, opt);
        }
        if (scheme == "hirate") {
            HrParams p;
            p.profile = profile;
            p.epsilon = detail::json_rational(j, "epsilon");
            p.delta = detail::json_rational(j, "delta");
            p.beta = detail::json_rational(j, "beta");
            p.buffer_len = j.at("buffer_len").get<std::size_t>();
            p.m = j.at("m").get<std::size_t>();
            p.n = j.at("n").get<std::size_t>();
            p.q = j.at("q").get<std::uint64_t>();
            p.h = j.at("h").get<std::uint32_t>();
            p.n_prime = j.at("n_prime").get<std::size_t>();
            return br_make_spec(p, opt);
        }
        if (scheme == "listdec") {
            LdParams p;
            p.profile = profile;
            p.epsilon = detail::json_rational(j, "epsilon");
            p.delta = detail::json_rational(j, "delta");
            p.m = j.at("m").get<std::size_t>();
            p.L = j.at("L").get<std::size_t>();
            p.q = j.at("q").get<std::uint64_t>();
            p.N = j.at("N").get<std::size_t>();
            p.K = j.at("K").get<std::size_t>();
            return ld_make_spec(p, opt, j.value("recovery_guard", kDefaultRecoveryGuard));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::ParseError, std::string("malformed spec file: ") + e.what());
    }
    fail(Errc::ParseError, "unknown scheme '" + scheme + "' in spec file");
}

inline void save_spec(const AnySpec& s, const std::string& spec_path, const std::string& codebook_path) {
    std::ofstream cb(codebook_path, std::ios::binary);
    if (!cb) fail(Errc::OutOfRange, "cannot write " + codebook_path);
    save_codebook(inner_of(s), cb);
    std::ofstream sp(spec_path, std::ios::binary);
    if (!sp) fail(Errc::OutOfRange, "cannot write " + spec_path);
    sp << spec_to_json(s).dump(2) << '\n';
}

inline Codebook load_codebook_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(Errc::ParseError, "cannot read " + path);
    return load_codebook(is);
}

inline AnySpec load_spec(const std::string& spec_path, const std::string& codebook_path) {
    std::ifstream is(spec_path, std::ios::binary);
    if (!is) fail(Errc::ParseError, "cannot read " + spec_path);
    ojson j;
    try {
        j = ojson::parse(is);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::ParseError, std::string("malformed spec file: ") + e.what());
    }
    return spec_from_json(j, load_codebook_file(codebook_path));
}

}  // namespace delcodes
