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

// delcodes: build, attack and report on deletion codes from the command line.
//
// Exit status: 0 success, 1 falsified guarantee, 2 configuration or
// feasibility error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "delcodes.hpp"

using namespace delcodes;

namespace {

constexpr int kExitFalsified = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string scheme;
    std::string profile = "desk";
    std::string eps;
    std::uint64_t seed = 1;
    std::string policy = "seeded";
    std::uint64_t attempt_cap = std::uint64_t{1} << 22;
    std::string codebook;
    std::string spec;
    std::string out;
    std::string in;
    std::string format = "text";
    bool timing = false;
    bool codewords_only = false;

    // Scheme parameters; which ones apply depends on the scheme.
    std::uint64_t q = 0;
    std::uint32_t D = 0, k = 0, h = 0;
    std::size_t m = 0, n = 0, n_prime = 0, buffer = 0, N = 0, K = 0, L = 0, target = 0;
    std::string delta, beta, kind;
    std::uint64_t recovery_guard = kDefaultRecoveryGuard;

    // Trials.
    std::string strategies;
    std::string fractions;
    std::size_t trials = 100;

    // count / verify-inner.
    std::string word;
    std::int64_t ell = -1;
    bool brute = false;
    bool decode = false;
};

const std::map<std::string, std::set<std::string>> kSchemeFlags = {
    {"highnoise", {"--q", "--D", "--k", "--m", "--n", "--n-prime"}},
    {"hirate", {"--q", "--delta", "--beta", "--buffer", "--m", "--n", "--n-prime", "--ext-degree"}},
    {"listdec", {"--q", "--delta", "--m", "--L", "--N", "--K", "--recovery-guard"}},
    {"inner", {"--kind", "--k", "--m", "--delta", "--beta", "--L", "--target"}},
};

const std::vector<std::string> kAllParamFlags = {"--q", "--D",   "--k",   "--m",    "--n",    "--n-prime", "--delta",
                                                 "--beta", "--buffer", "--ext-degree", "--N", "--K", "--L", "--recovery-guard",
                                                 "--kind", "--target"};

void add_scheme_options(CLI::App* sub, RunConfig& c, bool inner = false) {
    std::vector<std::string> names = {"highnoise", "hirate", "listdec"};
    if (inner) names.push_back("inner");
    sub->add_option("--scheme", c.scheme, inner ? "highnoise | hirate | listdec | inner" : "highnoise | hirate | listdec")
        ->check(CLI::IsMember(names));
    sub->add_option("--profile", c.profile, "paper | desk (default desk)");
    sub->add_option("--eps", c.eps, "noise parameter as NUM/DEN");
    sub->add_option("--seed", c.seed, "master seed (default 1)");
    sub->add_option("--policy", c.policy, "inner candidate order: lex | seeded (default seeded)");
    sub->add_option("--attempt-cap", c.attempt_cap, "seeded greedy attempt cap");
    sub->add_option("--codebook", c.codebook, "inner codebook cache; reused when present");
    sub->add_option("--spec", c.spec, "spec file written by build");
    sub->add_option("--q", c.q, "outer field order");
    sub->add_option("--D", c.D, "header modulus (highnoise)");
    sub->add_option("--k", c.k, "inner alphabet (highnoise)");
    sub->add_option("--m", c.m, "inner length");
    sub->add_option("--n", c.n, "outer length (highnoise, hirate)");
    sub->add_option("--n-prime", c.n_prime, "outer dimension (highnoise, hirate)");
    sub->add_option("--delta", c.delta, "inner deletion fraction override (hirate, listdec)");
    sub->add_option("--beta", c.beta, "density parameter (hirate)");
    sub->add_option("--buffer", c.buffer, "buffer length (hirate)");
    sub->add_option("--ext-degree", c.h, "outer extension degree (hirate)");
    sub->add_option("--N", c.N, "outer length (listdec)");
    sub->add_option("--K", c.K, "outer dimension (listdec)");
    sub->add_option("--L", c.L, "inner list size (listdec)");
    sub->add_option("--recovery-guard", c.recovery_guard, "message enumeration guard (listdec)");
}

void add_format(CLI::App* sub, RunConfig& c) {
    sub->add_option("--format", c.format, "text | records")->check(CLI::IsMember({"text", "records"}));
}

void check_flags(const CLI::App* sub, const std::string& scheme) {
    const auto& allowed = kSchemeFlags.at(scheme);
    for (const auto& f : kAllParamFlags)
        if (sub->get_option_no_throw(f) && sub->count(f) && !allowed.count(f))
            throw ConfigError(f + " does not apply to scheme " + scheme);
}

Profile profile_of(const RunConfig& c) { return parse_profile(c.profile); }

BuildOptions build_options(const RunConfig& c) {
    BuildOptions opt;
    if (c.policy == "lex") opt.policy = CandidatePolicy::Lex;
    else if (c.policy == "seeded") opt.policy = CandidatePolicy::SeededRandom;
    else throw ConfigError("unknown policy '" + c.policy + "' (expected lex or seeded)");
    opt.seed = c.seed;
    opt.attempt_cap = c.attempt_cap;
    if (!c.codebook.empty() && std::filesystem::exists(c.codebook)) opt.cached = load_codebook_file(c.codebook);
    return opt;
}

Rational require_eps(const CLI::App* sub, const RunConfig& c) {
    if (!sub->count("--eps")) throw ConfigError("--eps is required");
    return parse_rational(c.eps);
}

std::uint64_t require_q(const CLI::App* sub, const RunConfig& c) {
    if (!sub->count("--q")) throw ConfigError("--q is required");
    return c.q;
}

AnySpec build_spec(const CLI::App* sub, const RunConfig& c) {
    if (c.scheme.empty()) throw ConfigError("--scheme or --spec is required");
    check_flags(sub, c.scheme);
    const auto eps = require_eps(sub, c);
    const auto q = require_q(sub, c);
    const auto profile = profile_of(c);
    const auto opt = build_options(c);
    auto has = [&](const char* f) { return sub->count(f) > 0; };
    if (c.scheme == "highnoise") {
        HnOverrides ov;
        if (has("--D")) ov.D = c.D;
        if (has("--k")) ov.k = c.k;
        if (has("--m")) ov.m = c.m;
        if (has("--n")) ov.n = c.n;
        if (has("--n-prime")) ov.n_prime = c.n_prime;
        return hn_make_spec(eps, q, profile, ov, opt);
    }
    if (c.scheme == "hirate") {
        HrOverrides ov;
        if (has("--delta")) ov.delta = parse_rational(c.delta);
        if (has("--beta")) ov.beta = parse_rational(c.beta);
        if (has("--buffer")) ov.buffer_len = c.buffer;
        if (has("--m")) ov.m = c.m;
        if (has("--n")) ov.n = c.n;
        if (has("--n-prime")) ov.n_prime = c.n_prime;
        if (has("--ext-degree")) ov.h = c.h;
        return br_make_spec(eps, q, profile, ov, opt);
    }
    LdOverrides ov;
    if (has("--delta")) ov.delta = parse_rational(c.delta);
    if (has("--m")) ov.m = c.m;
    if (has("--L")) ov.L = c.L;
    LdOuter outer{q, has("--N") ? c.N : static_cast<std::size_t>(q), has("--K") ? c.K : 1};
    return ld_make_spec(ld_make_params(eps, outer, profile, ov), opt, c.recovery_guard);
}

/// --spec (with --codebook) when given, otherwise the scheme flags.
AnySpec resolve_spec(const CLI::App* sub, const RunConfig& c) {
    if (!c.spec.empty()) {
        if (c.codebook.empty()) throw ConfigError("--spec needs --codebook");
        for (const auto& f : kAllParamFlags)
            if (sub->get_option_no_throw(f) && sub->count(f)) throw ConfigError(f + " conflicts with --spec");
        return load_spec(c.spec, c.codebook);
    }
    return build_spec(sub, c);
}

Rational epsilon_of(const AnySpec& s) {
    return std::visit([](const auto& v) { return v.params.epsilon; }, s);
}

/// Largest budget fraction (of the transmitted length) the scheme is designed for.
Rational guarantee_fraction(const AnySpec& s) {
    const auto e = epsilon_of(s);
    if (std::holds_alternative<HighNoiseSpec>(s)) return 1 - e;
    if (std::holds_alternative<HiRateSpec>(s)) return e;
    return Rational(1, 2) - e;
}

std::vector<Rational> parse_fractions(const std::string& text, const AnySpec& s) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item == "eps") out.push_back(epsilon_of(s));
        else if (item == "max") out.push_back(guarantee_fraction(s));
        else out.push_back(parse_rational(item));
        if (out.back() < 0 || out.back() > 1) throw ConfigError("fraction " + item + " outside [0, 1]");
    }
    return out;
}

std::vector<Strategy> parse_strategies(const std::string& text) {
    std::vector<Strategy> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_strategy(item));
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Rate reports

ojson inner_json(const Codebook& cb, bool full) {
    const auto r = rate_report(cb);
    ojson j{{"kind", std::string(to_string(cb.kind))},
            {"k", cb.k},
            {"m", cb.m},
            {"delta", to_string(cb.delta)},
            {"size", cb.size()},
            {"policy", std::string(to_string(cb.policy))},
            {"full_construction", full},
            {"rate", r.rate},
            {"theorem_rate", r.theorem_rate}};
    if (cb.kind == CodeKind::Dense) j["beta"] = to_string(cb.beta);
    if (cb.kind == CodeKind::ListDec) j["L"] = cb.list_size;
    if (r.eq_star_guarantee) {
        j["eq_star_guarantee"] = r.eq_star_guarantee->str();
        j["eq_star_rate"] = r.eq_star_rate;
        j["meets_eq_star"] = r.satisfied;
    }
    if (r.binary_estimate_guarantee) j["binary_estimate_guarantee"] = r.binary_estimate_guarantee->str();
    return j;
}

ojson rate_json(const AnySpec& spec) {
    return std::visit(
        [](const auto& s) -> ojson {
            using T = std::decay_t<decltype(s)>;
            ojson j;
            j["scheme"] = scheme_name(s);
            j["params"] = spec_to_json(s);
            if constexpr (std::is_same_v<T, HighNoiseSpec>) {
                const auto r = hn_rate_report(s);
                j["length"] = s.params.length();
                j["rate"] = r.rate;
                j["outer_rate"] = r.outer_rate;
                j["outer_claim"] = r.outer_claim;
                j["inner_rate"] = r.inner_rate;
                j["header_factor"] = r.header_factor;
                j["overall_claim"] = r.overall_claim;
            } else if constexpr (std::is_same_v<T, HiRateSpec>) {
                const auto r = br_rate_report(s);
                j["length"] = s.params.length();
                j["rate"] = r.rate;
                j["outer_rate"] = r.outer_rate;
                j["outer_claim"] = r.outer_claim;
                j["inner_rate"] = r.inner_rate;
                j["inner_claim"] = r.inner_claim;
                j["buffer_factor"] = r.buffer_factor;
                j["buffer_claim"] = r.buffer_claim;
            } else {
                const auto r = ld_report(s);
                j["length"] = s.params.length();
                j["rate"] = r.rate;
                j["rate_claim"] = r.rate_claim;
                j["window_len"] = r.window_len;
                j["step"] = r.step;
                j["ell"] = r.ell;
                j["pv_s"] = r.pv_s;
                j["pv_r"] = r.pv_r;
                j["pv_alpha_bound"] = r.pv_alpha_bound;
                j["pv_alpha_condition"] = r.pv_alpha_condition;
                j["inner_list_claim"] = r.inner_list_claim;
                j["list_size_claim"] = r.list_size_claim;
            }
            j["inner"] = inner_json(s.inner, false);
            return j;
        },
        spec);
}

void print_inner_text(const ojson& in) {
    std::cout << "inner " << in["kind"].get<std::string>() << " k=" << in["k"] << " m=" << in["m"]
              << " delta=" << in["delta"].get<std::string>() << " size=" << in["size"] << " ("
              << in["policy"].get<std::string>() << (in["full_construction"].get<bool>() ? ", full" : ", truncated") << ")\n";
    std::cout << "  rate                    " << fmt(in["rate"]) << "\n";
    std::cout << "  existence rate          " << fmt(in["theorem_rate"]) << "\n";
    if (in.contains("eq_star_guarantee")) {
        std::cout << "  greedy guarantee (*)    |C| >= " << in["eq_star_guarantee"].get<std::string>() << "  (rate "
                  << fmt(in["eq_star_rate"]) << ")";
        if (in["full_construction"].get<bool>()) std::cout << (in["meets_eq_star"].get<bool>() ? "  met" : "  NOT MET");
        std::cout << "\n";
    }
    if (in.contains("binary_estimate_guarantee"))
        std::cout << "  binary-estimate bound   |C| >= " << in["binary_estimate_guarantee"].get<std::string>() << "\n";
}

void print_rate_text(const ojson& j) {
    const auto s = j["scheme"].get<std::string>();
    const auto& p = j["params"];
    std::cout << "scheme " << s << "  profile " << p["profile"].get<std::string>() << "  eps " << p["epsilon"].get<std::string>()
              << "  length " << j["length"] << "\n";
    std::cout << "rate                      " << fmt(j["rate"]) << "\n";
    if (s == "highnoise") {
        std::cout << "  outer  n' log q / (n log nq)   " << fmt(j["outer_rate"]) << "   claim eps/4 = " << fmt(j["outer_claim"]) << "\n";
        std::cout << "  inner  log nq / (m log k)      " << fmt(j["inner_rate"]) << "\n";
        std::cout << "  header log k / log Dk          " << fmt(j["header_factor"]) << "\n";
        std::cout << "  order of guarantee eps^2       " << fmt(j["overall_claim"]) << "\n";
    } else if (s == "hirate") {
        std::cout << "  outer  n' log Q / (n log nQ)   " << fmt(j["outer_rate"]) << "   claim (1-24 sqrt eps) h/(h+1) = " << fmt(j["outer_claim"])
                  << "\n";
        std::cout << "  inner  log nQ / m              " << fmt(j["inner_rate"]) << "   claim 1-2h(delta) = " << fmt(j["inner_claim"]) << "\n";
        std::cout << "  buffer nm / N                  " << fmt(j["buffer_factor"]) << "   claim 1/(1+delta) = " << fmt(j["buffer_claim"])
                  << "\n";
    } else {
        std::cout << "  order of guarantee eps^3       " << fmt(j["rate_claim"]) << "\n";
        std::cout << "  windows length " << j["window_len"] << " step " << j["step"] << "  recovery budget ell " << j["ell"] << "\n";
        std::cout << "  list recovery s=" << j["pv_s"] << " r=" << j["pv_r"] << "  alpha bound " << fmt(j["pv_alpha_bound"])
                  << (j["pv_alpha_condition"].get<bool>() ? "  holds" : "  fails at this size") << "\n";
        std::cout << "  inner list claim 1/delta^2 " << fmt(j["inner_list_claim"]) << "  output list claim " << fmt(j["list_size_claim"])
                  << "\n";
    }
    print_inner_text(j["inner"]);
}

void emit(const RunConfig& c, const ojson& j, void (*text)(const ojson&)) {
    if (c.format == "records") std::cout << j.dump() << "\n";
    else text(j);
}

// ---------------------------------------------------------------------------
// Commands

int cmd_build(const CLI::App* sub, const RunConfig& c) {
    if (c.scheme == "inner") {
        check_flags(sub, "inner");
        if (!sub->count("--m") || !sub->count("--delta")) throw ConfigError("inner builds need --m and --delta");
        GreedyOptions g;
        g.target_size = c.target;
        g.seed = c.seed;
        g.attempt_cap = c.attempt_cap;
        if (c.policy == "lex") g.policy = CandidatePolicy::Lex;
        else if (c.policy == "seeded") g.policy = CandidatePolicy::SeededRandom;
        else throw ConfigError("unknown policy '" + c.policy + "'");
        const auto delta = parse_rational(c.delta);
        const std::string kind = c.kind.empty() ? "unique" : c.kind;
        Codebook cb;
        if (kind == "unique") cb = greedy_unique(sub->count("--k") ? c.k : 2, c.m, delta, g);
        else if (kind == "dense") cb = greedy_dense(c.m, delta, sub->count("--beta") ? parse_rational(c.beta) : delta / 4, g);
        else if (kind == "listdec") cb = greedy_listdec(c.m, delta, sub->count("--L") ? c.L : 4, g);
        else throw ConfigError("unknown kind '" + kind + "' (expected unique, dense or listdec)");
        if (!c.codebook.empty()) {
            std::ofstream os(c.codebook, std::ios::binary);
            save_codebook(cb, os);
        }
        const bool full = c.target == 0 && g.policy == CandidatePolicy::Lex;
        const auto j = inner_json(cb, full);
        emit(c, j, print_inner_text);
        if (full && j.contains("meets_eq_star") && !j["meets_eq_star"].get<bool>()) return kExitFalsified;
        return 0;
    }
    const auto spec = build_spec(sub, c);
    if (!c.codebook.empty()) {
        std::ofstream os(c.codebook, std::ios::binary);
        save_codebook(inner_of(spec), os);
    }
    if (!c.out.empty()) save_spec(spec, c.out, c.codebook.empty() ? c.out + ".cb" : c.codebook);
    emit(c, rate_json(spec), print_rate_text);
    return 0;
}

template <class Fn>
auto with_scheme(const AnySpec& spec, Fn&& fn) {
    return std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, HighNoiseSpec>) return fn(HighNoiseScheme(s));
            else if constexpr (std::is_same_v<T, HiRateSpec>) return fn(HiRateScheme(s));
            else return fn(ListDecScheme(s));
        },
        spec);
}

void print_report_text(const TrialReport& r) {
    std::cout << r.scheme << " " << to_string(r.strategy) << " fraction " << to_string(r.fraction) << " budget " << r.budget << " of "
              << r.length << ": " << r.outcome << (r.ledger_ok ? "" : " (ledger violated)") << "\n  ";
    for (const auto& [k, v] : r.telemetry) std::cout << k << "=" << v << " ";
    std::cout << "\n";
}

void check_applicable(const AnySpec& spec, const std::vector<Strategy>& strategies) {
    with_scheme(spec, [&](const auto& scheme) {
        Rng rng(0);
        const auto g = scheme.geometry(scheme.encode(scheme.random_message(rng)));
        for (auto s : strategies)
            if (!applicable(s, g)) throw ConfigError(std::string(to_string(s)) + " does not apply to scheme " + scheme.id());
        return 0;
    });
}

int cmd_roundtrip(const CLI::App* sub, const RunConfig& c) {
    const auto spec = resolve_spec(sub, c);
    const auto strategies = parse_strategies(c.strategies.empty() ? "RANDOM" : c.strategies);
    if (strategies.size() != 1) throw ConfigError("roundtrip takes exactly one strategy");
    const auto fractions = parse_fractions(c.fractions.empty() ? "0" : c.fractions, spec);
    if (fractions.size() != 1) throw ConfigError("roundtrip takes exactly one fraction");
    check_applicable(spec, strategies);
    TrialOptions opt;
    opt.timing = c.timing;
    opt.budget_codewords_only = c.codewords_only;
    const auto r = with_scheme(spec, [&](const auto& scheme) { return run_trial(scheme, strategies[0], fractions[0], c.seed, 0, opt); });
    if (c.format == "records") std::cout << to_json(r).dump() << "\n";
    else print_report_text(r);
    return !r.success && r.fraction <= guarantee_fraction(spec) ? kExitFalsified : 0;
}

void print_summary(const std::vector<TrialReport>& reports, const std::optional<Rational>& guarantee) {
    std::printf("%-15s %-9s %7s %9s %8s %7s\n", "strategy", "fraction", "trials", "successes", "rate", "ledger");
    for (const auto& cell : summarize(reports)) {
        const double rate = cell.trials ? 100.0 * static_cast<double>(cell.successes) / static_cast<double>(cell.trials) : 0.0;
        const bool within = guarantee && cell.fraction <= *guarantee;
        std::printf("%-15s %-9s %7zu %9zu %7.1f%% %7s%s\n", std::string(to_string(cell.strategy)).c_str(), to_string(cell.fraction).c_str(),
                    cell.trials, cell.successes, rate, cell.ledger_failures ? "FAIL" : "ok", within ? "" : "  (beyond guarantee)");
    }
}

int cmd_sweep(const CLI::App* sub, const RunConfig& c) {
    const auto spec = resolve_spec(sub, c);
    const auto strategies = parse_strategies(c.strategies);
    const auto fractions = parse_fractions(c.fractions.empty() ? "max" : c.fractions, spec);
    check_applicable(spec, strategies);
    TrialOptions opt;
    opt.timing = c.timing;
    opt.budget_codewords_only = c.codewords_only;
    const auto reports =
        with_scheme(spec, [&](const auto& scheme) { return run_trials(scheme, strategies, fractions, c.trials, c.seed, opt); });
    if (!c.out.empty()) {
        std::ofstream os(c.out, std::ios::binary);
        if (!os) throw ConfigError("cannot write " + c.out);
        write_reports(os, reports);
    }
    if (c.format == "records") write_reports(std::cout, reports);
    else print_summary(reports, guarantee_fraction(spec));
    const auto g = guarantee_fraction(spec);
    const bool failed = std::any_of(reports.begin(), reports.end(), [&](const TrialReport& r) { return !r.success && r.fraction <= g; });
    return failed ? kExitFalsified : 0;
}

int cmd_report(const CLI::App* sub, const RunConfig& c) {
    if (!c.in.empty()) {
        std::ifstream is(c.in, std::ios::binary);
        if (!is) throw ConfigError("cannot read " + c.in);
        const auto reports = read_reports(is);
        print_summary(reports, std::nullopt);
        return 0;
    }
    emit(c, rate_json(resolve_spec(sub, c)), print_rate_text);
    return 0;
}

int cmd_verify_inner(const RunConfig& c) {
    if (c.codebook.empty()) throw ConfigError("--codebook is required");
    const auto cb = load_codebook_file(c.codebook);
    bool ok = true;
    auto line = [&](const std::string& what, bool pass, const std::string& detail = "") {
        std::cout << (pass ? "PASS " : "FAIL ") << what << (detail.empty() ? "" : ": " + detail) << "\n";
        ok &= pass;
    };
    std::cout << to_string(cb.kind) << " k=" << cb.k << " m=" << cb.m << " delta=" << to_string(cb.delta) << " size=" << cb.size() << "\n";
    if (cb.kind == CodeKind::ListDec) {
        const auto worst = max_list_size_exhaustive(cb);
        line("list size", worst + 1 <= cb.list_size,
             "max codewords containing one length-" + std::to_string(cb.decodable_length()) + " string = " + std::to_string(worst) +
                 ", bound " + std::to_string(cb.list_size - 1));
    } else {
        const auto v = find_separation_violation(cb);
        line("separation", !v,
             v ? "codewords " + std::to_string(v->first) + " and " + std::to_string(v->second) + " share LCS >= " +
                     std::to_string(cb.decodable_length())
               : "all pairwise LCS <= " + std::to_string(cb.decodable_length() - 1));
        if (cb.kind == CodeKind::Dense) {
            const auto d = find_density_violation(cb);
            line("density", !d, d ? "codeword " + std::to_string(*d) : "");
        }
        if (c.decode) {
            const auto budget = static_cast<std::size_t>(floor_mul(cb.delta, static_cast<std::int64_t>(cb.m)));
            std::size_t misses = 0;
            std::uint64_t patterns = 0;
            for (std::size_t i = 0; i < cb.size(); ++i)
                patterns += for_each_pattern(cb.m, budget, [&](const DeletionPattern& p) {
                    const auto d = inner_decode_unique(cb, apply_deletions(cb.codewords[i], p));
                    misses += !(d.ok() && d.index == i);
                    return true;
                });
            line("decode completeness", misses == 0, std::to_string(patterns) + " patterns, " + std::to_string(misses) + " misses");
        }
    }
    return ok ? 0 : kExitFalsified;
}

int cmd_count(const CLI::App* sub, const RunConfig& c) {
    if (!sub->count("--m")) throw ConfigError("--m is required");
    const std::uint32_t k = sub->count("--k") ? c.k : 2;
    std::int64_t ell = c.ell;
    std::optional<Word> s;
    if (!c.word.empty()) {
        s = Word::parse(c.word, k);
        ell = static_cast<std::int64_t>(s->size());
    }
    if (ell < 0) throw ConfigError("--s or --ell is required");
    const auto m = static_cast<std::int64_t>(c.m);
    if (ell > m) throw ConfigError("string longer than m");
    std::cout << "supersequences of length " << m << " over " << k << " symbols containing a length-" << ell << " string\n";
    std::cout << "  exact                   " << supersequence_count(ell, m, k) << "\n";
    std::cout << "  k^(m-l) C(m,l)          " << count_bound_general(ell, m, k) << "\n";
    if (k == 2 && 2 * ell > m) std::cout << "  dm C(m,l), dm = m - l   " << count_bound_binary(ell, m) << "\n";
    if (c.brute) {
        if (!s) throw ConfigError("--brute needs --s");
        double space = std::pow(static_cast<double>(k), static_cast<double>(m));
        if (space > 1 << 24) throw ConfigError("--brute limited to k^m <= 2^24");
        std::uint64_t hits = 0;
        std::vector<Symbol> t(c.m, 0);
        while (true) {
            hits += is_subsequence(s->symbols(), std::span<const Symbol>(t));
            std::size_t i = c.m;
            while (i-- > 0 && ++t[i] == k) t[i] = 0;
            if (i == static_cast<std::size_t>(-1)) break;
        }
        std::cout << "  brute force             " << hits << "\n";
        if (BigInt(hits) != supersequence_count(ell, m, k)) return kExitFalsified;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deletion codes: build, attack and report"};
    app.require_subcommand(1);
    RunConfig c;

    auto* build = app.add_subcommand("build", "construct inner codebooks and scheme specs, print the rate report");
    add_scheme_options(build, c, true);
    build->add_option("--out", c.out, "spec file to write");
    build->add_option("--kind", c.kind, "inner kind for --scheme inner: unique | dense | listdec");
    build->add_option("--target", c.target, "codewords for --scheme inner (0 = full construction)");
    add_format(build, c);

    auto* roundtrip = app.add_subcommand("roundtrip", "encode a random message, attack, decode, compare");
    add_scheme_options(roundtrip, c);
    roundtrip->add_option("--strategy", c.strategies, "attack strategy");
    roundtrip->add_option("--fraction", c.fractions, "budget fraction NUM/DEN, or eps / max");
    roundtrip->add_flag("--timing", c.timing, "record wall time");
    roundtrip->add_flag("--codewords-only", c.codewords_only, "budget against codeword symbols, excluding buffers");
    add_format(roundtrip, c);

    auto* sweep = app.add_subcommand("sweep", "run trials over strategies x fractions x seeds");
    add_scheme_options(sweep, c);
    sweep->add_option("--strategy", c.strategies, "comma-separated strategies")->required();
    sweep->add_option("--fraction", c.fractions, "comma-separated fractions (default max)");
    sweep->add_option("--trials", c.trials, "trials per cell (default 100)");
    sweep->add_option("--out", c.out, "line-delimited report file");
    sweep->add_flag("--timing", c.timing, "record wall time");
    sweep->add_flag("--codewords-only", c.codewords_only, "budget against codeword symbols, excluding buffers");
    add_format(sweep, c);

    auto* report = app.add_subcommand("report", "summarize a report file, or print a spec's rate report");
    add_scheme_options(report, c);
    report->add_option("--in", c.in, "report file from sweep");
    add_format(report, c);

    auto* verify = app.add_subcommand("verify-inner", "check a codebook's invariants");
    verify->add_option("--codebook", c.codebook, "codebook file")->required();
    verify->add_flag("--decode", c.decode, "also decode every pattern of at most delta m deletions");

    auto* count = app.add_subcommand("count", "supersequence counts and their estimates");
    count->add_option("--s", c.word, "subsequence as a digit string");
    count->add_option("--ell", c.ell, "subsequence length (count depends on it alone)");
    count->add_option("--m", c.m, "supersequence length");
    count->add_option("--k", c.k, "alphabet size (default 2)");
    count->add_flag("--brute", c.brute, "also enumerate all k^m strings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*build) return cmd_build(build, c);
        if (*roundtrip) return cmd_roundtrip(roundtrip, c);
        if (*sweep) return cmd_sweep(sweep, c);
        if (*report) return cmd_report(report, c);
        if (*verify) return cmd_verify_inner(c);
        if (*count) return cmd_count(count, c);
    } catch (const ConfigError& e) {
        std::cerr << "delcodes: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "delcodes: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
