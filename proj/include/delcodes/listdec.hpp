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

// Binary code list-decodable from a 1/2 - eps fraction of deletions.
//
// Labelled outer symbols (i, c_i) are encoded by a list-decodable inner code
// for a 1/2 - delta fraction and concatenated without separators. The decoder
// list-decodes every window of length ceil((1/2 + delta)m) on a grid of step
// ceil(delta m), plus the final suffix window, and hands the union of the
// candidate pairs to outer list recovery with agreement threshold eps.
// The outer code is RS with enumeration-based list recovery.

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "delcodes/concat.hpp"
#include "delcodes/error.hpp"
#include "delcodes/gf.hpp"
#include "delcodes/innercode.hpp"
#include "delcodes/rational.hpp"
#include "delcodes/rsouter.hpp"
#include "delcodes/seqkit.hpp"

namespace delcodes {

struct LdOuter {
    std::uint64_t q = 0;
    std::size_t N = 0;
    std::size_t K = 1;
};

struct LdOverrides {
    std::optional<Rational> delta;
    std::optional<std::size_t> m;
    std::optional<std::size_t> L;
};

struct LdParams {
    Rational epsilon;
    Rational delta;
    std::size_t m = 0;
    std::size_t L = 0;  // inner list size: every decodable window fits at most L - 1 codewords
    std::uint64_t q = 0;
    std::size_t N = 0;
    std::size_t K = 0;
    Profile profile = Profile::Desk;

    Rational inner_delta() const { return Rational(1, 2) - delta; }
    Rational alpha() const { return epsilon; }
    std::size_t window_len() const { return static_cast<std::size_t>(ceil_mul(Rational(1, 2) + delta, static_cast<std::int64_t>(m))); }
    std::size_t step() const { return static_cast<std::size_t>(std::max<std::int64_t>(1, ceil_mul(delta, static_cast<std::int64_t>(m)))); }
    /// Blocks with at most this many deletions are covered by some window.
    std::size_t good_block_deletions() const {
        return static_cast<std::size_t>(std::max<std::int64_t>(0, floor_mul(Rational(1, 2) - 2 * delta, static_cast<std::int64_t>(m))));
    }
    /// ceil(alpha N): agreements required by list recovery.
    std::size_t agreement() const { return static_cast<std::size_t>(ceil_mul(epsilon, static_cast<std::int64_t>(N))); }
    /// Recovery budget ell = ceil(1/delta^3).
    std::int64_t ell() const { return ceil_of(1 / (delta * delta * delta)); }
    std::size_t length() const { return N * m; }

    friend bool operator==(const LdParams&, const LdParams&) = default;
};

/// PAPER_ASYMPTOTIC: delta = eps/4, L = ceil(6 / (1 - h(1/2 - delta))) so that
/// the existence bound leaves rate R = (1 - h(1/2 - delta))/2, and m the
/// smallest length carrying N q codewords at rate R. DESK accepts overrides.
inline LdParams ld_make_params(const Rational& epsilon, const LdOuter& outer, Profile profile, const LdOverrides& ov = {}) {
    if (epsilon <= 0 || epsilon >= Rational(1, 2)) fail(Errc::OutOfRange, "eps = " + to_string(epsilon) + " lies outside 0 < eps < 1/2");
    const bool paper = profile == Profile::PaperAsymptotic;
    if (paper && (ov.delta || ov.m || ov.L)) fail(Errc::InvalidOverride, "PAPER_ASYMPTOTIC takes no overrides");
    const Field field = make_field(outer.q);
    if (outer.N < 1 || outer.N > field.order()) fail(Errc::InvalidOverride, "outer length must satisfy 1 <= N <= q");
    if (outer.K < 1 || outer.K > outer.N) fail(Errc::InvalidOverride, "outer dimension must satisfy 1 <= K <= N");

    LdParams p;
    p.epsilon = epsilon;
    p.profile = profile;
    p.q = outer.q;
    p.N = outer.N;
    p.K = outer.K;
    p.delta = ov.delta ? *ov.delta : epsilon / 4;
    if (p.delta <= 0 || p.delta >= Rational(1, 2)) fail(Errc::InvalidOverride, "delta must lie in (0, 1/2)");
    const double gap = 1 - entropy(to_double(p.inner_delta()));
    p.L = ov.L ? *ov.L : static_cast<std::size_t>(std::ceil(6 / gap));
    if (p.L < 2) fail(Errc::InvalidOverride, "inner list size L must be at least 2");
    if (ov.m) {
        p.m = *ov.m;
    } else {
        const double bits = std::log2(static_cast<double>(p.N)) + std::log2(static_cast<double>(p.q));
        p.m = static_cast<std::size_t>(std::ceil(bits / (gap / 2)));
    }
    if (p.m < 1) fail(Errc::InvalidOverride, "inner length m must be positive");
    return p;
}

struct ListDecSpec {
    LdParams params;
    Codebook inner;
    RsParams rs;
    std::uint64_t recovery_guard = kDefaultRecoveryGuard;

    friend bool operator==(const ListDecSpec& a, const ListDecSpec& b) {
        return a.params == b.params && a.inner == b.inner && a.rs.field == b.rs.field && a.rs.n == b.rs.n &&
               a.rs.n_prime == b.rs.n_prime && a.recovery_guard == b.recovery_guard;
    }
};

inline ListDecSpec ld_make_spec(const LdParams& p, const BuildOptions& opt = {}, std::uint64_t recovery_guard = kDefaultRecoveryGuard) {
    std::uint64_t messages = 1;
    for (std::size_t i = 0; i < p.K; ++i) {
        if (messages > recovery_guard / p.q)
            fail(Errc::InfeasibleAtDeskScale, "outer list recovery enumerates q^K = " + std::to_string(p.q) + "^" + std::to_string(p.K) +
                                                  " messages, above the guard");
        messages *= p.q;
    }
    const std::size_t needed = p.N * static_cast<std::size_t>(p.q);
    Codebook shape;
    shape.kind = CodeKind::ListDec;
    shape.k = 2;
    shape.m = p.m;
    shape.delta = p.inner_delta();
    shape.list_size = p.L;
    ListDecSpec spec;
    spec.params = p;
    spec.recovery_guard = recovery_guard;
    spec.rs = make_rs_params(make_field(p.q), p.N, p.K);
    spec.inner = detail::provision_inner(shape, needed, opt,
                                         [&](const GreedyOptions& g) { return greedy_listdec(p.m, shape.delta, p.L, g); });
    return spec;
}

inline ListDecSpec ld_make_spec(const Rational& epsilon, const LdOuter& outer, Profile profile, const LdOverrides& ov = {},
                                const BuildOptions& opt = {}) {
    return ld_make_spec(ld_make_params(epsilon, outer, profile, ov), opt);
}

inline Word ld_encode(const ListDecSpec& spec, std::span<const RawElem> message) {
    const auto& p = spec.params;
    const auto c = rs_encode_raw(spec.rs, message);
    std::vector<Symbol> out;
    out.reserve(p.length());
    for (std::size_t i = 0; i < p.N; ++i) {
        const auto& w = spec.inner.codewords.at(pair_index(i, c[i], p.q));
        out.insert(out.end(), w.begin(), w.end());
    }
    return Word(std::move(out), 2);
}

/// Grid windows [t*step, t*step + w) inside the received word plus the last w
/// symbols, deduplicated and ordered by start. A word shorter than w is a
/// single window; an empty word has none.
inline std::vector<Interval> ld_windows(std::size_t window_len, std::size_t step, std::size_t received_len) {
    std::vector<Interval> out;
    if (received_len == 0) return out;
    if (received_len <= window_len) return {{0, received_len}};
    const std::size_t last = received_len - window_len;
    for (std::size_t s = 0; s <= last; s += step) out.push_back({s, window_len});
    if (out.back().start != last) out.push_back({last, window_len});
    return out;
}

inline std::vector<Interval> ld_windows(const ListDecSpec& spec, const Word& received) {
    return ld_windows(spec.params.window_len(), spec.params.step(), received.size());
}

/// Union of window lists; per_index_sets[i] = {v : (i, v) in pairs}.
struct CandidateList {
    std::set<OuterPair> pairs;
    std::vector<std::vector<RawElem>> per_index_sets;
};

struct LdTelemetry {
    std::size_t windows = 0;
    std::size_t window_list_total = 0;
    std::size_t window_list_max = 0;
    std::size_t list_bound_violations = 0;  // full-length windows fitting L or more codewords
    std::size_t candidate_pairs = 0;
    std::size_t sum_sets = 0;
    std::int64_t ell_budget = 0;  // ell * N
    std::size_t output_size = 0;
};

struct LdDecodeResult {
    std::vector<std::vector<RawElem>> messages;  // sorted lexicographically
    CandidateList candidates;
    LdTelemetry telemetry;
};

inline LdDecodeResult ld_decode(const ListDecSpec& spec, const Word& received) {
    const auto& p = spec.params;
    detail::require_binary(received);
    LdDecodeResult res;
    auto& t = res.telemetry;
    const auto windows = ld_windows(spec, received);
    t.windows = windows.size();
    const std::size_t full = spec.inner.decodable_length();
    for (const auto& w : windows) {
        const auto list = inner_decode_list(spec.inner, received.symbols().subspan(w.start, w.len));
        t.window_list_total += list.size();
        t.window_list_max = std::max(t.window_list_max, list.size());
        if (w.len >= full && list.size() + 1 > p.L) ++t.list_bound_violations;
        for (auto idx : list) res.candidates.pairs.insert(split_pair_index(idx, p.q));
    }
    res.candidates.per_index_sets.assign(p.N, {});
    for (const auto& pr : res.candidates.pairs)
        if (pr.index < p.N) res.candidates.per_index_sets[pr.index].push_back(pr.value);
    t.candidate_pairs = res.candidates.pairs.size();
    for (const auto& s : res.candidates.per_index_sets) t.sum_sets += s.size();
    t.ell_budget = p.ell() * static_cast<std::int64_t>(p.N);

    RecoveryInput in;
    in.sets = res.candidates.per_index_sets;
    in.alpha = p.alpha();
    in.ell = Rational(p.ell());
    for (auto& r : rs_list_recover_bruteforce(spec.rs, in, spec.recovery_guard)) res.messages.push_back(std::move(r.message));
    t.output_size = res.messages.size();
    return res;
}

// ---------------------------------------------------------------------------
// Parameter and rate report

/// Achieved rate K log q / (N m) and the asymptotic recipe the outer list
/// recovery stands in for: s = ceil(log2(1/eps)), r = 2, and the agreement
/// condition alpha > (s + 1) (K/N)^(s/(s+1)) ell^(1/(s+1)).
struct LdReport {
    double rate = 0;
    double rate_claim = 0;  // eps^3, the order of the guarantee
    std::size_t window_len = 0;
    std::size_t step = 0;
    std::int64_t ell = 0;
    int pv_s = 0;
    int pv_r = 2;
    double pv_alpha_bound = 0;
    bool pv_alpha_condition = false;
    double inner_list_claim = 0;  // 1/delta^2
    double list_size_claim = 0;   // (1/eps)^(log log (1/eps))
    RateReport inner;
};

inline LdReport ld_report(const ListDecSpec& spec) {
    const auto& p = spec.params;
    LdReport r;
    const double e = to_double(p.epsilon);
    const double d = to_double(p.delta);
    r.rate = static_cast<double>(p.K) * std::log2(static_cast<double>(p.q)) / static_cast<double>(p.N * p.m);
    r.rate_claim = e * e * e;
    r.window_len = p.window_len();
    r.step = p.step();
    r.ell = p.ell();
    r.pv_s = std::max(1, static_cast<int>(std::ceil(std::log2(1 / e))));
    const double s = r.pv_s;
    r.pv_alpha_bound = (s + 1) * std::pow(static_cast<double>(p.K) / static_cast<double>(p.N), s / (s + 1)) *
                       std::pow(static_cast<double>(r.ell), 1 / (s + 1));
    r.pv_alpha_condition = e > r.pv_alpha_bound;
    r.inner_list_claim = 1 / (d * d);
    const double ll = std::log2(std::max(2.0, std::log2(1 / e)));
    r.list_size_claim = std::pow(1 / e, ll);
    r.inner = rate_report(spec.inner);
    return r;
}

}  // namespace delcodes
