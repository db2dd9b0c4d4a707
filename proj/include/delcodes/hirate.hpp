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

// Binary concatenated code for a small fraction eps of deletions.
//
// Labelled RS symbols (i, c_i) over GF(q^h) are encoded by a beta-dense binary
// inner code correcting a delta fraction, and consecutive inner codewords are
// separated by a buffer of zeros. The decoder treats every zero run of length
// >= ceil(buffer/2) as a buffer, decodes the windows between buffers, drops
// conflicting indices and runs errors-and-erasures RS decoding.

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
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

struct HrOverrides {
    std::optional<Rational> delta;
    std::optional<Rational> beta;
    std::optional<std::size_t> buffer_len;
    std::optional<std::size_t> m;
    std::optional<std::size_t> n;
    std::optional<std::size_t> n_prime;
    std::optional<std::uint32_t> h;
};

struct HrParams {
    Rational epsilon;
    Rational delta;
    Rational beta;
    std::size_t buffer_len = 0;
    std::size_t m = 0;  // 0 when the inner length cannot be derived (1 - 2h(delta) <= 0)
    std::size_t n = 0;
    std::uint64_t q = 0;
    std::uint32_t h = 1;
    std::size_t n_prime = 0;
    Profile profile = Profile::Desk;

    /// q^h, or nullopt beyond 2^32.
    std::optional<std::uint64_t> field_order() const {
        std::uint64_t Q = 1;
        for (std::uint32_t i = 0; i < h; ++i) {
            if (Q > (std::uint64_t{1} << 32) / q) return std::nullopt;
            Q *= q;
        }
        return Q;
    }
    /// Zero runs at least this long are read as buffers.
    std::size_t threshold() const { return (buffer_len + 1) / 2; }
    std::size_t decodable_length() const { return static_cast<std::size_t>(ceil_mul(1 - delta, static_cast<std::int64_t>(m))); }
    std::size_t length() const { return n * m + (n ? n - 1 : 0) * buffer_len; }
    std::size_t codeword_symbols() const { return n * m; }

    friend bool operator==(const HrParams&, const HrParams&) = default;
};

namespace detail {

// 40 sqrt(eps), exact when eps is a rational square, else rounded up to 1/10000.
inline Rational forty_sqrt(const Rational& eps) {
    const Rational r = 1600 * eps;
    const auto sn = floor_sqrt(Rational(r.numerator()));
    const auto sd = floor_sqrt(Rational(r.denominator()));
    if (sn * sn == r.numerator() && sd * sd == r.denominator()) return Rational(sn, sd);
    return Rational(ceil_sqrt(r * Rational(100'000'000)), 10'000);
}

// Smallest n - n' strictly above 24 sqrt(eps) n.
inline std::size_t hr_redundancy(const Rational& eps, std::size_t n) {
    const auto nn = static_cast<std::int64_t>(n);
    return static_cast<std::size_t>(floor_sqrt(576 * eps * Rational(nn * nn)) + 1);
}

}  // namespace detail

/// PAPER_ASYMPTOTIC: delta = 40 sqrt(eps) < 1, beta = delta/4, h = ceil(1/eps),
/// n = q, n - n' > 24 sqrt(eps) n, buffer ceil(delta m), and m the smallest
/// length whose rate 1 - 2h(delta) holds n q^h codewords. DESK starts from
/// the same values with h = 1 and accepts overrides.
inline HrParams br_make_params(const Rational& epsilon, std::uint64_t q, Profile profile, const HrOverrides& ov = {}) {
    if (epsilon <= 0 || epsilon >= 1) fail(Errc::OutOfRange, "eps must lie in (0, 1)");
    if (q < 2) fail(Errc::OutOfRange, "q must be at least 2");
    const bool paper = profile == Profile::PaperAsymptotic;
    if (paper && (ov.delta || ov.beta || ov.buffer_len || ov.m || ov.n || ov.n_prime || ov.h))
        fail(Errc::InvalidOverride, "PAPER_ASYMPTOTIC takes no overrides");

    HrParams p;
    p.epsilon = epsilon;
    p.q = q;
    p.profile = profile;
    const Rational d0 = detail::forty_sqrt(epsilon);
    if (ov.delta) {
        p.delta = *ov.delta;
    } else {
        if (d0 >= 1)
            fail(paper ? Errc::OutOfRange : Errc::InvalidOverride,
                 "40 sqrt(eps) >= 1 for eps = " + to_string(epsilon) + (paper ? "; use the DESK profile" : "; supply delta"));
        p.delta = d0;
    }
    if (p.delta <= 0 || p.delta >= 1) fail(Errc::InvalidOverride, "delta must lie in (0, 1)");
    p.beta = ov.beta ? *ov.beta : p.delta / 4;
    if (p.beta <= 0 || p.beta > 1) fail(Errc::InvalidOverride, "beta must lie in (0, 1]");
    p.h = ov.h ? *ov.h : (paper ? static_cast<std::uint32_t>(ceil_of(1 / epsilon)) : 1);
    if (p.h < 1) fail(Errc::InvalidOverride, "h must be positive");
    p.n = ov.n ? *ov.n : static_cast<std::size_t>(q);

    if (ov.m) {
        p.m = *ov.m;
        if (p.m < 1) fail(Errc::InvalidOverride, "inner length m must be positive");
    } else {
        const double inner_rate = 1 - 2 * entropy(to_double(p.delta));
        if (inner_rate > 0) {
            const double bits = std::log2(static_cast<double>(p.n)) + p.h * std::log2(static_cast<double>(q));
            p.m = static_cast<std::size_t>(std::ceil(bits / inner_rate));
        } else if (!paper) {
            fail(Errc::InvalidOverride, "1 - 2h(delta) <= 0, so m cannot be derived; supply m");
        }
    }
    p.buffer_len = ov.buffer_len ? *ov.buffer_len : static_cast<std::size_t>(ceil_mul(p.delta, static_cast<std::int64_t>(p.m)));
    if (p.m && p.buffer_len < 1) fail(Errc::InvalidOverride, "buffer length must be positive");

    const auto red = detail::hr_redundancy(epsilon, p.n);
    if (ov.n_prime) p.n_prime = *ov.n_prime;
    else if (red < p.n) p.n_prime = p.n - red;
    else fail(paper ? Errc::OutOfRange : Errc::InvalidOverride, "n - n' > 24 sqrt(eps) n leaves no message symbols; " +
                                                                    std::string(paper ? "raise q" : "supply n'"));

    const auto Q = p.field_order();
    if (Q) {
        if (p.n < 1 || p.n > *Q) fail(Errc::InvalidOverride, "outer length must satisfy 1 <= n <= q^h");
    } else if (!paper) {
        fail(Errc::InvalidOverride, "q^h exceeds 2^32");
    }
    if (p.n_prime < 1 || p.n_prime > p.n) fail(Errc::InvalidOverride, "outer dimension must satisfy 1 <= n' <= n");
    return p;
}

struct HiRateSpec {
    HrParams params;
    Codebook inner;
    RsParams rs;

    friend bool operator==(const HiRateSpec& a, const HiRateSpec& b) {
        return a.params == b.params && a.inner == b.inner && a.rs.field == b.rs.field && a.rs.n == b.rs.n && a.rs.n_prime == b.rs.n_prime;
    }
};

inline HiRateSpec br_make_spec(const HrParams& p, const BuildOptions& opt = {}) {
    const auto Q = p.field_order();
    if (!Q) fail(Errc::InfeasibleAtDeskScale, "outer field q^h = " + std::to_string(p.q) + "^" + std::to_string(p.h) + " exceeds 2^32");
    if (p.m == 0) fail(Errc::InfeasibleAtDeskScale, "inner rate 1 - 2h(delta) <= 0 at delta = " + to_string(p.delta));
    Field field = [&] {
        try {
            return make_field(*Q);
        } catch (const Error&) {
            fail(Errc::InfeasibleAtDeskScale, "no supported field of order q^h = " + std::to_string(*Q));
        }
    }();
    const std::size_t needed = p.n * static_cast<std::size_t>(*Q);
    if (needed > (std::size_t{1} << 26)) fail(Errc::InfeasibleAtDeskScale, "inner code would need n q^h = " + std::to_string(needed) + " codewords");
    Codebook shape;
    shape.kind = CodeKind::Dense;
    shape.k = 2;
    shape.m = p.m;
    shape.delta = p.delta;
    shape.beta = p.beta;
    HiRateSpec spec;
    spec.params = p;
    spec.rs = make_rs_params(field, p.n, p.n_prime);
    spec.inner = detail::provision_inner(shape, needed, opt, [&](const GreedyOptions& g) { return greedy_dense(p.m, p.delta, p.beta, g); });
    return spec;
}

inline HiRateSpec br_make_spec(const Rational& epsilon, std::uint64_t q, Profile profile, const HrOverrides& ov = {},
                               const BuildOptions& opt = {}) {
    return br_make_spec(br_make_params(epsilon, q, profile, ov), opt);
}

inline Word br_encode(const HiRateSpec& spec, std::span<const RawElem> message) {
    const auto& p = spec.params;
    const auto c = rs_encode_raw(spec.rs, message);
    const auto Q = spec.rs.field.order();
    std::vector<Symbol> out;
    out.reserve(p.length());
    for (std::size_t i = 0; i < p.n; ++i) {
        if (i) out.insert(out.end(), p.buffer_len, 0);
        const auto& w = spec.inner.codewords.at(pair_index(i, c[i], Q));
        out.insert(out.end(), w.begin(), w.end());
    }
    return Word(std::move(out), 2);
}

using DecodingWindow = Interval;

/// Segments left after removing every maximal zero run of length >= threshold,
/// with leading zeros of the first and trailing zeros of the last trimmed.
inline std::vector<DecodingWindow> br_windows(std::size_t threshold, const Word& received) {
    const auto buffers = runs_of_zero(received, std::max<std::size_t>(threshold, 1));
    std::vector<DecodingWindow> out;
    std::size_t pos = 0;
    auto emit = [&](std::size_t a, std::size_t b) {
        if (b > a) out.push_back({a, b - a});
    };
    for (const auto& r : buffers) {
        emit(pos, r.start);
        pos = r.end();
    }
    emit(pos, received.size());
    if (!out.empty()) {
        auto& first = out.front();
        while (first.len && received[first.start] == 0) ++first.start, --first.len;
        auto& last = out.back();
        while (last.len && received[last.end() - 1] == 0) --last.len;
        std::erase_if(out, [](const DecodingWindow& w) { return w.len == 0; });
    }
    return out;
}

inline std::vector<DecodingWindow> br_windows(const HiRateSpec& spec, const Word& received) {
    return br_windows(spec.params.threshold(), received);
}

struct HrTelemetry {
    std::size_t windows = 0;
    std::size_t short_windows = 0;  // below ceil((1-delta)m)
    std::size_t long_windows = 0;   // above m
    std::size_t inner_successes = 0;
    std::size_t inner_failures = 0;
    std::size_t conflicts = 0;
    std::size_t erasures = 0;
    std::vector<std::optional<OuterPair>> window_pairs;
    std::vector<OuterSymbol> outer;
    bool rs_ok = false;
    std::size_t rs_corrected = 0;
};

struct HrDecodeResult {
    std::optional<std::vector<RawElem>> message;
    HrTelemetry telemetry;
    bool ok() const noexcept { return message.has_value(); }
};

/// Windows whose length lies outside [ceil((1-delta)m), m] are not handed to
/// the inner decoder; they cannot be a subsequence of one codeword that the
/// inner code is guaranteed to identify.
inline HrDecodeResult br_decode(const HiRateSpec& spec, const Word& received) {
    const auto& p = spec.params;
    detail::require_binary(received);
    HrDecodeResult res;
    auto& t = res.telemetry;
    const auto windows = br_windows(spec, received);
    t.windows = windows.size();
    const std::size_t lo = p.decodable_length();
    const auto Q = spec.rs.field.order();
    std::vector<OuterPair> pairs;
    for (const auto& w : windows) {
        if (w.len < lo || w.len > p.m) {
            ++(w.len < lo ? t.short_windows : t.long_windows);
            t.window_pairs.emplace_back();
            continue;
        }
        const auto d = inner_decode_unique(spec.inner, received.symbols().subspan(w.start, w.len));
        if (!d.ok()) {
            ++t.inner_failures;
            t.window_pairs.emplace_back();
            continue;
        }
        ++t.inner_successes;
        pairs.push_back(split_pair_index(d.index, Q));
        t.window_pairs.emplace_back(pairs.back());
    }
    auto resolved = resolve_pairs(p.n, pairs);
    t.conflicts = resolved.conflicts;
    t.erasures = resolved.erasures;
    t.outer = std::move(resolved.received);
    auto rs = rs_decode_ee(spec.rs, std::span<const OuterSymbol>(t.outer));
    t.rs_ok = rs.ok();
    t.rs_corrected = rs.errors;
    res.message = std::move(rs.message);
    return res;
}

// ---------------------------------------------------------------------------
// Rate

struct HrRateReport {
    double rate = 0;
    double outer_rate = 0;     // n' log q^h / (n log(n q^h))
    double outer_claim = 0;    // (1 - 24 sqrt(eps)) h / (h + 1)
    double inner_rate = 0;     // log(n q^h) / m
    double inner_claim = 0;    // 1 - 2h(delta)
    double buffer_factor = 0;  // n m / N
    double buffer_claim = 0;   // 1 / (1 + delta)
    RateReport inner;
};

inline HrRateReport br_rate_report(const HiRateSpec& spec) {
    const auto& p = spec.params;
    const double logQ = std::log2(static_cast<double>(spec.rs.field.order()));
    const double pairs = std::log2(static_cast<double>(p.n)) + logQ;
    const double e = to_double(p.epsilon);
    const double d = to_double(p.delta);
    HrRateReport r;
    r.outer_rate = static_cast<double>(p.n_prime) * logQ / (static_cast<double>(p.n) * pairs);
    r.outer_claim = (1 - 24 * std::sqrt(e)) * p.h / (p.h + 1.0);
    r.inner_rate = pairs / static_cast<double>(p.m);
    r.inner_claim = 1 - 2 * entropy(d);
    r.buffer_factor = static_cast<double>(p.codeword_symbols()) / static_cast<double>(p.length());
    r.buffer_claim = 1 / (1 + d);
    r.rate = static_cast<double>(p.n_prime) * logQ / static_cast<double>(p.length());
    r.inner = rate_report(spec.inner);
    return r;
}

// ---------------------------------------------------------------------------
// Packed binary words: 8-byte little-endian bit count, then bits packed
// least-significant first within each byte.

inline void write_bits_packed(std::ostream& os, const Word& w) {
    detail::require_binary(w);
    std::uint64_t n = w.size();
    for (int i = 0; i < 8; ++i) os.put(static_cast<char>((n >> (8 * i)) & 0xff));
    unsigned char byte = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        byte |= static_cast<unsigned char>(w[i] << (i % 8));
        if (i % 8 == 7) {
            os.put(static_cast<char>(byte));
            byte = 0;
        }
    }
    if (w.size() % 8) os.put(static_cast<char>(byte));
}

inline Word read_bits_packed(std::istream& is) {
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) {
        const int c = is.get();
        if (c == EOF) fail(Errc::ParseError, "packed word truncated in its length field");
        n |= static_cast<std::uint64_t>(c & 0xff) << (8 * i);
    }
    std::vector<Symbol> out;
    out.reserve(n);
    int byte = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i % 8 == 0) {
            byte = is.get();
            if (byte == EOF) fail(Errc::ParseError, "packed word truncated");
        }
        out.push_back(static_cast<Symbol>((byte >> (i % 8)) & 1));
    }
    return Word(std::move(out), 2);
}

}  // namespace delcodes
