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

// Concatenated code over {0..D-1} x [k] for a 1 - eps fraction of deletions.
//
// Outer RS symbol c_i is labelled (i, c_i), encoded by a k-ary inner code of
// length m correcting a 1 - eps/2 fraction, and every inner symbol carries the
// header i mod D. The decoder cuts the received word wherever the header
// changes, decodes blocks of length ceil(eps m / 2)..m, drops indices that
// collect two different values, and runs errors-and-erasures RS decoding.

#include <bit>
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

struct HnOverrides {
    std::optional<std::uint32_t> D;
    std::optional<std::uint32_t> k;
    std::optional<std::size_t> m;
    std::optional<std::size_t> n;
    std::optional<std::size_t> n_prime;
};

struct HnParams {
    Rational epsilon;
    std::uint32_t D = 0;
    std::uint32_t k = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    std::uint64_t q = 0;
    std::size_t n_prime = 0;
    Profile profile = Profile::Desk;

    Rational inner_delta() const { return 1 - epsilon / 2; }
    /// ceil(eps m / 2): shortest block handed to the inner decoder.
    std::size_t min_block() const { return static_cast<std::size_t>(ceil_mul(epsilon / 2, static_cast<std::int64_t>(m))); }
    std::size_t inner_needed() const { return n * static_cast<std::size_t>(q); }
    std::size_t length() const { return n * m; }

    friend bool operator==(const HnParams&, const HnParams&) = default;
};

namespace detail {

inline std::size_t hn_paper_m(const Rational& eps, std::uint64_t q) {
    if (std::has_single_bit(q)) {
        const auto w = static_cast<std::int64_t>(std::countr_zero(q));
        return static_cast<std::size_t>(ceil_of(Rational(12 * w) / eps));
    }
    return static_cast<std::size_t>(std::ceil(12.0L * std::log2(static_cast<long double>(q)) / to_double(eps) - 1e-12L));
}

}  // namespace detail

/// Derives and checks the parameters. PAPER_ASYMPTOTIC takes D = ceil(8/eps),
/// k = ceil(64/eps^3), m = ceil(12 log q / eps), n = q, n' = ceil(eps n / 2)
/// and rejects overrides; DESK starts from the same values and accepts them.
inline HnParams hn_make_params(const Rational& epsilon, std::uint64_t q, Profile profile, const HnOverrides& ov = {}) {
    if (epsilon <= 0 || epsilon > Rational(1, 2)) fail(Errc::OutOfRange, "eps = " + to_string(epsilon) + " lies outside 0 < eps <= 1/2");
    if (profile == Profile::PaperAsymptotic && (ov.D || ov.k || ov.m || ov.n || ov.n_prime))
        fail(Errc::InvalidOverride, "PAPER_ASYMPTOTIC takes no overrides");
    const Field field = make_field(q);

    HnParams p;
    p.epsilon = epsilon;
    p.profile = profile;
    p.q = q;
    const auto D0 = ceil_of(Rational(8) / epsilon);
    const auto k0 = ceil_of(Rational(64) / (epsilon * epsilon * epsilon));
    p.D = ov.D ? *ov.D : static_cast<std::uint32_t>(D0);
    p.k = ov.k ? *ov.k : static_cast<std::uint32_t>(k0);
    p.m = ov.m ? *ov.m : detail::hn_paper_m(epsilon, q);
    p.n = ov.n ? *ov.n : static_cast<std::size_t>(q);
    p.n_prime = ov.n_prime ? *ov.n_prime : static_cast<std::size_t>(ceil_mul(epsilon / 2, static_cast<std::int64_t>(p.n)));

    if (p.D < 2) fail(Errc::InvalidOverride, "header modulus D must be at least 2");
    if (p.k < 2) fail(Errc::InvalidOverride, "inner alphabet k must be at least 2");
    if (p.m < 1) fail(Errc::InvalidOverride, "inner length m must be positive");
    if (p.n < 1 || p.n > field.order()) fail(Errc::InvalidOverride, "outer length must satisfy 1 <= n <= q");
    if (p.n_prime < 1 || p.n_prime > p.n) fail(Errc::InvalidOverride, "outer dimension must satisfy 1 <= n' <= n");
    if (std::uint64_t{p.D} * p.k > 0xffffffffULL) fail(Errc::InvalidOverride, "D * k must fit in 32 bits");
    return p;
}

struct HighNoiseSpec {
    HnParams params;
    Codebook inner;
    RsParams rs;

    friend bool operator==(const HighNoiseSpec& a, const HighNoiseSpec& b) {
        return a.params == b.params && a.inner == b.inner && a.rs.field == b.rs.field && a.rs.n == b.rs.n && a.rs.n_prime == b.rs.n_prime;
    }
};

/// Builds (or reuses) the inner UNIQUE codebook with exactly n q codewords.
inline HighNoiseSpec hn_make_spec(const HnParams& p, const BuildOptions& opt = {}) {
    Codebook shape;
    shape.kind = CodeKind::Unique;
    shape.k = p.k;
    shape.m = p.m;
    shape.delta = p.inner_delta();
    HighNoiseSpec spec;
    spec.params = p;
    spec.rs = make_rs_params(make_field(p.q), p.n, p.n_prime);
    spec.inner = detail::provision_inner(shape, p.inner_needed(), opt,
                                         [&](const GreedyOptions& g) { return greedy_unique(p.k, p.m, shape.delta, g); });
    return spec;
}

inline HighNoiseSpec hn_make_spec(const Rational& epsilon, std::uint64_t q, Profile profile, const HnOverrides& ov = {},
                                  const BuildOptions& opt = {}) {
    return hn_make_spec(hn_make_params(epsilon, q, profile, ov), opt);
}

// ---------------------------------------------------------------------------
// Headered words

struct HeaderedSymbol {
    std::uint32_t header = 0;
    std::uint32_t payload = 0;
    friend bool operator==(const HeaderedSymbol&, const HeaderedSymbol&) = default;
};

class HeaderedWord {
public:
    HeaderedWord() = default;
    HeaderedWord(std::vector<HeaderedSymbol> symbols, std::uint32_t D, std::uint32_t k) : symbols_(std::move(symbols)), D_(D), k_(k) {
        for (const auto& s : symbols_)
            if (s.header >= D_ || s.payload >= k_) fail(Errc::OutOfRange, "headered symbol outside [0,D) x [0,k)");
    }

    /// Symbol (h, p) becomes h * k + p.
    Word flatten() const {
        std::vector<Symbol> out;
        out.reserve(symbols_.size());
        for (const auto& s : symbols_) out.push_back(s.header * k_ + s.payload);
        return Word(std::move(out), D_ * k_);
    }

    static HeaderedWord unflatten(const Word& w, std::uint32_t D, std::uint32_t k) {
        if (w.alphabet_size() != D * k) fail(Errc::AlphabetMismatch, "flattened word alphabet must be D * k");
        std::vector<HeaderedSymbol> out;
        out.reserve(w.size());
        for (auto v : w) out.push_back({v / k, v % k});
        return HeaderedWord(std::move(out), D, k);
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    std::uint32_t header_modulus() const noexcept { return D_; }
    std::uint32_t payload_alphabet() const noexcept { return k_; }
    const HeaderedSymbol& operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<HeaderedSymbol>& symbols() const noexcept { return symbols_; }

    friend bool operator==(const HeaderedWord&, const HeaderedWord&) = default;

private:
    std::vector<HeaderedSymbol> symbols_;
    std::uint32_t D_ = 2;
    std::uint32_t k_ = 2;
};

/// Text form: one "header:payload" line per symbol.
inline void write_headered_text(std::ostream& os, const HeaderedWord& w) {
    for (const auto& s : w.symbols()) os << s.header << ':' << s.payload << '\n';
}

inline HeaderedWord read_headered_text(std::istream& is, std::uint32_t D, std::uint32_t k) {
    std::vector<HeaderedSymbol> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) fail(Errc::ParseError, "expected header:payload, got '" + line + "'");
        try {
            std::size_t used_h = 0, used_p = 0;
            const auto h = std::stoul(line.substr(0, colon), &used_h);
            const auto p = std::stoul(line.substr(colon + 1), &used_p);
            if (used_h != colon || used_p != line.size() - colon - 1) throw std::invalid_argument("trailing");
            out.push_back({static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(p)});
        } catch (const std::logic_error&) {
            fail(Errc::ParseError, "expected header:payload, got '" + line + "'");
        }
    }
    return HeaderedWord(std::move(out), D, k);
}

/// Binary form: one little-endian 32-bit word per symbol, header in the high
/// 16 bits and payload in the low 16.
inline void write_headered_binary(std::ostream& os, const HeaderedWord& w) {
    if (w.header_modulus() > 0x10000 || w.payload_alphabet() > 0x10000) fail(Errc::OutOfRange, "binary form needs D, k <= 65536");
    for (const auto& s : w.symbols()) {
        const std::uint32_t v = (s.header << 16) | s.payload;
        const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff), static_cast<char>((v >> 16) & 0xff),
                               static_cast<char>((v >> 24) & 0xff)};
        os.write(bytes, 4);
    }
}

inline HeaderedWord read_headered_binary(std::istream& is, std::uint32_t D, std::uint32_t k) {
    std::vector<HeaderedSymbol> out;
    unsigned char b[4];
    while (is.read(reinterpret_cast<char*>(b), 4)) {
        const std::uint32_t v = b[0] | (b[1] << 8) | (b[2] << 16) | (std::uint32_t{b[3]} << 24);
        out.push_back({v >> 16, v & 0xffff});
    }
    if (is.gcount() != 0) fail(Errc::ParseError, "headered binary stream length is not a multiple of 4");
    return HeaderedWord(std::move(out), D, k);
}

// ---------------------------------------------------------------------------
// Encoding and decoding

inline HeaderedWord hn_encode(const HighNoiseSpec& spec, std::span<const RawElem> message) {
    const auto& p = spec.params;
    const auto c = rs_encode_raw(spec.rs, message);
    std::vector<HeaderedSymbol> out;
    out.reserve(p.length());
    for (std::size_t i = 0; i < p.n; ++i) {
        const auto header = static_cast<std::uint32_t>(i % p.D);
        for (auto s : inner_encode(spec.inner, pair_index(i, c[i], p.q))) out.push_back({header, s});
    }
    return HeaderedWord(std::move(out), p.D, p.k);
}

struct Block {
    Interval span;
    std::uint32_t header = 0;
    friend bool operator==(const Block&, const Block&) = default;
};

/// Maximal constant-header runs, left to right.
inline std::vector<Block> hn_partition_blocks(const HeaderedWord& received) {
    std::vector<Block> out;
    const auto& s = received.symbols();
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j].header == s[i].header) ++j;
        out.push_back({{i, j - i}, s[i].header});
        i = j;
    }
    return out;
}

struct HnTelemetry {
    std::size_t blocks = 0;
    std::size_t short_blocks = 0;  // below ceil(eps m / 2)
    std::size_t long_blocks = 0;   // above m
    std::size_t inner_successes = 0;
    std::size_t inner_failures = 0;  // no codeword or more than one
    std::size_t conflicts = 0;
    std::size_t erasures = 0;
    std::vector<OuterSymbol> outer;  // vector handed to the RS decoder
    bool rs_ok = false;
    std::size_t rs_corrected = 0;
};

struct HnDecodeResult {
    std::optional<std::vector<RawElem>> message;
    HnTelemetry telemetry;
    bool ok() const noexcept { return message.has_value(); }
};

inline HnDecodeResult hn_decode(const HighNoiseSpec& spec, const HeaderedWord& received) {
    const auto& p = spec.params;
    HnDecodeResult res;
    auto& t = res.telemetry;
    const auto blocks = hn_partition_blocks(received);
    t.blocks = blocks.size();
    const std::size_t lo = p.min_block();
    std::vector<OuterPair> pairs;
    std::vector<Symbol> payload;
    for (const auto& b : blocks) {
        if (b.span.len < lo) {
            ++t.short_blocks;
            continue;
        }
        if (b.span.len > p.m) {
            ++t.long_blocks;
            continue;
        }
        payload.clear();
        for (std::size_t i = b.span.start; i < b.span.end(); ++i) payload.push_back(received[i].payload);
        const auto d = inner_decode_unique(spec.inner, payload);
        if (!d.ok()) {
            ++t.inner_failures;
            continue;
        }
        ++t.inner_successes;
        pairs.push_back(split_pair_index(d.index, p.q));
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

/// Achieved rate n' log q / (n m log(Dk)) and its three factors: labelled
/// outer rate, inner rate, header factor log k / log(Dk).
struct HnRateReport {
    double rate = 0;
    double outer_rate = 0;
    double outer_claim = 0;  // eps / 4
    double inner_rate = 0;
    double header_factor = 0;
    double overall_claim = 0;  // eps^2, the order of the guarantee
    RateReport inner;
};

inline HnRateReport hn_rate_report(const HighNoiseSpec& spec) {
    const auto& p = spec.params;
    const double logq = std::log2(static_cast<double>(p.q));
    const double logk = std::log2(static_cast<double>(p.k));
    const double logdk = std::log2(static_cast<double>(p.D)) + logk;
    const double pairs = std::log2(static_cast<double>(p.n)) + logq;
    HnRateReport r;
    r.outer_rate = static_cast<double>(p.n_prime) * logq / (static_cast<double>(p.n) * pairs);
    r.inner_rate = pairs / (static_cast<double>(p.m) * logk);
    r.header_factor = logk / logdk;
    r.rate = static_cast<double>(p.n_prime) * logq / (static_cast<double>(p.n * p.m) * logdk);
    const double e = to_double(p.epsilon);
    r.outer_claim = e / 4;
    r.overall_claim = e * e;
    r.inner = rate_report(spec.inner);
    return r;
}

}  // namespace delcodes
