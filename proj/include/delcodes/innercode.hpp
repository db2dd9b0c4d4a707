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

// Greedy inner deletion codes and their brute-force decoders.
//
// A codebook of kind UNIQUE or DENSE keeps every pair of codewords at
// LCS <= ceil((1-delta)m) - 1, so any subsequence of length ceil((1-delta)m)
// identifies its codeword. LISTDEC keeps every L codewords free of a common
// subsequence of that length, so such a subsequence fits at most L-1 of them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "delcodes/error.hpp"
#include "delcodes/rational.hpp"
#include "delcodes/rng.hpp"
#include "delcodes/seqkit.hpp"

namespace delcodes {

enum class CodeKind { Unique, Dense, ListDec };
enum class CandidatePolicy { Lex, SeededRandom };

constexpr std::string_view to_string(CodeKind k) noexcept {
    switch (k) {
    case CodeKind::Unique: return "UNIQUE";
    case CodeKind::Dense: return "DENSE";
    case CodeKind::ListDec: return "LISTDEC";
    }
    return "?";
}

constexpr std::string_view to_string(CandidatePolicy p) noexcept {
    return p == CandidatePolicy::Lex ? "LEX" : "SEEDED_RANDOM";
}

struct Codebook {
    CodeKind kind = CodeKind::Unique;
    std::uint32_t k = 2;
    std::size_t m = 0;
    Rational delta{0};
    Rational beta{0};           // DENSE only
    std::size_t list_size = 0;  // LISTDEC only
    std::vector<Word> codewords;
    std::uint64_t seed = 0;
    CandidatePolicy policy = CandidatePolicy::Lex;

    std::size_t size() const noexcept { return codewords.size(); }

    /// ceil((1-delta)m): the shortest received length the code guarantees.
    std::size_t decodable_length() const { return static_cast<std::size_t>(ceil_mul(1 - delta, static_cast<std::int64_t>(m))); }

    friend bool operator==(const Codebook&, const Codebook&) = default;
};

struct GreedyOptions {
    /// 0 runs the whole candidate stream (LEX) or the whole attempt budget.
    std::size_t target_size = 0;
    CandidatePolicy policy = CandidatePolicy::Lex;
    std::uint64_t seed = 0;
    std::uint64_t attempt_cap = std::uint64_t{1} << 22;  // SEEDED_RANDOM only
    std::uint64_t multi_lcs_guard = kDefaultMultiLcsGuard;
};

/// Raised when the stream runs dry below the target; carries what was built.
class TargetUnreachableError : public Error {
public:
    TargetUnreachableError(Codebook partial, std::size_t target)
        : Error(Errc::TargetUnreachable, "achieved " + std::to_string(partial.size()) + " of " + std::to_string(target) + " codewords"),
          partial_(std::move(partial)) {}

    const Codebook& codebook() const noexcept { return partial_; }
    std::size_t achieved() const noexcept { return partial_.size(); }

private:
    Codebook partial_;
};

namespace detail {

class CandidateStream {
public:
    CandidateStream(std::uint32_t k, std::size_t m, const GreedyOptions& opt)
        : k_(k), m_(m), policy_(opt.policy), cap_(opt.attempt_cap), rng_(opt.seed), current_(m, 0) {
        bits_ = std::has_single_bit(k) ? std::countr_zero(k) : 0;
    }

    bool next(std::vector<Symbol>& out) {
        if (policy_ == CandidatePolicy::Lex) {
            if (exhausted_) return false;
            out = current_;
            advance_lex();
            return true;
        }
        if (drawn_ >= cap_) return false;
        ++drawn_;
        out.resize(m_);
        if (bits_) {
            std::uint64_t pool = 0;
            int left = 0;
            for (auto& s : out) {
                if (left < bits_) {
                    pool = rng_();
                    left = 64;
                }
                s = static_cast<Symbol>(pool & ((std::uint64_t{1} << bits_) - 1));
                pool >>= bits_;
                left -= bits_;
            }
        } else {
            for (auto& s : out) s = static_cast<Symbol>(uniform_below(rng_, k_));
        }
        return true;
    }

private:
    void advance_lex() {
        for (std::size_t i = m_; i-- > 0;) {
            if (++current_[i] < k_) return;
            current_[i] = 0;
        }
        exhausted_ = true;
    }

    std::uint32_t k_;
    std::size_t m_;
    CandidatePolicy policy_;
    std::uint64_t cap_;
    Rng rng_;
    std::vector<Symbol> current_;
    bool exhausted_ = false;
    std::uint64_t drawn_ = 0;
    int bits_ = 0;
};

// Tracks codewords with bit-parallel matchers when m <= 64.
class LcsIndex {
public:
    void add(const Word& w) {
        words_.push_back(w);
        if (w.size() <= 64) matchers_.emplace_back(w);
    }

    std::size_t lcs_with(std::size_t i, std::span<const Symbol> cand) const {
        if (i < matchers_.size()) return matchers_[i].lcs(cand);
        return lcs(words_[i], Word(std::vector<Symbol>(cand.begin(), cand.end()), words_[i].alphabet_size()));
    }

    std::size_t size() const noexcept { return words_.size(); }
    const Word& word(std::size_t i) const { return words_[i]; }

private:
    std::vector<Word> words_;
    std::vector<LcsMatcher> matchers_;
};

inline void validate_common(std::uint32_t k, std::size_t m, const Rational& delta) {
    if (k < 2) fail(Errc::OutOfRange, "alphabet size must be at least 2");
    if (m == 0) fail(Errc::OutOfRange, "block length must be positive");
    if (delta <= 0 || delta > 1) fail(Errc::OutOfRange, "delta must lie in (0, 1]");
}

template <class Filter, class Accept>
Codebook run_greedy(Codebook cb, const GreedyOptions& opt, Filter&& filter, Accept&& accept) {
    cb.policy = opt.policy;
    cb.seed = opt.seed;
    CandidateStream stream(cb.k, cb.m, opt);
    std::set<std::vector<Symbol>> seen;
    std::vector<Symbol> cand;
    while ((opt.target_size == 0 || cb.size() < opt.target_size) && stream.next(cand)) {
        if (!filter(cand)) continue;
        if (opt.policy == CandidatePolicy::SeededRandom && seen.count(cand)) continue;
        if (!accept(cand)) continue;
        if (opt.policy == CandidatePolicy::SeededRandom) seen.insert(cand);
        cb.codewords.emplace_back(cand, cb.k);
    }
    if (opt.target_size != 0 && cb.size() < opt.target_size) throw TargetUnreachableError(std::move(cb), opt.target_size);
    return cb;
}

inline bool starts_and_ends_with_one(std::span<const Symbol> s) { return !s.empty() && s.front() == 1 && s.back() == 1; }

}  // namespace detail

/// Greedy k-ary code: accept a candidate iff its LCS with every chosen
/// codeword stays below ceil((1-delta)m).
inline Codebook greedy_unique(std::uint32_t k, std::size_t m, const Rational& delta, const GreedyOptions& opt) {
    detail::validate_common(k, m, delta);
    Codebook cb;
    cb.kind = CodeKind::Unique;
    cb.k = k;
    cb.m = m;
    cb.delta = delta;
    const std::size_t ell = cb.decodable_length();
    detail::LcsIndex index;
    return detail::run_greedy(
        std::move(cb), opt, [](const auto&) { return true; },
        [&](const std::vector<Symbol>& cand) {
            for (std::size_t i = 0; i < index.size(); ++i)
                if (index.lcs_with(i, cand) >= ell) return false;
            index.add(Word(cand, k));
            return true;
        });
}

/// Binary greedy restricted to beta-dense candidates that begin and end with 1.
inline Codebook greedy_dense(std::size_t m, const Rational& delta, const Rational& beta, const GreedyOptions& opt) {
    detail::validate_common(2, m, delta);
    const auto rule = density_rule(beta, m);
    Codebook cb;
    cb.kind = CodeKind::Dense;
    cb.k = 2;
    cb.m = m;
    cb.delta = delta;
    cb.beta = beta;
    const std::size_t ell = cb.decodable_length();
    detail::LcsIndex index;
    auto dense = [&](const std::vector<Symbol>& s) {
        if (!detail::starts_and_ends_with_one(s)) return false;
        std::size_t ones = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            ones += s[i];
            if (i >= rule.window) ones -= s[i - rule.window];
            if (i + 1 >= rule.window && ones < rule.min_ones) return false;
        }
        return true;
    };
    return detail::run_greedy(std::move(cb), opt, dense, [&](const std::vector<Symbol>& cand) {
        for (std::size_t i = 0; i < index.size(); ++i)
            if (index.lcs_with(i, cand) >= ell) return false;
        index.add(Word(cand, 2));
        return true;
    });
}

/// Binary greedy for list decoding: accept s iff no L-1 chosen codewords
/// share a common subsequence of length ceil((1-delta)m) with s.
inline Codebook greedy_listdec(std::size_t m, const Rational& delta, std::size_t list_size, const GreedyOptions& opt) {
    detail::validate_common(2, m, delta);
    if (list_size < 2) fail(Errc::OutOfRange, "list size L must be at least 2");
    Codebook cb;
    cb.kind = CodeKind::ListDec;
    cb.k = 2;
    cb.m = m;
    cb.delta = delta;
    cb.list_size = list_size;
    const std::size_t ell = cb.decodable_length();
    if (ell == 0) fail(Errc::OutOfRange, "ceil((1-delta)m) must be at least 1");
    {
        // Probe the guard once so GuardExceeded surfaces before the search.
        const std::uint64_t extent = m + 1;
        std::uint64_t cells = 1;
        for (std::size_t i = 0; i < list_size; ++i) {
            if (cells > opt.multi_lcs_guard / extent) fail(Errc::GuardExceeded, "multi-LCS table for L words of length m exceeds the guard");
            cells *= extent;
        }
    }
    detail::LcsIndex index;
    const std::size_t group = list_size - 1;
    return detail::run_greedy(std::move(cb), opt, [](const auto&) { return true; }, [&](const std::vector<Symbol>& cand) {
        std::vector<std::size_t> close;
        for (std::size_t i = 0; i < index.size(); ++i) {
            const auto l = index.lcs_with(i, cand);
            if (l == m) return false;  // duplicate
            if (l >= ell) close.push_back(i);
        }
        if (close.size() >= group) {
            const Word cw(cand, 2);
            std::vector<Word> tuple(group + 1);
            tuple[group] = cw;
            // Walk all (L-1)-subsets of the codewords close to the candidate.
            std::vector<std::size_t> pick(group);
            for (std::size_t i = 0; i < group; ++i) pick[i] = i;
            while (true) {
                for (std::size_t i = 0; i < group; ++i) tuple[i] = index.word(close[pick[i]]);
                if (common_subsequence_at_least(tuple, ell, opt.multi_lcs_guard)) return false;
                std::size_t i = group;
                while (i-- > 0 && pick[i] == close.size() - group + i) {}
                if (i == static_cast<std::size_t>(-1)) break;
                ++pick[i];
                for (std::size_t j = i + 1; j < group; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
        index.add(Word(cand, 2));
        return true;
    });
}

inline Word inner_encode(const Codebook& cb, std::size_t index) {
    if (index >= cb.size())
        fail(Errc::IndexOutOfRange, "message " + std::to_string(index) + " outside codebook of size " + std::to_string(cb.size()));
    return cb.codewords[index];
}

struct InnerDecode {
    enum class Status { Ok, NoMatch, Ambiguous };
    Status status = Status::NoMatch;
    std::size_t index = 0;
    bool ok() const noexcept { return status == Status::Ok; }
};

/// Unique index whose codeword contains `received` as a subsequence.
inline InnerDecode inner_decode_unique(const Codebook& cb, std::span<const Symbol> received) {
    if (cb.kind == CodeKind::ListDec) fail(Errc::KindMismatch, "unique decoding needs a UNIQUE or DENSE codebook");
    InnerDecode out;
    for (std::size_t i = 0; i < cb.size(); ++i) {
        if (!is_subsequence(received, cb.codewords[i].symbols())) continue;
        if (out.status == InnerDecode::Status::Ok) return {InnerDecode::Status::Ambiguous, 0};
        out = {InnerDecode::Status::Ok, i};
    }
    return out;
}

inline InnerDecode inner_decode_unique(const Codebook& cb, const Word& received) {
    if (received.alphabet_size() != cb.k) fail(Errc::AlphabetMismatch, "received word alphabet differs from codebook");
    return inner_decode_unique(cb, received.symbols());
}

/// Every index whose codeword contains `received` as a subsequence.
inline std::vector<std::size_t> inner_decode_list(const Codebook& cb, std::span<const Symbol> received) {
    if (cb.kind != CodeKind::ListDec) fail(Errc::KindMismatch, "list decoding needs a LISTDEC codebook");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cb.size(); ++i)
        if (is_subsequence(received, cb.codewords[i].symbols())) out.push_back(i);
    return out;
}

inline std::vector<std::size_t> inner_decode_list(const Codebook& cb, const Word& received) {
    if (received.alphabet_size() != cb.k) fail(Errc::AlphabetMismatch, "received word alphabet differs from codebook");
    return inner_decode_list(cb, received.symbols());
}

// ---------------------------------------------------------------------------
// Rate accounting

struct RateReport {
    double rate = 0;  // log|C| / (m log k)
    /// Rate promised by the existence theorems: 1 - delta - 2h(delta)/log k
    /// for k-ary codes, 1 - 2h(delta) - log(delta m)/m for binary ones,
    /// 1 - h(delta) - 3/L for list-decodable ones.
    double theorem_rate = 0;
    /// Greedy guarantee |C| >= k^m / (C(m, dm)^2 k^dm) with dm = m - ceil((1-delta)m).
    std::optional<BigInt> eq_star_guarantee;
    double eq_star_rate = 0;
    /// Same with the binary estimate C(m, ell) * dm * C(m, ell) in place of the general one.
    std::optional<BigInt> binary_estimate_guarantee;
    bool satisfied = true;
};

inline double log2_big(const BigInt& x) {
    if (x <= 0) return -INFINITY;
    const auto bits = boost::multiprecision::msb(x);
    if (bits < 60) return std::log2(x.convert_to<double>());
    BigInt top = x >> (bits - 52);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

inline RateReport rate_report(const Codebook& cb) {
    RateReport r;
    const double logk = std::log2(static_cast<double>(cb.k));
    const double m = static_cast<double>(cb.m);
    r.rate = cb.size() > 1 ? std::log2(static_cast<double>(cb.size())) / (m * logk) : 0.0;
    const double d = to_double(cb.delta);
    if (cb.kind == CodeKind::ListDec) {
        r.theorem_rate = 1 - entropy(d) - 3.0 / static_cast<double>(cb.list_size);
        return r;
    }
    const auto ell = static_cast<std::int64_t>(cb.decodable_length());
    const auto mm = static_cast<std::int64_t>(cb.m);
    const std::int64_t dm = mm - ell;
    const BigInt space = big_pow(cb.k, mm);
    const BigInt blocked = binomial(mm, dm) * binomial(mm, dm) * big_pow(cb.k, dm);
    r.eq_star_guarantee = ceil_div(space, blocked);
    r.eq_star_rate = (log2_big(space) - log2_big(blocked)) / (m * logk);
    r.satisfied = BigInt(cb.size()) >= *r.eq_star_guarantee;
    if (cb.k == 2) {
        r.theorem_rate = 1 - 2 * entropy(d) - (dm > 0 ? std::log2(static_cast<double>(dm)) / m : 0.0);
        if (2 * ell > mm && ell < mm) r.binary_estimate_guarantee = ceil_div(space, binomial(mm, ell) * count_bound_binary(ell, mm));
    } else {
        r.theorem_rate = 1 - d - 2 * entropy(d) / logk;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Post-hoc verification

/// First pair (i, j) with LCS >= ceil((1-delta)m), if any.
inline std::optional<std::pair<std::size_t, std::size_t>> find_separation_violation(const Codebook& cb) {
    const std::size_t ell = cb.decodable_length();
    for (std::size_t i = 0; i < cb.size(); ++i)
        for (std::size_t j = i + 1; j < cb.size(); ++j)
            if (lcs(cb.codewords[i], cb.codewords[j]) >= ell) return std::pair{i, j};
    return std::nullopt;
}

/// Index of the first codeword breaking the DENSE shape rules, if any.
inline std::optional<std::size_t> find_density_violation(const Codebook& cb) {
    for (std::size_t i = 0; i < cb.size(); ++i) {
        const auto& w = cb.codewords[i];
        if (!detail::starts_and_ends_with_one(w.symbols()) || !is_beta_dense(w, cb.beta)) return i;
    }
    return std::nullopt;
}

/// Largest number of codewords containing one received word of length
/// ceil((1-delta)m), over all k^ell such words.
inline std::size_t max_list_size_exhaustive(const Codebook& cb) {
    const std::size_t ell = cb.decodable_length();
    std::vector<Symbol> s(ell, 0);
    std::size_t worst = 0;
    while (true) {
        std::size_t hits = 0;
        for (const auto& c : cb.codewords) hits += is_subsequence(s, c.symbols());
        worst = std::max(worst, hits);
        std::size_t i = ell;
        while (i-- > 0) {
            if (++s[i] < cb.k) break;
            s[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Persistence:
//   kind k m delta_num delta_den beta_num beta_den L seed policy count
//   <codeword as base-k digit string>   (one per line)

inline void save_codebook(const Codebook& cb, std::ostream& os) {
    os << to_string(cb.kind) << ' ' << cb.k << ' ' << cb.m << ' ' << cb.delta.numerator() << ' ' << cb.delta.denominator()
       << ' ' << cb.beta.numerator() << ' ' << cb.beta.denominator() << ' ' << cb.list_size << ' ' << cb.seed << ' '
       << to_string(cb.policy) << ' ' << cb.size() << '\n';
    for (const auto& w : cb.codewords) os << w.to_string() << '\n';
}

inline Codebook load_codebook(std::istream& is) {
    Codebook cb;
    std::string header;
    if (!std::getline(is, header)) fail(Errc::ParseError, "missing codebook header");
    std::istringstream hs(header);
    std::string kind, policy;
    std::int64_t dn = 0, dd = 1, bn = 0, bd = 1;
    std::size_t count = 0;
    if (!(hs >> kind >> cb.k >> cb.m >> dn >> dd >> bn >> bd >> cb.list_size >> cb.seed >> policy >> count))
        fail(Errc::ParseError, "malformed codebook header");
    if (kind == "UNIQUE") cb.kind = CodeKind::Unique;
    else if (kind == "DENSE") cb.kind = CodeKind::Dense;
    else if (kind == "LISTDEC") cb.kind = CodeKind::ListDec;
    else fail(Errc::ParseError, "unknown codebook kind '" + kind + "'");
    if (policy == "LEX") cb.policy = CandidatePolicy::Lex;
    else if (policy == "SEEDED_RANDOM") cb.policy = CandidatePolicy::SeededRandom;
    else fail(Errc::ParseError, "unknown candidate policy '" + policy + "'");
    if (dd == 0 || bd == 0 || cb.k < 2) fail(Errc::ParseError, "invalid codebook parameters");
    cb.delta = Rational(dn, dd);
    cb.beta = Rational(bn, bd);

    const std::size_t width = cb.k <= 36 ? 1 : std::to_string(cb.k - 1).size();
    std::string line;
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(is, line)) fail(Errc::ParseError, "codebook truncated at codeword " + std::to_string(i));
        if (line.size() != cb.m * width) fail(Errc::ParseError, "codeword " + std::to_string(i) + " has the wrong length");
        if (width == 1) {
            cb.codewords.push_back(Word::parse(line, cb.k));
            continue;
        }
        std::vector<Symbol> syms(cb.m);
        for (std::size_t j = 0; j < cb.m; ++j) {
            Symbol v = 0;
            for (std::size_t c = 0; c < width; ++c) {
                const char ch = line[j * width + c];
                if (ch < '0' || ch > '9') fail(Errc::ParseError, "bad digit in codeword " + std::to_string(i));
                v = v * 10 + static_cast<Symbol>(ch - '0');
            }
            syms[j] = v;
        }
        cb.codewords.emplace_back(std::move(syms), cb.k);
    }
    return cb;
}

}  // namespace delcodes
