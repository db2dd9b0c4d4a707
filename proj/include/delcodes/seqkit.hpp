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

// Subsequence combinatorics over words in [k]^m.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "delcodes/error.hpp"
#include "delcodes/rational.hpp"

namespace delcodes {

using BigInt = boost::multiprecision::cpp_int;
using Symbol = std::uint32_t;

/// A finite sequence over the alphabet {0, ..., k-1}.
class Word {
public:
    Word() = default;

    Word(std::vector<Symbol> symbols, std::uint32_t alphabet_size)
        : symbols_(std::move(symbols)), k_(alphabet_size) {
        if (k_ < 2) fail(Errc::OutOfRange, "alphabet size must be at least 2");
        for (auto s : symbols_)
            if (s >= k_) fail(Errc::OutOfRange, "symbol " + std::to_string(s) + " outside alphabet of size " + std::to_string(k_));
    }

    /// Digits 0-9 then a-z, one character per symbol (k <= 36).
    static Word parse(std::string_view digits, std::uint32_t alphabet_size = 2) {
        std::vector<Symbol> s;
        s.reserve(digits.size());
        for (char c : digits) {
            if (c >= '0' && c <= '9') s.push_back(static_cast<Symbol>(c - '0'));
            else if (c >= 'a' && c <= 'z') s.push_back(static_cast<Symbol>(c - 'a' + 10));
            else fail(Errc::ParseError, std::string("bad digit '") + c + "'");
        }
        return Word(std::move(s), alphabet_size);
    }

    static Word zeros(std::size_t len, std::uint32_t alphabet_size = 2) {
        return Word(std::vector<Symbol>(len, 0), alphabet_size);
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    std::uint32_t alphabet_size() const noexcept { return k_; }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    Word substr(std::size_t start, std::size_t len) const {
        return Word(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(start),
                                        symbols_.begin() + static_cast<std::ptrdiff_t>(start + len)),
                    k_);
    }

    /// Digit string for k <= 36; dot-free fixed-width decimal otherwise.
    std::string to_string() const {
        std::string out;
        if (k_ <= 36) {
            for (auto s : symbols_) out.push_back(static_cast<char>(s < 10 ? '0' + s : 'a' + (s - 10)));
            return out;
        }
        const auto width = std::to_string(k_ - 1).size();
        for (auto s : symbols_) {
            auto d = std::to_string(s);
            out.append(width - d.size(), '0');
            out += d;
        }
        return out;
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) {
        if (auto c = a.k_ <=> b.k_; c != 0) return c;
        return a.symbols_ <=> b.symbols_;
    }

private:
    std::vector<Symbol> symbols_;
    std::uint32_t k_ = 2;
};

struct Interval {
    std::size_t start = 0;
    std::size_t len = 0;
    std::size_t end() const noexcept { return start + len; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

namespace detail {

inline void require_same_alphabet(const Word& a, const Word& b) {
    if (a.alphabet_size() != b.alphabet_size())
        fail(Errc::AlphabetMismatch, "alphabets of size " + std::to_string(a.alphabet_size()) + " and " +
                                         std::to_string(b.alphabet_size()));
}

inline void require_binary(const Word& s) {
    if (s.alphabet_size() != 2) fail(Errc::NotBinary, "word over alphabet of size " + std::to_string(s.alphabet_size()));
}

}  // namespace detail

/// Length of a longest common subsequence, O(|a|*|b|) dynamic programming.
inline std::size_t lcs(const Word& a, const Word& b) {
    detail::require_same_alphabet(a, b);
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

/// Bit-parallel LCS against a fixed word of length <= 64 (Allison-Dix /
/// Hyyro recurrence). Used by the greedy constructors where the same
/// codeword is compared against millions of candidates.
class LcsMatcher {
public:
    explicit LcsMatcher(const Word& pattern)
        : masks_(pattern.alphabet_size(), 0), len_(pattern.size()), k_(pattern.alphabet_size()) {
        if (len_ > 64) fail(Errc::OutOfRange, "LcsMatcher supports patterns of length <= 64");
        for (std::size_t i = 0; i < len_; ++i) masks_[pattern[i]] |= std::uint64_t{1} << i;
    }

    std::size_t lcs(std::span<const Symbol> other) const noexcept {
        const std::uint64_t full = len_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << len_) - 1);
        std::uint64_t v = full;
        for (auto c : other) {
            const std::uint64_t u = v & masks_[c];
            v = ((v + u) | (v - u)) & full;
        }
        return len_ - static_cast<std::size_t>(std::popcount(v));
    }

    std::size_t lcs(const Word& other) const {
        if (other.alphabet_size() != k_) fail(Errc::AlphabetMismatch, "LcsMatcher alphabet mismatch");
        return lcs(other.symbols());
    }

private:
    std::vector<std::uint64_t> masks_;
    std::size_t len_;
    std::uint32_t k_;
};

/// True iff s can be obtained from t by deletions.
inline bool is_subsequence(std::span<const Symbol> s, std::span<const Symbol> t) noexcept {
    std::size_t i = 0;
    for (std::size_t j = 0; j < t.size() && i < s.size(); ++j)
        if (s[i] == t[j]) ++i;
    return i == s.size();
}

inline bool is_subsequence(const Word& s, const Word& t) {
    detail::require_same_alphabet(s, t);
    return is_subsequence(s.symbols(), t.symbols());
}

constexpr std::uint64_t kDefaultMultiLcsGuard = 100'000'000;

/// Longest common subsequence of all words, via the multi-dimensional DP.
/// Throws GuardExceeded when the table would exceed `guard` cells.
inline std::size_t multi_lcs(std::span<const Word> words, std::uint64_t guard = kDefaultMultiLcsGuard) {
    if (words.empty()) fail(Errc::OutOfRange, "multi_lcs needs at least one word");
    for (const auto& w : words) detail::require_same_alphabet(words[0], w);
    if (words.size() == 1) return words[0].size();

    const std::size_t dims = words.size();
    std::vector<std::uint64_t> stride(dims);
    std::uint64_t cells = 1;
    for (std::size_t d = dims; d-- > 0;) {
        stride[d] = cells;
        const std::uint64_t extent = words[d].size() + 1;
        if (cells > guard / extent) fail(Errc::GuardExceeded, "multi-LCS table exceeds " + std::to_string(guard) + " cells");
        cells *= extent;
    }

    std::vector<std::uint16_t> table(cells, 0);
    std::vector<std::size_t> idx(dims, 0);
    for (std::uint64_t cell = 0; cell < cells; ++cell) {
        if (cell) {
            for (std::size_t d = dims; d-- > 0;) {
                if (++idx[d] <= words[d].size()) break;
                idx[d] = 0;
            }
        }
        bool at_origin = false;
        for (auto i : idx) at_origin |= (i == 0);
        if (at_origin) continue;

        const Symbol c = words[0][idx[0] - 1];
        bool all_match = true;
        for (std::size_t d = 1; d < dims && all_match; ++d) all_match = words[d][idx[d] - 1] == c;
        if (all_match) {
            std::uint64_t diag = cell;
            for (auto s : stride) diag -= s;
            table[cell] = static_cast<std::uint16_t>(table[diag] + 1);
        } else {
            std::uint16_t best = 0;
            for (std::size_t d = 0; d < dims; ++d) best = std::max(best, table[cell - stride[d]]);
            table[cell] = best;
        }
    }
    return table[cells - 1];
}

/// True iff some word of length >= ell is a common subsequence of every input.
inline bool common_subsequence_at_least(std::span<const Word> words, std::size_t ell,
                                        std::uint64_t guard = kDefaultMultiLcsGuard) {
    if (words.empty()) fail(Errc::OutOfRange, "common_subsequence_at_least needs at least one word");
    for (const auto& w : words) detail::require_same_alphabet(words[0], w);
    if (ell == 0) return true;
    for (const auto& w : words)
        if (w.size() < ell) return false;
    return multi_lcs(words, guard) >= ell;
}

/// Maximal runs of zeros of length >= min_len, left to right.
inline std::vector<Interval> runs_of_zero(const Word& s, std::size_t min_len) {
    detail::require_binary(s);
    if (min_len == 0) fail(Errc::OutOfRange, "min_len must be positive");
    std::vector<Interval> runs;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != 0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] == 0) ++j;
        if (j - i >= min_len) runs.push_back({i, j - i});
        i = j;
    }
    return runs;
}

/// Window length ceil(beta*m) and required ones ceil(beta*m/10).
struct DensityRule {
    std::size_t window = 0;
    std::size_t min_ones = 0;
};

inline DensityRule density_rule(const Rational& beta, std::size_t m) {
    if (beta <= 0 || beta > 1) fail(Errc::OutOfRange, "beta must lie in (0, 1]");
    const auto window = ceil_mul(beta, static_cast<std::int64_t>(m));
    if (window < 1) fail(Errc::OutOfRange, "beta*m must be at least 1");
    return {static_cast<std::size_t>(window),
            static_cast<std::size_t>(ceil_of(beta * static_cast<std::int64_t>(m) / 10))};
}

/// Every window of length ceil(beta*m) holds at least ceil(beta*m/10) ones.
inline bool is_beta_dense(const Word& s, const Rational& beta) {
    detail::require_binary(s);
    if (s.empty()) fail(Errc::OutOfRange, "beta-density of the empty word");
    const auto rule = density_rule(beta, s.size());
    std::size_t ones = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        ones += s[i];
        if (i >= rule.window) ones -= s[i - rule.window];
        if (i + 1 >= rule.window && ones < rule.min_ones) return false;
    }
    return true;
}

/// Binary entropy in bits, h(0) = h(1) = 0.
inline double entropy(double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) fail(Errc::OutOfRange, "entropy argument outside [0, 1]");
    if (delta == 0.0 || delta == 1.0) return 0.0;
    return -delta * std::log2(delta) - (1.0 - delta) * std::log2(1.0 - delta);
}

inline BigInt binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || n < 0 || r > n) return 0;
    r = std::min(r, n - r);
    BigInt out = 1;
    for (std::int64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

inline BigInt big_pow(std::uint64_t base, std::int64_t exp) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

/// sum_{t=ell}^{m} C(t-1, ell-1) k^(m-t) (k-1)^(t-ell): the number of words
/// of [k]^m containing any fixed length-ell word as a subsequence, counted
/// through its leftmost embedding. Depends only on (ell, m, k).
inline BigInt supersequence_count(std::int64_t ell, std::int64_t m, std::uint64_t k) {
    if (ell > m) fail(Errc::LengthMismatch, "subsequence longer than the block length");
    if (ell == 0) return big_pow(k, m);
    BigInt total = 0;
    for (std::int64_t t = ell; t <= m; ++t) total += binomial(t - 1, ell - 1) * big_pow(k, m - t) * big_pow(k - 1, t - ell);
    return total;
}

inline BigInt count_supersequences(const Word& s, std::int64_t m, std::uint64_t k) {
    if (k != s.alphabet_size()) fail(Errc::AlphabetMismatch, "word alphabet differs from k");
    return supersequence_count(static_cast<std::int64_t>(s.size()), m, k);
}

/// First estimate of the counting lemma: k^(m-ell) * C(m, ell).
inline BigInt count_bound_general(std::int64_t ell, std::int64_t m, std::uint64_t k) {
    if (ell > m) fail(Errc::LengthMismatch, "subsequence longer than the block length");
    return big_pow(k, m - ell) * binomial(m, ell);
}

/// Binary estimate delta*m * C(m, ell) with delta = (m - ell)/m; requires
/// ell > m/2. For ell = m the value is 0 while the true count is 1.
inline BigInt count_bound_binary(std::int64_t ell, std::int64_t m) {
    if (ell > m) fail(Errc::LengthMismatch, "subsequence longer than the block length");
    if (2 * ell <= m) fail(Errc::OutOfRange, "binary estimate needs ell > m/2");
    return BigInt(m - ell) * binomial(m, ell);
}

}  // namespace delcodes
