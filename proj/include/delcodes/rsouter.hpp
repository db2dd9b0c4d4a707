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

// Reed-Solomon outer code evaluated at the canonical points 0, 1, ..., n-1.
//
// Messages are coefficient vectors (constant term first) of polynomials of
// degree < n'. Decoding restricts to the non-erased coordinates and runs
// Berlekamp-Welch on the shortened code, which corrects t errors next to r
// erasures whenever r + 2t <= n - n'.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "delcodes/error.hpp"
#include "delcodes/gf.hpp"
#include "delcodes/rational.hpp"

namespace delcodes {

using RawElem = Field::value_type;

struct RsParams {
    Field field;
    std::size_t n = 0;
    std::size_t n_prime = 0;

    RawElem eval_point(std::size_t i) const noexcept { return static_cast<RawElem>(i); }
    std::size_t redundancy() const noexcept { return n - n_prime; }
};

inline RsParams make_rs_params(const Field& field, std::size_t n, std::size_t n_prime) {
    if (n_prime < 1 || n_prime > n) fail(Errc::OutOfRange, "RS dimension must satisfy 1 <= n' <= n");
    if (n > field.order()) fail(Errc::OutOfRange, "RS length exceeds the field order");
    return {field, n, n_prime};
}

/// An outer coordinate as seen by the decoder; nullopt marks an erasure.
using OuterSymbol = std::optional<RawElem>;

namespace detail {

inline RawElem poly_eval(const Field& f, std::span<const RawElem> coeffs, RawElem x) {
    RawElem acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs[i]);
    return acc;
}

// Solves A x = b in place (A is rows x cols, row-major, b appended as the last
// column). Free variables are set to zero. Returns nullopt when inconsistent.
inline std::optional<std::vector<RawElem>> solve_linear(const Field& f, std::vector<RawElem> aug, std::size_t rows, std::size_t cols) {
    const std::size_t width = cols + 1;
    auto at = [&](std::size_t r, std::size_t c) -> RawElem& { return aug[r * width + c]; };
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && at(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != row)
            for (std::size_t c = 0; c < width; ++c) std::swap(at(piv, c), at(row, c));
        const RawElem inv = f.inv(at(row, col));
        for (std::size_t c = col; c < width; ++c) at(row, c) = f.mul(at(row, c), inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || at(r, col) == 0) continue;
            const RawElem factor = at(r, col);
            for (std::size_t c = col; c < width; ++c) at(r, c) = f.sub(at(r, c), f.mul(factor, at(row, c)));
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < rows; ++r)
        if (at(r, cols) != 0) return std::nullopt;
    std::vector<RawElem> x(cols, 0);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = at(r, cols);
    return x;
}

}  // namespace detail

inline std::vector<RawElem> rs_encode_raw(const RsParams& p, std::span<const RawElem> message) {
    if (message.size() != p.n_prime)
        fail(Errc::LengthMismatch, "RS message has " + std::to_string(message.size()) + " symbols, expected " + std::to_string(p.n_prime));
    std::vector<RawElem> out(p.n);
    for (std::size_t i = 0; i < p.n; ++i) out[i] = detail::poly_eval(p.field, message, p.eval_point(i));
    return out;
}

inline std::vector<FieldElem> rs_encode(const RsParams& p, std::span<const FieldElem> message) {
    std::vector<RawElem> raw;
    raw.reserve(message.size());
    for (const auto& e : message) {
        if (!(e.field() == p.field)) fail(Errc::FieldMismatch, "message symbol from a different field");
        raw.push_back(e.value());
    }
    std::vector<FieldElem> out;
    for (auto v : rs_encode_raw(p, raw)) out.emplace_back(p.field, v);
    return out;
}

struct RsDecodeResult {
    std::optional<std::vector<RawElem>> message;
    std::size_t erasures = 0;
    std::size_t errors = 0;  // disagreements corrected, valid on success
    bool ok() const noexcept { return message.has_value(); }
};

/// Errors-and-erasures decoding; fails rather than guessing whenever no
/// codeword lies within r + 2t <= n - n' of the received word.
inline RsDecodeResult rs_decode_ee(const RsParams& p, std::span<const OuterSymbol> received) {
    if (received.size() != p.n)
        fail(Errc::LengthMismatch, "RS received word has " + std::to_string(received.size()) + " symbols, expected " + std::to_string(p.n));
    const Field& f = p.field;
    RsDecodeResult result;
    std::vector<RawElem> xs, ys;
    for (std::size_t i = 0; i < p.n; ++i) {
        if (!received[i]) {
            ++result.erasures;
            continue;
        }
        if (!f.contains(*received[i])) fail(Errc::OutOfRange, "received symbol outside the field");
        xs.push_back(p.eval_point(i));
        ys.push_back(*received[i]);
    }
    const std::size_t r = result.erasures;
    if (r > p.redundancy()) return result;
    const std::size_t points = xs.size();
    const std::size_t e = (points - p.n_prime) / 2;
    const std::size_t qlen = e + p.n_prime;
    const std::size_t cols = qlen + e;

    // Q(x_j) - y_j * (e_0 + ... + e_{e-1} x_j^{e-1}) = y_j x_j^e
    std::vector<RawElem> aug(points * (cols + 1), 0);
    for (std::size_t j = 0; j < points; ++j) {
        RawElem pw = 1;
        RawElem* row = &aug[j * (cols + 1)];
        for (std::size_t c = 0; c < qlen; ++c) {
            row[c] = pw;
            if (c < e) row[qlen + c] = f.neg(f.mul(ys[j], pw));
            if (c == e) row[cols] = f.mul(ys[j], pw);
            pw = f.mul(pw, xs[j]);
        }
    }
    auto sol = detail::solve_linear(f, std::move(aug), points, cols);
    if (!sol) return result;

    // P = Q / E with E monic of degree e.
    std::vector<RawElem> rem(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(qlen));
    std::vector<RawElem> E(sol->begin() + static_cast<std::ptrdiff_t>(qlen), sol->end());
    E.push_back(1);
    std::vector<RawElem> quot(p.n_prime, 0);
    for (std::size_t d = qlen; d-- > e;) {
        const RawElem lead = rem[d];
        if (lead == 0) continue;
        const std::size_t shift = d - e;
        if (shift >= p.n_prime) return result;
        quot[shift] = lead;
        for (std::size_t i = 0; i <= e; ++i) rem[shift + i] = f.sub(rem[shift + i], f.mul(lead, E[i]));
    }
    for (std::size_t d = 0; d < e; ++d)
        if (rem[d] != 0) return result;

    std::size_t t = 0;
    for (std::size_t j = 0; j < points; ++j) t += detail::poly_eval(f, quot, xs[j]) != ys[j];
    if (r + 2 * t > p.redundancy()) return result;
    result.errors = t;
    result.message = std::move(quot);
    return result;
}

inline std::optional<std::vector<FieldElem>> rs_decode_ee(const RsParams& p, std::span<const std::optional<FieldElem>> received) {
    std::vector<OuterSymbol> raw;
    for (const auto& s : received) {
        if (s && !(s->field() == p.field)) fail(Errc::FieldMismatch, "received symbol from a different field");
        raw.push_back(s ? OuterSymbol(s->value()) : std::nullopt);
    }
    auto res = rs_decode_ee(p, std::span<const OuterSymbol>(raw));
    if (!res.message) return std::nullopt;
    std::vector<FieldElem> out;
    for (auto v : *res.message) out.emplace_back(p.field, v);
    return out;
}

// ---------------------------------------------------------------------------
// List recovery by enumeration

constexpr std::uint64_t kDefaultRecoveryGuard = 10'000'000;

struct RecoveryInput {
    std::vector<std::vector<RawElem>> sets;  // S_i, one per coordinate
    Rational alpha{1};                       // agreement fraction
    Rational ell{0};                         // advertised average list size, reporting only
};

struct RecoveredCodeword {
    std::vector<RawElem> message;
    std::vector<RawElem> codeword;
    std::size_t agreements = 0;
    friend bool operator==(const RecoveredCodeword&, const RecoveredCodeword&) = default;
};

/// Every codeword with c_i in S_i for at least ceil(alpha*n) coordinates,
/// ordered lexicographically by message.
inline std::vector<RecoveredCodeword> rs_list_recover_bruteforce(const RsParams& p, const RecoveryInput& in,
                                                                 std::uint64_t guard = kDefaultRecoveryGuard) {
    if (in.sets.size() != p.n) fail(Errc::LengthMismatch, "need one candidate set per coordinate");
    if (in.alpha <= 0 || in.alpha > 1) fail(Errc::OutOfRange, "alpha must lie in (0, 1]");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < p.n_prime; ++i) {
        if (total > guard / p.field.order()) fail(Errc::GuardExceeded, "q^n' exceeds the enumeration guard");
        total *= p.field.order();
    }
    const auto threshold = static_cast<std::size_t>(ceil_mul(in.alpha, static_cast<std::int64_t>(p.n)));

    std::vector<std::vector<RawElem>> sorted_sets = in.sets;
    for (auto& s : sorted_sets) std::sort(s.begin(), s.end());

    std::vector<RecoveredCodeword> out;
    std::vector<RawElem> msg(p.n_prime, 0);
    for (std::uint64_t it = 0; it < total; ++it) {
        auto cw = rs_encode_raw(p, msg);
        std::size_t hits = 0;
        for (std::size_t i = 0; i < p.n; ++i) hits += std::binary_search(sorted_sets[i].begin(), sorted_sets[i].end(), cw[i]);
        if (hits >= threshold) out.push_back({msg, std::move(cw), hits});
        for (std::size_t i = p.n_prime; i-- > 0;) {
            if (++msg[i] < p.field.order()) break;
            msg[i] = 0;
        }
    }
    return out;
}

}  // namespace delcodes
