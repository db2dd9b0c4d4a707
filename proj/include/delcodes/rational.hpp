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

// Exact fractions for code parameters (eps, delta, beta). Every threshold
// that multiplies a block length is integerized from these, never from a
// floating-point approximation.

#include <boost/rational.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "delcodes/error.hpp"

namespace delcodes {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_of(const Rational& r) {
    const auto n = r.numerator();
    const auto d = r.denominator();  // always positive after normalization
    return n >= 0 ? n / d : -((-n + d - 1) / d);
}

inline std::int64_t ceil_of(const Rational& r) { return -floor_of(-r); }

inline std::int64_t ceil_mul(const Rational& r, std::int64_t x) { return ceil_of(r * x); }
inline std::int64_t floor_mul(const Rational& r, std::int64_t x) { return floor_of(r * x); }

/// Smallest x >= 0 with x*x >= r.
inline std::int64_t ceil_sqrt(const Rational& r) {
    if (r <= 0) return 0;
    auto x = static_cast<std::int64_t>(std::ceil(std::sqrt(boost::rational_cast<double>(r))));
    while (x > 0 && Rational(x - 1) * (x - 1) >= r) --x;
    while (Rational(x) * x < r) ++x;
    return x;
}

/// Largest x >= 0 with x*x <= r.
inline std::int64_t floor_sqrt(const Rational& r) {
    if (r <= 0) return 0;
    auto x = static_cast<std::int64_t>(std::floor(std::sqrt(boost::rational_cast<double>(r))));
    while (Rational(x) * x > r) --x;
    while (Rational(x + 1) * (x + 1) <= r) ++x;
    return x;
}

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Accepts "NUM/DEN" or a bare integer.
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view part) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
            fail(Errc::ParseError, "not a fraction: '" + std::string(text) + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) fail(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace delcodes
