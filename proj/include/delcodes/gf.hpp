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

// Finite fields GF(p) for primes p < 2^32 and GF(2^w) for 1 <= w <= 32.
//
// Prime fields hold integers mod p. Binary extension fields hold polynomial
// bit-vectors reduced by the lexicographically first irreducible polynomial
// of degree w (smallest bitmask), so every build picks the same basis.

#include <bit>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "delcodes/error.hpp"

namespace delcodes {

namespace detail {

// Carry-less product of two GF(2)[x] polynomials of degree < 32.
constexpr std::uint64_t clmul32(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

constexpr int poly_degree(std::uint64_t p) noexcept { return p ? 63 - std::countl_zero(p) : -1; }

constexpr std::uint64_t poly_mod(std::uint64_t a, std::uint64_t f) noexcept {
    const int df = poly_degree(f);
    for (int d = poly_degree(a); d >= df; d = poly_degree(a)) a ^= f << (d - df);
    return a;
}

constexpr std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) noexcept {
    while (b) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

// Rabin's test: f of degree w is irreducible iff x^(2^w) = x mod f and
// gcd(x^(2^(w/p)) - x, f) = 1 for every prime p dividing w.
inline bool poly_irreducible(std::uint64_t f) {
    const int w = poly_degree(f);
    if (w < 1) return false;
    if (w == 1) return true;
    auto frobenius_power = [&](int times) {
        std::uint64_t x = 2;
        for (int i = 0; i < times; ++i) x = poly_mod(clmul32(x, x), f);
        return x;
    };
    if (frobenius_power(w) != 2) return false;
    int rest = w;
    for (int p = 2; p <= rest; ++p) {
        if (rest % p) continue;
        while (rest % p == 0) rest /= p;
        if (poly_gcd(frobenius_power(w / p) ^ 2, f) != 1) return false;
    }
    return true;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

/// A finite field of order q. Immutable value; two Field objects compare
/// equal iff they describe the same representation.
class Field {
public:
    using value_type = std::uint32_t;

    std::uint64_t order() const noexcept { return order_; }
    std::uint32_t characteristic() const noexcept { return characteristic_; }
    int degree() const noexcept { return degree_; }
    bool is_binary_extension() const noexcept { return reduction_poly_ != 0; }

    /// Reduction polynomial as coefficient bits (bit i = coefficient of x^i),
    /// 0 for prime fields.
    std::uint64_t reduction_poly() const noexcept { return reduction_poly_; }

    /// Coefficients, constant term first. Empty for prime fields.
    std::vector<int> reduction_coefficients() const {
        std::vector<int> c;
        for (int i = 0; i <= degree_ && reduction_poly_; ++i) c.push_back((reduction_poly_ >> i) & 1);
        return c;
    }

    bool contains(std::uint64_t v) const noexcept { return v < order_; }

    value_type add(value_type a, value_type b) const noexcept {
        if (reduction_poly_) return a ^ b;
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<value_type>(s >= order_ ? s - order_ : s);
    }

    value_type neg(value_type a) const noexcept {
        if (reduction_poly_ || a == 0) return a;
        return static_cast<value_type>(order_ - a);
    }

    value_type sub(value_type a, value_type b) const noexcept { return add(a, neg(b)); }

    value_type mul(value_type a, value_type b) const noexcept {
        if (reduction_poly_) return static_cast<value_type>(detail::poly_mod(detail::clmul32(a, b), reduction_poly_));
        return static_cast<value_type>((std::uint64_t{a} * b) % order_);
    }

    value_type pow(value_type a, std::uint64_t e) const noexcept {
        value_type r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    value_type inv(value_type a) const {
        if (a == 0) fail(Errc::DivisionByZero, "inverse of zero");
        return pow(a, order_ - 2);
    }

    friend bool operator==(const Field&, const Field&) = default;

    friend Field make_field(std::uint64_t order);

private:
    std::uint64_t order_ = 0;
    std::uint32_t characteristic_ = 0;
    int degree_ = 1;
    std::uint64_t reduction_poly_ = 0;
};

/// order must be a prime below 2^32 or 2^w with 1 <= w <= 32.
inline Field make_field(std::uint64_t order) {
    Field f;
    if (detail::is_prime(order)) {
        if (order > 0xffffffffULL) fail(Errc::NotPrimePower, "prime order exceeds 2^32");
        f.order_ = order;
        f.characteristic_ = static_cast<std::uint32_t>(order);
        f.degree_ = 1;
        return f;
    }
    if (order >= 4 && std::has_single_bit(order) && order <= (std::uint64_t{1} << 32)) {
        const int w = std::countr_zero(order);
        for (std::uint64_t low = 1; low < order; low += 2) {
            const std::uint64_t poly = order | low;
            if (detail::poly_irreducible(poly)) {
                f.order_ = order;
                f.characteristic_ = 2;
                f.degree_ = w;
                f.reduction_poly_ = poly;
                return f;
            }
        }
    }
    fail(Errc::NotPrimePower, "field order " + std::to_string(order) + " is neither prime nor 2^w (w <= 32)");
}

/// Element of a Field; arithmetic between elements of different fields throws
/// FieldMismatch.
class FieldElem {
public:
    FieldElem(const Field& field, std::uint64_t value) : field_(field), value_(static_cast<Field::value_type>(value)) {
        if (!field.contains(value))
            fail(Errc::OutOfRange, std::to_string(value) + " is not an element of GF(" + std::to_string(field.order()) + ")");
    }

    const Field& field() const noexcept { return field_; }
    Field::value_type value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        return {a.field_, a.field_.add(a.value_, b.value_), Trusted{}};
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        return {a.field_, a.field_.sub(a.value_, b.value_), Trusted{}};
    }
    friend FieldElem operator-(const FieldElem& a) { return {a.field_, a.field_.neg(a.value_), Trusted{}}; }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        return {a.field_, a.field_.mul(a.value_, b.value_), Trusted{}};
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        return {a.field_, a.field_.mul(a.value_, a.field_.inv(b.value_)), Trusted{}};
    }

    FieldElem inverse() const { return {field_, field_.inv(value_), Trusted{}}; }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        return a.value_ == b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const FieldElem& e) { return os << e.value_; }

private:
    struct Trusted {};
    FieldElem(const Field& field, Field::value_type value, Trusted) : field_(field), value_(value) {}

    static void check(const FieldElem& a, const FieldElem& b) {
        if (!(a.field_ == b.field_)) fail(Errc::FieldMismatch, "operands belong to different fields");
    }

    Field field_;
    Field::value_type value_;
};

inline FieldElem ff_add(const FieldElem& a, const FieldElem& b) { return a + b; }
inline FieldElem ff_mul(const FieldElem& a, const FieldElem& b) { return a * b; }
inline FieldElem ff_inv(const FieldElem& a) { return a.inverse(); }

}  // namespace delcodes
