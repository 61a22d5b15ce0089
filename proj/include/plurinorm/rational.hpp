#pragma once

// Exact rational arithmetic on int64 numerator/denominator. All products go
// through __int128 so in-range operands cannot wrap; results that do not fit
// back into int64 throw std::overflow_error instead of silently degrading.

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace plurinorm {

namespace detail {

inline __int128 iabs128(__int128 v) { return v < 0 ? -v : v; }

inline __int128 gcd128(__int128 a, __int128 b) {
    a = iabs128(a);
    b = iabs128(b);
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::int64_t narrow128(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw std::overflow_error("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

}  // namespace detail

class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.num_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from128(n, d);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        __int128 n = static_cast<__int128>(a.num_) * b.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.num_;
        return from128(n, d);
    }

    Rational& operator+=(const Rational& r) { return *this = *this + r; }
    Rational& operator-=(const Rational& r) { return *this = *this - r; }
    Rational& operator*=(const Rational& r) { return *this = *this * r; }
    Rational& operator/=(const Rational& r) { return *this = *this / r; }

    // Reduced representation with positive denominator makes equality structural.
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static Rational from128(__int128 n, __int128 d) {
        Rational r;
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            r.num_ = 0;
            r.den_ = 1;
            return r;
        }
        __int128 g = detail::gcd128(n, d);
        r.num_ = detail::narrow128(n / g);
        r.den_ = detail::narrow128(d / g);
        return r;
    }

    void assign(std::int64_t n, std::int64_t d) {
        *this = from128(static_cast<__int128>(n), static_cast<__int128>(d));
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

// A nonnegative rational extended with a single point at infinity. Infinity
// compares strictly greater than every finite value.
class ExtRational {
public:
    ExtRational() : inf_(false), val_(0) {}
    ExtRational(const Rational& v) : inf_(false), val_(v) {
        if (v.is_negative()) throw std::domain_error("ExtRational requires a nonnegative value");
    }
    ExtRational(std::int64_t n, std::int64_t d) : ExtRational(Rational(n, d)) {}

    static ExtRational infinity() {
        ExtRational e;
        e.inf_ = true;
        return e;
    }

    bool is_infinite() const { return inf_; }
    const Rational& value() const {
        if (inf_) throw std::domain_error("value() on infinite ExtRational");
        return val_;
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.val_ == b.val_;
    }
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ && b.inf_) return std::strong_ordering::equal;
        if (a.inf_) return std::strong_ordering::greater;
        if (b.inf_) return std::strong_ordering::less;
        return a.val_ <=> b.val_;
    }

    double to_double() const {
        return inf_ ? std::numeric_limits<double>::infinity() : val_.to_double();
    }

    std::string str() const { return inf_ ? "inf" : val_.str(); }

private:
    bool inf_;
    Rational val_;
};

}  // namespace plurinorm
