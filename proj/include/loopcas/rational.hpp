#pragma once

// Exact rational scalars on top of arbitrary-precision integers.
// Every quantity in the library (structure constants, bilinear forms,
// operator coefficients, matrix entries) is a Rational; there is no
// floating-point mode anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace loopcas {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(long long num, long long den) : num_(num), den_(den) { reduce(); }
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const { return Rational(raw{}, -num_, den_); }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        reduce();
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        reduce();
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        reduce();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        reduce();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        BigInt lhs = a.num_ * b.den_;
        BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational inverse() const {
        if (num_ == 0) throw std::domain_error("Rational: inverse of zero");
        return Rational(raw{}, num_ < 0 ? -den_ : den_, boost::multiprecision::abs(num_));
    }

    // Integer power; negative exponents invert (zero base rejected).
    Rational pow(long long e) const {
        if (e == 0) return Rational(1);
        if (e < 0) return inverse().pow(-e);
        Rational base = *this, acc(1);
        unsigned long long k = static_cast<unsigned long long>(e);
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    // Canonical text form: "n" or "n/d" with d > 1.
    std::string to_string() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    // Accepts "p", "-p", "p/q" with optional surrounding whitespace.
    static std::optional<Rational> parse(std::string_view s) {
        auto trim = [](std::string_view v) {
            while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
            while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
            return v;
        };
        s = trim(s);
        if (s.empty()) return std::nullopt;
        auto slash = s.find('/');
        auto parse_int = [&](std::string_view v) -> std::optional<BigInt> {
            v = trim(v);
            if (v.empty()) return std::nullopt;
            std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
            if (i == v.size()) return std::nullopt;
            for (std::size_t j = i; j < v.size(); ++j)
                if (v[j] < '0' || v[j] > '9') return std::nullopt;
            return BigInt(std::string(v));
        };
        if (slash == std::string_view::npos) {
            auto n = parse_int(s);
            if (!n) return std::nullopt;
            return Rational(std::move(*n));
        }
        auto n = parse_int(s.substr(0, slash));
        auto d = parse_int(s.substr(slash + 1));
        if (!n || !d || *d == 0) return std::nullopt;
        return Rational(std::move(*n), std::move(*d));
    }

    static Rational parse_or_throw(std::string_view s) {
        auto r = parse(s);
        if (!r) throw std::invalid_argument("bad rational literal: '" + std::string(s) + "'");
        return *r;
    }

private:
    struct raw {};
    Rational(raw, BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {}

    void reduce() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

} // namespace loopcas
