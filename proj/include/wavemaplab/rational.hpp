#pragma once

#include <numeric>
#include <stdexcept>
#include <string>

// Minimal exact rational arithmetic for index computations.

namespace wml {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return double(num) / double(den); }
    std::string str() const { return den == 1 ? std::to_string(num)
                                              : std::to_string(num) + "/" + std::to_string(den); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        return {a.num * b.den, a.den * b.num};
    }
    friend Rational operator-(const Rational& a) { return {-a.num, a.den}; }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
};

// Exact square root of a nonnegative rational; throws if not a perfect square.
inline Rational rational_sqrt(const Rational& x) {
    if (x.num < 0) throw std::domain_error("rational_sqrt: negative argument");
    auto isqrt = [](long long v) {
        long long r = (long long)std::sqrt((double)v);
        while (r * r > v) --r;
        while ((r + 1) * (r + 1) <= v) ++r;
        return r;
    };
    const long long rn = isqrt(x.num), rd = isqrt(x.den);
    if (rn * rn != x.num || rd * rd != x.den)
        throw std::domain_error("rational_sqrt: not a perfect square");
    return {rn, rd};
}

}  // namespace wml
