#ifndef SDLAB_RATIONAL_HPP
#define SDLAB_RATIONAL_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sdlab {

// Exact small rational arithmetic for exponent bookkeeping.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(Rational a, Rational b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    friend Rational operator-(Rational a) { return Rational(-a.num, a.den); }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return a.num * b.den <= b.num * a.den;
    }
};

// Exact rational from a decimal string like "-0.25", "1/4" or "3".
inline Rational rational_from_string(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::int64_t n = std::stoll(text.substr(0, slash));
        const std::int64_t d = std::stoll(text.substr(slash + 1));
        return Rational(n, d);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac_len = text.size() - dot - 1;
    if (frac_len > 15) throw std::invalid_argument("rational_from_string: too many decimals");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(std::stoll(digits), den);
}

// Nearest small-denominator rational (continued fractions); throws if the
// value is not within tol of one with denominator <= max_den.
inline Rational rational_from_double(double x, std::int64_t max_den = 1000000,
                                     double tol = 1e-9) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite");
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(v);
        const std::int64_t a = static_cast<std::int64_t>(fl);
        const std::int64_t p2 = a * p1 + p0;
        const std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) < tol)
            return Rational(p1, q1);
        const double rem = v - fl;
        if (rem < 1e-15) break;
        v = 1.0 / rem;
    }
    if (q1 != 0 && std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) < tol)
        return Rational(p1, q1);
    throw std::invalid_argument("rational_from_double: no small rational within tolerance");
}

}  // namespace sdlab

#endif
