#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qdom {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Parses "p", "p/q" or a plain decimal like "-1.25".
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("rational with zero denominator: " + s);
        return Rat(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(BigInt(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    BigInt q = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) q *= 10;
    return Rat(BigInt(digits), q);
}

// Best rational approximation with |x - p/q| <= tol, by continued fractions.
inline Rat rationalize(double x, double tol = 1e-13) {
    if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite input");
    if (x == 0.0) return Rat(0);
    bool neg = x < 0;
    double a = std::abs(x);
    // convergents of the continued fraction of a
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = a;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 9e15) break;
        BigInt ai = static_cast<int64_t>(fl);
        BigInt p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double approx = Rat(p1, q1).convert_to<double>();
        if (std::abs(approx - a) <= tol * std::max(1.0, a)) break;
        double rem = frac - fl;
        if (rem < 1e-18) break;
        frac = 1.0 / rem;
    }
    Rat r(p1, q1);
    return neg ? Rat(-r) : r;
}

// Exact Gaussian rational: re + i*im with arbitrary-precision rational parts.
struct GaussRat {
    Rat re{0}, im{0};

    GaussRat() = default;
    GaussRat(int v) : re(v) {}
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }
    // i^k, any integer k
    static GaussRat i_pow(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return GaussRat(1);
            case 1: return GaussRat(Rat(0), Rat(1));
            case 2: return GaussRat(-1);
            default: return GaussRat(Rat(0), Rat(-1));
        }
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    GaussRat conj() const { return GaussRat(re, -im); }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("GaussRat division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussRat& operator+=(const GaussRat& b) { re += b.re; im += b.im; return *this; }
    GaussRat& operator-=(const GaussRat& b) { re -= b.re; im -= b.im; return *this; }
    GaussRat& operator*=(const GaussRat& b) { *this = *this * b; return *this; }
    GaussRat& operator/=(const GaussRat& b) { *this = *this / b; return *this; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    GaussRat pow(long k) const {
        if (k < 0) return GaussRat(1) / pow(-k);
        GaussRat acc(1), base = *this;
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
    std::string str() const {
        if (im == 0) return rat_to_string(re);
        return rat_to_string(re) + (im > 0 ? "+" : "") + rat_to_string(im) + "i";
    }
};

inline GaussRat conj(const GaussRat& a) { return a.conj(); }

inline GaussRat gauss_from_doubles(double re, double im, double tol = 1e-13) {
    return GaussRat(rationalize(re, tol), rationalize(im, tol));
}

} // namespace qdom
