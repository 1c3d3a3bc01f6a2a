#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qdom {

// Bivariate exponent pair (z-degree, zbar-degree), graded-lex ordered.
struct Exp2 {
    int a = 0, b = 0;
    friend bool operator<(const Exp2& l, const Exp2& r) {
        if (l.a + l.b != r.a + r.b) return l.a + l.b < r.a + r.b;
        return l.a < r.a;
    }
    friend bool operator==(const Exp2& l, const Exp2& r) { return l.a == r.a && l.b == r.b; }
};

// Exact polynomial in (z, zbar) over Gaussian rationals, canonical form:
// no zero coefficients, unique keys, graded-lex term order.
class Poly2 {
public:
    using Terms = std::map<Exp2, GaussRat>;

    Poly2() = default;
    explicit Poly2(GaussRat c) { set({0, 0}, std::move(c)); }

    static Poly2 monomial(int a, int b, GaussRat c = GaussRat(1)) {
        Poly2 p;
        p.set({a, b}, std::move(c));
        return p;
    }
    static Poly2 z() { return monomial(1, 0); }
    static Poly2 zbar() { return monomial(0, 1); }
    // x = (z + zbar)/2
    static Poly2 x() {
        Poly2 p;
        p.set({1, 0}, GaussRat(Rat(1, 2)));
        p.set({0, 1}, GaussRat(Rat(1, 2)));
        return p;
    }
    // y = (z - zbar)/2i
    static Poly2 y() {
        Poly2 p;
        p.set({1, 0}, GaussRat(Rat(0), Rat(-1, 2)));
        p.set({0, 1}, GaussRat(Rat(0), Rat(1, 2)));
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exp2{0, 0});
    }

    void set(Exp2 e, GaussRat c) {
        if (c.is_zero()) terms_.erase(e);
        else terms_[e] = std::move(c);
    }
    void add_term(Exp2 e, const GaussRat& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    GaussRat coeff(int a, int b) const {
        auto it = terms_.find({a, b});
        return it == terms_.end() ? GaussRat() : it->second;
    }

    int degree() const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e.a + e.b);
        return d;
    }
    int deg_z() const {
        int d = 0;
        for (auto& [e, c] : terms_) d = std::max(d, e.a);
        return d;
    }
    int deg_zbar() const {
        int d = 0;
        for (auto& [e, c] : terms_) d = std::max(d, e.b);
        return d;
    }

    Exp2 leading_exp() const { return terms_.rbegin()->first; }
    GaussRat leading_coeff() const { return terms_.empty() ? GaussRat() : terms_.rbegin()->second; }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend Poly2 operator-(const Poly2& a) {
        Poly2 r;
        for (auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) r.add_term({ea.a + eb.a, ea.b + eb.b}, ca * cb);
        return r;
    }
    friend Poly2 operator*(const Poly2& a, const GaussRat& s) {
        Poly2 r;
        if (s.is_zero()) return r;
        for (auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
        return r;
    }
    friend Poly2 operator*(const GaussRat& s, const Poly2& a) { return a * s; }
    Poly2& operator+=(const Poly2& b) { *this = *this + b; return *this; }
    Poly2& operator-=(const Poly2& b) { *this = *this - b; return *this; }
    Poly2& operator*=(const Poly2& b) { *this = *this * b; return *this; }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

    Poly2 pow(int k) const {
        Poly2 acc(GaussRat(1)), base = *this;
        while (k) {
            if (k & 1) acc *= base;
            if (k >>= 1) base *= base;
        }
        return acc;
    }

    Poly2 d_z() const {
        Poly2 r;
        for (auto& [e, c] : terms_)
            if (e.a > 0) r.terms_.emplace(Exp2{e.a - 1, e.b}, c * GaussRat(e.a));
        return r;
    }
    Poly2 d_zbar() const {
        Poly2 r;
        for (auto& [e, c] : terms_)
            if (e.b > 0) r.terms_.emplace(Exp2{e.a, e.b - 1}, c * GaussRat(e.b));
        return r;
    }
    // d/dx = d_z + d_zbar, d/dy = i(d_z - d_zbar)
    Poly2 d_x() const { return d_z() + d_zbar(); }
    Poly2 d_y() const { return (d_z() - d_zbar()) * GaussRat::i(); }

    // P with dP/dzbar = this; zero constant of integration in zbar.
    Poly2 antiderivative_zbar() const {
        Poly2 r;
        for (auto& [e, c] : terms_)
            r.terms_.emplace(Exp2{e.a, e.b + 1}, c / GaussRat(e.b + 1));
        return r;
    }

    // Complex conjugate as a function on the plane: z <-> zbar, coefficients conjugated.
    Poly2 conjugate() const {
        Poly2 r;
        for (auto& [e, c] : terms_) r.terms_.emplace(Exp2{e.b, e.a}, c.conj());
        return r;
    }

    GaussRat eval(const GaussRat& zv, const GaussRat& zbv) const {
        GaussRat acc;
        for (auto& [e, c] : terms_) acc += c * zv.pow(e.a) * zbv.pow(e.b);
        return acc;
    }
    std::complex<double> eval(std::complex<double> zv) const {
        std::complex<double> acc = 0, zbv = std::conj(zv);
        for (auto& [e, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (int i = 0; i < e.a; ++i) t *= zv;
            for (int i = 0; i < e.b; ++i) t *= zbv;
            acc += t;
        }
        return acc;
    }

    // Exact quotient; throws NotDivisible when no polynomial quotient exists.
    static Poly2 exact_divide(const Poly2& a, const Poly2& b) {
        if (b.is_zero()) throw std::domain_error("Poly2 division by zero polynomial");
        Poly2 rem = a, q;
        Exp2 lb = b.leading_exp();
        GaussRat lc = b.leading_coeff();
        while (!rem.is_zero()) {
            Exp2 lr = rem.leading_exp();
            if (lr.a < lb.a || lr.b < lb.b)
                throw NotDivisible("leading term not divisible");
            Exp2 qe{lr.a - lb.a, lr.b - lb.b};
            GaussRat qc = rem.leading_coeff() / lc;
            q.add_term(qe, qc);
            rem -= b * Poly2::monomial(qe.a, qe.b, qc);
        }
        return q;
    }

    // Rescale so the graded-lex leading coefficient is 1.
    Poly2 normalized() const {
        if (is_zero()) return *this;
        return *this * (GaussRat(1) / leading_coeff());
    }

    // True if all values on the real slice zbar = conj(z) are real.
    bool is_real_valued() const { return *this == conjugate(); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + it->second.str() + ")";
            if (it->first.a) s += "*z^" + std::to_string(it->first.a);
            if (it->first.b) s += "*zb^" + std::to_string(it->first.b);
        }
        return s;
    }

private:
    Terms terms_;
};

} // namespace qdom
