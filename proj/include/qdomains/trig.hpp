#pragma once

#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "poly2.hpp"

namespace qdom {

// Element of the trigonometric ring: rho^rho_power * sum_m c_m u^m with u = e^{i theta}.
// Phases are restricted to the pi/2 grid so coefficients stay Gaussian rational.
struct TrigElem {
    LaurentPoly u;     // Fourier part in u
    int rho_power = 0;

    TrigElem() = default;
    explicit TrigElem(GaussRat c) : u(std::move(c)) {}
    TrigElem(LaurentPoly l, int rp) : u(std::move(l)), rho_power(rp) {}

    bool is_zero() const { return u.is_zero(); }

    // sin(k*theta + q*pi/2) = (i^q u^k - i^-q u^-k) / (2i)
    static TrigElem sin_harmonic(int k, long quarter_phase = 0) {
        LaurentPoly l;
        GaussRat half_over_i = GaussRat(1) / (GaussRat(2) * GaussRat::i());
        l.add_term(k, GaussRat::i_pow(quarter_phase) * half_over_i);
        l.add_term(-k, -(GaussRat::i_pow(-quarter_phase) * half_over_i));
        return TrigElem(l, 0);
    }
    static TrigElem cos_harmonic(int k, long quarter_phase = 0) {
        return sin_harmonic(k, quarter_phase + 1);
    }

    TrigElem d_theta() const {
        LaurentPoly r;
        for (auto& [m, c] : u.terms()) r.set(m, c * GaussRat(Rat(0), Rat(m)));
        return TrigElem(r, rho_power);
    }

    friend TrigElem operator+(const TrigElem& a, const TrigElem& b) {
        if (!a.is_zero() && !b.is_zero() && a.rho_power != b.rho_power)
            throw std::domain_error("TrigElem addition with mismatched rho powers");
        return TrigElem(a.u + b.u, a.is_zero() ? b.rho_power : a.rho_power);
    }
    friend TrigElem operator-(const TrigElem& a, const TrigElem& b) {
        return a + TrigElem(b.u * GaussRat(-1), b.rho_power);
    }
    friend TrigElem operator*(const TrigElem& a, const TrigElem& b) {
        return TrigElem(a.u * b.u, a.rho_power + b.rho_power);
    }
    friend TrigElem operator*(const TrigElem& a, const GaussRat& s) {
        return TrigElem(a.u * s, a.rho_power);
    }
    friend bool operator==(const TrigElem& a, const TrigElem& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.rho_power == b.rho_power && a.u == b.u;
    }

    TrigElem pow(int k) const {
        TrigElem acc(GaussRat(1)), base = *this;
        while (k) {
            if (k & 1) acc = acc * base;
            if (k >>= 1) base = base * base;
        }
        return acc;
    }
};

// Exact determinant of the theta-derivative matrix [d^{j-1} f_i / d theta^{j-1}].
inline TrigElem wronskian_theta(const std::vector<TrigElem>& fs) {
    size_t n = fs.size();
    if (n == 0) return TrigElem(GaussRat(1));
    // rows: functions, cols: derivative orders 0..n-1
    std::vector<std::vector<TrigElem>> m(n, std::vector<TrigElem>(n));
    for (size_t i = 0; i < n; ++i) {
        m[i][0] = fs[i];
        for (size_t j = 1; j < n; ++j) m[i][j] = m[i][j - 1].d_theta();
    }
    // cofactor expansion; sizes here are tiny
    std::vector<size_t> rows(n), cols(n);
    for (size_t i = 0; i < n; ++i) rows[i] = cols[i] = i;
    struct Det {
        const std::vector<std::vector<TrigElem>>& m;
        TrigElem run(std::vector<size_t> r, std::vector<size_t> c) {
            if (r.size() == 1) return m[r[0]][c[0]];
            TrigElem acc;
            for (size_t k = 0; k < r.size(); ++k) {
                if (m[r[k]][c[0]].is_zero()) continue;
                std::vector<size_t> r2;
                for (size_t i = 0; i < r.size(); ++i)
                    if (i != k) r2.push_back(r[i]);
                TrigElem sub = run(r2, std::vector<size_t>(c.begin() + 1, c.end()));
                TrigElem term = m[r[k]][c[0]] * sub;
                acc = (k % 2 == 0) ? (acc.is_zero() ? term : acc + term)
                                   : (acc.is_zero() ? term * GaussRat(-1) : acc - term);
            }
            return acc;
        }
    } det{m};
    return det.run(rows, cols);
}

// Exact quotient in the u-Laurent ring; throws NotDivisible if the remainder is nonzero.
inline LaurentPoly laurent_exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::domain_error("trig division by zero");
    if (a.is_zero()) return LaurentPoly();
    int alo = a.terms().begin()->first, blo = b.terms().begin()->first;
    int bhi = b.terms().rbegin()->first;
    LaurentPoly rem = a, q;
    GaussRat lead = b.terms().rbegin()->second;
    while (!rem.is_zero()) {
        int k = rem.terms().rbegin()->first - bhi;
        // an exact quotient has support in [alo - blo, ahi - bhi]
        if (k < alo - blo) throw NotDivisible("trig ring remainder nonzero");
        GaussRat qc = rem.terms().rbegin()->second / lead;
        q.add_term(k, qc);
        rem = rem - b * LaurentPoly::monomial(k, qc);
    }
    return q;
}

inline TrigElem exact_divide(const TrigElem& a, const TrigElem& b) {
    if (b.is_zero()) throw std::domain_error("trig division by zero");
    return TrigElem(laurent_exact_divide(a.u, b.u), a.rho_power - b.rho_power);
}

// rho^R u^m -> z^{(R+m)/2} zbar^{(R-m)/2}; throws NotPolynomial when R < |m|
// or the parity does not match.
inline Poly2 trig_to_poly2(const TrigElem& t) {
    Poly2 p;
    for (auto& [m, c] : t.u.terms()) {
        int R = t.rho_power;
        if ((R + m) % 2 != 0 || R < std::abs(m))
            throw NotPolynomial("rho^R u^m term is not a monomial in z, zbar");
        p.add_term({(R + m) / 2, (R - m) / 2}, c);
    }
    return p;
}

} // namespace qdom
