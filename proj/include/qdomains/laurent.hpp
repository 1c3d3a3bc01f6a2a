#pragma once

#include <map>

#include "rational.hpp"

namespace qdom {

// Exact Laurent polynomial in w over Gaussian rationals.
class LaurentPoly {
public:
    using Terms = std::map<int, GaussRat>;

    LaurentPoly() = default;
    explicit LaurentPoly(GaussRat c) { set(0, std::move(c)); }
    static LaurentPoly monomial(int k, GaussRat c = GaussRat(1)) {
        LaurentPoly l;
        l.set(k, std::move(c));
        return l;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void set(int k, GaussRat c) {
        if (c.is_zero()) terms_.erase(k);
        else terms_[k] = std::move(c);
    }
    void add_term(int k, const GaussRat& c) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    GaussRat coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? GaussRat() : it->second;
    }

    GaussRat residue() const { return coeff(-1); }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [k, c] : b.terms_) r.add_term(k, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const GaussRat& s) {
        LaurentPoly r;
        if (s.is_zero()) return r;
        for (auto& [k, c] : a.terms_) r.terms_.emplace(k, c * s);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& b) { *this = *this + b; return *this; }
    LaurentPoly& operator*=(const LaurentPoly& b) { *this = *this * b; return *this; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    LaurentPoly pow(int k) const {
        LaurentPoly acc(GaussRat(1)), base = *this;
        while (k) {
            if (k & 1) acc *= base;
            if (k >>= 1) base *= base;
        }
        return acc;
    }

private:
    Terms terms_;
};

inline GaussRat residue(const LaurentPoly& l) { return l.residue(); }

} // namespace qdom
