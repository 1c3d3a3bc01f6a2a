#pragma once

#include <map>
#include <vector>

#include "poly2.hpp"

namespace qdom {

inline Rat binomial(int n, int k) {
    if (k < 0 || k > n) return Rat(0);
    Rat r(1);
    for (int i = 0; i < k; ++i) r = r * Rat(n - i) / Rat(i + 1);
    return r;
}

// Normal-ordered differential operator sum_{a,b} p_{ab}(z, zbar) dz^a dzbar^b.
// All coefficients sit to the left of all derivatives; canonical unique form.
class DiffOp2 {
public:
    using Terms = std::map<Exp2, Poly2>; // key: derivative orders (a, b)

    DiffOp2() = default;
    explicit DiffOp2(Poly2 mult) { set({0, 0}, std::move(mult)); }

    static DiffOp2 identity() { return DiffOp2(Poly2(GaussRat(1))); }
    static DiffOp2 deriv(int a, int b, Poly2 coeff = Poly2(GaussRat(1))) {
        DiffOp2 d;
        d.set({a, b}, std::move(coeff));
        return d;
    }
    static DiffOp2 dz() { return deriv(1, 0); }
    static DiffOp2 dzbar() { return deriv(0, 1); }
    static DiffOp2 dx() { return deriv(1, 0) + deriv(0, 1); }
    static DiffOp2 dy() {
        return deriv(1, 0, Poly2(GaussRat::i())) + deriv(0, 1, Poly2(-GaussRat::i()));
    }
    static DiffOp2 laplacian() { return deriv(1, 1, Poly2(GaussRat(4))); }
    // d/dtheta = i (z dz - zbar dzbar)
    static DiffOp2 dtheta() {
        return deriv(1, 0, Poly2::monomial(1, 0, GaussRat::i())) +
               deriv(0, 1, Poly2::monomial(0, 1, -GaussRat::i()));
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int order() const {
        int o = -1;
        for (auto& [e, p] : terms_) o = std::max(o, e.a + e.b);
        return o;
    }

    void set(Exp2 e, Poly2 p) {
        if (p.is_zero()) terms_.erase(e);
        else terms_[e] = std::move(p);
    }
    void add_term(Exp2 e, const Poly2& p) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!p.is_zero()) terms_.emplace(e, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    Poly2 coeff(int a, int b) const {
        auto it = terms_.find({a, b});
        return it == terms_.end() ? Poly2() : it->second;
    }

    friend DiffOp2 operator+(const DiffOp2& A, const DiffOp2& B) {
        DiffOp2 r = A;
        for (auto& [e, p] : B.terms_) r.add_term(e, p);
        return r;
    }
    friend DiffOp2 operator-(const DiffOp2& A, const DiffOp2& B) {
        DiffOp2 r = A;
        for (auto& [e, p] : B.terms_) r.add_term(e, -p);
        return r;
    }
    friend DiffOp2 operator*(const Poly2& p, const DiffOp2& A) {
        DiffOp2 r;
        for (auto& [e, q] : A.terms_) r.set(e, p * q);
        return r;
    }
    friend DiffOp2 operator*(const GaussRat& s, const DiffOp2& A) {
        DiffOp2 r;
        for (auto& [e, q] : A.terms_) r.set(e, q * s);
        return r;
    }
    DiffOp2& operator+=(const DiffOp2& B) { *this = *this + B; return *this; }
    friend bool operator==(const DiffOp2& A, const DiffOp2& B) { return A.terms_ == B.terms_; }
    friend bool operator!=(const DiffOp2& A, const DiffOp2& B) { return !(A == B); }

    Poly2 apply(const Poly2& f) const {
        Poly2 r;
        for (auto& [e, p] : terms_) {
            Poly2 g = f;
            for (int i = 0; i < e.a; ++i) g = g.d_z();
            for (int i = 0; i < e.b; ++i) g = g.d_zbar();
            r += p * g;
        }
        return r;
    }

    std::string str() const {
        std::string s;
        for (auto& [e, p] : terms_) {
            if (!s.empty()) s += "  +  ";
            s += "[" + p.str() + "]";
            if (e.a) s += " dz^" + std::to_string(e.a);
            if (e.b) s += " dzb^" + std::to_string(e.b);
        }
        return s.empty() ? "0" : s;
    }

private:
    Terms terms_;
};

// Normal-ordered product A o B, exact Leibniz expansion:
// dz^a dzb^b o Q = sum C(a,i) C(b,j) (dz^{a-i} dzb^{b-j} Q) dz^i dzb^j.
inline DiffOp2 compose(const DiffOp2& A, const DiffOp2& B) {
    DiffOp2 r;
    for (auto& [ea, P] : A.terms()) {
        for (auto& [eb, Q] : B.terms()) {
            // derivatives of Q: dQ[i][j] = dz^i dzb^j Q
            std::vector<std::vector<Poly2>> dQ(ea.a + 1, std::vector<Poly2>(ea.b + 1));
            dQ[0][0] = Q;
            for (int i = 1; i <= ea.a; ++i) dQ[i][0] = dQ[i - 1][0].d_z();
            for (int i = 0; i <= ea.a; ++i)
                for (int j = 1; j <= ea.b; ++j) dQ[i][j] = dQ[i][j - 1].d_zbar();
            for (int i = 0; i <= ea.a; ++i) {
                for (int j = 0; j <= ea.b; ++j) {
                    Poly2 c = dQ[ea.a - i][ea.b - j];
                    if (c.is_zero()) continue;
                    GaussRat w(binomial(ea.a, i) * binomial(ea.b, j));
                    r.add_term({i + eb.a, j + eb.b}, P * c * w);
                }
            }
        }
    }
    return r;
}

inline DiffOp2 pow_compose(const DiffOp2& A, int k) {
    DiffOp2 acc = DiffOp2::identity();
    for (int i = 0; i < k; ++i) acc = compose(acc, A);
    return acc;
}

// Coefficients B_a with T[f] = sum_a B_a(z, zbar) f^{(a)}(z) for analytic f:
// only the b = 0 derivative columns act on analytic inputs.
inline std::vector<Poly2> apply_to_analytic(const DiffOp2& T) {
    int n = 0;
    for (auto& [e, p] : T.terms())
        if (e.b == 0) n = std::max(n, e.a);
    std::vector<Poly2> B(n + 1);
    for (auto& [e, p] : T.terms())
        if (e.b == 0) B[e.a] = p;
    return B;
}

} // namespace qdom
