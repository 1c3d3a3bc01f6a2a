#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "diffop.hpp"
#include "medium.hpp"
#include "trig.hpp"

namespace qdom {

// T with polynomial coefficients, the medium invariant zeta, and the cleared
// elliptic operator L = zeta*Lap - 2 (dx zeta) dx - 2 (dy zeta) dy satisfying
// zeta * T o Lap = L o T.
struct IntertwinerBundle {
    DiffOp2 T;
    Poly2 zeta;
    DiffOp2 L_cleared;
    MediumSpec medium;
};

namespace detail {

inline DiffOp2 cleared_elliptic(const Poly2& zeta) {
    return Poly2(zeta) * DiffOp2::laplacian() -
           (GaussRat(2) * (zeta.d_x() * DiffOp2::dx() + zeta.d_y() * DiffOp2::dy()));
}

// Rescale T so the coefficient of the pure dz^order term has graded-lex leading
// coefficient 1; zeta is rescaled to leading coefficient 1.
inline void normalize(IntertwinerBundle& b) {
    b.zeta = b.zeta.normalized();
    b.L_cleared = cleared_elliptic(b.zeta);
    int n = b.T.order();
    Poly2 lead = b.T.coeff(n, 0);
    if (lead.is_zero()) throw NotPolynomial("intertwiner lacks a pure dz^n component");
    GaussRat scale = GaussRat(1) / lead.leading_coeff();
    b.T = scale * b.T;
}

// Assemble T = rho^K sum_j (-1)^{n+j} (minor_j / denom) dtheta^j from the theta
// Wronskian row expansion. Throws NotDivisible / NotPolynomial when the data
// does not produce a differential polynomial.
inline DiffOp2 wronskian_operator(const std::vector<TrigElem>& sines, const TrigElem& denom,
                                  int rho_power) {
    int n = static_cast<int>(sines.size());
    if (denom.is_zero()) throw NotPolynomial("zero Wronskian denominator");
    // derivative table: rows sines, columns theta-derivative orders 0..n
    std::vector<std::vector<TrigElem>> d(n, std::vector<TrigElem>(n + 1));
    for (int i = 0; i < n; ++i) {
        d[i][0] = sines[i];
        for (int j = 1; j <= n; ++j) d[i][j] = d[i][j - 1].d_theta();
    }
    DiffOp2 T;
    for (int j = 0; j <= n; ++j) {
        std::vector<std::vector<TrigElem>> sub(n, std::vector<TrigElem>(n));
        for (int i = 0; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c <= n; ++c)
                if (c != j) sub[i][cc++] = d[i][c];
        }
        // determinant of sub via the same cofactor machinery: reuse wronskian_theta
        // is not possible (columns are not consecutive derivatives), expand directly.
        struct Det {
            const std::vector<std::vector<TrigElem>>& m;
            TrigElem run(const std::vector<int>& rows, int col, int size) {
                if (size == 1) return m[rows[0]][col_index(col, 0)];
                TrigElem acc;
                for (int k = 0; k < size; ++k) {
                    const TrigElem& piv = m[rows[k]][col_index(col, 0)];
                    if (piv.is_zero()) continue;
                    std::vector<int> r2;
                    for (int i = 0; i < size; ++i)
                        if (i != k) r2.push_back(rows[i]);
                    TrigElem sub2 = run(r2, col + 1, size - 1);
                    if (sub2.is_zero()) continue;
                    TrigElem term = piv * sub2;
                    if (k % 2) term = term * GaussRat(-1);
                    acc = acc.is_zero() ? term : acc + term;
                }
                return acc;
            }
            int col_index(int col, int off) const { return col + off; }
        } det{sub};
        std::vector<int> rows(n);
        for (int i = 0; i < n; ++i) rows[i] = i;
        TrigElem minor = (n == 0) ? TrigElem(GaussRat(1)) : det.run(rows, 0, n);
        if (minor.is_zero()) continue;
        TrigElem q = exact_divide(minor, denom);
        q.rho_power += rho_power;
        Poly2 coeff = trig_to_poly2(q);
        if ((n + j) % 2) coeff = -coeff;
        T += coeff * pow_compose(DiffOp2::dtheta(), j);
    }
    return T;
}

} // namespace detail

// T_n = x^n (dx - n/x) ... (dx - 1/x) = sum a_{i;n} x^i dx^i, zeta = x^n.
// Built through the polynomial recurrence T_k = x dx o T_{k-1} - (2k-1) T_{k-1}.
inline IntertwinerBundle build_axis(int n) {
    MediumSpec m = MediumSpec::axis(n);
    DiffOp2 T = DiffOp2::identity();
    DiffOp2 xdx = Poly2::x() * DiffOp2::dx();
    for (int k = 1; k <= n; ++k)
        T = compose(xdx, T) - GaussRat(2 * k - 1) * T;
    IntertwinerBundle b{T, Poly2::x().pow(n), DiffOp2(), m};
    detail::normalize(b);
    return b;
}

// Wronskian intertwiner of the dihedral family, theta_k from the two-orbit table;
// each f-row minor is divided exactly by cos(s th)^{n(n-1)/2} sin(s th)^{l(l-1)/2}.
inline IntertwinerBundle build_dihedral(int s, int n, int l) {
    MediumSpec m = MediumSpec::dihedral(s, n, l);
    std::vector<TrigElem> sines;
    for (int k = 1; k <= n; ++k) {
        int mult = (k <= n - l) ? k : (2 * k + l - n);
        sines.push_back(TrigElem::sin_harmonic(mult * s, mult)); // sin(mult*(s th + pi/2))
    }
    TrigElem denom = TrigElem::cos_harmonic(s).pow(n * (n - 1) / 2) *
                     TrigElem::sin_harmonic(s).pow(l * (l - 1) / 2);
    DiffOp2 T = detail::wronskian_operator(sines, denom, s * (n + l));
    Poly2 zp = Poly2::monomial(s, 0) + Poly2::monomial(0, s); // z^s + zbar^s
    Poly2 zm = Poly2::monomial(s, 0) - Poly2::monomial(0, s);
    IntertwinerBundle b{T, zp.pow(n) * zm.pow(l), DiffOp2(), m};
    detail::normalize(b);
    return b;
}

// zeta = rho^{k_n} W[sin th_1 .. sin th_n] / W[sin th_1 .. sin th_{n-1}] when that
// ratio is a polynomial in x, y; returns nullopt otherwise.
inline std::optional<Poly2> deformed_zeta(const std::vector<int>& kseq,
                                          const std::vector<long>& quarter_phases) {
    size_t n = kseq.size();
    std::vector<TrigElem> sines;
    for (size_t j = 0; j < n; ++j) sines.push_back(TrigElem::sin_harmonic(kseq[j], quarter_phases[j]));
    TrigElem num = wronskian_theta(sines);
    TrigElem den = wronskian_theta(std::vector<TrigElem>(sines.begin(), sines.end() - 1));
    if (num.is_zero() || den.is_zero()) return std::nullopt;
    try {
        TrigElem q = exact_divide(num, den);
        q.rho_power += kseq.back();
        Poly2 zeta = trig_to_poly2(q).normalized();
        if (!zeta.is_real_valued()) return std::nullopt;
        return zeta;
    } catch (const NotDivisible&) {
        return std::nullopt;
    } catch (const NotPolynomial&) {
        return std::nullopt;
    }
}

inline IntertwinerBundle build_deformed(const std::vector<int>& kseq,
                                        const std::vector<long>& quarter_phases) {
    MediumSpec m = MediumSpec::deformed(kseq, quarter_phases);
    auto zeta = deformed_zeta(kseq, quarter_phases);
    if (!zeta)
        throw NotPolynomial("Wronskian ratio is not a polynomial for " + m.str());
    std::vector<TrigElem> sines;
    for (size_t j = 0; j < kseq.size(); ++j)
        sines.push_back(TrigElem::sin_harmonic(kseq[j], quarter_phases[j]));
    TrigElem denom = wronskian_theta(std::vector<TrigElem>(sines.begin(), sines.end() - 1));
    DiffOp2 T = detail::wronskian_operator(sines, denom, kseq.back());
    IntertwinerBundle b{T, *zeta, DiffOp2(), m};
    detail::normalize(b);
    return b;
}

inline IntertwinerBundle build_bundle(const MediumSpec& m) {
    switch (m.family) {
        case MediumSpec::Family::Axis: return build_axis(m.n);
        case MediumSpec::Family::Dihedral: return build_dihedral(m.s, m.n, m.l);
        default: return build_deformed(m.kseq, m.quarter_phases);
    }
}

struct ResidualEntry {
    int a = 0, b = 0; // monomial z^a zbar^b
    Poly2 residual;
};

struct ResidualReport {
    std::vector<ResidualEntry> nonzero;
    int monomials_checked = 0;
    bool ok() const { return nonzero.empty(); }
};

// zeta * T[Lap m] - L[T[m]] for every monomial with a + b <= D; exact.
inline ResidualReport check_intertwining(const IntertwinerBundle& b, int D) {
    ResidualReport rep;
    DiffOp2 E = b.zeta * compose(b.T, DiffOp2::laplacian()) - compose(b.L_cleared, b.T);
    for (int d = 0; d <= D; ++d) {
        for (int a = 0; a <= d; ++a) {
            Poly2 m = Poly2::monomial(a, d - a);
            Poly2 r = E.apply(m);
            ++rep.monomials_checked;
            if (!r.is_zero()) rep.nonzero.push_back({a, d - a, r});
        }
    }
    return rep;
}

// Gauge form of the Calogero-Moser operator: verifies, after clearing all
// denominators, zeta * (grad zeta^-2 grad)[zeta m] = Lap m - V m with
// V = sum_orbits m_a(m_a+1) (|grad g|^2 - g Lap g)/g^2 over the orbit invariants g.
inline ResidualReport check_schrodinger_gauge(const IntertwinerBundle& b, int D) {
    if (b.medium.family == MediumSpec::Family::Deformed)
        throw ValidationError("gauge check requires known root data (axis or dihedral)");
    std::vector<std::pair<Poly2, int>> orbits; // (invariant g, multiplicity)
    if (b.medium.family == MediumSpec::Family::Axis) {
        orbits.emplace_back(Poly2::x(), b.medium.n);
    } else {
        orbits.emplace_back(Poly2::monomial(b.medium.s, 0) + Poly2::monomial(0, b.medium.s), b.medium.n);
        orbits.emplace_back(Poly2::monomial(b.medium.s, 0) - Poly2::monomial(0, b.medium.s), b.medium.l);
    }
    const Poly2& Z = b.zeta;
    Poly2 Z2 = Z * Z;
    // m * sum_orbits mult(mult+1) (|grad g|^2 - g Lap g) * Z^2/g^2, the potential
    // term with denominators cleared by Z^2
    Poly2 potential;
    for (auto& [g, mult] : orbits) {
        if (mult == 0) continue;
        Poly2 gz = g.d_z(), gzb = g.d_zbar();
        Poly2 grad2 = GaussRat(4) * (gz * gzb);          // |grad g|^2
        Poly2 lapg = GaussRat(4) * g.d_z().d_zbar();     // Lap g
        Poly2 inv = grad2 - g * lapg;
        Poly2 zz = Poly2::exact_divide(Z2, g * g);
        potential += GaussRat(mult) * GaussRat(mult + 1) * (inv * zz);
    }
    ResidualReport rep;
    for (int d = 0; d <= D; ++d) {
        for (int a = 0; a <= d; ++a) {
            Poly2 m = Poly2::monomial(a, d - a);
            Poly2 zm = Z * m;
            Poly2 lhs = Z * (GaussRat(4) * zm.d_z().d_zbar()) -
                        GaussRat(2) * (Z.d_x() * zm.d_x() + Z.d_y() * zm.d_y());
            Poly2 rhs = Z2 * (GaussRat(4) * m.d_z().d_zbar()) - m * potential;
            Poly2 r = lhs - rhs;
            ++rep.monomials_checked;
            if (!r.is_zero()) rep.nonzero.push_back({a, d - a, r});
        }
    }
    return rep;
}

struct DeformedHit {
    std::vector<int> kseq;
    std::vector<long> quarter_phases;
    Poly2 zeta;
};

// Exhaustive scan over strictly increasing k-sequences and the pi/2 phase grid.
// Cost is O(4^n * C(max_k+1, n)) candidate evaluations per length n.
inline std::vector<DeformedHit> search_deformed(int max_n, int max_k,
                                                const std::optional<Poly2>& target = std::nullopt) {
    std::vector<DeformedHit> hits;
    std::optional<Poly2> target_norm;
    if (target) target_norm = target->normalized();
    for (int n = 1; n <= max_n; ++n) {
        std::vector<int> ks(n);
        std::function<void(int, int)> pick = [&](int idx, int from) {
            if (idx == n) {
                std::vector<long> ws(n, 0);
                std::function<void(int)> phases = [&](int j) {
                    if (j == n) {
                        auto zeta = deformed_zeta(ks, ws);
                        if (!zeta) return;
                        if (target_norm && !(*zeta == *target_norm)) return;
                        hits.push_back({ks, ws, *zeta});
                        return;
                    }
                    for (long w = 0; w < 4; ++w) {
                        ws[j] = w;
                        phases(j + 1);
                    }
                };
                phases(0);
                return;
            }
            for (int k = from; k <= max_k; ++k) {
                ks[idx] = k;
                pick(idx + 1, k + 1);
            }
        };
        pick(0, 0);
    }
    return hits;
}

} // namespace qdom
