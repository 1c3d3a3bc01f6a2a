#pragma once

#include <vector>

#include "conformal.hpp"
#include "diffop.hpp"
#include "intertwine.hpp"

namespace qdom {

// Number of multipole coefficients Q_j for a medium with deg(zeta) = dz and a
// degree-(ktilde+1) map; the matching truncation index for the functionals V_p.
inline int flux_count(int ktilde, int deg_zeta) { return (ktilde + 1) * (deg_zeta + 1) - 1; }
inline int functional_limit(int ktilde, int deg_zeta) { return (ktilde + 2) * (deg_zeta + 1) - 2; }

// V_p = (1/pi p!) * integral over Omega of T[(z-z1)^p] dxdy, exact.
struct QuadratureFunctional {
    std::vector<GaussRat> V; // index p = 0..P
};

// U_p as exact affine forms in the unknowns; column order Q, Qbar, Q_1..Q_K, Qbar_1..Qbar_K.
struct FluxLinearForms {
    int K = 0;
    std::vector<std::vector<GaussRat>> U;
    int cols() const { return 2 * K + 2; }
};

struct FluxVector {
    Rat Q{0};
    std::vector<GaussRat> Qj;
};

struct FluxSolveReport {
    FluxVector fluxes;
    std::vector<GaussRat> residuals;         // equations p = 0..P
    std::vector<GaussRat> residuals_conj;    // conjugate family
    std::vector<GaussRat> dropped_residuals; // the p < drop entries, for convenience
    bool all_zero = true;
    bool q_real = true;
    bool conjugate_consistent = true; // Qbar_j == conj(Q_j) in the solution
};

namespace detail {

inline LaurentPoly substitute_boundary(const Poly2& p, const std::vector<LaurentPoly>& zpow,
                                       const std::vector<LaurentPoly>& zbpow) {
    LaurentPoly out;
    for (auto& [e, c] : p.terms()) out += (zpow[e.a] * zbpow[e.b]) * c;
    return out;
}

} // namespace detail

// Contour-residue assembly of the left-hand functionals: with T[f] = sum_a B_a f^{(a)}
// and G_a the zbar-antiderivative of B_a,
// V_p = (1/p!) res_{w=0}[ sum_a G_a(z(w), zbar(1/w)) d^a/dz^a (z-z1)^p |_{z=z(w)} z'(w) ].
inline QuadratureFunctional lhs_functionals(const IntertwinerBundle& bundle, const ConformalMap& map,
                                            int pmax) {
    auto B = apply_to_analytic(bundle.T);
    int n = static_cast<int>(B.size()) - 1;
    std::vector<Poly2> G(n + 1);
    int max_a = 0, max_b = 0;
    for (int a = 0; a <= n; ++a) {
        G[a] = B[a].antiderivative_zbar();
        max_a = std::max(max_a, G[a].deg_z());
        max_b = std::max(max_b, G[a].deg_zbar());
    }
    LaurentPoly Z = map.z_laurent(), Zb = map.zbar_inv_laurent(), Zp = map.zprime_laurent();
    std::vector<LaurentPoly> zpow(max_a + 1), zbpow(max_b + 1);
    zpow[0] = LaurentPoly(GaussRat(1));
    zbpow[0] = LaurentPoly(GaussRat(1));
    for (int i = 1; i <= max_a; ++i) zpow[i] = zpow[i - 1] * Z;
    for (int i = 1; i <= max_b; ++i) zbpow[i] = zbpow[i - 1] * Zb;

    std::vector<LaurentPoly> Gsub(n + 1);
    for (int a = 0; a <= n; ++a) Gsub[a] = detail::substitute_boundary(G[a], zpow, zbpow);

    LaurentPoly dz = Z;
    dz.add_term(0, -map.z1);
    std::vector<LaurentPoly> dzp(pmax + 1);
    dzp[0] = LaurentPoly(GaussRat(1));
    for (int q = 1; q <= pmax; ++q) dzp[q] = dzp[q - 1] * dz;

    QuadratureFunctional out;
    out.V.resize(pmax + 1);
    for (int p = 0; p <= pmax; ++p) {
        GaussRat acc;
        for (int a = 0; a <= std::min(n, p); ++a) {
            // (1/p!) * d^a/dz^a (z-z1)^p contributes 1/(p-a)! * (z-z1)^{p-a}
            Rat fact(1);
            for (int i = 2; i <= p - a; ++i) fact *= i;
            acc += GaussRat(Rat(1) / fact) * (Gsub[a] * dzp[p - a] * Zp).residue();
        }
        out.V[p] = acc;
    }
    return out;
}

// U_p = (1/p!) Qhat[T[(z-z1)^p]](z1, zbar1) as exact affine forms in the unknowns.
inline FluxLinearForms rhs_forms(const IntertwinerBundle& bundle, const GaussRat& z1, int K,
                                 int pmax) {
    GaussRat zb1 = z1.conj();
    if (bundle.zeta.eval(z1, zb1).is_zero())
        throw SourceOnMirror("source sits on the singular locus of the permeability");
    FluxLinearForms out;
    out.K = K;
    out.U.resize(pmax + 1);
    Poly2 zshift = Poly2::z() - Poly2(z1);
    Poly2 fpow(GaussRat(1));
    Rat fact(1);
    for (int p = 0; p <= pmax; ++p) {
        if (p > 0) {
            fpow *= zshift;
            fact *= p;
        }
        Poly2 phi = bundle.T.apply(fpow);
        std::vector<GaussRat> row(2 * K + 2);
        GaussRat invfact(Rat(1) / fact);
        row[0] = phi.eval(z1, zb1) * invfact; // Q column
        Poly2 dzj = phi, dzbj = phi;
        for (int j = 1; j <= K; ++j) {
            dzj = dzj.d_z();
            dzbj = dzbj.d_zbar();
            row[1 + j] = dzj.eval(z1, zb1) * invfact;         // Q_j
            row[1 + K + j] = dzbj.eval(z1, zb1) * invfact;    // Qbar_j
        }
        out.U[p] = std::move(row);
    }
    return out;
}

namespace detail {

// Exact Gauss-Jordan solve of a possibly overdetermined system A x = b over the
// Gaussian rationals. Throws SingularSystem on rank deficiency or inconsistency.
inline std::vector<GaussRat> solve_exact(std::vector<std::vector<GaussRat>> A,
                                         std::vector<GaussRat> b) {
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && A[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[rank]);
        std::swap(b[piv], b[rank]);
        GaussRat inv = GaussRat(1) / A[rank][c];
        for (size_t j = c; j < cols; ++j) A[rank][j] *= inv;
        b[rank] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || A[i][c].is_zero()) continue;
            GaussRat f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    if (rank < cols) throw SingularSystem("flux system is rank deficient");
    for (size_t i = rank; i < rows; ++i)
        if (!b[i].is_zero()) throw SingularSystem("flux system is inconsistent");
    std::vector<GaussRat> x(cols);
    for (size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
    return x;
}

} // namespace detail

// Solves the square/overdetermined subsystem p = drop..P (with conjugates) exactly,
// then evaluates the residuals of every equation p = 0..P including the dropped ones.
inline FluxSolveReport solve_fluxes(const QuadratureFunctional& V, const FluxLinearForms& forms,
                                    int drop) {
    int P = static_cast<int>(V.V.size()) - 1;
    int K = forms.K;
    int cols = forms.cols();
    std::vector<std::vector<GaussRat>> A;
    std::vector<GaussRat> rhs;
    auto conj_row = [&](const std::vector<GaussRat>& row) {
        std::vector<GaussRat> c(cols);
        c[0] = row[1].conj();
        c[1] = row[0].conj();
        for (int j = 1; j <= K; ++j) {
            c[1 + j] = row[1 + K + j].conj();
            c[1 + K + j] = row[1 + j].conj();
        }
        return c;
    };
    for (int p = drop; p <= P; ++p) {
        A.push_back(forms.U[p]);
        rhs.push_back(V.V[p]);
        A.push_back(conj_row(forms.U[p]));
        rhs.push_back(V.V[p].conj());
    }
    std::vector<GaussRat> x = detail::solve_exact(std::move(A), std::move(rhs));

    FluxSolveReport rep;
    auto eval_row = [&](const std::vector<GaussRat>& row) {
        GaussRat acc;
        for (int j = 0; j < cols; ++j) acc += row[j] * x[j];
        return acc;
    };
    rep.residuals.resize(P + 1);
    rep.residuals_conj.resize(P + 1);
    for (int p = 0; p <= P; ++p) {
        rep.residuals[p] = eval_row(forms.U[p]) - V.V[p];
        rep.residuals_conj[p] = eval_row(conj_row(forms.U[p])) - V.V[p].conj();
        if (!rep.residuals[p].is_zero() || !rep.residuals_conj[p].is_zero()) rep.all_zero = false;
        if (p < drop) {
            rep.dropped_residuals.push_back(rep.residuals[p]);
            rep.dropped_residuals.push_back(rep.residuals_conj[p]);
        }
    }
    rep.q_real = x[0].is_real() && x[1] == x[0];
    rep.conjugate_consistent = rep.q_real;
    for (int j = 1; j <= K; ++j)
        if (x[1 + K + j] != x[1 + j].conj()) rep.conjugate_consistent = false;
    rep.fluxes.Q = x[0].re;
    rep.fluxes.Qj.assign(x.begin() + 2, x.begin() + 2 + K);
    return rep;
}

// One-call pipeline: bundle + map -> exact flux solution with residual report.
inline FluxSolveReport fluxes_for_map(const IntertwinerBundle& bundle, const ConformalMap& map) {
    int dz = bundle.zeta.degree();
    int kt = map.ktilde();
    int P = functional_limit(kt, dz);
    int K = flux_count(kt, dz);
    auto V = lhs_functionals(bundle, map, P);
    auto U = rhs_forms(bundle, map.z1, K, P);
    return solve_fluxes(V, U, bundle.T.order());
}

// Main-result correspondence: homogeneous fluxes (Qt, Qt_j) -> domain -> fluxes of
// the non-homogeneous medium. Q equals the homogeneous total flux.
struct EquivalentFluxes {
    ConformalMap map;
    FluxSolveReport report;
};

inline EquivalentFluxes equivalent_fluxes(const Rat& Q_homog, const std::vector<GaussRat>& Qj_homog,
                                          const GaussRat& z1, const IntertwinerBundle& bundle) {
    if (Q_homog <= 0) throw ValidationError("homogeneous flux must be positive");
    int kt = static_cast<int>(Qj_homog.size());
    std::vector<Cplx> targets(kt + 1);
    targets[0] = to_double(Q_homog);
    Rat fact(1);
    for (int p = 1; p <= kt; ++p) {
        fact *= p;
        targets[p] = (GaussRat(fact) * Qj_homog[p - 1]).to_complex();
    }
    ConformalMap guess = disk_guess(z1, targets[0].real(), kt);
    ConformalMap map = solve_map_from_moments(targets, guess);
    EquivalentFluxes out{map, fluxes_for_map(bundle, map)};
    return out;
}

} // namespace qdom
