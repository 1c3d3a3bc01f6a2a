#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "rational.hpp"

namespace qdom {

using Cplx = std::complex<double>;

// Polynomial conformal map z(w) = z1 + r w + sum u_i w^{i+1} from |w| < 1,
// with exact rational parameters. r is kept real positive; this fixes the
// residual rotational gauge.
struct ConformalMap {
    GaussRat z1;
    Rat r{1};
    std::vector<GaussRat> u;

    int ktilde() const { return static_cast<int>(u.size()); }

    LaurentPoly z_laurent() const {
        LaurentPoly Z(z1);
        Z.add_term(1, GaussRat(r));
        for (size_t i = 0; i < u.size(); ++i) Z.add_term(static_cast<int>(i) + 2, u[i]);
        return Z;
    }
    // zbar(1/w): coefficient-conjugated map evaluated at 1/w
    LaurentPoly zbar_inv_laurent() const {
        LaurentPoly Z(z1.conj());
        Z.add_term(-1, GaussRat(r));
        for (size_t i = 0; i < u.size(); ++i) Z.add_term(-(static_cast<int>(i) + 2), u[i].conj());
        return Z;
    }
    LaurentPoly zprime_laurent() const {
        LaurentPoly Z{GaussRat(r)};
        for (size_t i = 0; i < u.size(); ++i)
            Z.add_term(static_cast<int>(i) + 1, u[i] * GaussRat(static_cast<int>(i) + 2));
        return Z;
    }

    Cplx eval(Cplx w) const {
        Cplx acc = z1.to_complex() + to_double(r) * w;
        Cplx wp = w;
        for (auto& ui : u) {
            wp *= w;
            acc += ui.to_complex() * wp;
        }
        return acc;
    }
    Cplx eval_deriv(Cplx w) const {
        Cplx acc = to_double(r);
        Cplx wp = 1.0;
        for (size_t i = 0; i < u.size(); ++i) {
            wp *= w;
            acc += u[i].to_complex() * double(i + 2) * wp;
        }
        return acc;
    }
};

inline std::vector<Cplx> boundary_points(const ConformalMap& map, int N) {
    if (N < 3) throw ValidationError("boundary sampling requires N >= 3");
    std::vector<Cplx> pts(N);
    for (int k = 0; k < N; ++k) {
        double t = 2.0 * M_PI * k / N;
        pts[k] = map.eval(Cplx(std::cos(t), std::sin(t)));
    }
    return pts;
}

// M_p / pi, exact: res_{w=0}[ zbar(1/w) (z(w)-z1)^p z'(w) ].
inline std::vector<GaussRat> moments_over_pi(const ConformalMap& map, int pmax) {
    LaurentPoly zb = map.zbar_inv_laurent();
    LaurentPoly zp = map.zprime_laurent();
    LaurentPoly dz = map.z_laurent();
    dz.add_term(0, -map.z1);
    std::vector<GaussRat> M(pmax + 1);
    LaurentPoly pw(GaussRat(1));
    for (int p = 0; p <= pmax; ++p) {
        M[p] = (zb * pw * zp).residue();
        pw *= dz;
    }
    return M;
}

// M_p = integral over Omega of (z - z1)^p dxdy, as complex doubles.
inline std::vector<Cplx> moments(const ConformalMap& map, int pmax) {
    auto ex = moments_over_pi(map, pmax);
    std::vector<Cplx> M(ex.size());
    for (size_t i = 0; i < ex.size(); ++i) M[i] = M_PI * ex[i].to_complex();
    return M;
}

struct UnivalenceResult {
    bool pass = false;
    double root_margin = 0;      // min |root of z'| - 1
    double min_boundary_deriv = 0;
    bool self_intersects = false;
};

namespace detail {

inline bool segments_properly_intersect(Cplx a, Cplx b, Cplx c, Cplx d) {
    auto cross = [](Cplx p, Cplx q) { return p.real() * q.imag() - p.imag() * q.real(); };
    double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

inline bool boundary_self_intersects(const std::vector<Cplx>& pts) {
    int N = static_cast<int>(pts.size());
    for (int i = 0; i < N; ++i) {
        Cplx a = pts[i], b = pts[(i + 1) % N];
        for (int j = i + 2; j < N; ++j) {
            if (i == 0 && j == N - 1) continue; // adjacent around the seam
            if (segments_properly_intersect(a, b, pts[j], pts[(j + 1) % N])) return true;
        }
    }
    return false;
}

} // namespace detail

// Univalence certificate: all roots of z'(w) at |w| >= 1 + 1e-9 (companion
// matrix eigenvalues), min |z'| on the boundary grid >= 1e-6, and no segment
// self-intersection among N = 2048 boundary samples.
inline UnivalenceResult univalence_check(const ConformalMap& map) {
    UnivalenceResult res;
    res.root_margin = 1e300;
    int k = map.ktilde();
    if (k > 0) {
        // z'(w) = r + sum (i+2) u_i w^{i+1}, degree k
        std::vector<Cplx> c(k + 1);
        c[0] = to_double(map.r);
        for (int i = 0; i < k; ++i) c[i + 1] = map.u[i].to_complex() * double(i + 2);
        while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
        int deg = static_cast<int>(c.size()) - 1;
        if (deg >= 1) {
            Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
            for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
            for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
            for (int i = 0; i < deg; ++i)
                res.root_margin = std::min(res.root_margin, std::abs(es.eigenvalues()[i]) - 1.0);
        }
    }
    const int N = 2048;
    res.min_boundary_deriv = 1e300;
    auto pts = boundary_points(map, N);
    for (int i = 0; i < N; ++i) {
        double t = 2.0 * M_PI * i / N;
        res.min_boundary_deriv =
            std::min(res.min_boundary_deriv, std::abs(map.eval_deriv(Cplx(std::cos(t), std::sin(t)))));
    }
    res.self_intersects = detail::boundary_self_intersects(pts);
    res.pass = res.root_margin >= 1e-9 && res.min_boundary_deriv >= 1e-6 && !res.self_intersects;
    return res;
}

namespace detail {

using LaurentD = std::map<int, Cplx>;

inline LaurentD lmul(const LaurentD& a, const LaurentD& b) {
    LaurentD r;
    for (auto& [ka, ca] : a)
        for (auto& [kb, cb] : b) r[ka + kb] += ca * cb;
    return r;
}
inline Cplx lres(const LaurentD& a) {
    auto it = a.find(-1);
    return it == a.end() ? Cplx(0) : it->second;
}

} // namespace detail

// Newton inversion of the moment map: finds (r, u) with moments/pi matching
// targets_over_pi, z1 fixed. The Jacobian is assembled from exact residue
// derivative formulas evaluated in floating point.
inline ConformalMap solve_map_from_moments(const std::vector<Cplx>& targets_over_pi,
                                           const ConformalMap& guess,
                                           double rationalize_tol = 1e-13) {
    using detail::LaurentD;
    int kt = static_cast<int>(targets_over_pi.size()) - 1;
    if (kt < 0) throw ValidationError("empty moment target vector");
    if (!(targets_over_pi[0].real() > 0))
        throw ValidationError("target area M0 must be positive");

    int nx = 1 + 2 * kt;
    Eigen::VectorXd x(nx);
    x[0] = to_double(guess.r);
    if (x[0] <= 0) x[0] = std::sqrt(targets_over_pi[0].real());
    for (int i = 0; i < kt; ++i) {
        Cplx ui = i < guess.ktilde() ? guess.u[i].to_complex() : Cplx(0);
        x[1 + 2 * i] = ui.real();
        x[2 + 2 * i] = ui.imag();
    }
    Cplx z1 = guess.z1.to_complex();

    double scale = 1.0;
    for (auto& t : targets_over_pi) scale = std::max(scale, std::abs(t));
    const double tol = 1e-12 * scale;

    for (int iter = 0; iter < 50; ++iter) {
        double r = x[0];
        if (!(r > 0)) throw NoConvergence("conformal radius left the positive half line");
        std::vector<Cplx> u(kt);
        for (int i = 0; i < kt; ++i) u[i] = Cplx(x[1 + 2 * i], x[2 + 2 * i]);

        LaurentD Z{{1, r}}, Zb{{-1, r}}, Zp{{0, r}};
        Z[0] = z1;
        Zb[0] = std::conj(z1);
        for (int i = 0; i < kt; ++i) {
            Z[i + 2] = u[i];
            Zb[-(i + 2)] = std::conj(u[i]);
            Zp[i + 1] = double(i + 2) * u[i];
        }
        LaurentD dz = Z;
        dz[0] -= z1;

        // powers of (z - z1) up to kt
        std::vector<LaurentD> dzp(kt + 1);
        dzp[0] = LaurentD{{0, Cplx(1)}};
        for (int p = 1; p <= kt; ++p) dzp[p] = detail::lmul(dzp[p - 1], dz);

        std::vector<Cplx> F(kt + 1);
        for (int p = 0; p <= kt; ++p)
            F[p] = detail::lres(detail::lmul(Zb, detail::lmul(dzp[p], Zp)));

        Eigen::VectorXd Fv(nx);
        Fv[0] = F[0].real() - targets_over_pi[0].real();
        for (int p = 1; p <= kt; ++p) {
            Fv[2 * p - 1] = F[p].real() - targets_over_pi[p].real();
            Fv[2 * p] = F[p].imag() - targets_over_pi[p].imag();
        }
        if (Fv.norm() <= tol) {
            ConformalMap out;
            out.z1 = guess.z1;
            out.r = rationalize(r, rationalize_tol);
            out.u.resize(kt);
            for (int i = 0; i < kt; ++i)
                out.u[i] = gauss_from_doubles(u[i].real(), u[i].imag(), rationalize_tol);
            auto uv = univalence_check(out);
            if (!uv.pass) throw NonUnivalent("moment inversion produced a non-univalent map");
            return out;
        }

        // Jacobian via Wirtinger residue derivatives
        Eigen::MatrixXd J(nx, nx);
        for (int p = 0; p <= kt; ++p) {
            LaurentD pref = p > 0 ? detail::lmul(dzp[p - 1], Zp) : LaurentD{};
            // d/dr: dZ/dr = w, dZb/dr = w^-1, dZp/dr = 1
            Cplx dr = detail::lres(detail::lmul(LaurentD{{-1, Cplx(1)}}, detail::lmul(dzp[p], Zp)));
            if (p > 0) dr += double(p) * detail::lres(detail::lmul(Zb, detail::lmul(pref, LaurentD{{1, Cplx(1)}})));
            dr += detail::lres(detail::lmul(Zb, dzp[p]));
            std::vector<Cplx> du(kt), dub(kt);
            for (int i = 0; i < kt; ++i) {
                Cplx a(0);
                if (p > 0)
                    a += double(p) * detail::lres(detail::lmul(Zb, detail::lmul(pref, LaurentD{{i + 2, Cplx(1)}})));
                a += double(i + 2) * detail::lres(detail::lmul(Zb, detail::lmul(dzp[p], LaurentD{{i + 1, Cplx(1)}})));
                du[i] = a;
                dub[i] = detail::lres(detail::lmul(LaurentD{{-(i + 2), Cplx(1)}}, detail::lmul(dzp[p], Zp)));
            }
            auto fill = [&](int row, bool imag_part) {
                auto part = [&](Cplx v) { return imag_part ? v.imag() : v.real(); };
                J(row, 0) = part(dr);
                for (int i = 0; i < kt; ++i) {
                    J(row, 1 + 2 * i) = part(du[i] + dub[i]);
                    J(row, 2 + 2 * i) = part(Cplx(0, 1) * (du[i] - dub[i]));
                }
            };
            if (p == 0) fill(0, false);
            else {
                fill(2 * p - 1, false);
                fill(2 * p, true);
            }
        }
        Eigen::VectorXd step = J.partialPivLu().solve(Fv);
        if (!step.allFinite()) throw NoConvergence("singular Jacobian in moment inversion");
        x -= step;
    }
    throw NoConvergence("moment inversion exceeded 50 Newton iterations");
}

inline ConformalMap disk_guess(const GaussRat& z1, double area_over_pi, int ktilde) {
    ConformalMap m;
    m.z1 = z1;
    m.r = rationalize(std::sqrt(std::max(area_over_pi, 1e-30)));
    m.u.assign(ktilde, GaussRat(0));
    return m;
}

} // namespace qdom
