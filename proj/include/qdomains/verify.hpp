#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "fluxes.hpp"
#include "quadrature.hpp"

namespace qdom {

// Numeric integral of a polynomial density over the image of the unit disk:
// pullback to polar coordinates, Gauss-Legendre radially, trapezoid in angle
// (spectrally exact for the trigonometric-polynomial integrand). Resolution is
// doubled until the value settles to 1e-10 relative.
inline Cplx integrate_poly_over_domain(const ConformalMap& map, const Poly2& F,
                                       int resolution = 16) {
    if (resolution < 2) throw ValidationError("resolution must be at least 2");
    Cplx prev = 0;
    bool have_prev = false;
    for (int nr = resolution; nr <= 8192; nr *= 2) {
        GaussRule rad = gauss_legendre(nr, 0.0, 1.0);
        int na = 2 * nr;
        Cplx acc = 0;
        for (int i = 0; i < nr; ++i) {
            double rho = rad.nodes[i];
            Cplx ring = 0;
            for (int j = 0; j < na; ++j) {
                double t = 2.0 * M_PI * j / na;
                Cplx w = rho * Cplx(std::cos(t), std::sin(t));
                Cplx zp = map.eval_deriv(w);
                ring += F.eval(map.eval(w)) * std::norm(zp);
            }
            acc += rad.weights[i] * rho * ring * (2.0 * M_PI / na);
        }
        if (have_prev && std::abs(acc - prev) <= 1e-10 * (1.0 + std::abs(acc))) return acc;
        prev = acc;
        have_prev = true;
    }
    throw NoConvergence("domain quadrature did not settle under refinement");
}

// Integral over Omega of T[f] for an analytic polynomial f.
inline Cplx integrate_solution(const ConformalMap& map, const IntertwinerBundle& bundle,
                               const Poly2& f, int resolution = 16) {
    return integrate_poly_over_domain(map, bundle.T.apply(f), resolution);
}

struct IdentityReport {
    std::vector<double> rel_errors; // interleaved: p, then conjugate, p = 0..B
    double max_rel_error = 0;
    bool pass(double tol) const { return max_rel_error <= tol; }
};

// Checks integral of phi over Omega == pi (Q phi(z1) + sum Q_j dz^j phi + conj(Q_j) dzbar^j phi)
// for phi = T[(z-z1)^p], p = 0..B, and their conjugates.
inline IdentityReport verify_identity(const ConformalMap& map, const IntertwinerBundle& bundle,
                                      const FluxVector& fx, int B, int resolution = 16) {
    IdentityReport rep;
    GaussRat z1 = map.z1, zb1 = z1.conj();
    int K = static_cast<int>(fx.Qj.size());
    Poly2 zshift = Poly2::z() - Poly2(z1);
    Poly2 fpow(GaussRat(1));
    for (int p = 0; p <= B; ++p) {
        if (p > 0) fpow *= zshift;
        Poly2 base = bundle.T.apply(fpow);
        for (int side = 0; side < 2; ++side) {
            Poly2 phi = side ? base.conjugate() : base;
            Cplx lhs = integrate_poly_over_domain(map, phi, resolution);
            GaussRat rhs_ex = GaussRat(fx.Q) * phi.eval(z1, zb1);
            Poly2 dzj = phi, dzbj = phi;
            for (int j = 1; j <= K; ++j) {
                dzj = dzj.d_z();
                dzbj = dzbj.d_zbar();
                rhs_ex += fx.Qj[j - 1] * dzj.eval(z1, zb1);
                rhs_ex += fx.Qj[j - 1].conj() * dzbj.eval(z1, zb1);
            }
            Cplx rhs = M_PI * rhs_ex.to_complex();
            double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
            rep.rel_errors.push_back(rel);
            rep.max_rel_error = std::max(rep.max_rel_error, rel);
        }
    }
    return rep;
}

// Exact polynomial in d real variables over the rationals.
class PolyND {
public:
    using Exp = std::vector<int>;
    using Terms = std::map<Exp, Rat>;

    explicit PolyND(int dim = 1) : dim_(dim) {}
    static PolyND constant(int dim, const Rat& c) {
        PolyND p(dim);
        p.add_term(Exp(dim, 0), c);
        return p;
    }
    static PolyND variable(int dim, int i, const Rat& c = Rat(1)) {
        PolyND p(dim);
        Exp e(dim, 0);
        e[i] = 1;
        p.add_term(e, c);
        return p;
    }

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const {
        int d = 0;
        for (auto& [e, c] : terms_) {
            int s = 0;
            for (int v : e) s += v;
            d = std::max(d, s);
        }
        return d;
    }

    void add_term(const Exp& e, const Rat& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend PolyND operator+(const PolyND& a, const PolyND& b) {
        PolyND r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend PolyND operator-(const PolyND& a, const PolyND& b) {
        PolyND r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend PolyND operator*(const PolyND& a, const PolyND& b) {
        PolyND r(a.dim_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                Exp e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend PolyND operator*(const PolyND& a, const Rat& s) {
        PolyND r(a.dim_);
        if (s == 0) return r;
        for (auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    PolyND derivative(int i) const {
        PolyND r(dim_);
        for (auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exp e2 = e;
            --e2[i];
            r.terms_.emplace(e2, c * e[i]);
        }
        return r;
    }
    PolyND laplacian() const {
        PolyND r(dim_);
        for (int i = 0; i < dim_; ++i) r = r + derivative(i).derivative(i);
        return r;
    }

    double eval(const std::vector<double>& xi) const {
        double acc = 0;
        for (auto& [e, c] : terms_) {
            double t = to_double(c);
            for (int i = 0; i < dim_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= xi[i];
            acc += t;
        }
        return acc;
    }

private:
    int dim_;
    Terms terms_;
};

namespace detail {

inline void monomials_of_degree(int dim, int deg, std::vector<int>& cur,
                                std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == dim - 1) {
        cur.push_back(deg);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= deg; ++k) {
        cur.push_back(k);
        monomials_of_degree(dim, deg - k, cur, out);
        cur.pop_back();
    }
}

// Exact rational nullspace basis of a rows x cols matrix.
inline std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>> A, int cols) {
    int rows = static_cast<int>(A.size());
    std::vector<int> pivot_of_col(cols, -1);
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = rank;
        while (piv < rows && A[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[rank]);
        Rat inv = Rat(1) / A[rank][c];
        for (int j = c; j < cols; ++j) A[rank][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == rank || A[i][c] == 0) continue;
            Rat f = A[i][c];
            for (int j = c; j < cols; ++j) A[i][j] -= f * A[rank][j];
        }
        pivot_of_col[c] = rank;
        ++rank;
    }
    std::vector<std::vector<Rat>> basis;
    for (int c = 0; c < cols; ++c) {
        if (pivot_of_col[c] != -1) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[c] = 1;
        for (int j = 0; j < cols; ++j)
            if (pivot_of_col[j] != -1) v[j] = -A[pivot_of_col[j]][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace detail

// Basis of homogeneous harmonic polynomials of the given degree, exact.
inline std::vector<PolyND> harmonic_basis(int dim, int degree) {
    std::vector<std::vector<int>> mono, target;
    std::vector<int> cur;
    detail::monomials_of_degree(dim, degree, cur, mono);
    if (degree >= 2) detail::monomials_of_degree(dim, degree - 2, cur, target);
    std::map<std::vector<int>, int> target_index;
    for (size_t i = 0; i < target.size(); ++i) target_index[target[i]] = static_cast<int>(i);

    int cols = static_cast<int>(mono.size());
    std::vector<std::vector<Rat>> A(target.size(), std::vector<Rat>(cols, Rat(0)));
    for (int c = 0; c < cols; ++c) {
        PolyND m(dim);
        m.add_term(mono[c], Rat(1));
        PolyND lap = m.laplacian();
        for (auto& [e, co] : lap.terms()) A[target_index.at(e)][c] = co;
    }
    std::vector<PolyND> basis;
    for (auto& v : detail::nullspace(std::move(A), cols)) {
        PolyND h(dim);
        for (int c = 0; c < cols; ++c) h.add_term(mono[c], v[c]);
        basis.push_back(std::move(h));
    }
    return basis;
}

struct BallSpec {
    int d = 3;
    double r = 1.0;
    std::vector<double> center; // center[0] must be nonzero
};

struct BallReport {
    double lhs = 0, rhs = 0;
    double rel_error = 0;
    bool harmonic = false;
};

// Quadrature identity on the d-ball (d = 2, 3) for phi = (xi_1 d/dxi_1 - 1)[h],
// h harmonic: integral over the ball equals v_d (phi + r^2/((d+2) xi_1) d phi/dxi_1)
// at the center.
inline BallReport ball_identity_check(const BallSpec& spec, const PolyND& h) {
    if (spec.d != 2 && spec.d != 3)
        throw ValidationError("ball identity check supports d = 2 and d = 3");
    if (h.dim() != spec.d) throw ValidationError("polynomial dimension mismatch");
    if (static_cast<int>(spec.center.size()) != spec.d)
        throw ValidationError("center dimension mismatch");
    if (spec.center[0] == 0.0) throw ValidationError("center must be off the mirror hyperplane");
    if (!(spec.r > 0)) throw ValidationError("radius must be positive");

    BallReport rep;
    rep.harmonic = h.laplacian().is_zero();
    if (!rep.harmonic) throw ValidationError("input polynomial is not harmonic");

    PolyND phi = PolyND::variable(spec.d, 0) * h.derivative(0) - h;

    int deg = std::max(phi.degree(), 1);
    int nr = deg + 4, nt = deg + 4, na = 4 * (deg + 2);
    GaussRule rad = gauss_legendre(nr, 0.0, spec.r);
    double lhs = 0;
    std::vector<double> xi(spec.d);
    if (spec.d == 2) {
        for (int i = 0; i < nr; ++i) {
            double rho = rad.nodes[i];
            double ring = 0;
            for (int j = 0; j < na; ++j) {
                double t = 2.0 * M_PI * j / na;
                xi[0] = spec.center[0] + rho * std::cos(t);
                xi[1] = spec.center[1] + rho * std::sin(t);
                ring += phi.eval(xi);
            }
            lhs += rad.weights[i] * rho * ring * (2.0 * M_PI / na);
        }
    } else {
        GaussRule pol = gauss_legendre(nt, -1.0, 1.0); // t = cos(polar angle)
        for (int i = 0; i < nr; ++i) {
            double rho = rad.nodes[i];
            double shell = 0;
            for (int k = 0; k < nt; ++k) {
                double t = pol.nodes[k];
                double s = std::sqrt(std::max(0.0, 1.0 - t * t));
                double ring = 0;
                for (int j = 0; j < na; ++j) {
                    double tau = 2.0 * M_PI * j / na;
                    xi[0] = spec.center[0] + rho * t;
                    xi[1] = spec.center[1] + rho * s * std::cos(tau);
                    xi[2] = spec.center[2] + rho * s * std::sin(tau);
                    ring += phi.eval(xi);
                }
                shell += pol.weights[k] * ring * (2.0 * M_PI / na);
            }
            lhs += rad.weights[i] * rho * rho * shell;
        }
    }

    double vd = spec.d == 2 ? M_PI * spec.r * spec.r
                            : 4.0 / 3.0 * M_PI * spec.r * spec.r * spec.r;
    double rhs = vd * (phi.eval(spec.center) +
                       spec.r * spec.r / ((spec.d + 2) * spec.center[0]) *
                           phi.derivative(0).eval(spec.center));
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.rel_error = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    return rep;
}

} // namespace qdom
