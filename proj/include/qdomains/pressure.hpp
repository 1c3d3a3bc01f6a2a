#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qdom {

// Exact polynomial in the plane coordinates (x, y) over the rationals.
class PolyXY {
public:
    using Terms = std::map<std::pair<int, int>, Rat>;

    PolyXY() = default;
    explicit PolyXY(Rat c) { add_term(0, 0, std::move(c)); }
    static PolyXY mono(int i, int j, Rat c = Rat(1)) {
        PolyXY p;
        p.add_term(i, j, std::move(c));
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(int i, int j, const Rat& c) {
        auto key = std::make_pair(i, j);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend PolyXY operator+(const PolyXY& a, const PolyXY& b) {
        PolyXY r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e.first, e.second, c);
        return r;
    }
    friend PolyXY operator-(const PolyXY& a, const PolyXY& b) {
        PolyXY r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e.first, e.second, -c);
        return r;
    }
    friend PolyXY operator*(const PolyXY& a, const PolyXY& b) {
        PolyXY r;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_)
                r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
        return r;
    }
    friend PolyXY operator*(const PolyXY& a, const Rat& s) {
        PolyXY r;
        if (s == 0) return r;
        for (auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    PolyXY dx() const {
        PolyXY r;
        for (auto& [e, c] : terms_)
            if (e.first > 0) r.terms_.emplace(std::make_pair(e.first - 1, e.second), c * e.first);
        return r;
    }
    PolyXY dy() const {
        PolyXY r;
        for (auto& [e, c] : terms_)
            if (e.second > 0) r.terms_.emplace(std::make_pair(e.first, e.second - 1), c * e.second);
        return r;
    }

    double eval(double x, double y) const {
        double acc = 0;
        for (auto& [e, c] : terms_) {
            double t = to_double(c);
            for (int k = 0; k < e.first; ++k) t *= x;
            for (int k = 0; k < e.second; ++k) t *= y;
            acc += t;
        }
        return acc;
    }

private:
    Terms terms_;
};

// P = rho^{-2m} (N + L log(rho) + C lam) with rho^2 = (x-x1)^2 + (y-y1)^2 and
// lam = log(r) kept as an opaque symbol. Closed under d/dx and d/dy, so the PDE
// residual can be asserted as the exact zero polynomial componentwise.
struct PressureExpr {
    Rat x1, y1, r, rdot;
    int m = 0;
    PolyXY N, L, C;

    PolyXY rho2() const {
        PolyXY X = PolyXY::mono(1, 0) - PolyXY(x1);
        PolyXY Y = PolyXY::mono(0, 1) - PolyXY(y1);
        return X * X + Y * Y;
    }

    PressureExpr raised(int target_m) const {
        PressureExpr out = *this;
        PolyXY r2 = rho2();
        while (out.m < target_m) {
            out.N = out.N * r2;
            out.L = out.L * r2;
            out.C = out.C * r2;
            ++out.m;
        }
        return out;
    }

    friend PressureExpr operator+(const PressureExpr& a, const PressureExpr& b) {
        int mm = std::max(a.m, b.m);
        PressureExpr A = a.raised(mm), B = b.raised(mm);
        A.N = A.N + B.N;
        A.L = A.L + B.L;
        A.C = A.C + B.C;
        return A;
    }
    friend PressureExpr operator-(const PressureExpr& a, const PressureExpr& b) {
        return a + (b * Rat(-1));
    }
    friend PressureExpr operator*(const PressureExpr& a, const Rat& s) {
        PressureExpr r = a;
        r.N = r.N * s;
        r.L = r.L * s;
        r.C = r.C * s;
        return r;
    }
    friend PressureExpr operator*(const PressureExpr& a, const PolyXY& p) {
        PressureExpr r = a;
        r.N = r.N * p;
        r.L = r.L * p;
        r.C = r.C * p;
        return r;
    }

    // d/dx and d/dy in the extended ring: d log(rho) = (x-x1)/rho^2 etc.
    PressureExpr dx() const {
        PolyXY X = PolyXY::mono(1, 0) - PolyXY(x1);
        PolyXY r2 = rho2();
        PressureExpr out = *this;
        out.m = m + 1;
        Rat tm(-2 * m);
        out.N = N.dx() * r2 + X * N * tm + X * L;
        out.L = L.dx() * r2 + X * L * tm;
        out.C = C.dx() * r2 + X * C * tm;
        return out;
    }
    PressureExpr dy() const {
        PolyXY Y = PolyXY::mono(0, 1) - PolyXY(y1);
        PolyXY r2 = rho2();
        PressureExpr out = *this;
        out.m = m + 1;
        Rat tm(-2 * m);
        out.N = N.dy() * r2 + Y * N * tm + Y * L;
        out.L = L.dy() * r2 + Y * L * tm;
        out.C = C.dy() * r2 + Y * C * tm;
        return out;
    }

    bool is_zero_expr() const { return N.is_zero() && L.is_zero() && C.is_zero(); }

    double eval(double x, double y) const {
        double X = x - to_double(x1), Y = y - to_double(y1);
        double r2 = X * X + Y * Y;
        double val = N.eval(x, y) + 0.5 * std::log(r2) * L.eval(x, y) +
                     std::log(to_double(r)) * C.eval(x, y);
        for (int k = 0; k < m; ++k) val /= r2;
        return val;
    }
};

// Pressure of the growing disk, boundary rho = r around z1 = x1 + i y1, in the
// medium with permeability 1/x^2. Normalized so the kinematic law
// dr/dt = -(1/x^2) dP/dn holds on the boundary.
inline PressureExpr pressure_disk(const Rat& r, const Rat& rdot, const Rat& x1,
                                  const Rat& y1 = Rat(0)) {
    if (x1 == 0) throw ValidationError("disk center must be off the mirror line x = 0");
    PressureExpr P;
    P.x1 = x1;
    P.y1 = y1;
    P.r = r;
    P.rdot = rdot;
    P.m = 1;
    Rat s = -r * rdot / 2;
    PolyXY x = PolyXY::mono(1, 0);
    PolyXY X = x - PolyXY(x1);
    PolyXY r2 = P.rho2();
    PolyXY two_x1x = x * Rat(2 * x1);
    // rho^2 P / s = -r^2 x (x-x1) + rho^2 (x(x-x1) - rho^2)
    //             + rho^2 (2 x1 x + rho^2 + r^2) log rho - rho^2 (2 x1 x + rho^2) lam
    P.N = (x * X * (Rat(-1) * r * r) + r2 * (x * X - r2)) * s;
    P.L = (r2 * (two_x1x + r2 + PolyXY(r * r))) * s;
    P.C = (r2 * (two_x1x + r2)) * (s * Rat(-1));
    return P;
}

struct PressureReport {
    bool pde_zero = false;
    double boundary_std_over_mean = 0;
    double kinematic_error = 0;
    double q_fit = 0, dipole_fit = 0;
    double q_expected = 0, dipole_expected = 0;
    bool pass(double boundary_tol = 1e-10, double kinematic_tol = 1e-8,
              double fit_tol = 1e-6) const {
        return pde_zero && boundary_std_over_mean <= boundary_tol &&
               kinematic_error <= kinematic_tol &&
               std::abs(q_fit - q_expected) <= fit_tol &&
               std::abs(dipole_fit - dipole_expected) <= fit_tol;
    }
};

// Four checks on a disk pressure field:
//  (1) x Lap P - 2 dP/dx is the exact zero expression (the PDE cleared by x^3);
//  (2) P is constant on 256 boundary samples;
//  (3) kinematic law at 64 boundary points from the exact symbolic gradient;
//  (4) monopole/dipole strengths fitted on shrinking circles around the source.
inline PressureReport verify_pressure(const PressureExpr& P) {
    PressureReport rep;
    PolyXY x = PolyXY::mono(1, 0);
    PressureExpr Px = P.dx(), Py = P.dy();
    PressureExpr residual = (Px.dx() + Py.dy()) * x - Px * Rat(2);
    rep.pde_zero = residual.is_zero_expr();

    double x1 = to_double(P.x1), y1 = to_double(P.y1);
    double r = to_double(P.r), rdot = to_double(P.rdot);

    {
        const int n = 256;
        std::vector<double> vals(n);
        double mean = 0;
        for (int k = 0; k < n; ++k) {
            double t = 2.0 * M_PI * k / n;
            vals[k] = P.eval(x1 + r * std::cos(t), y1 + r * std::sin(t));
            mean += vals[k];
        }
        mean /= n;
        double var = 0;
        for (double v : vals) var += (v - mean) * (v - mean);
        double sd = std::sqrt(var / n);
        rep.boundary_std_over_mean = sd / std::max(1e-300, std::abs(mean));
    }

    {
        const int n = 64;
        double worst = 0;
        for (int k = 0; k < n; ++k) {
            double t = 2.0 * M_PI * k / n;
            double xx = x1 + r * std::cos(t), yy = y1 + r * std::sin(t);
            double dpdn = std::cos(t) * Px.eval(xx, yy) + std::sin(t) * Py.eval(xx, yy);
            worst = std::max(worst, std::abs(rdot + dpdn / (xx * xx)) / std::abs(rdot));
        }
        rep.kinematic_error = worst;
    }

    {
        // mean over a circle of radius rho: A log rho + c0 + O(rho^2 log rho);
        // first cosine coefficient times rho: B + O(rho^2 log rho).
        const std::vector<double> radii = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
        const int n = 256;
        int nr = static_cast<int>(radii.size());
        Eigen::MatrixXd Ma(nr, 4), Mb(nr, 3);
        Eigen::VectorXd va(nr), vb(nr);
        for (int i = 0; i < nr; ++i) {
            double rho = radii[i];
            double mean = 0, cosc = 0;
            for (int k = 0; k < n; ++k) {
                double t = 2.0 * M_PI * k / n;
                double v = P.eval(x1 + rho * std::cos(t), y1 + rho * std::sin(t));
                mean += v;
                cosc += v * std::cos(t);
            }
            mean /= n;
            cosc *= 2.0 / n;
            double lg = std::log(rho);
            Ma.row(i) << lg, 1.0, rho * rho * lg, rho * rho;
            va[i] = mean;
            Mb.row(i) << 1.0, rho * rho * lg, rho * rho;
            vb[i] = cosc * rho;
        }
        double A = Ma.colPivHouseholderQr().solve(va)[0];
        double B = Mb.colPivHouseholderQr().solve(vb)[0];
        rep.q_fit = -2.0 * A / (x1 * x1) - 2.0 * B / (x1 * x1 * x1);
        rep.dipole_fit = -2.0 * B / (x1 * x1);
        rep.q_expected = 2.0 * r * rdot;                          // d(r^2)/dt
        rep.dipole_expected = -2.0 * r * rdot * r * r / (2 * x1); // -(dr^2/dt) r^2 / 2 x1
    }
    return rep;
}

} // namespace qdom
