#include <doctest.h>

#include "qdomains/pressure.hpp"
#include "qdomains/verify.hpp"

using namespace qdom;

namespace {

ConformalMap disk(Rat x1, Rat r) {
    ConformalMap m;
    m.z1 = GaussRat(std::move(x1));
    m.r = std::move(r);
    return m;
}

} // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    auto rule = gauss_legendre(6, 0.0, 1.0);
    double s = 0;
    for (int i = 0; i < 6; ++i) {
        double x = rule.nodes[i];
        s += rule.weights[i] * (x * x * x * x * x * x * x); // x^7, degree < 2n
    }
    CHECK(std::abs(s - 1.0 / 8.0) < 1e-15);
    double w = 0;
    for (double wi : gauss_legendre(12).weights) w += wi;
    CHECK(std::abs(w - 2.0) < 1e-14);
}

TEST_CASE("domain quadrature reproduces areas and closed-form functionals") {
    auto m = disk(2, Rat(3, 2));
    SUBCASE("area of a disk") {
        Cplx a = integrate_solution(m, build_axis(0), Poly2(GaussRat(1)));
        CHECK(std::abs(a - Cplx(M_PI * 2.25, 0)) < 1e-12);
    }
    SUBCASE("constant under the linear-medium operator") {
        // T[1] = -2 after normalization, so the integral is -2 pi r^2
        Cplx a = integrate_solution(m, build_axis(1), Poly2(GaussRat(1)));
        CHECK(std::abs(a - Cplx(-2 * M_PI * 2.25, 0)) < 1e-11);
    }
    SUBCASE("quadratic matches the exact contour functional") {
        auto b = build_axis(1);
        auto md = disk(2, 1);
        Poly2 f = (Poly2::z() - Poly2(GaussRat(2))).pow(2);
        Cplx a = integrate_solution(md, b, f);
        auto V = lhs_functionals(b, md, 2);
        CHECK(std::abs(a - M_PI * 2.0 * V.V[2].to_complex()) < 1e-11);
    }
}

TEST_CASE("quadrature identity holds on the disk with the closed-form fluxes") {
    auto b = build_axis(1);
    auto m = disk(2, 1);
    FluxVector fx;
    fx.Q = Rat(1);
    fx.Qj = {GaussRat(Rat(1, 8))};
    auto rep = verify_identity(m, b, fx, 6);
    CHECK(rep.max_rel_error <= 1e-10);
    // p = 0 row alone is the generalized mean value statement
    CHECK(rep.rel_errors[0] <= 1e-12);
}

TEST_CASE("identity fails for wrong fluxes (negative control)") {
    auto b = build_axis(1);
    auto m = disk(2, 1);
    FluxVector fx;
    fx.Q = Rat(1);
    fx.Qj = {GaussRat(Rat(1, 4))}; // wrong dipole
    auto rep = verify_identity(m, b, fx, 3);
    CHECK(rep.max_rel_error > 1e-4);
}

TEST_CASE("identity at a perturbed map against the exact solve") {
    ConformalMap m;
    m.z1 = GaussRat(Rat(2), Rat(1));
    m.r = Rat(1);
    m.u = {GaussRat(Rat(1, 30), Rat(1, 50)), GaussRat(Rat(-1, 40), Rat(0))};
    auto b = build_dihedral(1, 2, 1);
    auto fr = fluxes_for_map(b, m);
    REQUIRE(fr.all_zero);
    auto rep = verify_identity(m, b, fr.fluxes, 5);
    CHECK(rep.max_rel_error <= 1e-9);
}

TEST_CASE("harmonic bases have the classical dimensions and are harmonic") {
    for (int deg = 0; deg <= 4; ++deg) {
        auto b2 = harmonic_basis(2, deg);
        auto b3 = harmonic_basis(3, deg);
        CHECK(static_cast<int>(b2.size()) == (deg == 0 ? 1 : 2));
        CHECK(static_cast<int>(b3.size()) == 2 * deg + 1);
        for (auto& h : b2) CHECK(h.laplacian().is_zero());
        for (auto& h : b3) CHECK(h.laplacian().is_zero());
    }
}

TEST_CASE("ball identity: closed-form and basis cases") {
    SUBCASE("h = 1 gives -v_d on both sides") {
        BallSpec s{3, 1.0, {2, 0, 0}};
        auto rep = ball_identity_check(s, PolyND::constant(3, Rat(1)));
        double vd = 4.0 / 3.0 * M_PI;
        CHECK(std::abs(rep.lhs + vd) < 1e-12);
        CHECK(std::abs(rep.rhs + vd) < 1e-14);
    }
    SUBCASE("d = 3 quadratic harmonic") {
        PolyND h(3);
        h.add_term({2, 0, 0}, Rat(1));
        h.add_term({0, 2, 0}, Rat(-1));
        BallSpec s{3, 1.0, {2, 0, 0}};
        auto rep = ball_identity_check(s, h);
        CHECK(rep.rel_error <= 1e-8);
    }
    SUBCASE("d = 2 reduces to the plane disk identity") {
        for (auto& h : harmonic_basis(2, 3)) {
            BallSpec s{2, 1.0, {2, 0}};
            CHECK(ball_identity_check(s, h).rel_error <= 1e-10);
        }
    }
    SUBCASE("non-harmonic input is rejected") {
        PolyND bad(3);
        bad.add_term({2, 0, 0}, Rat(1));
        BallSpec s{3, 1.0, {2, 0, 0}};
        CHECK_THROWS_AS(ball_identity_check(s, bad), ValidationError);
    }
    SUBCASE("center on the mirror is rejected") {
        BallSpec s{3, 1.0, {0, 1, 0}};
        CHECK_THROWS_AS(ball_identity_check(s, PolyND::constant(3, Rat(1))), ValidationError);
    }
}

TEST_CASE("disk pressure passes all symbolic and numeric checks") {
    auto P = pressure_disk(Rat(1), Rat(1), Rat(2));
    auto rep = verify_pressure(P);
    CHECK(rep.pde_zero);
    CHECK(rep.boundary_std_over_mean <= 1e-10);
    CHECK(rep.kinematic_error <= 1e-8);
    CHECK(std::abs(rep.q_fit - rep.q_expected) <= 1e-6);
    CHECK(std::abs(rep.dipole_fit - rep.dipole_expected) <= 1e-6);
    CHECK(rep.pass());
}

TEST_CASE("pressure boundary value is the constant r^2(log r - 1) up to scale") {
    Rat r(3, 2), rdot(2, 5), x1(3);
    auto P = pressure_disk(r, rdot, x1);
    double rr = to_double(r);
    double expect = -to_double(r * rdot) / 2 * rr * rr * (std::log(rr) - 1.0);
    double on_boundary = P.eval(to_double(x1) + rr, 0.0);
    CHECK(std::abs(on_boundary - expect) < 1e-12);
    double other = P.eval(to_double(x1), rr);
    CHECK(std::abs(other - expect) < 1e-12);
}

TEST_CASE("pressure with shifted center and generic parameters still passes") {
    auto rep = verify_pressure(pressure_disk(Rat(1, 2), Rat(3), Rat(5, 2), Rat(1, 3)));
    CHECK(rep.pde_zero);
    CHECK(rep.kinematic_error <= 1e-8);
    CHECK(rep.boundary_std_over_mean <= 1e-10);
}

TEST_CASE("far center approaches the homogeneous log solution") {
    // after rescaling by kappa(z1) = 1/x1^2 the pressure tends to -(q/2) log(rho/r)
    Rat x1(1000);
    auto P = pressure_disk(Rat(1), Rat(1), x1);
    double k1 = 1.0 / (1000.0 * 1000.0);
    double q = 2.0;
    double at2 = P.eval(1000.0 + 2.0, 0.0) * k1;
    double at4 = P.eval(1000.0 + 4.0, 0.0) * k1;
    double expect = -(q / 2) * (std::log(2.0) - std::log(4.0));
    CHECK(std::abs((at2 - at4) - expect) < 1e-2);
}

TEST_CASE("mirror-line center is rejected") {
    CHECK_THROWS_AS(pressure_disk(Rat(1), Rat(1), Rat(0)), ValidationError);
}
