#include <doctest.h>

#include "qdomains/conformal.hpp"

using namespace qdom;

namespace {

ConformalMap sample_map() {
    ConformalMap m;
    m.z1 = GaussRat(Rat(2), Rat(1));
    m.r = Rat(1);
    m.u = {GaussRat(Rat(1, 10), Rat(1, 20)), GaussRat(Rat(-1, 30), Rat(1, 40))};
    return m;
}

} // namespace

TEST_CASE("area moment matches the coefficient formula") {
    // M0/pi = r^2 + sum (i+2) |u_i|^2 for z(w) = z1 + r w + sum u_i w^{i+2}
    ConformalMap m = sample_map();
    auto M = moments_over_pi(m, 0);
    Rat expect = m.r * m.r;
    for (size_t i = 0; i < m.u.size(); ++i) {
        Rat a2 = m.u[i].re * m.u[i].re + m.u[i].im * m.u[i].im;
        expect += Rat(static_cast<int>(i) + 2) * a2;
    }
    CHECK(M[0] == GaussRat(expect));
    CHECK(M[0].is_real());
}

TEST_CASE("disk moments vanish beyond the area") {
    ConformalMap disk;
    disk.z1 = GaussRat(2);
    disk.r = Rat(3, 2);
    auto M = moments_over_pi(disk, 5);
    CHECK(M[0] == GaussRat(Rat(9, 4)));
    for (int p = 1; p <= 5; ++p) CHECK(M[p].is_zero());
}

TEST_CASE("moments are translation-covariant in z1 only through the definition") {
    // (z - z1)^p moments do not depend on z1 at all for a rigid shift of the map
    ConformalMap a = sample_map(), b = sample_map();
    b.z1 = GaussRat(Rat(-5), Rat(3));
    auto Ma = moments_over_pi(a, 4), Mb = moments_over_pi(b, 4);
    for (int p = 0; p <= 4; ++p) CHECK(Ma[p] == Mb[p]);
}

TEST_CASE("floating moments agree with exact ones") {
    ConformalMap m = sample_map();
    auto exact = moments_over_pi(m, 3);
    auto approx = moments(m, 3);
    for (int p = 0; p <= 3; ++p)
        CHECK(std::abs(approx[p] - M_PI * exact[p].to_complex()) < 1e-14);
}

TEST_CASE("boundary sampling validates its count") {
    CHECK_THROWS_AS(boundary_points(sample_map(), 2), ValidationError);
    auto pts = boundary_points(sample_map(), 8);
    CHECK(pts.size() == 8);
    CHECK(std::abs(pts[0] - sample_map().eval(Cplx(1, 0))) == 0.0);
}

TEST_CASE("univalence certificate accepts small perturbations and rejects cusps") {
    CHECK(univalence_check(sample_map()).pass);
    ConformalMap bad;
    bad.z1 = GaussRat(2);
    bad.r = Rat(1);
    bad.u = {GaussRat(Rat(3, 5))}; // |2 u_1| > r: z' has a root inside the disk
    auto res = univalence_check(bad);
    CHECK(!res.pass);
    CHECK(res.root_margin < 0);
}

TEST_CASE("moment inversion round-trips an exact map") {
    ConformalMap m = sample_map();
    auto M = moments_over_pi(m, m.ktilde());
    std::vector<Cplx> targets(M.size());
    for (size_t i = 0; i < M.size(); ++i) targets[i] = M[i].to_complex();
    ConformalMap guess = disk_guess(m.z1, targets[0].real(), m.ktilde());
    ConformalMap sol = solve_map_from_moments(targets, guess);
    CHECK(std::abs(to_double(sol.r) - to_double(m.r)) < 1e-11);
    REQUIRE(sol.u.size() == m.u.size());
    for (size_t i = 0; i < m.u.size(); ++i)
        CHECK(std::abs(sol.u[i].to_complex() - m.u[i].to_complex()) < 1e-11);
}

TEST_CASE("moment inversion validates and reports breakdown") {
    ConformalMap guess = disk_guess(GaussRat(2), 1.0, 1);
    CHECK_THROWS_AS(solve_map_from_moments({Cplx(-1, 0), Cplx(0, 0)}, guess), ValidationError);
    // a huge first moment relative to the area cannot come from a univalent map
    bool failed_cleanly = false;
    try {
        solve_map_from_moments({Cplx(1, 0), Cplx(5, 0)}, guess);
    } catch (const NonUnivalent&) {
        failed_cleanly = true;
    } catch (const NoConvergence&) {
        failed_cleanly = true;
    }
    CHECK(failed_cleanly);
}

TEST_CASE("inversion result is exactly rational and near-univalent maps stay stable") {
    ConformalMap m = sample_map();
    auto M = moments_over_pi(m, m.ktilde());
    std::vector<Cplx> targets(M.size());
    for (size_t i = 0; i < M.size(); ++i) targets[i] = M[i].to_complex();
    // warm start from the answer itself: converges immediately
    ConformalMap sol = solve_map_from_moments(targets, m);
    CHECK(sol.r == m.r);
    for (size_t i = 0; i < m.u.size(); ++i) CHECK(sol.u[i] == m.u[i]);
}
