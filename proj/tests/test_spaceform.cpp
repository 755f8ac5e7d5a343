#include <doctest.h>

#include <cmath>

#include "curvata/spaceform.hpp"
#include "oracles.hpp"

using namespace curvata;
using spaceform::SpaceForm;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("model functions satisfy their defining identities") {
    const double curvatures[] = {-2.0, -1.0, -1e-6, -1e-12, 0.0, 1e-12, 1e-6, 0.5, 1.0, 2.0};
    for (double c : curvatures) {
        SpaceForm sf(c);
        const double limit = std::min(sf.radius_limit() * 0.98, 3.0);
        for (int i = 1; i <= 40; ++i) {
            const double rho = limit * i / 40.0;
            const double sn = sf.sn(rho);
            const double cn = sf.cn(rho);
            CHECK(std::abs(cn * cn + c * sn * sn - 1.0) < 1e-12 * (1.0 + std::abs(c) * sn * sn));

            const double h = 1e-6;
            if (rho > 2.0 * h && rho + h < sf.radius_limit()) {
                const double dsn = (sf.sn(rho + h) - sf.sn(rho - h)) / (2.0 * h);
                const double dcn = (sf.cn(rho + h) - sf.cn(rho - h)) / (2.0 * h);
                CHECK(std::abs(dsn - cn) < 5e-9 * (1.0 + std::abs(cn)));
                CHECK(std::abs(dcn + c * sn) < 5e-9 * (1.0 + std::abs(c * sn)));
            }
        }
    }
}

TEST_CASE("series branch joins the closed forms smoothly") {
    SpaceForm flat(0.0);
    for (double c : {1e-13, -1e-13, 1e-9, -1e-9}) {
        SpaceForm sf(c);
        for (double rho : {0.1, 0.5, 1.0, 2.5}) {
            // leading departures from flat are -c rho^3/6 and -c rho^2/2
            CHECK(std::abs(sf.sn(rho) - flat.sn(rho)) <
                  0.2 * std::abs(c) * rho * rho * rho + 1e-12);
            CHECK(std::abs(sf.cn(rho) - flat.cn(rho)) <
                  0.6 * std::abs(c) * rho * rho + 1e-12);
        }
    }
    // straddle the branch switch point |c| rho^2 = 1e-8
    SpaceForm sf(1.0);
    const double a = 0.99e-4, b = 1.01e-4;
    const double jump = sf.sn(b) - sf.sn(a);
    CHECK(std::abs(jump - (b - a)) < 1e-12);
}

TEST_CASE("domain and radius limit") {
    SpaceForm sphere(1.0);
    CHECK(sphere.radius_limit() == doctest::Approx(kPi));
    CHECK_THROWS_AS(sphere.sn(kPi), invalid_input);
    CHECK_THROWS_AS(sphere.sn(-0.1), invalid_input);
    CHECK(SpaceForm(-1.0).radius_limit() == std::numeric_limits<double>::infinity());
    CHECK(SpaceForm(0.0).sn(0.0) == 0.0);
    CHECK_THROWS_AS(SpaceForm(0.0).cot(0.0), invalid_input);
    CHECK_THROWS_AS(SpaceForm(std::nan("")), invalid_input);
}

TEST_CASE("hyperbolic and spherical sample values") {
    SpaceForm hyp(-1.0);
    CHECK(hyp.sn(1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-15));
    CHECK(hyp.cn(1.0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-15));
    SpaceForm sph(4.0);
    CHECK(sph.sn(0.25) == doctest::Approx(std::sin(0.5) / 2.0).epsilon(1e-15));
    CHECK(sph.cn(0.25) == doctest::Approx(std::cos(0.5)).epsilon(1e-15));
}

TEST_CASE("geodesic sphere profile") {
    auto s = spaceform::sphere_profile(3, SpaceForm(0.0), 1.0);
    REQUIRE(s.curvatures.n() == 2);
    CHECK(s.curvatures.kappa[0] == doctest::Approx(1.0));
    CHECK(s.profile.S[1] == doctest::Approx(2.0));
    CHECK(s.profile.H[1] == doctest::Approx(1.0));

    auto q = spaceform::sphere_profile(7, SpaceForm(1.0), kPi / 4.0);
    for (double k : q.curvatures.kappa) CHECK(k == doctest::Approx(1.0).epsilon(1e-14));

    // past the equator the curvature is negative
    auto far = spaceform::sphere_profile(4, SpaceForm(1.0), 2.0);
    for (double k : far.curvatures.kappa) CHECK(k < 0.0);

    CHECK_THROWS_AS(spaceform::sphere_profile(3, SpaceForm(1.0), kPi), invalid_input);
    CHECK_THROWS_AS(spaceform::sphere_profile(1, SpaceForm(0.0), 1.0), invalid_input);
}

TEST_CASE("cylinder profile preserves symmetric functions") {
    auto base = spaceform::sphere_profile(3, SpaceForm(0.0), 1.0);
    auto cyl = spaceform::cylinder_profile(base, 2.0);
    REQUIRE(cyl.curvatures.n() == 3);
    CHECK(cyl.curvatures.kappa[2] == 0.0);
    CHECK(cyl.profile.S[1] == doctest::Approx(base.profile.S[1]));
    CHECK(cyl.profile.S[2] == doctest::Approx(base.profile.S[2]));
    CHECK(cyl.profile.S[3] == doctest::Approx(0.0));

    // Newton row entry in the axis direction recovers the base functions.
    for (int r = 0; r < 3; ++r)
        CHECK(cyl.profile.newton(r, 2) ==
              doctest::Approx(oracle::subset_sum_sigma(base.curvatures.kappa, r)));

    CHECK_THROWS_AS(spaceform::cylinder_profile(base, 0.0), invalid_input);
}

TEST_CASE("umbilic cap profile") {
    auto cap = spaceform::cap_profile(3, SpaceForm(0.0), 0.7, 1.1, kPi / 3.0);
    REQUIRE(cap.curvatures.n() == 3);
    for (double k : cap.curvatures.kappa) CHECK(k == doctest::Approx(0.7));
    CHECK(cap.contact_angle == doctest::Approx(kPi / 3.0));
    CHECK_THROWS_AS(spaceform::cap_profile(3, SpaceForm(0.0), 0.7, 1.1, 0.0), invalid_input);
}

TEST_CASE("boundary Robin coefficient") {
    CHECK(spaceform::robin_coefficient(2.0, 3.0, kPi / 2.0) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(spaceform::robin_coefficient(2.0, 3.0, kPi / 3.0) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));
    // matches the natural ball slope at right contact angle
    SpaceForm sf(-1.0);
    const double rho0 = 0.8;
    CHECK(spaceform::robin_coefficient(sf.cot(rho0), 123.0, kPi / 2.0) ==
          doctest::Approx(sf.cot(rho0)).epsilon(1e-13));
    CHECK_THROWS_AS(spaceform::robin_coefficient(1.0, 1.0, 0.0), invalid_input);
    CHECK_THROWS_AS(spaceform::robin_coefficient(1.0, 1.0, kPi), invalid_input);
}

TEST_CASE("unit sphere areas") {
    CHECK(spaceform::unit_sphere_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(spaceform::unit_sphere_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(spaceform::unit_sphere_area(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
    CHECK_THROWS_AS(spaceform::unit_sphere_area(1), invalid_input);
}
