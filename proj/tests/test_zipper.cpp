#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "weldlab/homeo.hpp"
#include "weldlab/zipper.hpp"

using namespace weldlab;

TEST_CASE("unit circle welds to the identity") {
    const ZipperResult r = zipper_welding(JordanCurve::circle({0.0, 0.0}, 1.0, 256));
    const CircleMap id = analytic_identity().sample(256);
    CHECK(sup_distance(r.welding, id) < 2e-3);
    CHECK(r.scale == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("conformal radius scales with the curve") {
    const ZipperResult r = zipper_welding(JordanCurve::circle({0.0, 0.0}, 2.0, 256));
    CHECK(r.scale == doctest::Approx(2.0).epsilon(0.02));
    const CircleMap id = analytic_identity().sample(256);
    CHECK(sup_distance(r.welding, id) < 2e-3);
}

TEST_CASE("offset circle still welds to a homeomorphism fixing 1") {
    const ZipperResult r = zipper_welding(JordanCurve::circle({0.5, 0.0}, 1.0, 256));
    CHECK(r.welding(0.0) == 0.0);
    for (std::size_t j = 1; j < r.welding.size(); ++j)
        CHECK(r.welding.lift[j] > r.welding.lift[j - 1]);
    CHECK(r.scale > 0.3);
    CHECK(r.scale < 1.5);
}

TEST_CASE("ellipse welding has positive energy that is resolution stable") {
    const double e1 = wp_energy(zipper_welding(JordanCurve::ellipse(2.0, 1.0, 128)).welding);
    const double e2 = wp_energy(zipper_welding(JordanCurve::ellipse(2.0, 1.0, 256)).welding);
    CHECK(e1 > 1e-3);
    CHECK(std::abs(e2 - e1) / e1 < 0.25);
}

TEST_CASE("star curve produces a monotone welding") {
    const ZipperResult r = zipper_welding(JordanCurve::star(0.2, 3, 192));
    for (std::size_t j = 1; j < r.welding.size(); ++j)
        CHECK(r.welding.lift[j] > r.welding.lift[j - 1]);
}

TEST_CASE("input validation") {
    JordanCurve far = JordanCurve::circle({5.0, 0.0}, 1.0, 64);
    CHECK_THROWS(zipper_welding(far));
    JordanCurve tiny;
    tiny.vertices = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}};
    CHECK_THROWS(zipper_welding(tiny));
    CHECK_THROWS(normalize_curve(JordanCurve::circle({0.0, 0.0}, 1.0, 64), 0.0));
}

TEST_CASE("normalize_curve divides vertices") {
    const JordanCurve c = JordanCurve::circle({0.0, 0.0}, 2.0, 16);
    const JordanCurve n = normalize_curve(c, 2.0);
    CHECK(std::abs(n.vertices[3]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fixture suite covers the named curves") {
    const auto suite = welding_fixture_suite(96);
    REQUIRE(suite.size() == 5);
    CHECK(suite[0].name == "unit-circle");
    for (const auto& f : suite) {
        CHECK(f.scale > 0.0);
        CHECK(f.welding.size() > 10);
    }
}
