#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "weldlab/gmc.hpp"
#include "weldlab/rng.hpp"

using namespace weldlab;

TEST_CASE("zero field gives the deterministic counterterm mass") {
    const std::size_t g = 256;
    const double gamma = 1.2, v = 3.7;
    const BoundaryMeasure m = gmc_measure(GridFunction(g), GridFunction(g, v), gamma);
    CHECK(m.size() == g);
    CHECK(m.cmf.front() == 0.0);
    CHECK(m.total() == doctest::Approx(two_pi * std::exp(-gamma * gamma * v / 8.0)).epsilon(1e-12));
}

TEST_CASE("constant field shift scales the measure") {
    const std::size_t g = 128;
    const double gamma = 0.8, c = 0.6;
    const BoundaryMeasure base = gmc_measure(GridFunction(g), GridFunction(g), gamma);
    const BoundaryMeasure shifted = gmc_measure(GridFunction(g, c), GridFunction(g), gamma);
    CHECK(shifted.total() == doctest::Approx(base.total() * std::exp(gamma * c / 2.0)).epsilon(1e-12));
}

TEST_CASE("normalization and mass interpolation") {
    GridFunction h(64);
    for (std::size_t j = 0; j < 64; ++j) h.values[j] = std::cos(h.theta(j));
    const BoundaryMeasure m = normalize(gmc_measure(h, GridFunction(64), 1.0));
    CHECK(m.total() == 1.0);
    CHECK(m.mass(0.0) == doctest::Approx(0.0));
    CHECK(m.mass(two_pi) == doctest::Approx(1.0));
    // periodic extension
    CHECK(m.mass(two_pi + 1.0) == doctest::Approx(m.mass(1.0) + 1.0).epsilon(1e-12));
    // interpolation lands between neighboring cmf values
    const double t = 1.23;
    const std::size_t j = static_cast<std::size_t>(t / (two_pi / 64.0));
    CHECK(m.mass(t) >= m.cmf[j]);
    CHECK(m.mass(t) <= m.cmf[j + 1]);
}

TEST_CASE("welding homeomorphism of a known density") {
    // density (1 + cos(theta)/2) / (2 pi) has cmf (theta + sin(theta)/2)/(2 pi)
    const std::size_t g = 1 << 12;
    BoundaryMeasure m;
    m.gamma = 1.0;
    m.cmf.resize(g + 1);
    for (std::size_t j = 0; j <= g; ++j) {
        const double t = two_pi * static_cast<double>(j) / static_cast<double>(g);
        m.cmf[j] = (t + 0.5 * std::sin(t)) / two_pi;
    }
    const CircleMap w = welding_homeo(m);
    for (double t : {0.5, 1.5, 3.0, 5.0})
        CHECK(w(t) == doctest::Approx(t + 0.5 * std::sin(t)).epsilon(1e-6));
    CHECK(w(0.0) == 0.0);
}

TEST_CASE("insertion with zero strength is a no-op") {
    Rng rng(5);
    const GridFunction h = evaluate(sample_lgf(16, rng), 128);
    const GridFunction v = truncated_variance(16, 128);
    const BoundaryMeasure a = gmc_measure(h, v, 1.0);
    const BoundaryMeasure b = gmc_with_insertion(h, v, 1.0, 0.0, 10.0);
    for (std::size_t j = 0; j <= 128; ++j)
        CHECK(a.cmf[j] == doctest::Approx(b.cmf[j]).epsilon(1e-12));
}

TEST_CASE("insertion increases mass near the singular point") {
    const std::size_t g = 256;
    const BoundaryMeasure base = gmc_measure(GridFunction(g), GridFunction(g), 1.0);
    const BoundaryMeasure ins = gmc_with_insertion(GridFunction(g), GridFunction(g), 1.0, 1.0, 20.0);
    // first cell hugs theta = 0 where the insertion blows up
    CHECK(ins.cmf[1] - ins.cmf[0] > base.cmf[1] - base.cmf[0]);
    // far from the singularity the densities are comparable
    CHECK((ins.cmf[129] - ins.cmf[128]) / (base.cmf[129] - base.cmf[128]) ==
          doctest::Approx(std::exp(0.5 * -std::log(2.0))).epsilon(0.01));
}

TEST_CASE("pushforward under the identity and composition consistency") {
    Rng rng(11);
    const GridFunction h = evaluate(sample_lgf(8, rng), 256);
    const BoundaryMeasure m = normalize(gmc_measure(h, truncated_variance(8, 256), 1.0));
    const CircleMap id = analytic_identity().sample(256);
    const BoundaryMeasure pushed = pushforward(id, m);
    double worst = 0.0;
    for (std::size_t j = 0; j <= 256; ++j)
        worst = std::max(worst, std::abs(pushed.cmf[j] - m.cmf[j]));
    CHECK(worst < 2.0 / 256.0);

    // total mass is preserved by any pushforward
    const CircleMap rot = analytic_rotation(0.8).sample(512);
    CHECK(pushforward(rot, m).total() == doctest::Approx(m.total()).epsilon(1e-9));
}

TEST_CASE("log kernel double integral matches the closed form") {
    const double zeta3 = 1.2020569031595942854;
    const double target = -7.0 * zeta3 / (std::numbers::pi * std::numbers::pi);
    CHECK(apery_check(512) == doctest::Approx(target).epsilon(2e-3));
    CHECK_THROWS(apery_check(64));
}

TEST_CASE("coordinate change identity for the identity map") {
    Rng rng(3);
    const FourierField h = sample_lgf(8, rng);
    const CoordinateChangeReport r =
        coordinate_change_check(h, analytic_identity(), 1.0, 1 << 10, 4, 3);
    CHECK(r.substitution_max_rel_error < 1e-9);
    CHECK(r.variance_monotone);
    for (double e : r.variance_sup_errors) CHECK(e < 0.05);
}
