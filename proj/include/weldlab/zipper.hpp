// Forward conformal welding of polygonal Jordan curves via the geodesic
// zipper: discrete Riemann maps for both complementary components and the
// induced boundary correspondence.
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "weldlab/circle_map.hpp"

namespace weldlab {

struct JordanCurve {
    std::vector<std::complex<double>> vertices;  // positively oriented, closed implicitly
    bool contains_origin = true;

    static JordanCurve circle(std::complex<double> center, double radius, std::size_t n);
    static JordanCurve ellipse(double semi_a, double semi_b, std::size_t n);
    // r(theta) = 1 + amp * cos(lobes * theta).
    static JordanCurve star(double amp, int lobes, std::size_t n);
};

struct ZipperResult {
    CircleMap welding;  // psi = g^{-1} o f on the circle, fixes 1 at vertex 0
    double scale = 0.0; // conformal radius |f'(0)| of the interior from 0
};

ZipperResult zipper_welding(const JordanCurve& curve);

JordanCurve normalize_curve(const JordanCurve& curve, double scale);

struct WeldingFixture {
    std::string name;
    JordanCurve curve;
    CircleMap welding;
    double scale = 0.0;
};

std::vector<WeldingFixture> welding_fixture_suite(std::size_t samples = 256);

} // namespace weldlab
