// Orientation-preserving circle homeomorphisms as strictly increasing
// piecewise-linear periodic lifts.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "weldlab/grid.hpp"

namespace weldlab {

// Degree-1 lift F on knots theta_0 < ... < theta_{m-1} in [0, 2pi),
// F(theta + 2pi) = F(theta) + 2pi, linear between knots.
struct CircleMap {
    std::vector<double> knots;
    std::vector<double> lift;

    CircleMap() = default;
    CircleMap(std::vector<double> k, std::vector<double> f);

    // Lift value at arbitrary real theta (periodic extension).
    double operator()(double theta) const;

    std::size_t size() const { return knots.size(); }

    // Sample a callable lift at m uniform knots.
    static CircleMap from_lift(const std::function<double(double)>& f, std::size_t m);
};

CircleMap compose(const CircleMap& outer, const CircleMap& inner);
CircleMap invert(const CircleMap& map);

// Post-rotation so that lift(0) = 0 exactly (the map fixes the point 1).
CircleMap normalize_fix1(const CircleMap& map);

// sup_j |a(theta_j) - b(theta_j)| over a fine uniform probe grid.
double sup_distance(const CircleMap& a, const CircleMap& b, std::size_t probes = 4096);

} // namespace weldlab
