// Truncated Gaussian multiplicative chaos measures on the circle, welding
// homeomorphisms, pushforwards, and quadrature identities.
#pragma once

#include <cstddef>
#include <vector>

#include "weldlab/circle_map.hpp"
#include "weldlab/grid.hpp"
#include "weldlab/homeo.hpp"
#include "weldlab/spectra.hpp"

namespace weldlab {

// Finite positive measure stored as a cumulative mass function at the cell
// boundaries theta_j = 2 pi j / G; density piecewise constant per cell.
struct BoundaryMeasure {
    double gamma = 0.0;
    std::vector<double> cmf;  // G+1 nondecreasing values, cmf[0] = 0

    std::size_t size() const { return cmf.size() - 1; }
    double total() const { return cmf.back(); }

    // Piecewise-linear interpolation of the cmf, extended periodically by
    // mass(theta + 2pi) = mass(theta) + total.
    double mass(double theta) const;
};

BoundaryMeasure gmc_measure(const GridFunction& field_values, const GridFunction& variance,
                            double gamma);

// Density additionally multiplied by exp((gamma/2) * capped log insertion).
BoundaryMeasure gmc_with_insertion(const GridFunction& field_values,
                                   const GridFunction& variance, double gamma, double alpha,
                                   double cap);

BoundaryMeasure normalize(const BoundaryMeasure& measure);

// phi(z) = exp(2 pi i * measure([1, z])) for a normalized measure; the lift
// is 2 pi times the cmf, anchored at lift(0) = 0.
CircleMap welding_homeo(const BoundaryMeasure& measure);

// Image measure: (pushforward)(A) = measure(map^{-1}(A)).
BoundaryMeasure pushforward(const CircleMap& map, const BoundaryMeasure& measure);

struct CoordinateChangeReport {
    double substitution_max_rel_error = 0.0;
    std::vector<double> variance_eps;         // probe widths, halving
    std::vector<double> variance_sup_errors;  // sup over theta per width
    bool variance_monotone = false;
};

// Two deterministic checks behind the measure coordinate-change rule:
// (a) change of variables in the truncated density over a panel of arcs;
// (b) double small-arc averages of -2 log-ratio against -2 log|phi'|.
CoordinateChangeReport coordinate_change_check(const FourierField& field, const AnalyticMap& map,
                                               double gamma, std::size_t grid = 1 << 14,
                                               std::size_t arcs = 16, std::size_t eps_levels = 5);

// Quadrature of (2/pi^2) double integral of log|e^{i a} - e^{-i b}| over
// [0,pi]^2; target -7 zeta(3) / pi^2.
double apery_check(std::size_t quadrature);

} // namespace weldlab
