// Uniform grids on [0, 2pi) and real-valued grid functions.
#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace weldlab {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Samples of a real function at theta_j = 2*pi*j/G, j = 0..G-1.
struct GridFunction {
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(std::size_t size, double fill = 0.0) : values(size, fill) {
        if (size < 2) throw std::invalid_argument("GridFunction: size must be >= 2");
    }

    std::size_t size() const { return values.size(); }
    double theta(std::size_t j) const { return two_pi * static_cast<double>(j) / static_cast<double>(values.size()); }
    double& operator[](std::size_t j) { return values[j]; }
    double operator[](std::size_t j) const { return values[j]; }

    // Trapezoid mean over the period; on a uniform periodic grid this is
    // the arithmetic mean.
    double mean() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }
};

} // namespace weldlab
