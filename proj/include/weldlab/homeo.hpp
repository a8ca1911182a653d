// Calculus on circle homeomorphisms: quasisymmetry and Weil-Petersson
// diagnostics, log-derivative, log-ratio, smoothing, standard map families.
#pragma once

#include <complex>
#include <functional>
#include <string>

#include "weldlab/circle_map.hpp"
#include "weldlab/grid.hpp"

namespace weldlab {

// Smooth map given by closed-form lift and derivative; used where quadrature
// accuracy beyond piecewise-linear interpolation is needed.
struct AnalyticMap {
    std::function<double(double)> lift;
    std::function<double(double)> deriv;  // F'(theta) = |phi'(e^{i theta})|

    CircleMap sample(std::size_t m) const { return CircleMap::from_lift(lift, m); }
};

AnalyticMap analytic_identity();
AnalyticMap analytic_rotation(double a);
// Boundary values of z -> (z-a)/(1 - conj(a) z), post-rotated to fix 1.
AnalyticMap analytic_moebius(std::complex<double> a);
// Lift theta + eps sin(k theta + delta0); requires |eps k| < 1.
AnalyticMap analytic_sine(double eps, int k, double delta0);

// kind: "identity" | "rotation:a" | "moebius:re[,im]" | "sine:eps,k,delta0".
AnalyticMap standard_map(const std::string& spec);
CircleMap standard_map(const std::string& spec, std::size_t knots);

// Max over probed (theta, t) of the symmetric chord ratio and its reciprocal;
// a lower bound on the quasisymmetry constant.
double qs_ratio(const CircleMap& map, std::size_t probes);

// Centered-difference estimate of log F' on a uniform grid of the given size.
GridFunction log_deriv(const CircleMap& map, std::size_t size);

// sobolev_norm(pi0(log_deriv), 1/2)^2; zero exactly for rotations.
double wp_energy(const CircleMap& map, std::size_t size = 4096);

// values[j] = log|phi(e^{i theta_j}) - phi(z0)| - log|e^{i theta_j} - z0| with
// z0 the grid point base_index; the singular entry is filled from neighbors.
GridFunction log_ratio(const CircleMap& map, std::size_t size, std::size_t base_index);

// Periodic Gaussian smoothing of (lift - identity) at scale delta. Retries
// with halved delta if discrete monotonicity breaks, then rejects.
CircleMap mollify(const CircleMap& map, double delta);

} // namespace weldlab
