// Fourier representation of mean-zero fields on the circle, log-correlated
// Gaussian field sampling, fractional Sobolev norms and related quadratures.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "weldlab/grid.hpp"
#include "weldlab/rng.hpp"

namespace weldlab {

// Truncated real field h(e^{i theta}) = mean + 2 Re sum_{n=1}^{N} c_n e^{i n theta}.
// coeffs[n-1] stores c_n; conjugate symmetry keeps h real-valued.
struct FourierField {
    std::size_t order = 0;                       // truncation N
    std::vector<std::complex<double>> coeffs;    // c_1 .. c_N
    double mean = 0.0;

    FourierField() = default;
    explicit FourierField(std::size_t n) : order(n), coeffs(n, {0.0, 0.0}) {}

    // Exact Cameron-Martin norm squared of the mean-zero part:
    // 2 sum_n n |c_n|^2.
    double h0_norm_sq() const;

    // Direct evaluation at one angle, O(N).
    double evaluate_at(double theta) const;
};

// Truncated log-correlated Gaussian field: h = sum_{k=1}^{2N} xi_k h_k with
// the trigonometric basis sqrt(2/n) cos/sin(n theta). Deterministic per stream.
FourierField sample_lgf(std::size_t order, Rng& rng);

// Grid evaluation, FFT-based; requires G >= 2N (anti-aliasing).
GridFunction evaluate(const FourierField& field, std::size_t size);

// sum_{k=1}^{2N} h_k(theta)^2 = 2 H_N, constant in theta for the trig basis.
GridFunction truncated_variance(std::size_t order, std::size_t size);

// Forward transform of a real grid function into a FourierField with
// order = G/2 - 1 (mean stored separately).
FourierField analyze(const GridFunction& f);

// ( 2 sum_n n^{2s} |c_n|^2 )^{1/2}. Nonzero mean is rejected for s <= 0.
double sobolev_norm(const FourierField& field, double index);
double sobolev_norm(const GridFunction& f, double index);

// Trapezoid approximation of the double integral
// |f(x)-f(y)|^2 / |x-y|^2 over S^1 x S^1, diagonal band |j-j'| <= 1 excluded.
double h_half_double_integral(const GridFunction& f);

// Mean-zero projection pi_0(f) = f - (1/2pi) int f.
GridFunction pi0(const GridFunction& f);

// Capped logarithmic insertion min(-alpha log|e^{i theta} - 1|, cap).
GridFunction log_singularity(double alpha, double cap, std::size_t size);

// Default cap (2/gamma) log N, tied to the truncation scale.
double default_insertion_cap(double gamma, std::size_t order);

} // namespace weldlab
