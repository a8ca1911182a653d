#include "weldlab/spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "weldlab/fft.hpp"

namespace weldlab {

double FourierField::h0_norm_sq() const {
    double s = 0.0;
    for (std::size_t n = 1; n <= order; ++n)
        s += static_cast<double>(n) * std::norm(coeffs[n - 1]);
    return 2.0 * s;
}

double FourierField::evaluate_at(double theta) const {
    // Horner recurrence in e^{i theta}; avoids N trig calls.
    const std::complex<double> w(std::cos(theta), std::sin(theta));
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t n = order; n >= 1; --n) acc = (acc + coeffs[n - 1]) * w;
    return mean + 2.0 * acc.real();
}

FourierField sample_lgf(std::size_t order, Rng& rng) {
    if (order == 0) throw std::invalid_argument("sample_lgf: order must be >= 1");
    FourierField f(order);
    for (std::size_t n = 1; n <= order; ++n) {
        const double xc = rng.normal();
        const double xs = rng.normal();
        const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
        f.coeffs[n - 1] = {xc * scale, -xs * scale};
    }
    return f;
}

GridFunction evaluate(const FourierField& field, std::size_t size) {
    if (size < 2 * field.order)
        throw std::invalid_argument("evaluate: grid too coarse for field order");
    std::vector<std::complex<double>> spec(size, {0.0, 0.0});
    spec[0] = field.mean;
    for (std::size_t n = 1; n <= field.order; ++n) {
        // += keeps the Nyquist bin correct when size == 2 * order (the +N and
        // -N frequencies land in the same slot and must sum to 2 Re c_N)
        spec[n] += field.coeffs[n - 1];
        spec[size - n] += std::conj(field.coeffs[n - 1]);
    }
    dft(spec, +1);
    GridFunction out(size);
    for (std::size_t j = 0; j < size; ++j) out[j] = spec[j].real();
    return out;
}

GridFunction truncated_variance(std::size_t order, std::size_t size) {
    double s = 0.0;
    for (std::size_t n = 1; n <= order; ++n) s += 2.0 / static_cast<double>(n);
    return GridFunction(size, s);
}

FourierField analyze(const GridFunction& f) {
    const std::size_t g = f.size();
    std::vector<std::complex<double>> spec(g);
    for (std::size_t j = 0; j < g; ++j) spec[j] = f[j];
    dft(spec, -1);
    FourierField out(g / 2 - 1);
    const double inv = 1.0 / static_cast<double>(g);
    out.mean = spec[0].real() * inv;
    for (std::size_t n = 1; n <= out.order; ++n) out.coeffs[n - 1] = spec[n] * inv;
    return out;
}

double sobolev_norm(const FourierField& field, double index) {
    if (index <= 0.0 && std::abs(field.mean) > 1e-12)
        throw std::invalid_argument("sobolev_norm: nonzero mean with s <= 0");
    double s = 0.0;
    for (std::size_t n = 1; n <= field.order; ++n)
        s += std::pow(static_cast<double>(n * n), index) * std::norm(field.coeffs[n - 1]);
    return std::sqrt(2.0 * s);
}

double sobolev_norm(const GridFunction& f, double index) {
    return sobolev_norm(analyze(f), index);
}

double h_half_double_integral(const GridFunction& f) {
    const std::size_t g = f.size();
    const double dx = two_pi / static_cast<double>(g);
    double total = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
        for (std::size_t k = 0; k < g; ++k) {
            const std::size_t d = (j >= k) ? j - k : k - j;
            if (d <= 1 || d >= g - 1) continue;
            const double num = f[j] - f[k];
            const double chord = 2.0 * std::sin(0.5 * dx * static_cast<double>(d));
            total += (num * num) / (chord * chord);
        }
    }
    return total * dx * dx;
}

GridFunction pi0(const GridFunction& f) {
    GridFunction out = f;
    const double m = f.mean();
    for (double& v : out.values) v -= m;
    return out;
}

GridFunction log_singularity(double alpha, double cap, std::size_t size) {
    if (cap <= 0.0) throw std::invalid_argument("log_singularity: cap must be > 0");
    GridFunction out(size);
    for (std::size_t j = 0; j < size; ++j) {
        if (alpha == 0.0) {
            out[j] = 0.0;
            continue;
        }
        const double chord = 2.0 * std::abs(std::sin(0.5 * out.theta(j)));
        if (chord == 0.0) {
            out[j] = cap;
            continue;
        }
        out[j] = std::min(-alpha * std::log(chord), cap);
    }
    return out;
}

double default_insertion_cap(double gamma, std::size_t order) {
    return (2.0 / gamma) * std::log(static_cast<double>(order));
}

} // namespace weldlab
