#include "weldlab/homeo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "weldlab/spectra.hpp"

namespace weldlab {

namespace {

double chord(double alpha, double beta) {
    return 2.0 * std::abs(std::sin(0.5 * (alpha - beta)));
}

std::vector<double> parse_params(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

} // namespace

AnalyticMap analytic_identity() {
    return {[](double t) { return t; }, [](double) { return 1.0; }};
}

AnalyticMap analytic_rotation(double a) {
    return {[a](double t) { return t + a; }, [](double) { return 1.0; }};
}

AnalyticMap analytic_moebius(std::complex<double> a) {
    if (std::abs(a) >= 1.0)
        throw std::invalid_argument("analytic_moebius: parameter must be in the open disk");
    // arg((e^{it}-a)/(1-conj(a)e^{it})) = t + arg(1-a e^{-it}) - arg(conj term);
    // both args stay in (-pi/2, pi/2), so no unwrapping is needed. The
    // constant pins lift(0) = 0 (the map fixes 1).
    const double c0 = -2.0 * std::arg(1.0 - a);
    auto lift = [a, c0](double t) {
        const std::complex<double> w(std::cos(t), std::sin(t));
        return t + std::arg(1.0 - a * std::conj(w)) - std::arg(1.0 - std::conj(a) * w) + c0;
    };
    auto deriv = [a](double t) {
        const std::complex<double> w(std::cos(t), std::sin(t));
        return (1.0 - std::norm(a)) / std::norm(1.0 - std::conj(a) * w);
    };
    return {lift, deriv};
}

AnalyticMap analytic_sine(double eps, int k, double delta0) {
    if (std::abs(eps * k) >= 1.0)
        throw std::invalid_argument("analytic_sine: |eps*k| must be < 1");
    auto lift = [eps, k, delta0](double t) { return t + eps * std::sin(k * t + delta0); };
    auto deriv = [eps, k, delta0](double t) { return 1.0 + eps * k * std::cos(k * t + delta0); };
    return {lift, deriv};
}

AnalyticMap standard_map(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::vector<double> p =
        colon == std::string::npos ? std::vector<double>{} : parse_params(spec.substr(colon + 1));
    if (kind == "identity") return analytic_identity();
    if (kind == "rotation") {
        if (p.size() != 1) throw std::invalid_argument("rotation needs 1 parameter");
        return analytic_rotation(p[0]);
    }
    if (kind == "moebius") {
        if (p.empty() || p.size() > 2) throw std::invalid_argument("moebius needs 1 or 2 parameters");
        return analytic_moebius({p[0], p.size() == 2 ? p[1] : 0.0});
    }
    if (kind == "sine") {
        if (p.size() != 3) throw std::invalid_argument("sine needs eps,k,delta0");
        return analytic_sine(p[0], static_cast<int>(p[1]), p[2]);
    }
    throw std::invalid_argument("unknown map kind: " + kind);
}

CircleMap standard_map(const std::string& spec, std::size_t knots) {
    return standard_map(spec).sample(knots);
}

double qs_ratio(const CircleMap& map, std::size_t probes) {
    if (probes < 1) throw std::invalid_argument("qs_ratio: probes must be >= 1");
    double best = 1.0;
    for (std::size_t i = 0; i < probes; ++i) {
        const double theta = two_pi * static_cast<double>(i) / static_cast<double>(probes);
        double t = std::numbers::pi;
        for (int j = 0; j < 12; ++j, t *= 0.5) {
            const double f0 = map(theta);
            const double num = chord(map(theta + t), f0);
            const double den = chord(f0, map(theta - t));
            if (den == 0.0 || num == 0.0) continue;
            const double r = num / den;
            best = std::max({best, r, 1.0 / r});
        }
    }
    return best;
}

GridFunction log_deriv(const CircleMap& map, std::size_t size) {
    GridFunction out(size);
    const double h = two_pi / static_cast<double>(size);
    for (std::size_t j = 0; j < size; ++j) {
        const double t = out.theta(j);
        const double q = (map(t + h) - map(t - h)) / (2.0 * h);
        if (!(q > 0.0)) throw std::runtime_error("log_deriv: nonpositive difference quotient");
        out[j] = std::log(q);
    }
    return out;
}

double wp_energy(const CircleMap& map, std::size_t size) {
    const double n = sobolev_norm(pi0(log_deriv(map, size)), 0.5);
    return n * n;
}

GridFunction log_ratio(const CircleMap& map, std::size_t size, std::size_t base_index) {
    if (base_index >= size) throw std::invalid_argument("log_ratio: base index out of range");
    GridFunction out(size);
    const double t0 = out.theta(base_index);
    const double f0 = map(t0);
    for (std::size_t j = 0; j < size; ++j) {
        if (j == base_index) continue;
        const double t = out.theta(j);
        out[j] = std::log(chord(map(t), f0)) - std::log(chord(t, t0));
    }
    const std::size_t prev = (base_index + size - 1) % size;
    const std::size_t next = (base_index + 1) % size;
    out[base_index] = 0.5 * (out[prev] + out[next]);
    return out;
}

CircleMap mollify(const CircleMap& map, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("mollify: scale must be > 0");
    const std::size_t m = std::max<std::size_t>(2048, 4 * map.size());
    const double h = two_pi / static_cast<double>(m);
    std::vector<double> dev(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double t = h * static_cast<double>(j);
        dev[j] = map(t) - t;
    }
    for (int attempt = 0; attempt < 8; ++attempt, delta *= 0.5) {
        const int half = std::clamp(static_cast<int>(std::ceil(4.0 * delta / h)), 1,
                                    static_cast<int>(m) / 2 - 1);
        std::vector<double> w(2 * half + 1);
        double wsum = 0.0;
        for (int l = -half; l <= half; ++l) {
            const double x = static_cast<double>(l) * h / delta;
            w[l + half] = std::exp(-0.5 * x * x);
            wsum += w[l + half];
        }
        for (double& x : w) x /= wsum;
        std::vector<double> k(m), v(m);
        bool monotone = true;
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (int l = -half; l <= half; ++l) {
                const long idx = (static_cast<long>(j) + l + static_cast<long>(m)) % static_cast<long>(m);
                s += w[l + half] * dev[static_cast<std::size_t>(idx)];
            }
            k[j] = h * static_cast<double>(j);
            v[j] = k[j] + s;
            if (j > 0 && !(v[j] > v[j - 1])) monotone = false;
        }
        if (monotone && v.front() + two_pi > v.back()) return CircleMap(std::move(k), std::move(v));
    }
    throw std::runtime_error("mollify: could not preserve monotonicity");
}

} // namespace weldlab
