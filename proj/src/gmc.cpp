#include "weldlab/gmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace weldlab {

namespace {

void check_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma < 2.0))
        throw std::invalid_argument("gamma must lie in (0,2)");
}

// Composite 8-point Gauss-Legendre quadrature of f over [a, b].
template <typename F>
double integrate(F&& f, double a, double b, std::size_t panels) {
    static const double node[4] = {0.1834346424956498, 0.5255324099163290,
                                   0.7966664774136267, 0.9602898564975363};
    static const double weight[4] = {0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};
    const double h = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = a + (static_cast<double>(p) + 0.5) * h;
        double s = 0.0;
        for (int q = 0; q < 4; ++q) {
            const double d = 0.5 * h * node[q];
            s += weight[q] * (f(mid - d) + f(mid + d));
        }
        total += 0.5 * h * s;
    }
    return total;
}

double chord(double alpha, double beta) {
    return 2.0 * std::abs(std::sin(0.5 * (alpha - beta)));
}

} // namespace

double BoundaryMeasure::mass(double theta) const {
    const std::size_t g = size();
    const double w = std::floor(theta / two_pi);
    double th = theta - two_pi * w;
    if (th < 0.0) th = 0.0;
    if (th >= two_pi) th = two_pi;
    const double pos = th / two_pi * static_cast<double>(g);
    const std::size_t j = std::min(static_cast<std::size_t>(pos), g - 1);
    const double frac = pos - static_cast<double>(j);
    return cmf[j] + frac * (cmf[j + 1] - cmf[j]) + w * total();
}

BoundaryMeasure gmc_measure(const GridFunction& field_values, const GridFunction& variance,
                            double gamma) {
    check_gamma(gamma);
    if (field_values.size() != variance.size())
        throw std::invalid_argument("gmc_measure: size mismatch");
    const std::size_t g = field_values.size();
    // Cell mass = trapezoid of the exponentiated weight at the cell
    // endpoints. Averaging weights, not log-weights, keeps the exact
    // per-cell martingale identity E[mass] = cell length.
    BoundaryMeasure out;
    out.gamma = gamma;
    out.cmf.assign(g + 1, 0.0);
    const double cell = two_pi / static_cast<double>(g);
    std::vector<double> w(g);
    for (std::size_t j = 0; j < g; ++j)
        w[j] = std::exp(0.5 * gamma * field_values[j] - 0.125 * gamma * gamma * variance[j]);
    for (std::size_t j = 0; j < g; ++j)
        out.cmf[j + 1] = out.cmf[j] + cell * 0.5 * (w[j] + w[(j + 1) % g]);
    return out;
}

BoundaryMeasure gmc_with_insertion(const GridFunction& field_values,
                                   const GridFunction& variance, double gamma, double alpha,
                                   double cap) {
    check_gamma(gamma);
    if (alpha < 0.0) throw std::invalid_argument("gmc_with_insertion: alpha must be >= 0");
    if (alpha == 0.0) return gmc_measure(field_values, variance, gamma);
    const std::size_t g = field_values.size();
    const double cell = two_pi / static_cast<double>(g);
    auto factor = [&](double t) {
        const double s = 2.0 * std::abs(std::sin(0.5 * t));
        const double ins = (s == 0.0) ? cap : std::min(-alpha * std::log(s), cap);
        return std::exp(0.5 * gamma * ins);
    };
    // Trapezoid of the regular weight as in gmc_measure; the insertion factor
    // is taken per cell, with midpoint subsampling on the cells adjacent to
    // the singular point where endpoint values are not representative.
    std::vector<double> w(g);
    for (std::size_t j = 0; j < g; ++j)
        w[j] = std::exp(0.5 * gamma * field_values[j] - 0.125 * gamma * gamma * variance[j]);
    const std::size_t near = 4;
    BoundaryMeasure out;
    out.gamma = gamma;
    out.cmf.assign(g + 1, 0.0);
    for (std::size_t j = 0; j < g; ++j) {
        double ins_avg;
        if (j < near || j >= g - near) {
            const std::size_t sub = 64;
            double acc = 0.0;
            for (std::size_t i = 0; i < sub; ++i)
                acc += factor(field_values.theta(j) +
                              (static_cast<double>(i) + 0.5) * cell / static_cast<double>(sub));
            ins_avg = acc / static_cast<double>(sub);
        } else {
            ins_avg = 0.5 * (factor(field_values.theta(j)) +
                             factor(two_pi * static_cast<double>(j + 1) / static_cast<double>(g)));
        }
        out.cmf[j + 1] = out.cmf[j] + cell * 0.5 * (w[j] + w[(j + 1) % g]) * ins_avg;
    }
    return out;
}

BoundaryMeasure normalize(const BoundaryMeasure& measure) {
    const double t = measure.total();
    if (!(t > 0.0)) throw std::invalid_argument("normalize: total mass must be positive");
    BoundaryMeasure out = measure;
    for (double& c : out.cmf) c /= t;
    out.cmf.back() = 1.0;
    return out;
}

CircleMap welding_homeo(const BoundaryMeasure& measure) {
    const BoundaryMeasure p = normalize(measure);
    const std::size_t g = p.size();
    std::vector<double> k(g), v(g);
    for (std::size_t j = 0; j < g; ++j) {
        k[j] = two_pi * static_cast<double>(j) / static_cast<double>(g);
        v[j] = two_pi * p.cmf[j];
    }
    return CircleMap(std::move(k), std::move(v));
}

BoundaryMeasure pushforward(const CircleMap& map, const BoundaryMeasure& measure) {
    const CircleMap inv = invert(map);
    const std::size_t g = measure.size();
    BoundaryMeasure out;
    out.gamma = measure.gamma;
    out.cmf.assign(g + 1, 0.0);
    const double base = measure.mass(inv(0.0));
    for (std::size_t j = 1; j <= g; ++j) {
        const double t = two_pi * static_cast<double>(j) / static_cast<double>(g);
        out.cmf[j] = measure.mass(inv(t)) - base;
    }
    // Guard against round-off dips; masses are nondecreasing by construction.
    for (std::size_t j = 1; j <= g; ++j) out.cmf[j] = std::max(out.cmf[j], out.cmf[j - 1]);
    return out;
}

CoordinateChangeReport coordinate_change_check(const FourierField& field, const AnalyticMap& map,
                                               double gamma, std::size_t grid, std::size_t arcs,
                                               std::size_t eps_levels) {
    check_gamma(gamma);
    CoordinateChangeReport report;
    const double var = truncated_variance(field.order, 2)[0];

    auto weight = [&](double t) {
        return std::exp(0.5 * gamma * field.evaluate_at(t) - 0.125 * gamma * gamma * var);
    };

    // (a) Change of variables per arc [0, b]: the image-side integral of the
    // density equals the source-side integral with the Jacobian.
    const std::size_t per_unit = std::max<std::size_t>(4 * field.order, 64);
    for (std::size_t a = 1; a <= arcs; ++a) {
        const double b = two_pi * static_cast<double>(a) / static_cast<double>(arcs);
        const std::size_t panels =
            std::max<std::size_t>(8, static_cast<std::size_t>(b / two_pi * static_cast<double>(per_unit)));
        const double image = integrate(weight, map.lift(0.0), map.lift(b), panels);
        const double source = integrate(
            [&](double t) { return weight(map.lift(t)) * map.deriv(t); }, 0.0, b, panels);
        report.substitution_max_rel_error = std::max(
            report.substitution_max_rel_error, std::abs(image - source) / std::abs(source));
    }
    (void)grid;

    // (b) Double small-arc averages of the log-ratio kernel
    // u(s,t) = log|phi(e^{is}) - phi(e^{it})| - log|e^{is} - e^{it}|:
    // (2 eps)^{-2} double-int of -2u over [theta-eps, theta+eps]^2 converges
    // uniformly to -2 log|phi'| as eps -> 0.
    const std::size_t probes = 64;
    double eps = 0.25;
    double prev = std::numeric_limits<double>::infinity();
    report.variance_monotone = true;
    for (std::size_t level = 0; level < eps_levels; ++level, eps *= 0.5) {
        double sup = 0.0;
        for (std::size_t i = 0; i < probes; ++i) {
            const double theta = two_pi * static_cast<double>(i) / static_cast<double>(probes);
            auto inner = [&](double s) {
                return integrate(
                    [&](double t) {
                        if (std::abs(s - t) < 1e-14) return std::log(map.deriv(0.5 * (s + t)));
                        return std::log(chord(map.lift(s), map.lift(t))) - std::log(chord(s, t));
                    },
                    theta - eps, theta + eps, 4);
            };
            const double avg = integrate(inner, theta - eps, theta + eps, 4) / (4.0 * eps * eps);
            sup = std::max(sup, 2.0 * std::abs(avg - std::log(map.deriv(theta))));
        }
        report.variance_eps.push_back(eps);
        report.variance_sup_errors.push_back(sup);
        if (sup > prev + 1e-12) report.variance_monotone = false;  // tolerate a round-off floor
        prev = sup;
    }
    return report;
}

double apery_check(std::size_t quadrature) {
    if (quadrature < 256) throw std::invalid_argument("apery_check: grid too small");
    const std::size_t g = quadrature;
    const double h = std::numbers::pi / static_cast<double>(g);

    // The chord kernel log|e^{ia} - e^{ib}| = log(2|sin((a-b)/2)|) depends on
    // the offset a - b only, so the double sum collapses along diagonals.
    // Cells near the diagonal contain the log singularity; there the log|u|
    // part is integrated exactly against the triangular density of a - b over
    // a cell pair, and only the smooth remainder g(u) = kernel - log|u| is
    // taken at the midpoint.
    auto anti = [](double x) { return x == 0.0 ? 0.0 : x * (std::log(std::abs(x)) - 1.0); };
    auto anti_x = [](double x) {
        return x == 0.0 ? 0.0 : 0.5 * x * x * std::log(std::abs(x)) - 0.25 * x * x;
    };
    // int_{-h}^{h} (h - |t|) log|t + c| dt
    auto band_exact = [&](double c) {
        const double left = (h - c) * (anti(c) - anti(c - h)) + (anti_x(c) - anti_x(c - h));
        const double right = (h + c) * (anti(c + h) - anti(c)) - (anti_x(c + h) - anti_x(c));
        return left + right;
    };
    auto smooth_part = [](double u) {
        if (u == 0.0) return 0.0;
        return std::log(2.0 * std::abs(std::sin(0.5 * u))) - std::log(std::abs(u));
    };

    double total = 0.0;
    const long gl = static_cast<long>(g);
    for (long d = -(gl - 1); d < gl; ++d) {
        const double count = static_cast<double>(gl - std::labs(d));
        const double u = static_cast<double>(d) * h;
        double cell;
        if (std::labs(d) <= 8) {
            cell = band_exact(u) + h * h * smooth_part(u);
        } else {
            cell = h * h * std::log(2.0 * std::abs(std::sin(0.5 * u)));
        }
        total += count * cell;
    }
    const double pi = std::numbers::pi;
    return 2.0 / (pi * pi) * total;
}

} // namespace weldlab
