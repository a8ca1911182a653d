#include "weldlab/zipper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace weldlab {

namespace {

using cplx = std::complex<double>;

constexpr double inf = std::numeric_limits<double>::infinity();

// One geodesic unzip step in the upper half plane: the slit is the
// hyperbolic geodesic from 0 to w = a + bi. The Moebius part straightens it
// to a vertical segment [0, ih], the square root opens it up.
struct Elementary {
    double c = inf;  // center parameter; infinite when the slit is vertical
    double h = 0.0;  // straightened slit height

    explicit Elementary(cplx w) {
        const double a = w.real();
        const double b = w.imag();
        if (!(b > 0.0)) throw std::runtime_error("zipper: slit endpoint not in upper half plane");
        if (std::abs(a) > 1e-13 * b) c = (a * a + b * b) / (2.0 * a);
        h = (a * a + b * b) / b;
    }

    double moebius_real(double x) const {
        if (std::isinf(c)) return x;
        if (std::isinf(x)) return -2.0 * c;
        const double den = 2.0 * c - x;
        if (den == 0.0) return inf;
        return 2.0 * c * x / den;
    }

    // Boundary track: real points stay real, ordered along the line.
    double map_real(double x) const {
        const double t = moebius_real(x);
        if (std::isinf(t)) return inf;
        const double s = std::sqrt(t * t + h * h);
        return t >= 0.0 ? s : -s;
    }

    // Interior track: the branch with nonnegative imaginary part.
    cplx map_interior(cplx z) const {
        const cplx t = std::isinf(c) ? z : 2.0 * c * z / (2.0 * c - z);
        cplx s = std::sqrt(t * t + h * h);
        if (s.imag() < 0.0) s = -s;
        return s;
    }
};

double wrap_angle(double t) {
    double r = std::fmod(t, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

// Angle on the unit circle of the boundary point x (real, possibly infinite)
// under the Cayley map z -> (z - p)/(z - conj p) sending p to 0.
double cayley_angle(double x, cplx p) {
    if (std::isinf(x)) return 0.0;
    return std::arg((cplx(x, 0.0) - p) / (cplx(x, 0.0) - std::conj(p)));
}

} // namespace

JordanCurve JordanCurve::circle(cplx center, double radius, std::size_t n) {
    JordanCurve c;
    c.vertices.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = two_pi * static_cast<double>(k) / static_cast<double>(n);
        c.vertices[k] = center + radius * cplx(std::cos(t), std::sin(t));
    }
    c.contains_origin = std::abs(center) < radius;
    return c;
}

JordanCurve JordanCurve::ellipse(double semi_a, double semi_b, std::size_t n) {
    JordanCurve c;
    c.vertices.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = two_pi * static_cast<double>(k) / static_cast<double>(n);
        c.vertices[k] = cplx(semi_a * std::cos(t), semi_b * std::sin(t));
    }
    return c;
}

JordanCurve JordanCurve::star(double amp, int lobes, std::size_t n) {
    JordanCurve c;
    c.vertices.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = two_pi * static_cast<double>(k) / static_cast<double>(n);
        const double r = 1.0 + amp * std::cos(lobes * t);
        c.vertices[k] = r * cplx(std::cos(t), std::sin(t));
    }
    return c;
}

ZipperResult zipper_welding(const JordanCurve& curve) {
    const std::size_t n = curve.vertices.size();
    if (n < 4) throw std::invalid_argument("zipper_welding: need at least 4 vertices");
    if (!curve.contains_origin)
        throw std::invalid_argument("zipper_welding: curve must contain the origin");
    const std::vector<cplx>& z = curve.vertices;
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(z[k] - z[(k + 1) % n]) == 0.0)
            throw std::invalid_argument("zipper_welding: repeated consecutive vertices");

    // Initial map i sqrt((z - z1)/(z - z0)) opens the straight edge [z0, z1]
    // exactly: z0 -> infinity, z1 -> 0, the two edge sides cover the line.
    auto initial = [&](cplx p) {
        const cplx i(0.0, 1.0);
        return i * std::sqrt((p - z[1]) / (p - z[0]));
    };

    // Real prong tracks: vertices 1..n-2 acquire two boundary images (one per
    // curve side) once the unzip tip passes them; vertex 0 starts at
    // infinity, vertex n-1 ends at 0.
    std::vector<double> left(n, 0.0), right(n, 0.0);
    double x0 = inf;
    std::vector<cplx> pending(n);
    for (std::size_t k = 2; k < n; ++k) pending[k] = initial(z[k]);

    std::vector<Elementary> steps;
    steps.reserve(n - 2);
    for (std::size_t k = 2; k < n; ++k) {
        Elementary step(pending[k]);
        left[k - 1] = -step.h;  // previous tip splits into two prongs
        right[k - 1] = step.h;
        for (std::size_t j = 1; j + 1 < k; ++j) {
            left[j] = step.map_real(left[j]);
            right[j] = step.map_real(right[j]);
        }
        x0 = step.map_real(x0);
        for (std::size_t j = k + 1; j < n; ++j) pending[j] = step.map_interior(pending[j]);
        left[k] = right[k] = 0.0;
        steps.push_back(step);
    }

    auto push_interior = [&](cplx p) {
        p = initial(p);
        for (const Elementary& s : steps) p = s.map_interior(p);
        return p;
    };

    // Closing: the remaining slit runs from 0 (vertex n-1) to x0 (vertex 0),
    // approximated by the geodesic between them. mu sends it to the vertical
    // ray and the square opens it; the two complementary components land in
    // the upper and lower half planes.
    auto mu = [x0](double x) -> double {
        if (std::isinf(x)) return std::isinf(x0) ? x : -x0;
        if (std::isinf(x0)) return x;
        if (x == x0) return inf;
        return x / (1.0 - x / x0);
    };
    auto mu_c = [x0](cplx p) -> cplx {
        if (std::isinf(x0)) return p;
        return p / (1.0 - p / x0);
    };

    const cplx zeta0 = mu_c(push_interior(cplx(0.0, 0.0)));
    const cplx zeta_inf = mu_c(push_interior(cplx(1e12, 0.0)));  // proxy for infinity
    const double side_int = zeta0.real() >= 0.0 ? 1.0 : -1.0;
    const cplx z_int = zeta0 * zeta0;
    const cplx z_ext = zeta_inf * zeta_inf;
    if (z_int.imag() * z_ext.imag() >= 0.0)
        throw std::runtime_error("zipper_welding: components not separated (bad curve?)");

    // Per-vertex boundary angles for the interior and exterior disks.
    std::vector<double> alpha(n), beta(n);
    for (std::size_t k = 0; k < n; ++k) {
        double u, v;  // interior-side / exterior-side boundary coordinates
        if (k == 0) {
            u = v = inf;
        } else if (k == n - 1) {
            u = v = 0.0;
        } else {
            const double ml = mu(left[k]);
            const double mr = mu(right[k]);
            const bool left_is_interior = (ml >= 0.0 ? 1.0 : -1.0) == side_int;
            const double mi = left_is_interior ? ml : mr;
            const double me = left_is_interior ? mr : ml;
            u = std::isinf(mi) ? inf : mi * mi;
            v = std::isinf(me) ? inf : me * me;
        }
        alpha[k] = wrap_angle(cayley_angle(u, z_int));
        // The exterior disk parametrization is the reciprocal Cayley map,
        // which conjugates boundary angles.
        beta[k] = wrap_angle(-cayley_angle(v, z_ext));
    }

    // Assemble psi from the (alpha_k, beta_k) pairs: sort by alpha, unwrap
    // beta into a strictly increasing degree-1 lift. Vertex 0 anchors the
    // shared root psi(1) = 1.
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return alpha[a] < alpha[b]; });

    std::vector<double> knots, lift;
    knots.reserve(n);
    lift.reserve(n);
    std::size_t dropped = 0;
    for (std::size_t idx : order) {
        const double a = alpha[idx];
        double b = beta[idx];
        if (!knots.empty()) {
            if (a - knots.back() <= 1e-12) {
                ++dropped;
                continue;
            }
            double d = std::fmod(b - wrap_angle(lift.back()), two_pi);
            if (d > std::numbers::pi) d -= two_pi;
            if (d < 0.0) d += two_pi;
            if (d <= 0.0 || d > std::numbers::pi) {
                ++dropped;
                continue;
            }
            b = lift.back() + d;
        }
        knots.push_back(a);
        lift.push_back(b);
    }
    if (dropped > n / 10)
        throw std::runtime_error("zipper_welding: boundary correspondence not monotone");
    if (knots.size() < 2 || !(lift.front() + two_pi > lift.back()))
        throw std::runtime_error("zipper_welding: degenerate welding");

    ZipperResult result;
    result.welding = normalize_fix1(CircleMap(std::move(knots), std::move(lift)));

    // Conformal radius |f'(0)|: reciprocal of the derivative at the origin of
    // the interior-to-disk map, by symmetric finite differences over eight
    // directions (odd error terms cancel).
    double rmin = inf;
    for (const cplx& p : z) rmin = std::min(rmin, std::abs(p));
    const double delta = 1e-4 * rmin;
    double acc = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double t = two_pi * static_cast<double>(j) / 8.0;
        const cplx w = mu_c(push_interior(delta * cplx(std::cos(t), std::sin(t))));
        const cplx img = w * w;
        const cplx disk = (img - z_int) / (img - std::conj(z_int));
        acc += std::abs(disk);
    }
    result.scale = delta / (acc / 8.0);
    return result;
}

JordanCurve normalize_curve(const JordanCurve& curve, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("normalize_curve: scale must be positive");
    JordanCurve out = curve;
    for (auto& v : out.vertices) v /= scale;
    return out;
}

std::vector<WeldingFixture> welding_fixture_suite(std::size_t samples) {
    std::vector<WeldingFixture> out;
    const std::vector<std::pair<std::string, JordanCurve>> curves = {
        {"unit-circle", JordanCurve::circle({0.0, 0.0}, 1.0, samples)},
        {"radius-2-circle", JordanCurve::circle({0.0, 0.0}, 2.0, samples)},
        {"offset-circle", JordanCurve::circle({0.5, 0.0}, 1.0, samples)},
        {"ellipse-2-1", JordanCurve::ellipse(2.0, 1.0, samples)},
        {"star-3", JordanCurve::star(0.2, 3, samples)},
    };
    for (const auto& [name, curve] : curves) {
        const ZipperResult r = zipper_welding(curve);
        out.push_back({name, curve, r.welding, r.scale});
    }
    return out;
}

} // namespace weldlab
