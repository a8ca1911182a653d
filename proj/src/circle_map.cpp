#include "weldlab/circle_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace weldlab {

CircleMap::CircleMap(std::vector<double> k, std::vector<double> f)
    : knots(std::move(k)), lift(std::move(f)) {
    if (knots.size() < 2 || knots.size() != lift.size())
        throw std::invalid_argument("CircleMap: need matching arrays of size >= 2");
    if (knots.front() < 0.0 || knots.back() >= two_pi)
        throw std::invalid_argument("CircleMap: knots must lie in [0, 2pi)");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i] > knots[i - 1]))
            throw std::invalid_argument("CircleMap: knots not strictly increasing");
        if (!(lift[i] > lift[i - 1]))
            throw std::invalid_argument("CircleMap: lift not strictly increasing");
    }
    if (!(lift.front() + two_pi > lift.back()))
        throw std::invalid_argument("CircleMap: winding number must be 1");
}

double CircleMap::operator()(double theta) const {
    const double t0 = knots.front();
    double w = std::floor((theta - t0) / two_pi);
    double th = theta - two_pi * w;
    if (th < t0) {  // floor round-off
        th += two_pi;
        w -= 1.0;
    }
    if (th >= t0 + two_pi) {
        th -= two_pi;
        w += 1.0;
    }
    auto it = std::upper_bound(knots.begin(), knots.end(), th);
    const std::size_t i = static_cast<std::size_t>(it - knots.begin()) - 1;
    const double x0 = knots[i];
    const double y0 = lift[i];
    double x1, y1;
    if (i + 1 < knots.size()) {
        x1 = knots[i + 1];
        y1 = lift[i + 1];
    } else {
        x1 = knots[0] + two_pi;
        y1 = lift[0] + two_pi;
    }
    return y0 + (y1 - y0) * (th - x0) / (x1 - x0) + two_pi * w;
}

CircleMap CircleMap::from_lift(const std::function<double(double)>& f, std::size_t m) {
    std::vector<double> k(m), v(m);
    for (std::size_t j = 0; j < m; ++j) {
        k[j] = two_pi * static_cast<double>(j) / static_cast<double>(m);
        v[j] = f(k[j]);
    }
    return CircleMap(std::move(k), std::move(v));
}

CircleMap invert(const CircleMap& map) {
    const std::size_t m = map.size();
    const double w = std::floor(map.lift.front() / two_pi);
    // Shift lift values into [a, a+2pi) with a in [0, 2pi); values past 2pi
    // wrap to the front, together with their preimages shifted by -2pi.
    std::vector<double> nk, nl;
    nk.reserve(m);
    nl.reserve(m);
    std::size_t i0 = m;
    for (std::size_t i = 0; i < m; ++i) {
        if (map.lift[i] - two_pi * w >= two_pi) {
            i0 = i;
            break;
        }
    }
    for (std::size_t i = i0; i < m; ++i) {
        nk.push_back(map.lift[i] - two_pi * (w + 1.0));
        nl.push_back(map.knots[i] - two_pi);
    }
    for (std::size_t i = 0; i < i0; ++i) {
        nk.push_back(map.lift[i] - two_pi * w);
        nl.push_back(map.knots[i]);
    }
    return CircleMap(std::move(nk), std::move(nl));
}

namespace {

double wrap_angle(double t) {
    double r = std::fmod(t, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

} // namespace

CircleMap compose(const CircleMap& outer, const CircleMap& inner) {
    // Union-refined knots: inner's own knots plus preimages of outer's knots,
    // so the composed piecewise-linear lift is exact at all breakpoints.
    const CircleMap inner_inv = invert(inner);
    std::vector<double> cand = inner.knots;
    for (double t : outer.knots) cand.push_back(wrap_angle(inner_inv(t)));
    std::sort(cand.begin(), cand.end());
    std::vector<double> k;
    k.reserve(cand.size());
    for (double t : cand) {
        if (k.empty() || t - k.back() > 1e-12) k.push_back(t);
    }
    std::vector<double> v(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) v[i] = outer(inner(k[i]));
    return CircleMap(std::move(k), std::move(v));
}

CircleMap normalize_fix1(const CircleMap& map) {
    const double c = map(0.0);
    std::vector<double> k, v;
    k.reserve(map.size() + 1);
    v.reserve(map.size() + 1);
    const bool has_zero_knot = map.knots.front() <= 1e-14;
    if (!has_zero_knot) {
        k.push_back(0.0);
        v.push_back(0.0);
    }
    for (std::size_t i = 0; i < map.size(); ++i) {
        k.push_back(map.knots[i]);
        v.push_back(map.lift[i] - c);
    }
    if (has_zero_knot) v.front() = 0.0;  // pin exactly, not just to round-off
    return CircleMap(std::move(k), std::move(v));
}

double sup_distance(const CircleMap& a, const CircleMap& b, std::size_t probes) {
    double m = 0.0;
    for (std::size_t j = 0; j < probes; ++j) {
        const double t = two_pi * static_cast<double>(j) / static_cast<double>(probes);
        m = std::max(m, std::abs(a(t) - b(t)));
    }
    return m;
}

} // namespace weldlab
