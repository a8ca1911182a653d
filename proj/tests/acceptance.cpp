// Acceptance suite: one line per criterion, "PASS criterion-k: ..." or
// "FAIL criterion-k: ...". Exit status is the number of failed criteria.
//
// Tolerances are pinned here, not configurable: statistical checks use 3
// batch standard errors with fixed seeds, deterministic checks use the
// absolute bounds stated next to each criterion.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "weldlab/gmc.hpp"
#include "weldlab/homeo.hpp"
#include "weldlab/io.hpp"
#include "weldlab/pullback.hpp"
#include "weldlab/sleweld.hpp"
#include "weldlab/spectra.hpp"
#include "weldlab/zipper.hpp"

using namespace weldlab;

namespace {

int failures = 0;

void report(int idx, bool pass, const std::string& detail) {
    std::printf("%s criterion-%d: %s\n", pass ? "PASS" : "FAIL", idx, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double m = 0.0;
    for (double x : v) m += x;
    m /= n;
    double var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    var /= (n - 1.0);
    return {m, std::sqrt(var / n)};
}

// Covariance of the truncated field at fixed angle pairs vs -2 log chord.
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t order = 1 << 10, trials = 100000;
    const std::vector<std::pair<double, double>> pairs = {
        {0.3, 1.1}, {1.0, 3.0}, {2.0, 2.25}};
    std::vector<std::vector<double>> products(pairs.size());
    for (auto& p : products) p.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng(split_seed(1001, i));
        const FourierField h = sample_lgf(order, rng);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            products[k].push_back(h.evaluate_at(pairs[k].first) * h.evaluate_at(pairs[k].second));
    }
    bool pass = true;
    double worst_z = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const double chord = 2.0 * std::abs(std::sin((pairs[k].second - pairs[k].first) / 2.0));
        const double target = -2.0 * std::log(chord);
        const MeanSe ms = mean_se(products[k]);
        const double z = std::abs(ms.mean - target) / ms.se;
        worst_z = std::max(worst_z, z);
        if (z > 3.0) pass = false;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(1, pass && secs < 60.0,
           fmt("LGF covariance vs -2 log chord, worst |z| = %.2f over %zu pairs, %.1fs",
               worst_z, pairs.size(), secs));
}

void criterion2() {
    const double zeta3 = 1.2020569031595942854;
    const double target = -7.0 * zeta3 / (std::numbers::pi * std::numbers::pi);
    const double value = apery_check(1 << 10);
    report(2, std::abs(value - target) < 1e-3,
           fmt("log kernel quadrature %.6f vs closed form %.6f", value, target));
}

void criterion3() {
    const std::size_t K = 32;
    auto defect = [&](std::size_t g) {
        const OperatorBlocks b = compute_blocks(standard_map("sine:0.3,1,0", g), K, g);
        const auto [d1, d2] = symplectic_defect(b);
        return std::max(d1, d2);
    };
    const double d14 = defect(1 << 14);
    const double d15 = defect(1 << 15);
    const bool halves = d15 <= std::max(0.5 * d14, 1e-9);
    const OperatorBlocks mb =
        compute_blocks(standard_map("moebius:0.3", 1 << 14), K, 1 << 14);
    const double hs = hs_norm_N(mb);
    report(3, d14 < 1e-6 && halves && hs < 1e-8,
           fmt("symplectic defect %.2e -> %.2e under grid doubling, moebius hs_norm_N %.2e",
               d14, d15, hs));
}

void criterion4() {
    const std::vector<double> eps = {0.1, 0.2, 0.4};
    std::vector<double> y;
    for (double e : eps) {
        const std::string spec = "sine:" + std::to_string(e) + ",1,0";
        y.push_back(cov_defect(compute_blocks(standard_map(spec, 1 << 13), 32, 1 << 13)));
    }
    // least-squares line through the three points
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        sx += eps[i];
        sy += y[i];
        sxx += eps[i] * eps[i];
        sxy += eps[i] * y[i];
    }
    const double slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
    const double icept = (sy - slope * sx) / 3.0;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        ss_res += std::pow(y[i] - slope * eps[i] - icept, 2);
        ss_tot += std::pow(y[i] - sy / 3.0, 2);
    }
    const double r2 = 1.0 - ss_res / ss_tot;
    const double exponent = std::log(y[2] / y[0]) / std::log(4.0);
    report(4, r2 > 0.99,
           fmt("cov_defect %.3e/%.3e/%.3e at eps 0.1/0.2/0.4, linear fit R^2 = %.5f "
               "(measured power-law exponent %.2f)",
               y[0], y[1], y[2], r2, exponent));
}

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t order = 1 << 8, g = 1 << 9, trials = 10000, arcs = 16;
    const GridFunction var = truncated_variance(order, g);
    std::vector<std::vector<double>> arc_mass(arcs, std::vector<double>());
    for (auto& a : arc_mass) a.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng(split_seed(5005, i));
        const BoundaryMeasure m = gmc_measure(evaluate(sample_lgf(order, rng), g), var, 1.0);
        for (std::size_t a = 0; a < arcs; ++a)
            arc_mass[a].push_back(m.cmf[(a + 1) * g / arcs] - m.cmf[a * g / arcs]);
    }
    const double target = two_pi / static_cast<double>(arcs);
    bool pass = true;
    double worst_z = 0.0;
    for (std::size_t a = 0; a < arcs; ++a) {
        const MeanSe ms = mean_se(arc_mass[a]);
        const double z = std::abs(ms.mean - target) / ms.se;
        worst_z = std::max(worst_z, z);
        if (z > 3.0) pass = false;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(5, pass && secs < 120.0,
           fmt("mean chaos mass per arc vs arc length, worst |z| = %.2f over %zu arcs, %.1fs",
               worst_z, arcs, secs));
}

void criterion6() {
    Rng rng(606);
    const FourierField h = sample_lgf(1 << 8, rng);
    bool pass = true;
    double worst_sub = 0.0;
    for (const char* spec : {"sine:0.2,1,0", "moebius:0.3"}) {
        const CoordinateChangeReport r =
            coordinate_change_check(h, standard_map(spec), 1.0, 1 << 14, 16, 5);
        worst_sub = std::max(worst_sub, r.substitution_max_rel_error);
        if (r.substitution_max_rel_error >= 1e-6 || !r.variance_monotone) pass = false;
    }
    report(6, pass,
           fmt("substitution identity worst rel error %.2e, variance correction monotone over 4 halvings",
               worst_sub));
}

void criterion7() {
    const double gamma = 1.0;
    const std::size_t K = 16, g = 1 << 13, trials = 100000;
    const AnalyticMap phi = standard_map("sine:0.2,1,0");
    const OperatorBlocks blocks = compute_blocks(phi.sample(g), K, g);
    GridFunction logd(g);
    const double q = 2.0 / gamma + gamma / 2.0;
    for (std::size_t j = 0; j < g; ++j) logd.values[j] = q * std::log(phi.deriv(logd.theta(j)));
    FourierField shift = analyze(pi0(logd));
    shift.order = K;
    shift.coeffs.resize(K);
    const DensityModel model = build_density(blocks, shift);

    std::vector<double> rho1, rho2;
    rho1.reserve(trials);
    rho2.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng(split_seed(707, i));
        const double r = eval_density(model, sample_lgf(K, rng));
        rho1.push_back(r);
        rho2.push_back(r * r);
    }
    const MeanSe m1 = mean_se(rho1);
    const MeanSe m2 = mean_se(rho2);
    const double target2 = model.expected_rho_squared();
    const double z1 = std::abs(m1.mean - 1.0) / m1.se;
    const double z2 = std::abs(m2.mean - target2) / m2.se;
    report(7, z1 <= 3.0 && z2 <= 3.0,
           fmt("E[rho] = %.4f (|z|=%.2f), E[rho^2] = %.4f vs %.4f (|z|=%.2f)",
               m1.mean, z1, m2.mean, target2, z2));
}

void criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    const AnalyticMap phi = standard_map("sine:0.2,1,0");
    const std::vector<std::pair<std::string, TestStatistic>> stats = {
        {"sin_at_1", [](const CircleMap& m) { return std::sin(m(1.0)); }},
        {"cos_at_3", [](const CircleMap& m) { return std::cos(m(3.0)); }},
        {"upper_half_at_pi",
         [](const CircleMap& m) {
             const double v = std::fmod(m(std::numbers::pi), two_pi);
             return (v > 0.0 && v < std::numbers::pi) ? 1.0 : 0.0;
         }},
    };
    std::size_t threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    const ExperimentReport base =
        importance_identity(1.0, phi, stats, 10000, 1 << 7, 64, 1 << 10, 808, 20, threads);
    const ExperimentReport fine =
        importance_identity(1.0, phi, stats, 10000, 1 << 8, 128, 1 << 10, 808, 20, threads);
    auto discrepancy = [](const ExperimentReport& r) {
        double d = 0.0;
        for (const auto& e : r.estimators) d += std::abs(e.primary - e.reweighted);
        return d;
    };
    auto noise = [](const ExperimentReport& r) {
        double v = 0.0;
        for (const auto& e : r.estimators) v += e.combined_se() * e.combined_se();
        return v;
    };
    const double d_base = discrepancy(base), d_fine = discrepancy(fine);
    // The true truncation bias is below the Monte Carlo resolution at this
    // sample count, so the doubling trend is tested as "no significant
    // increase" rather than a strict decrease of two noise-dominated values.
    const double trend_noise = 2.0 * std::sqrt(noise(base) + noise(fine));
    double worst = 0.0;
    for (const auto& e : base.estimators) worst = std::max(worst, e.discrepancy_sigmas());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(8, base.passed && d_fine <= d_base + trend_noise && secs < 1800.0,
           fmt("importance identity worst |z| = %.2f; discrepancy %.4f -> %.4f (noise band %.4f) "
               "under N,K doubling, %.0fs",
               worst, d_base, d_fine, trend_noise, secs));
}

void criterion9() {
    const std::size_t order = 1 << 8, g = 1 << 9, trials = 100;
    const GridFunction var = truncated_variance(order, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const WeldingSample w = sample_sle_welding(1.0, order, g, split_seed(909, i));
        const BoundaryMeasure mu = normalize(gmc_measure(evaluate(w.field1, g), var, 1.0));
        const BoundaryMeasure pushed = pushforward(welding_homeo(mu), mu);
        for (std::size_t j = 0; j <= g; ++j) {
            const double uniform = static_cast<double>(j) / static_cast<double>(g);
            worst = std::max(worst, std::abs(pushed.cmf[j] - uniform));
        }
    }
    report(9, worst <= 1.0 / static_cast<double>(g),
           fmt("pushforward of source chaos under its welding, sup cmf error %.2e vs bound %.2e",
               worst, 1.0 / static_cast<double>(g)));
}

void criterion10() {
    const ZipperResult unit = zipper_welding(JordanCurve::circle({0.0, 0.0}, 1.0, 256));
    const double id_err = sup_distance(unit.welding, analytic_identity().sample(256));

    const ZipperResult off = zipper_welding(JordanCurve::circle({0.5, 0.0}, 1.0, 256));
    const std::size_t g = 1 << 12;
    const double hs = hs_norm_N(compute_blocks(off.welding, 16, g));

    const double e1 = wp_energy(zipper_welding(JordanCurve::ellipse(2.0, 1.0, 256)).welding);
    const double e2 = wp_energy(zipper_welding(JordanCurve::ellipse(2.0, 1.0, 512)).welding);
    const double drift = std::abs(e2 - e1) / e1;

    report(10, id_err < 1e-3 && hs < 1e-3 && drift < 0.05,
           fmt("unit circle sup error %.2e, off-center hs_norm_N %.2e, ellipse energy drift %.1f%%",
               id_err, hs, drift * 100.0));
}

void criterion11() {
    auto run = [] {
        std::string out;
        for (std::size_t i = 0; i < 10; ++i)
            out += to_json(sample_sle_welding(1.0, 64, 256, split_seed(7, i))).dump() + "\n";
        const ExperimentReport r = importance_identity(
            1.0, standard_map("sine:0.1,1,0"),
            {{"sin_at_1", [](const CircleMap& m) { return std::sin(m(1.0)); }}}, 100, 16, 8,
            256, 7, 10, 2);
        out += to_json(r).dump();
        return out;
    };
    const std::string a = run();
    const std::string b = run();
    report(11, a == b, fmt("repeated seeded runs byte-identical (%zu bytes)", a.size()));
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures;
}
