#include "weldlab/sleweld.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "weldlab/rng.hpp"

namespace weldlab {

namespace {

double wrap_angle(double t) {
    double r = std::fmod(t, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

CircleMap gmc_welding(const FourierField& field, double gamma, std::size_t grid, double alpha,
                      double cap) {
    const GridFunction values = evaluate(field, grid);
    const GridFunction var = truncated_variance(field.order, grid);
    const BoundaryMeasure m = alpha > 0.0
                                  ? gmc_with_insertion(values, var, gamma, alpha, cap)
                                  : gmc_measure(values, var, gamma);
    return welding_homeo(normalize(m));
}

} // namespace

double EstimatorComparison::combined_se() const {
    return std::sqrt(primary_se * primary_se + reweighted_se * reweighted_se);
}

double EstimatorComparison::discrepancy_sigmas() const {
    const double se = combined_se();
    if (se == 0.0) return primary == reweighted ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(primary - reweighted) / se;
}

WeldingSample sample_sle_welding(double gamma, std::size_t order, std::size_t grid,
                                 std::uint64_t seed) {
    WeldingSample s;
    s.gamma = gamma;
    s.kappa = gamma * gamma;
    s.seed1 = split_seed(seed, 0);
    s.seed2 = split_seed(seed, 1);
    s.provenance = "insertion";
    Rng r1(s.seed1), r2(s.seed2);
    s.field1 = sample_lgf(order, r1);
    s.field2 = sample_lgf(order, r2);
    const double cap = default_insertion_cap(gamma, order);
    const CircleMap phi1 = gmc_welding(s.field1, gamma, grid, 0.0, 0.0);
    const CircleMap phi2 = gmc_welding(s.field2, gamma, grid, gamma, cap);
    s.map = normalize_fix1(compose(invert(phi2), phi1));
    return s;
}

WeldingSample sample_rotated_welding(double gamma, std::size_t order, std::size_t grid,
                                     std::uint64_t seed) {
    WeldingSample s;
    s.gamma = gamma;
    s.kappa = gamma * gamma;
    s.seed1 = split_seed(seed, 0);
    s.seed2 = split_seed(seed, 1);
    s.provenance = "rotated";
    Rng r1(s.seed1), r2(s.seed2), r3(split_seed(seed, 2));
    s.field1 = sample_lgf(order, r1);
    s.field2 = sample_lgf(order, r2);
    const double a = two_pi * r3.uniform();
    const CircleMap phi1 = gmc_welding(s.field1, gamma, grid, 0.0, 0.0);
    const CircleMap phi2 = gmc_welding(s.field2, gamma, grid, 0.0, 0.0);
    const CircleMap rot = CircleMap::from_lift([a](double t) { return t + a; }, 16);
    s.map = normalize_fix1(compose(invert(phi2), compose(rot, phi1)));
    return s;
}

SampleGenerator sle_welding_generator(double gamma, std::size_t order, std::size_t grid) {
    return [gamma, order, grid](std::uint64_t seed) {
        return sample_sle_welding(gamma, order, grid, seed);
    };
}

SampleGenerator deform(SampleGenerator base, const CircleMap& phi, const std::string& side) {
    if (std::abs(wrap_angle(phi(0.0))) > 1e-9 && std::abs(wrap_angle(phi(0.0)) - two_pi) > 1e-9)
        throw std::invalid_argument("deform: phi must fix 1");
    if (side != "pre" && side != "post") throw std::invalid_argument("deform: side must be pre|post");
    const bool pre = side == "pre";
    const CircleMap phi_inv = invert(phi);
    return [base, phi, phi_inv, pre](std::uint64_t seed) {
        WeldingSample s = base(seed);
        s.map = normalize_fix1(pre ? compose(s.map, phi) : compose(phi_inv, s.map));
        return s;
    };
}

ExperimentReport importance_identity(
    double gamma, const AnalyticMap& phi,
    const std::vector<std::pair<std::string, TestStatistic>>& stats, std::size_t samples,
    std::size_t order, std::size_t block_dim, std::size_t grid, std::uint64_t seed,
    std::size_t batches, std::size_t threads) {
    if (batches < 2 || samples < batches)
        throw std::invalid_argument("importance_identity: need samples >= batches >= 2");

    const CircleMap phi_cm = phi.sample(grid);
    const std::size_t quad = std::max<std::size_t>(grid, 16 * block_dim);
    const OperatorBlocks blocks = compute_blocks(phi_cm, block_dim, quad);

    // Shift field: Q log|phi'| with Q = 2/gamma + gamma/2, mean-zero part.
    const double q = 2.0 / gamma + 0.5 * gamma;
    GridFunction ld(quad);
    for (std::size_t j = 0; j < quad; ++j) ld[j] = q * std::log(phi.deriv(ld.theta(j)));
    FourierField shift_full = analyze(pi0(ld));
    FourierField shift(block_dim);
    for (std::size_t n = 1; n <= block_dim && n <= shift_full.order; ++n)
        shift.coeffs[n - 1] = shift_full.coeffs[n - 1];
    const DensityModel model = build_density(blocks, shift);

    const std::size_t m = stats.size();
    std::vector<std::vector<double>> primary_vals(m, std::vector<double>(samples));
    std::vector<std::vector<double>> reweighted_vals(m, std::vector<double>(samples));

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const WeldingSample s = sample_sle_welding(gamma, order, grid, split_seed(seed, i));
            const CircleMap deformed = normalize_fix1(compose(s.map, phi_cm));
            const double rho = eval_density(model, s.field1);
            for (std::size_t k = 0; k < m; ++k) {
                primary_vals[k][i] = stats[k].second(deformed);
                reweighted_vals[k][i] = rho * stats[k].second(s.map);
            }
        }
    };
    if (threads <= 1) {
        work(0, samples);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (samples + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::size_t b = std::min(t * chunk, samples);
            const std::size_t e = std::min(b + chunk, samples);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    auto batch_stats = [&](const std::vector<double>& vals, double& mean, double& se) {
        const std::size_t per = samples / batches;
        std::vector<double> bm(batches, 0.0);
        for (std::size_t b = 0; b < batches; ++b) {
            const std::size_t hi = (b + 1 == batches) ? samples : (b + 1) * per;
            for (std::size_t i = b * per; i < hi; ++i) bm[b] += vals[i];
            bm[b] /= static_cast<double>(hi - b * per);
        }
        mean = 0.0;
        for (double v : bm) mean += v;
        mean /= static_cast<double>(batches);
        double var = 0.0;
        for (double v : bm) var += (v - mean) * (v - mean);
        se = std::sqrt(var / static_cast<double>(batches - 1) / static_cast<double>(batches));
    };

    ExperimentReport report;
    report.samples = samples;
    report.batches = batches;
    report.order = order;
    report.block_dim = block_dim;
    report.gamma = gamma;
    report.passed = true;
    for (std::size_t k = 0; k < m; ++k) {
        EstimatorComparison c;
        c.name = stats[k].first;
        batch_stats(primary_vals[k], c.primary, c.primary_se);
        batch_stats(reweighted_vals[k], c.reweighted, c.reweighted_se);
        if (c.discrepancy_sigmas() > 3.0) report.passed = false;
        report.estimators.push_back(c);
    }
    return report;
}

MarginalReport marginal_diagnostics(const std::vector<WeldingSample>& base,
                                    const std::vector<WeldingSample>& other,
                                    const std::vector<double>& probe_angles) {
    if (base.empty() || other.empty())
        throw std::invalid_argument("marginal_diagnostics: empty ensemble");
    MarginalReport rep;
    rep.probe_angles = probe_angles;
    const double n = static_cast<double>(base.size());
    const double mm = static_cast<double>(other.size());
    rep.ks_critical = 1.628 * std::sqrt((n + mm) / (n * mm));
    for (double angle : probe_angles) {
        std::vector<double> a, b;
        a.reserve(base.size());
        b.reserve(other.size());
        for (const auto& s : base) a.push_back(wrap_angle(s.map(angle)));
        for (const auto& s : other) b.push_back(wrap_angle(s.map(angle)));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        double ks = 0.0;
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] <= b[j]) ++i; else ++j;
            ks = std::max(ks, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / mm));
        }
        rep.ks_distances.push_back(ks);
        const bool overlap = a.front() >= 0.0 && a.back() < two_pi && b.front() >= 0.0 &&
                             b.back() < two_pi;
        rep.support_overlap.push_back(overlap);
    }
    return rep;
}

SampleGenerator gmc_welding_samplers(double gamma1, double gamma2, const std::string& form,
                                     std::size_t order, std::size_t grid) {
    if (form != "pair" && form != "inverse")
        throw std::invalid_argument("gmc_welding_samplers: form must be pair|inverse");
    const bool pair_form = form == "pair";
    return [=](std::uint64_t seed) {
        WeldingSample s;
        s.gamma = gamma2;
        s.kappa = gamma2 * gamma2;
        s.seed1 = split_seed(seed, 0);
        s.seed2 = split_seed(seed, 1);
        s.provenance = "gmc-pair";
        Rng r1(s.seed1), r2(s.seed2);
        s.field1 = sample_lgf(order, r1);
        s.field2 = sample_lgf(order, r2);
        const CircleMap pa = gmc_welding(s.field1, gamma1, grid, 0.0, 0.0);
        const CircleMap pb = gmc_welding(s.field2, gamma2, grid, 0.0, 0.0);
        s.map = normalize_fix1(pair_form ? compose(pb, invert(pa)) : compose(invert(pa), pb));
        return s;
    };
}

} // namespace weldlab
