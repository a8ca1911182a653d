// Samplers for random weldings driven by Gaussian multiplicative chaos,
// their deformations, and quasi-invariance experiments.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "weldlab/circle_map.hpp"
#include "weldlab/gmc.hpp"
#include "weldlab/pullback.hpp"
#include "weldlab/spectra.hpp"

namespace weldlab {

struct WeldingSample {
    double gamma = 0.0;
    double kappa = 0.0;  // gamma^2
    std::uint64_t seed1 = 0;
    std::uint64_t seed2 = 0;
    std::string provenance;  // "insertion" | "rotated" | "gmc-pair"
    CircleMap map;           // normalized to fix 1
    FourierField field1;     // retained for importance reweighting
    FourierField field2;
};

struct EstimatorComparison {
    std::string name;
    double primary = 0.0;        // direct estimator
    double primary_se = 0.0;     // batch standard error
    double reweighted = 0.0;     // importance-sampling estimator
    double reweighted_se = 0.0;
    double combined_se() const;
    double discrepancy_sigmas() const;
};

struct ExperimentReport {
    std::size_t samples = 0;
    std::size_t batches = 0;
    std::size_t order = 0;      // field truncation N
    std::size_t block_dim = 0;  // operator truncation K
    double gamma = 0.0;
    std::vector<EstimatorComparison> estimators;
    bool passed = false;
};

// (phi_{h2 + capped insertion})^{-1} o phi_{h1} with independent truncated
// fields; the insertion strength is alpha = gamma.
WeldingSample sample_sle_welding(double gamma, std::size_t order, std::size_t grid,
                                 std::uint64_t seed);

// (phi_{h2})^{-1} o rotation o phi_{h1}, post-normalized to fix 1.
WeldingSample sample_rotated_welding(double gamma, std::size_t order, std::size_t grid,
                                     std::uint64_t seed);

using SampleGenerator = std::function<WeldingSample(std::uint64_t seed)>;

SampleGenerator sle_welding_generator(double gamma, std::size_t order, std::size_t grid);

// Pre-side composes psi o phi, post-side phi^{-1} o psi; phi must fix 1.
SampleGenerator deform(SampleGenerator base, const CircleMap& phi, const std::string& side);

// Bounded test statistic of a welding map.
using TestStatistic = std::function<double(const CircleMap&)>;

// Compares E[g(psi o phi)] against E[rho(h1) g(psi)] with rho the truncated
// Gaussian density of the pullback deformation; phi given in closed form so
// log|phi'| is exact.
ExperimentReport importance_identity(double gamma, const AnalyticMap& phi,
                                     const std::vector<std::pair<std::string, TestStatistic>>& stats,
                                     std::size_t samples, std::size_t order,
                                     std::size_t block_dim, std::size_t grid,
                                     std::uint64_t seed, std::size_t batches = 20,
                                     std::size_t threads = 1);

struct MarginalReport {
    std::vector<double> probe_angles;
    std::vector<double> ks_distances;   // per probe angle
    std::vector<bool> support_overlap;  // both ensembles land in (0, 2pi)
    double ks_critical = 0.0;           // level-0.01 two-sample threshold
};

MarginalReport marginal_diagnostics(const std::vector<WeldingSample>& base,
                                    const std::vector<WeldingSample>& other,
                                    const std::vector<double>& probe_angles);

// phi_{h~}^{gamma2} o (phi_h^{gamma1})^{-1} ("pair") or
// (phi_h^{gamma1})^{-1} o phi_{h~}^{gamma2} ("inverse").
SampleGenerator gmc_welding_samplers(double gamma1, double gamma2, const std::string& form,
                                     std::size_t order, std::size_t grid);

} // namespace weldlab
