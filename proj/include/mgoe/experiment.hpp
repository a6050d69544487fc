#pragma once

#include "mgoe/sampling.hpp"
#include "mgoe/statistics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mgoe {

struct AnalysisSelection {
    bool density = true;
    bool nnsd = true;
    bool gap_ratio = true;

    bool any() const { return density || nnsd || gap_ratio; }
    bool operator==(const AnalysisSelection&) const = default;
};

struct HistogramSettings {
    int density_bins = 50;
    // Explicit window for the scaled-density histogram; when absent the
    // window is the pooled 0.5th..99.5th percentile range.
    std::optional<Interval> density_range;
    int nnsd_bins = 40;
    double nnsd_max = 4.0;

    bool operator==(const HistogramSettings&) const = default;
};

struct BootstrapSettings {
    int resamples = 1000;
    double level = 0.95;

    bool operator==(const BootstrapSettings&) const = default;
};

// Everything needed to reproduce one run end to end.
struct ExperimentPlan {
    int base_size = 500;     // N
    int ensemble_size = 100; // M
    double sigma = 1.0;
    Seed seed = 0;
    std::vector<double> mu_grid = default_mu_grid();
    AnalysisSelection analyses;
    BootstrapSettings bootstrap;
    HistogramSettings histogram;
    double fence_k = 1.5;
    std::vector<int> degree_candidates{default_unfolding_degrees.begin(),
                                       default_unfolding_degrees.end()};
    ZeroPairRule zero_rule = ZeroPairRule::Keep;
    ExtensionScheme extension = ExtensionScheme::SymmetricWrap;
    int threads = 1;

    static std::vector<double> default_mu_grid(); // 0.50 to 1.00, step 0.02
    void validate() const;                        // throws ConfigError
    bool operator==(const ExperimentPlan&) const = default;
};

// Per-grid-point seed, keyed by mu's bit pattern rather than its grid index,
// so dropping grid points never changes the remaining points' outputs.
Seed mu_scope_seed(Seed master, double mu);

struct FixedMuResult {
    double mu = 0.0;
    std::vector<int> sizes;
    std::optional<HistogramWithCI> density;
    std::vector<std::vector<double>> density_rows; // per-member densities
    std::optional<HistogramWithCI> nnsd;
    std::vector<int> degrees_used; // per member, when nnsd ran
    std::optional<GapRatioResult> gap;
};

// Full pipeline at one mixing parameter: sample members, eigensolve, extend
// to N levels, then (per selected analysis) gap ratios on the extended
// spectrum, fence-truncated + scale-normalized density, and fence-truncated +
// unfolded spacing histogram. Numerical failures carry the member index.
FixedMuResult run_fixed_mu(const ExperimentPlan& plan, double mu);

struct SweepPoint {
    double mu = 0.0;
    double mean_r = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::string error; // empty on success; failed points don't stop the sweep
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::optional<double> slope; // least-squares slope of mean_r vs mu
    double reference_poisson = poisson_mean_gap_ratio;
    double reference_goe = goe_mean_gap_ratio;
};

// Mean adjacent-gap ratio across the plan's mu grid (gap analysis only).
SweepResult run_sweep(const ExperimentPlan& plan);

// Uncorrelated-level control: ensemble of spectra with iid unit-exponential
// spacings (or an exact picket fence when equal_spacing is set, giving mean
// ratio exactly 1).
GapRatioResult poisson_baseline(int n_levels, int ensemble_size, Seed seed,
                                bool equal_spacing = false,
                                BootstrapSettings bootstrap = {});

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace mgoe
