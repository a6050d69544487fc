#pragma once

#include "mgoe/processing.hpp"
#include "mgoe/rng.hpp"

#include <functional>
#include <vector>

namespace mgoe {

// Consecutive differences of an unfolded spectrum (>= 2 levels).
std::vector<double> nn_spacings(const UnfoldedSpectrum& unfolded);

// What to do with a consecutive-spacing pair whose larger gap is zero
// (exactly degenerate triples, common in extended spectra): score it as
// ratio 1 (Keep, default) or omit the pair (Drop).
enum class ZeroPairRule { Keep, Drop };

// Adjacent-gap ratios r_i = min(s_i, s_{i+1}) / max(s_i, s_{i+1}) of a sorted
// spectrum with >= 3 levels; yields size-2 ratios under Keep.
std::vector<double> gap_ratios(const std::vector<double>& sorted_spectrum,
                               ZeroPairRule rule = ZeroPairRule::Keep);

double mean_gap_ratio(const std::vector<double>& ratios);

struct BinnedDensity {
    std::vector<double> density; // per bin, normalized by kept count * width
    long excluded = 0;           // values outside [edges.front(), edges.back()]
};

// Histogram density over explicit ascending edges; the last bin includes its
// right edge. Integrates to 1 when nothing is excluded.
BinnedDensity density_histogram(const std::vector<double>& values,
                                const std::vector<double>& bin_edges);

std::vector<double> linspace_edges(double lo, double hi, int bins);

struct Interval {
    double low = 0.0;
    double high = 0.0;

    bool operator==(const Interval&) const = default;
};

// Percentile bootstrap over ensemble members. `rows` holds one row of
// statistics per member (equal lengths). Resamples members with replacement
// `resamples` times, averages each resample component-wise, and returns the
// (alpha/2, 1-alpha/2) percentiles per component, alpha = 1 - level.
// Deterministic given `seed`.
std::vector<Interval> bootstrap_ci(const std::vector<std::vector<double>>& rows,
                                   int resamples, double level, Seed seed);

// Same resampling, but the confidence interval is taken over an arbitrary
// scalar functional of the resampled mean row (e.g. a bimodality gap).
Interval bootstrap_scalar_ci(const std::vector<std::vector<double>>& rows, int resamples,
                             double level, Seed seed,
                             const std::function<double(const std::vector<double>&)>& statistic);

// Reference laws.
double wigner_surmise_density(double s);  // (pi/2) s exp(-pi s^2/4)
double wigner_surmise_cdf(double s);      // 1 - exp(-pi s^2/4)
double poisson_spacing_density(double s); // exp(-s)
double semicircle_density(double x);      // sqrt(4-x^2)/(2 pi) on [-2,2]

inline constexpr double poisson_mean_gap_ratio = 0.3860; // 2 ln 2 - 1
inline constexpr double goe_mean_gap_ratio = 0.5295;

struct BimodalityGap {
    double gap = 0.0;
    bool unimodal = true;
};

// Height difference between the smaller of the two tallest local maxima and
// the deepest interior minimum between them; {0, unimodal} when the density
// has fewer than two local maxima. Needs >= 3 bins.
BimodalityGap bimodality_gap(const std::vector<double>& density);

// One-sample Kolmogorov-Smirnov distance against a continuous CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

// Histogram with percentile-bootstrap band, the standard output of the
// ensemble analyses.
struct HistogramWithCI {
    std::vector<double> bin_edges;
    std::vector<double> density;
    std::vector<double> ci_low;
    std::vector<double> ci_high;
    long excluded = 0;
};

struct GapRatioResult {
    std::vector<double> per_member_r;
    double mean_r = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    long n_pairs_used = 0;
};

} // namespace mgoe
