#include "mgoe/statistics.hpp"

#include "mgoe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mgoe {

std::vector<double> nn_spacings(const UnfoldedSpectrum& unfolded) {
    const auto& v = unfolded.values;
    if (v.size() < 2)
        throw ContractError("nn_spacings: need at least 2 levels");
    std::vector<double> s;
    s.reserve(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i)
        s.push_back(v[i] - v[i - 1]);
    return s;
}

std::vector<double> gap_ratios(const std::vector<double>& sorted_spectrum,
                               ZeroPairRule rule) {
    if (sorted_spectrum.size() < 3)
        throw ContractError("gap_ratios: need at least 3 levels");
    if (!std::is_sorted(sorted_spectrum.begin(), sorted_spectrum.end()))
        throw ContractError("gap_ratios: input must be sorted ascending");

    std::vector<double> out;
    out.reserve(sorted_spectrum.size() - 2);
    double prev = sorted_spectrum[1] - sorted_spectrum[0];
    for (std::size_t i = 2; i < sorted_spectrum.size(); ++i) {
        const double cur = sorted_spectrum[i] - sorted_spectrum[i - 1];
        const double mn = std::min(prev, cur);
        const double mx = std::max(prev, cur);
        if (mx > 0.0)
            out.push_back(mn / mx);
        else if (rule == ZeroPairRule::Keep)
            out.push_back(1.0); // degenerate triple: equal (zero) gaps
        prev = cur;
    }
    return out;
}

double mean_gap_ratio(const std::vector<double>& ratios) {
    if (ratios.empty())
        throw ContractError("mean_gap_ratio: no ratios");
    double acc = 0.0;
    for (double r : ratios)
        acc += r;
    return acc / static_cast<double>(ratios.size());
}

BinnedDensity density_histogram(const std::vector<double>& values,
                                const std::vector<double>& bin_edges) {
    if (values.empty())
        throw ContractError("density_histogram: no values");
    if (bin_edges.size() < 2)
        throw ContractError("density_histogram: need at least 2 bin edges");
    for (std::size_t b = 1; b < bin_edges.size(); ++b)
        if (!(bin_edges[b] > bin_edges[b - 1]))
            throw ContractError("density_histogram: bin edges must be strictly increasing");

    const std::size_t bins = bin_edges.size() - 1;
    std::vector<long> counts(bins, 0);
    long excluded = 0;
    for (double v : values) {
        if (v < bin_edges.front() || v > bin_edges.back()) {
            ++excluded;
            continue;
        }
        // upper_bound puts edge values in the right-hand bin; the global max
        // goes to the last bin so the top edge is inclusive.
        auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), v);
        std::size_t b = static_cast<std::size_t>(it - bin_edges.begin());
        b = (b == 0) ? 0 : b - 1;
        if (b >= bins)
            b = bins - 1;
        ++counts[b];
    }

    BinnedDensity out;
    out.excluded = excluded;
    out.density.resize(bins, 0.0);
    const long kept = static_cast<long>(values.size()) - excluded;
    if (kept > 0)
        for (std::size_t b = 0; b < bins; ++b)
            out.density[b] = static_cast<double>(counts[b]) /
                             (static_cast<double>(kept) * (bin_edges[b + 1] - bin_edges[b]));
    return out;
}

std::vector<double> linspace_edges(double lo, double hi, int bins) {
    if (bins < 1)
        throw ContractError("linspace_edges: need at least 1 bin");
    if (!(hi > lo))
        throw ContractError("linspace_edges: hi must exceed lo");
    std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b)
        edges[static_cast<std::size_t>(b)] =
            lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    edges.back() = hi;
    return edges;
}

namespace {

void check_bootstrap_args(const std::vector<std::vector<double>>& rows, int resamples,
                          double level) {
    if (rows.empty())
        throw ContractError("bootstrap: no member rows");
    const std::size_t width = rows.front().size();
    if (width == 0)
        throw ContractError("bootstrap: empty member rows");
    for (const auto& r : rows)
        if (r.size() != width)
            throw ContractError("bootstrap: member rows have unequal lengths");
    if (resamples < 1)
        throw ConfigError("bootstrap: resamples must be positive");
    if (!(level > 0.0 && level < 1.0))
        throw ConfigError("bootstrap: level must lie strictly in (0,1)");
}

// Mean row of one resample-with-replacement of the member rows.
void resample_mean(const std::vector<std::vector<double>>& rows, RandomStream& rng,
                   std::vector<double>& mean) {
    const std::size_t m = rows.size();
    std::fill(mean.begin(), mean.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(m));
        if (idx >= m)
            idx = m - 1;
        const auto& row = rows[idx];
        for (std::size_t k = 0; k < mean.size(); ++k)
            mean[k] += row[k];
    }
    for (auto& x : mean)
        x /= static_cast<double>(m);
}

Interval percentile_interval(std::vector<double>& sample, double level) {
    std::sort(sample.begin(), sample.end());
    const double alpha = 1.0 - level;
    return {quantile(sample, alpha / 2.0), quantile(sample, 1.0 - alpha / 2.0)};
}

} // namespace

std::vector<Interval> bootstrap_ci(const std::vector<std::vector<double>>& rows,
                                   int resamples, double level, Seed seed) {
    check_bootstrap_args(rows, resamples, level);
    const std::size_t width = rows.front().size();

    RandomStream rng(seed);
    std::vector<std::vector<double>> stats(width,
                                           std::vector<double>(static_cast<std::size_t>(resamples)));
    std::vector<double> mean(width);
    for (int r = 0; r < resamples; ++r) {
        resample_mean(rows, rng, mean);
        for (std::size_t k = 0; k < width; ++k)
            stats[k][static_cast<std::size_t>(r)] = mean[k];
    }

    std::vector<Interval> out(width);
    for (std::size_t k = 0; k < width; ++k)
        out[k] = percentile_interval(stats[k], level);
    return out;
}

Interval bootstrap_scalar_ci(const std::vector<std::vector<double>>& rows, int resamples,
                             double level, Seed seed,
                             const std::function<double(const std::vector<double>&)>& statistic) {
    check_bootstrap_args(rows, resamples, level);
    if (!statistic)
        throw ContractError("bootstrap_scalar_ci: statistic is empty");

    RandomStream rng(seed);
    std::vector<double> stats(static_cast<std::size_t>(resamples));
    std::vector<double> mean(rows.front().size());
    for (int r = 0; r < resamples; ++r) {
        resample_mean(rows, rng, mean);
        stats[static_cast<std::size_t>(r)] = statistic(mean);
    }
    return percentile_interval(stats, level);
}

double wigner_surmise_density(double s) {
    if (s < 0.0)
        return 0.0;
    const double pi = std::numbers::pi;
    return 0.5 * pi * s * std::exp(-0.25 * pi * s * s);
}

double wigner_surmise_cdf(double s) {
    if (s <= 0.0)
        return 0.0;
    return 1.0 - std::exp(-0.25 * std::numbers::pi * s * s);
}

double poisson_spacing_density(double s) {
    return (s < 0.0) ? 0.0 : std::exp(-s);
}

double semicircle_density(double x) {
    if (std::fabs(x) > 2.0)
        return 0.0;
    return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

BimodalityGap bimodality_gap(const std::vector<double>& density) {
    const std::size_t bins = density.size();
    if (bins < 3)
        throw ContractError("bimodality_gap: need at least 3 bins");

    // Local maxima: strictly above the left neighbor, at least the right one
    // (plateaus count once, at their left end).
    std::vector<std::size_t> maxima;
    for (std::size_t i = 0; i < bins; ++i) {
        const bool left_ok = (i == 0) || density[i] > density[i - 1];
        const bool right_ok = (i + 1 == bins) || density[i] >= density[i + 1];
        if (left_ok && right_ok)
            maxima.push_back(i);
    }
    if (maxima.size() < 2)
        return {0.0, true};

    // Two tallest maxima (first occurrence wins ties), in index order.
    std::size_t a = maxima[0], b = maxima[1];
    if (density[b] > density[a])
        std::swap(a, b);
    for (std::size_t k = 2; k < maxima.size(); ++k) {
        const std::size_t c = maxima[k];
        if (density[c] > density[a]) {
            b = a;
            a = c;
        } else if (density[c] > density[b]) {
            b = c;
        }
    }
    std::size_t left = std::min(a, b), right = std::max(a, b);

    double valley = density[left + 1];
    for (std::size_t i = left + 1; i < right; ++i)
        valley = std::min(valley, density[i]);

    const double gap = std::min(density[left], density[right]) - valley;
    return {gap, false};
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty())
        throw ContractError("ks_distance: empty sample");
    if (!cdf)
        throw ContractError("ks_distance: cdf is empty");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

} // namespace mgoe
