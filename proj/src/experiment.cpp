#include "mgoe/experiment.hpp"

#include "mgoe/errors.hpp"
#include "mgoe/parallel.hpp"
#include "mgoe/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace mgoe {

namespace {

constexpr double density_window_lo_q = 0.005;
constexpr double density_window_hi_q = 0.995;

// Bootstrap sub-stream indices per analysis.
constexpr Seed boot_density = 0;
constexpr Seed boot_nnsd = 1;
constexpr Seed boot_gap = 2;

} // namespace

std::vector<double> ExperimentPlan::default_mu_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 25; ++i)
        grid.push_back(0.50 + 0.02 * static_cast<double>(i));
    grid.back() = 1.0;
    return grid;
}

void ExperimentPlan::validate() const {
    EnsembleConfig probe{base_size, ensemble_size, 1.0, sigma, seed};
    probe.validate();
    if (mu_grid.empty())
        throw ConfigError("mu grid is empty");
    for (double mu : mu_grid)
        if (!(mu > 0.0 && mu <= 1.0))
            throw ConfigError("mu must lie in (0,1], got " + std::to_string(mu));
    for (std::size_t i = 1; i < mu_grid.size(); ++i)
        if (!(mu_grid[i] > mu_grid[i - 1]))
            throw ConfigError("mu grid must be strictly increasing");
    if (bootstrap.resamples < 1)
        throw ConfigError("bootstrap resamples must be positive");
    if (!(bootstrap.level > 0.0 && bootstrap.level < 1.0))
        throw ConfigError("bootstrap level must lie strictly in (0,1)");
    if (std::isnan(fence_k) || (!std::isinf(fence_k) && fence_k < 0.0))
        throw ConfigError("fence_k must be non-negative (or inf to disable truncation)");
    if (degree_candidates.empty())
        throw ConfigError("degree candidate list is empty");
    for (int d : degree_candidates)
        if (d < 1)
            throw ConfigError("unfolding degrees must be positive, got " + std::to_string(d));
    if (histogram.density_bins < 1)
        throw ConfigError("density_bins must be positive");
    if (histogram.nnsd_bins < 1)
        throw ConfigError("nnsd_bins must be positive");
    if (!(histogram.nnsd_max > 0.0))
        throw ConfigError("nnsd_max must be positive");
    if (histogram.density_range && !(histogram.density_range->high > histogram.density_range->low))
        throw ConfigError("density_range must satisfy low < high");
    if (threads < 1)
        throw ConfigError("threads must be positive");
}

Seed mu_scope_seed(Seed master, double mu) {
    return derive_seed(master, scope::mu, std::bit_cast<std::uint64_t>(mu));
}

namespace {

HistogramWithCI histogram_with_ci(const std::vector<std::vector<double>>& rows,
                                  std::vector<double> edges, long excluded,
                                  const BootstrapSettings& bs, Seed seed) {
    HistogramWithCI h;
    h.bin_edges = std::move(edges);
    h.excluded = excluded;
    const std::size_t bins = h.bin_edges.size() - 1;
    h.density.assign(bins, 0.0);
    for (const auto& row : rows)
        for (std::size_t b = 0; b < bins; ++b)
            h.density[b] += row[b];
    for (auto& d : h.density)
        d /= static_cast<double>(rows.size());

    const auto ci = bootstrap_ci(rows, bs.resamples, bs.level, seed);
    h.ci_low.resize(bins);
    h.ci_high.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        h.ci_low[b] = ci[b].low;
        h.ci_high[b] = ci[b].high;
    }
    return h;
}

} // namespace

FixedMuResult run_fixed_mu(const ExperimentPlan& plan, double mu) {
    plan.validate();
    if (!(mu > 0.0 && mu <= 1.0))
        throw ConfigError("mu must lie in (0,1], got " + std::to_string(mu));

    const Seed point_seed = mu_scope_seed(plan.seed, mu);
    EnsembleConfig cfg{plan.base_size, plan.ensemble_size, mu, plan.sigma, point_seed};

    FixedMuResult out;
    out.mu = mu;
    out.sizes = draw_sizes(cfg);

    const std::size_t m = static_cast<std::size_t>(plan.ensemble_size);
    const bool need_trunc = plan.analyses.density || plan.analyses.nnsd;

    std::vector<std::vector<double>> scaled(m);   // density inputs
    std::vector<std::vector<double>> spacings(m); // nnsd inputs
    std::vector<double> member_r(m, 0.0);
    std::vector<long> member_pairs(m, 0);
    std::vector<int> degrees(m, 0);

    parallel_for(plan.ensemble_size, plan.threads, [&](int i) {
        try {
            const std::size_t ui = static_cast<std::size_t>(i);
            const SymmetricMatrix a = sample_member(cfg, out.sizes[ui], i);
            const SpectrumRaw raw = eigenvalues_symmetric(a);
            const std::vector<double> extended =
                periodic_extend(raw, plan.base_size, plan.extension);

            if (plan.analyses.gap_ratio) {
                const auto ratios = gap_ratios(extended, plan.zero_rule);
                member_r[ui] = mean_gap_ratio(ratios);
                member_pairs[ui] = static_cast<long>(ratios.size());
            }
            if (need_trunc) {
                const auto trunc = truncate_outliers(extended, plan.fence_k);
                if (plan.analyses.density)
                    scaled[ui] = normalize_scale(trunc, plan.sigma / 2.0, out.sizes[ui]);
                if (plan.analyses.nnsd) {
                    auto unfolded = select_unfolding_degree(trunc, plan.degree_candidates);
                    unfolded.kept_fraction = static_cast<double>(trunc.size()) /
                                             static_cast<double>(extended.size());
                    degrees[ui] = unfolded.degree_used;
                    spacings[ui] = nn_spacings(unfolded);
                }
            }
        } catch (const NumericalError& e) {
            throw NumericalError("member " + std::to_string(i) + ": " + e.what());
        }
    });

    if (plan.analyses.gap_ratio) {
        GapRatioResult g;
        g.per_member_r = member_r;
        g.mean_r = std::accumulate(member_r.begin(), member_r.end(), 0.0) /
                   static_cast<double>(m);
        g.n_pairs_used = std::accumulate(member_pairs.begin(), member_pairs.end(), 0L);
        std::vector<std::vector<double>> rows(m);
        for (std::size_t i = 0; i < m; ++i)
            rows[i] = {member_r[i]};
        const auto ci = bootstrap_ci(rows, plan.bootstrap.resamples, plan.bootstrap.level,
                                     derive_seed(point_seed, scope::bootstrap, boot_gap));
        g.ci_low = ci[0].low;
        g.ci_high = ci[0].high;
        out.gap = std::move(g);
    }

    if (plan.analyses.density) {
        std::vector<double> edges;
        if (plan.histogram.density_range) {
            edges = linspace_edges(plan.histogram.density_range->low,
                                   plan.histogram.density_range->high,
                                   plan.histogram.density_bins);
        } else {
            std::vector<double> pooled;
            for (const auto& s : scaled)
                pooled.insert(pooled.end(), s.begin(), s.end());
            std::sort(pooled.begin(), pooled.end());
            const double lo = quantile(pooled, density_window_lo_q);
            const double hi = quantile(pooled, density_window_hi_q);
            if (!(hi > lo))
                throw NumericalError("density window is degenerate (pooled spectrum collapsed)");
            edges = linspace_edges(lo, hi, plan.histogram.density_bins);
        }

        long excluded = 0;
        std::vector<std::vector<double>> rows(m);
        for (std::size_t i = 0; i < m; ++i) {
            auto binned = density_histogram(scaled[i], edges);
            excluded += binned.excluded;
            rows[i] = std::move(binned.density);
        }
        out.density = histogram_with_ci(rows, std::move(edges), excluded, plan.bootstrap,
                                        derive_seed(point_seed, scope::bootstrap, boot_density));
        out.density_rows = std::move(rows);
    }

    if (plan.analyses.nnsd) {
        auto edges = linspace_edges(0.0, plan.histogram.nnsd_max, plan.histogram.nnsd_bins);
        long excluded = 0;
        std::vector<std::vector<double>> rows(m);
        for (std::size_t i = 0; i < m; ++i) {
            auto binned = density_histogram(spacings[i], edges);
            excluded += binned.excluded;
            rows[i] = std::move(binned.density);
        }
        out.nnsd = histogram_with_ci(rows, std::move(edges), excluded, plan.bootstrap,
                                     derive_seed(point_seed, scope::bootstrap, boot_nnsd));
        out.degrees_used = std::move(degrees);
    }

    return out;
}

SweepResult run_sweep(const ExperimentPlan& plan) {
    plan.validate();
    ExperimentPlan point_plan = plan;
    point_plan.analyses = AnalysisSelection{false, false, true};

    SweepResult out;
    out.points.reserve(plan.mu_grid.size());
    for (double mu : plan.mu_grid) {
        SweepPoint p;
        p.mu = mu;
        try {
            const FixedMuResult r = run_fixed_mu(point_plan, mu);
            p.mean_r = r.gap->mean_r;
            p.ci_low = r.gap->ci_low;
            p.ci_high = r.gap->ci_high;
        } catch (const Error& e) {
            p.error = e.what();
        }
        out.points.push_back(std::move(p));
    }

    std::vector<double> xs, ys;
    for (const auto& p : out.points)
        if (p.error.empty()) {
            xs.push_back(p.mu);
            ys.push_back(p.mean_r);
        }
    if (xs.size() >= 2)
        out.slope = least_squares_slope(xs, ys);
    return out;
}

GapRatioResult poisson_baseline(int n_levels, int ensemble_size, Seed seed,
                                bool equal_spacing, BootstrapSettings bootstrap) {
    if (n_levels < 3)
        throw ConfigError("baseline needs at least 3 levels, got " + std::to_string(n_levels));
    if (ensemble_size < 1)
        throw ConfigError("baseline needs at least 1 member");
    if (bootstrap.resamples < 1)
        throw ConfigError("bootstrap resamples must be positive");
    if (!(bootstrap.level > 0.0 && bootstrap.level < 1.0))
        throw ConfigError("bootstrap level must lie strictly in (0,1)");

    GapRatioResult g;
    g.per_member_r.resize(static_cast<std::size_t>(ensemble_size));
    for (int i = 0; i < ensemble_size; ++i) {
        std::vector<double> levels(static_cast<std::size_t>(n_levels));
        if (equal_spacing) {
            for (int k = 0; k < n_levels; ++k)
                levels[static_cast<std::size_t>(k)] = static_cast<double>(k);
        } else {
            RandomStream rng(derive_seed(seed, scope::member, static_cast<Seed>(i)));
            double x = 0.0;
            levels[0] = 0.0;
            for (int k = 1; k < n_levels; ++k) {
                x += rng.exponential();
                levels[static_cast<std::size_t>(k)] = x;
            }
        }
        const auto ratios = gap_ratios(levels);
        g.per_member_r[static_cast<std::size_t>(i)] = mean_gap_ratio(ratios);
        g.n_pairs_used += static_cast<long>(ratios.size());
    }
    g.mean_r = std::accumulate(g.per_member_r.begin(), g.per_member_r.end(), 0.0) /
               static_cast<double>(ensemble_size);

    std::vector<std::vector<double>> rows(g.per_member_r.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i] = {g.per_member_r[i]};
    const auto ci = bootstrap_ci(rows, bootstrap.resamples, bootstrap.level,
                                 derive_seed(seed, scope::bootstrap, boot_gap));
    g.ci_low = ci[0].low;
    g.ci_high = ci[0].high;
    return g;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ContractError("least_squares_slope: need two equal-length samples of size >= 2");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw ContractError("least_squares_slope: abscissae are all equal");
    return sxy / sxx;
}

} // namespace mgoe
