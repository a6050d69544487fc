#include <doctest.h>

#include "mgoe/errors.hpp"
#include "mgoe/statistics.hpp"

#include <cmath>
#include <numbers>

using namespace mgoe;

namespace {

// Composite Simpson quadrature, the independent check for the closed-form
// reference laws.
double simpson(double a, double b, int panels, const std::function<double(double)>& f) {
    const double h = (b - a) / (2.0 * panels);
    double acc = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i)
        acc += f(a + h * i) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace

TEST_CASE("nn_spacings are consecutive differences") {
    UnfoldedSpectrum u;
    u.values = {1.0, 1.5, 3.0};
    CHECK(nn_spacings(u) == std::vector<double>{0.5, 1.5});
    u.values = {2.0};
    CHECK_THROWS_AS(nn_spacings(u), ContractError);
}

TEST_CASE("gap_ratios on a hand-worked spectrum") {
    // gaps 1, 2, 3 -> ratios 1/2, 2/3
    const auto r = gap_ratios({0.0, 1.0, 3.0, 6.0});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == 0.5);
    CHECK(r[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(mean_gap_ratio(r) == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("gap_ratios zero-pair conventions") {
    // gaps 0, 0, 1: the (0,0) pair is degenerate, the (0,1) pair scores 0
    const std::vector<double> spectrum{0.0, 0.0, 0.0, 1.0};
    CHECK(gap_ratios(spectrum, ZeroPairRule::Keep) == std::vector<double>{1.0, 0.0});
    CHECK(gap_ratios(spectrum, ZeroPairRule::Drop) == std::vector<double>{0.0});
}

TEST_CASE("gap_ratios lie in [0,1] and need 3 sorted levels") {
    const std::vector<double> spectrum{-3.0, -1.2, 0.0, 0.4, 2.2, 7.0};
    for (double r : gap_ratios(spectrum)) {
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
    }
    CHECK(gap_ratios(spectrum).size() == spectrum.size() - 2);
    CHECK_THROWS_AS(gap_ratios({1.0, 2.0}), ContractError);
    CHECK_THROWS_AS(gap_ratios({2.0, 1.0, 3.0}), ContractError);
    CHECK_THROWS_AS(mean_gap_ratio({}), ContractError);
}

TEST_CASE("density_histogram normalizes by kept count and bin width") {
    const auto h = density_histogram({0.0, 0.5, 1.0, 1.5, 2.0}, {0.0, 1.0, 2.0});
    CHECK(h.excluded == 0);
    // [0,1): {0, 0.5}; [1,2]: {1, 1.5, 2} (top edge inclusive)
    CHECK(h.density == std::vector<double>{0.4, 0.6});

    const auto g = density_histogram({-1.0, 0.5, 3.0}, {0.0, 1.0, 2.0});
    CHECK(g.excluded == 2);
    CHECK(g.density == std::vector<double>{1.0, 0.0}); // normalized by kept=1

    CHECK_THROWS_AS(density_histogram({}, {0.0, 1.0}), ContractError);
    CHECK_THROWS_AS(density_histogram({0.5}, {0.0}), ContractError);
    CHECK_THROWS_AS(density_histogram({0.5}, {1.0, 0.0}), ContractError);
}

TEST_CASE("density_histogram integrates to one when nothing is excluded") {
    std::vector<double> values;
    for (int i = 0; i < 1000; ++i)
        values.push_back(std::sin(i * 0.7) * 2.0);
    const auto edges = linspace_edges(-2.0, 2.0, 23);
    const auto h = density_histogram(values, edges);
    CHECK(h.excluded == 0);
    double integral = 0.0;
    for (std::size_t b = 0; b < h.density.size(); ++b)
        integral += h.density[b] * (edges[b + 1] - edges[b]);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("linspace_edges spans the window with exact endpoints") {
    const auto e = linspace_edges(0.0, 4.0, 4);
    CHECK(e == std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0});
    CHECK(linspace_edges(-2.2, 2.2, 50).size() == 51);
    CHECK(linspace_edges(-2.2, 2.2, 50).back() == 2.2);
    CHECK_THROWS_AS(linspace_edges(0.0, 1.0, 0), ContractError);
    CHECK_THROWS_AS(linspace_edges(1.0, 1.0, 5), ContractError);
}

TEST_CASE("bootstrap_ci is deterministic and degenerate for constant input") {
    const std::vector<std::vector<double>> rows{{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}};
    const auto ci = bootstrap_ci(rows, 200, 0.95, 42);
    REQUIRE(ci.size() == 2);
    CHECK(ci[0].low == 1.0);
    CHECK(ci[0].high == 1.0);
    CHECK(ci[1].low == 2.0);
    CHECK(ci[1].high == 2.0);

    const std::vector<std::vector<double>> one{{3.5}};
    const auto c1 = bootstrap_ci(one, 100, 0.9, 7);
    CHECK(c1[0].low == 3.5);
    CHECK(c1[0].high == 3.5);

    const std::vector<std::vector<double>> two{{0.0}, {1.0}};
    CHECK(bootstrap_ci(two, 500, 0.95, 1) == bootstrap_ci(two, 500, 0.95, 1));
    const auto w = bootstrap_ci(two, 500, 0.95, 1)[0];
    CHECK(w.low >= 0.0);
    CHECK(w.low <= 0.5);
    CHECK(w.high >= 0.5);
    CHECK(w.high <= 1.0);
    CHECK(w.low < w.high);
}

TEST_CASE("bootstrap argument validation") {
    const std::vector<std::vector<double>> rows{{1.0}, {2.0}};
    CHECK_THROWS_AS(bootstrap_ci({}, 100, 0.95, 0), ContractError);
    CHECK_THROWS_AS(bootstrap_ci({{1.0}, {1.0, 2.0}}, 100, 0.95, 0), ContractError);
    CHECK_THROWS_AS(bootstrap_ci(rows, 0, 0.95, 0), ConfigError);
    CHECK_THROWS_AS(bootstrap_ci(rows, 100, 1.0, 0), ConfigError);
    CHECK_THROWS_AS(bootstrap_ci(rows, 100, 0.0, 0), ConfigError);
}

TEST_CASE("bootstrap_scalar_ci with the mean functional matches bootstrap_ci") {
    const std::vector<std::vector<double>> rows{{0.2}, {0.9}, {0.4}, {0.7}};
    const auto vec = bootstrap_ci(rows, 400, 0.9, 11)[0];
    const auto scl = bootstrap_scalar_ci(rows, 400, 0.9, 11,
                                         [](const std::vector<double>& m) { return m[0]; });
    CHECK(vec.low == scl.low);
    CHECK(vec.high == scl.high);
}

TEST_CASE("bootstrap coverage is near nominal on a known distribution") {
    RandomStream rng(500);
    int covered = 0;
    const int reps = 60;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<std::vector<double>> rows(30);
        for (auto& row : rows)
            row = {0.3 + rng.normal(1.0)};
        const auto ci = bootstrap_ci(rows, 400, 0.95, derive_seed(1000, Seed(rep)))[0];
        if (ci.low <= 0.3 && 0.3 <= ci.high)
            ++covered;
    }
    CHECK(covered >= reps * 8 / 10); // generous at unit-test scale
}

TEST_CASE("reference spacing laws are normalized with unit mean") {
    const auto surmise = [](double s) { return wigner_surmise_density(s); };
    const auto poisson = [](double s) { return poisson_spacing_density(s); };
    CHECK(simpson(0.0, 10.0, 20000, surmise) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(simpson(0.0, 40.0, 40000, poisson) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(simpson(0.0, 10.0, 20000, [&](double s) { return s * surmise(s); }) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(simpson(0.0, 40.0, 40000, [&](double s) { return s * poisson(s); }) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("wigner surmise density and CDF are consistent") {
    const double peak_s = std::sqrt(2.0 / std::numbers::pi);
    CHECK(wigner_surmise_density(peak_s) >= wigner_surmise_density(peak_s - 0.01));
    CHECK(wigner_surmise_density(peak_s) >= wigner_surmise_density(peak_s + 0.01));
    CHECK(wigner_surmise_density(-1.0) == 0.0);
    CHECK(wigner_surmise_density(0.0) == 0.0);

    for (double s : {0.3, 0.8, 1.5, 2.5}) {
        const double numeric =
            simpson(0.0, s, 4000, [](double t) { return wigner_surmise_density(t); });
        CHECK(wigner_surmise_cdf(s) == doctest::Approx(numeric).epsilon(1e-10));
    }
    CHECK(wigner_surmise_cdf(0.0) == 0.0);
}

TEST_CASE("semicircle density has radius 2 and peak 1/pi") {
    CHECK(semicircle_density(0.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(semicircle_density(2.0) == 0.0);
    CHECK(semicircle_density(-2.0) == 0.0);
    CHECK(semicircle_density(2.5) == 0.0);
    CHECK(semicircle_density(1.0) ==
          doctest::Approx(std::sqrt(3.0) / (2.0 * std::numbers::pi)).epsilon(1e-15));
    const double mass =
        simpson(-2.0, 2.0, 200000, [](double x) { return semicircle_density(x); });
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-5)); // sqrt edges converge slowly
}

TEST_CASE("gap ratio reference constants") {
    CHECK(poisson_mean_gap_ratio == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(2e-3));
    CHECK(goe_mean_gap_ratio == 0.5295);
}

TEST_CASE("bimodality_gap on hand-built histograms") {
    const auto twin = bimodality_gap({1.0, 0.0, 1.0});
    CHECK(twin.gap == 1.0);
    CHECK_FALSE(twin.unimodal);

    const auto single = bimodality_gap({0.0, 1.0, 0.0});
    CHECK(single.gap == 0.0);
    CHECK(single.unimodal);

    const auto monotone = bimodality_gap({1.0, 2.0, 3.0});
    CHECK(monotone.unimodal);

    // peaks 0.5 and 0.4 with a 0.3 valley between them
    const auto m = bimodality_gap({0.2, 0.5, 0.3, 0.4, 0.1});
    CHECK(m.gap == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_FALSE(m.unimodal);

    // three peaks: the two tallest flank the deepest valley between them
    const auto three = bimodality_gap({1.0, 0.0, 2.0, 0.1, 1.5});
    CHECK(three.gap == doctest::Approx(1.5 - 0.1).epsilon(1e-12));

    CHECK_THROWS_AS(bimodality_gap({1.0, 0.0}), ContractError);
}

TEST_CASE("ks_distance on worked examples and a near-exact sample") {
    const auto uniform_cdf = [](double x) { return std::min(1.0, std::max(0.0, x)); };
    CHECK(ks_distance({0.5}, uniform_cdf) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ks_distance({0.25, 0.75}, uniform_cdf) == doctest::Approx(0.25).epsilon(1e-15));

    // inverse-CDF quantile sample from the surmise: KS ~ 1/(2K)
    const int K = 2000;
    std::vector<double> sample;
    for (int k = 0; k < K; ++k) {
        const double u = (k + 0.5) / K;
        sample.push_back(std::sqrt(-4.0 * std::log(1.0 - u) / std::numbers::pi));
    }
    CHECK(ks_distance(sample, [](double s) { return wigner_surmise_cdf(s); }) <
          1.0 / K + 1e-9);

    CHECK_THROWS_AS(ks_distance({}, uniform_cdf), ContractError);
}
