#include "mgoe/processing.hpp"

#include "mgoe/errors.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <string>

namespace mgoe {

namespace {

void require_sorted(const std::vector<double>& v, const char* who) {
    if (!std::is_sorted(v.begin(), v.end()))
        throw ContractError(std::string(who) + ": input must be sorted ascending");
}

} // namespace

std::vector<double> periodic_extend(const std::vector<double>& values, int base_size,
                                    ExtensionScheme scheme) {
    if (values.empty())
        throw ContractError("periodic_extend: input spectrum is empty");
    require_sorted(values, "periodic_extend");
    const int n = static_cast<int>(values.size());
    if (base_size < n)
        throw ContractError("periodic_extend: base_size " + std::to_string(base_size) +
                            " smaller than spectrum size " + std::to_string(n));

    const int full = base_size / n;
    const int rem = base_size - full * n;

    std::vector<int> copies(static_cast<std::size_t>(n), full);
    if (scheme == ExtensionScheme::SymmetricWrap) {
        const int lo_extra = (rem + 1) / 2;
        const int hi_extra = rem / 2;
        for (int i = 0; i < lo_extra; ++i)
            ++copies[static_cast<std::size_t>(i)];
        for (int i = 0; i < hi_extra; ++i)
            ++copies[static_cast<std::size_t>(n - 1 - i)];
    } else {
        for (int i = 0; i < rem; ++i)
            ++copies[static_cast<std::size_t>(i)];
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(base_size));
    for (int i = 0; i < n; ++i)
        out.insert(out.end(), static_cast<std::size_t>(copies[static_cast<std::size_t>(i)]),
                   values[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<double> periodic_extend(const SpectrumRaw& raw, int base_size,
                                    ExtensionScheme scheme) {
    return periodic_extend(raw.values, base_size, scheme);
}

double quantile(const std::vector<double>& sorted_values, double q) {
    if (sorted_values.empty())
        throw ContractError("quantile: empty sample");
    if (!(q >= 0.0 && q <= 1.0))
        throw ContractError("quantile: q must lie in [0,1]");
    require_sorted(sorted_values, "quantile");

    const std::size_t n = sorted_values.size();
    const double h = static_cast<double>(n - 1) * q;
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= n)
        return sorted_values.back();
    const double frac = h - static_cast<double>(i);
    return sorted_values[i] + frac * (sorted_values[i + 1] - sorted_values[i]);
}

std::vector<double> truncate_outliers(const std::vector<double>& sorted_values,
                                      double fence_k) {
    if (sorted_values.size() < 4)
        throw ContractError("truncate_outliers: need at least 4 values");
    require_sorted(sorted_values, "truncate_outliers");
    if (std::isnan(fence_k))
        throw ContractError("truncate_outliers: fence_k is NaN");
    if (std::isinf(fence_k))
        return sorted_values; // truncation disabled
    if (fence_k < 0.0)
        throw ContractError("truncate_outliers: fence_k must be non-negative");

    const double q1 = quantile(sorted_values, 0.25);
    const double q3 = quantile(sorted_values, 0.75);
    const double iqr = q3 - q1;
    const double lo = q1 - fence_k * iqr;
    const double hi = q3 + fence_k * iqr;

    std::vector<double> out;
    out.reserve(sorted_values.size());
    for (double v : sorted_values)
        if (v >= lo && v <= hi)
            out.push_back(v);
    return out;
}

std::vector<std::pair<double, int>> cumulative_staircase(const std::vector<double>& sorted_values) {
    if (sorted_values.empty())
        throw ContractError("cumulative_staircase: empty spectrum");
    require_sorted(sorted_values, "cumulative_staircase");
    std::vector<std::pair<double, int>> out;
    out.reserve(sorted_values.size());
    for (std::size_t i = 0; i < sorted_values.size(); ++i) {
        const auto upper = std::upper_bound(sorted_values.begin(), sorted_values.end(),
                                            sorted_values[i]);
        out.emplace_back(sorted_values[i],
                         static_cast<int>(upper - sorted_values.begin()));
    }
    return out;
}

UnfoldedSpectrum unfold(const std::vector<double>& sorted_values, int degree) {
    if (degree < 1)
        throw ContractError("unfold: degree must be positive");
    const std::size_t n = sorted_values.size();
    if (n < static_cast<std::size_t>(degree) + 2)
        throw ContractError("unfold: need at least degree+2 levels, got " +
                            std::to_string(n) + " for degree " + std::to_string(degree));
    require_sorted(sorted_values, "unfold");

    const double lo = sorted_values.front();
    const double hi = sorted_values.back();
    if (!(hi > lo))
        throw NumericalError("unfold: degenerate spectrum (all levels equal) at degree " +
                             std::to_string(degree));

    // Map abscissae to [-1,1]; keeps the Vandermonde system well conditioned
    // for the higher candidate degrees.
    Eigen::VectorXd t(static_cast<Eigen::Index>(n));
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        t(static_cast<Eigen::Index>(i)) = 2.0 * (sorted_values[i] - lo) / (hi - lo) - 1.0;
        y(static_cast<Eigen::Index>(i)) = static_cast<double>(i + 1);
    }

    Eigen::MatrixXd vand(static_cast<Eigen::Index>(n), degree + 1);
    vand.col(0).setOnes();
    for (int k = 1; k <= degree; ++k)
        vand.col(k) = vand.col(k - 1).cwiseProduct(t);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vand);
    if (qr.rank() < degree + 1)
        throw NumericalError("unfold: rank-deficient staircase fit at degree " +
                             std::to_string(degree));
    const Eigen::VectorXd coef = qr.solve(y);

    UnfoldedSpectrum out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = coef(degree);
        for (int k = degree - 1; k >= 0; --k)
            acc = acc * t(static_cast<Eigen::Index>(i)) + coef(k);
        out.values[i] = acc;
    }
    std::sort(out.values.begin(), out.values.end());
    out.degree_used = degree;
    out.mean_spacing = (out.values.back() - out.values.front()) / static_cast<double>(n - 1);
    out.kept_fraction = 1.0;
    return out;
}

UnfoldedSpectrum select_unfolding_degree(const std::vector<double>& sorted_values,
                                         const std::vector<int>& candidate_degrees) {
    if (candidate_degrees.empty())
        throw ContractError("select_unfolding_degree: no candidate degrees");
    std::vector<int> degrees = candidate_degrees;
    std::sort(degrees.begin(), degrees.end());
    for (int d : degrees)
        if (d < 1 || sorted_values.size() < static_cast<std::size_t>(d) + 2)
            throw ContractError("select_unfolding_degree: candidate degree " +
                                std::to_string(d) + " infeasible for " +
                                std::to_string(sorted_values.size()) + " levels");

    bool have_best = false;
    UnfoldedSpectrum best;
    std::string last_error;
    for (int d : degrees) {
        UnfoldedSpectrum u;
        try {
            u = unfold(sorted_values, d);
        } catch (const NumericalError& e) {
            last_error = e.what();
            continue;
        }
        // Self-consistency score: mean unfolded spacing closest to one.
        if (!have_best || std::fabs(u.mean_spacing - 1.0) < std::fabs(best.mean_spacing - 1.0)) {
            best = std::move(u);
            have_best = true;
        }
    }
    if (!have_best)
        throw NumericalError("select_unfolding_degree: every candidate failed (last: " +
                             last_error + ")");
    return best;
}

std::vector<double> normalize_scale(const std::vector<double>& values, double scale,
                                    int order) {
    if (!(scale > 0.0))
        throw ContractError("normalize_scale: scale must be positive");
    if (order < 1)
        throw ContractError("normalize_scale: order must be positive");
    const double denom = scale * std::sqrt(static_cast<double>(order));
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values)
        out.push_back(v / denom);
    return out;
}

} // namespace mgoe
