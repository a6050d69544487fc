#pragma once

#include "mgoe/spectral.hpp"

#include <array>
#include <utility>
#include <vector>

namespace mgoe {

// How an n-level spectrum is blown up to N levels when n < N.
//
// SymmetricWrap (default): every level gets floor(N/n) copies; the remainder
// r = N - n*floor(N/n) is split between the two spectral edges, ceil(r/2)
// extra copies of the lowest levels and floor(r/2) of the highest. The
// duplicated edge weight is what produces the characteristic twin peaks of
// mixed ensembles at intermediate mixing.
//
// CyclicTail: repeat the sorted sequence cyclically and truncate to N, i.e.
// the remainder copies all go to the lowest r levels.
enum class ExtensionScheme { SymmetricWrap, CyclicTail };

// Sorted extended spectrum of length base_size. Input must be sorted and
// non-empty; base_size >= values.size(). Identity when sizes match.
std::vector<double> periodic_extend(const std::vector<double>& values, int base_size,
                                    ExtensionScheme scheme = ExtensionScheme::SymmetricWrap);
std::vector<double> periodic_extend(const SpectrumRaw& raw, int base_size,
                                    ExtensionScheme scheme = ExtensionScheme::SymmetricWrap);

// Linear-interpolation quantile of a sorted sample (the convention with
// h = (n-1)q): q=0 -> min, q=1 -> max, q=0.5 -> median.
double quantile(const std::vector<double>& sorted_values, double q);

// Tukey fences: keep values in [Q1 - k*IQR, Q3 + k*IQR]. Input sorted,
// length >= 4, k >= 0. Non-finite k disables truncation (returns a copy).
std::vector<double> truncate_outliers(const std::vector<double>& sorted_values,
                                      double fence_k);

// (value, count of levels <= value) for each level of a sorted spectrum.
std::vector<std::pair<double, int>> cumulative_staircase(const std::vector<double>& sorted_values);

struct UnfoldedSpectrum {
    std::vector<double> values;  // ascending, mean spacing ~ 1
    int degree_used = 0;
    double mean_spacing = 0.0;
    double kept_fraction = 1.0;  // fraction surviving truncation upstream
};

// Least-squares polynomial fit of the cumulative staircase, evaluated at each
// level. Abscissae are affinely mapped to [-1,1] before building the
// Vandermonde system (column-pivoted QR) so high degrees stay well
// conditioned. Requires degree >= 1 and at least degree+2 levels; throws
// NumericalError naming the degree if the fit is rank-deficient.
UnfoldedSpectrum unfold(const std::vector<double>& sorted_values, int degree);

// Self-consistent degree selection: unfold at every candidate degree and keep
// the one whose mean unfolded spacing is closest to 1 (ties -> lower degree).
// Candidates that fail numerically are skipped; throws NumericalError if all
// fail.
UnfoldedSpectrum select_unfolding_degree(const std::vector<double>& sorted_values,
                                         const std::vector<int>& candidate_degrees);

inline constexpr std::array<int, 5> default_unfolding_degrees{3, 5, 7, 9, 11};

// Divide every value by scale * sqrt(order). With scale = sigma/2 (the
// off-diagonal standard deviation) a Gaussian orthogonal spectrum lands on
// [-2, 2].
std::vector<double> normalize_scale(const std::vector<double>& values, double scale,
                                    int order);

} // namespace mgoe
