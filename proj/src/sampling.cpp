#include "mgoe/sampling.hpp"

#include "mgoe/errors.hpp"
#include "mgoe/parallel.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <utility>

namespace mgoe {

void EnsembleConfig::validate() const {
    if (base_size < 2)
        throw ConfigError("N must be at least 2, got " + std::to_string(base_size));
    if (ensemble_size < 1)
        throw ConfigError("M must be at least 1, got " + std::to_string(ensemble_size));
    if (!(mixture > 0.0 && mixture <= 1.0))
        throw ConfigError("mu must lie in (0,1], got " + std::to_string(mixture));
    if (!(sigma > 0.0))
        throw ConfigError("sigma must be positive, got " + std::to_string(sigma));
}

namespace {

bool bitwise_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

} // namespace

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw ContractError("SymmetricMatrix: matrix must be square");
    if (entries_.rows() < 1)
        throw ContractError("SymmetricMatrix: order must be at least 1");
    for (Eigen::Index i = 0; i < entries_.rows(); ++i)
        for (Eigen::Index j = i + 1; j < entries_.cols(); ++j)
            if (!bitwise_equal(entries_(i, j), entries_(j, i)))
                throw ContractError("SymmetricMatrix: entries are not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
}

Eigen::MatrixXd draw_gaussian_matrix(int n, double sigma, RandomStream& rng) {
    if (n < 1)
        throw ContractError("draw_gaussian_matrix: n must be positive");
    if (!(sigma > 0.0))
        throw ContractError("draw_gaussian_matrix: sigma must be positive");
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = rng.normal(sigma);
    return g;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& g) {
    if (g.rows() != g.cols())
        throw ContractError("symmetrize: matrix must be square");
    return (g + g.transpose()) / 2.0;
}

SymmetricMatrix sample_goe(int n, double sigma, RandomStream& rng) {
    if (n < 1)
        throw ContractError("sample_goe: n must be positive");
    if (!(sigma > 0.0))
        throw ContractError("sample_goe: sigma must be positive");
    Eigen::MatrixXd a(n, n);
    const double off_sigma = sigma / 2.0;
    for (int i = 0; i < n; ++i) {
        a(i, i) = rng.normal(sigma);
        for (int j = i + 1; j < n; ++j) {
            const double x = rng.normal(off_sigma);
            a(i, j) = x;
            a(j, i) = x;
        }
    }
    return SymmetricMatrix(std::move(a));
}

std::vector<int> draw_mixture_sizes(int base_size, double mixture, int count,
                                    RandomStream& rng) {
    if (base_size < 1)
        throw ContractError("draw_mixture_sizes: base_size must be positive");
    if (!(mixture > 0.0 && mixture <= 1.0))
        throw ContractError("draw_mixture_sizes: mixture must lie in (0,1]");
    if (count < 0)
        throw ContractError("draw_mixture_sizes: count must be non-negative");

    std::vector<int> sizes(static_cast<std::size_t>(count));
    if (mixture == 1.0) {
        // Degenerate mixture: all members have the full size, stream untouched.
        for (auto& s : sizes)
            s = base_size;
        return sizes;
    }
    for (auto& s : sizes) {
        int k = 0;
        do {
            k = rng.binomial(base_size, mixture);
        } while (k == 0); // empty matrices carry no spectrum; redraw
        s = k;
    }
    return sizes;
}

Seed sizes_seed(const EnsembleConfig& config) {
    return derive_seed(config.seed, scope::sizes);
}

Seed member_seed(const EnsembleConfig& config, int index) {
    return derive_seed(config.seed, scope::member, static_cast<Seed>(index));
}

std::vector<int> draw_sizes(const EnsembleConfig& config) {
    config.validate();
    RandomStream rng(sizes_seed(config));
    return draw_mixture_sizes(config.base_size, config.mixture, config.ensemble_size, rng);
}

SymmetricMatrix sample_member(const EnsembleConfig& config, int size, int index) {
    if (index < 0 || index >= config.ensemble_size)
        throw ContractError("sample_member: index out of range");
    RandomStream rng(member_seed(config, index));
    return sample_goe(size, config.sigma, rng);
}

Ensemble sample_mgoe(const EnsembleConfig& config, int threads) {
    config.validate();
    Ensemble out;
    out.config = config;
    out.sizes = draw_sizes(config);

    // Placeholder 1x1 members, overwritten slot-by-slot inside the loop.
    out.members.reserve(out.sizes.size());
    for (std::size_t i = 0; i < out.sizes.size(); ++i)
        out.members.emplace_back(Eigen::MatrixXd::Zero(1, 1));

    parallel_for(config.ensemble_size, threads, [&](int i) {
        out.members[static_cast<std::size_t>(i)] =
            sample_member(config, out.sizes[static_cast<std::size_t>(i)], i);
    });
    return out;
}

} // namespace mgoe
