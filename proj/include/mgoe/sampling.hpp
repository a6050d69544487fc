#pragma once

#include "mgoe/rng.hpp"

#include <Eigen/Dense>

#include <vector>

namespace mgoe {

// Parameters of one mixed ensemble: M symmetric Gaussian matrices whose
// orders are drawn as Binomial(N, mu), zeros redrawn.
struct EnsembleConfig {
    int base_size = 500;    // N
    int ensemble_size = 100; // M
    double mixture = 1.0;   // mu in (0,1]
    double sigma = 1.0;     // diagonal standard deviation
    Seed seed = 0;

    void validate() const; // throws ConfigError
};

// A real matrix guaranteed bitwise-symmetric at construction.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(Eigen::MatrixXd entries); // throws ContractError
    int order() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXd& entries() const { return entries_; }

private:
    Eigen::MatrixXd entries_;
};

struct Ensemble {
    EnsembleConfig config;
    std::vector<int> sizes;
    std::vector<SymmetricMatrix> members;
};

// n x n with every entry iid N(0, sigma^2); fills row-major, consumes exactly
// n^2 stream steps.
Eigen::MatrixXd draw_gaussian_matrix(int n, double sigma, RandomStream& rng);

// (G + G^T) / 2.
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& g);

// One Gaussian orthogonal ensemble member: diagonal entries N(0, sigma^2),
// off-diagonal N(0, (sigma/2)^2), mirrored so the matrix is exactly
// symmetric. Fills the upper triangle row-major; consumes exactly n(n+1)/2
// stream steps.
SymmetricMatrix sample_goe(int n, double sigma, RandomStream& rng);

// `count` draws of Binomial(base_size, mixture) with zeros redrawn.
// mixture == 1 short-circuits to base_size without consuming the stream.
std::vector<int> draw_mixture_sizes(int base_size, double mixture, int count,
                                    RandomStream& rng);

// Seeds for the sub-streams of one ensemble. Member i's matrix entries come
// from an independent stream, so members can be generated in any order (or in
// parallel) with identical results.
Seed sizes_seed(const EnsembleConfig& config);
Seed member_seed(const EnsembleConfig& config, int index);

std::vector<int> draw_sizes(const EnsembleConfig& config);
SymmetricMatrix sample_member(const EnsembleConfig& config, int size, int index);

// Full ensemble, materialized. Equals {draw_sizes, sample_member} pointwise.
Ensemble sample_mgoe(const EnsembleConfig& config, int threads = 1);

} // namespace mgoe
