#pragma once

#include "mgoe/sampling.hpp"

#include <vector>

namespace mgoe {

// Sorted eigenvalues of one member, before any post-processing.
struct SpectrumRaw {
    std::vector<double> values; // ascending
    int order = 0;              // matrix order the values came from
};

// Eigenvalues of a symmetric matrix, ascending. Throws NumericalError (with
// the matrix order in the message) if the solver does not converge.
SpectrumRaw eigenvalues_symmetric(const SymmetricMatrix& a);

double trace(const SymmetricMatrix& a);

} // namespace mgoe
