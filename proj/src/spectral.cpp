#include "mgoe/spectral.hpp"

#include "mgoe/errors.hpp"

#include <Eigen/Eigenvalues>

#include <string>

namespace mgoe {

SpectrumRaw eigenvalues_symmetric(const SymmetricMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.entries(),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigenvalues_symmetric: solver failed to converge at order " +
                             std::to_string(a.order()));
    SpectrumRaw out;
    out.order = a.order();
    const auto& ev = solver.eigenvalues();
    out.values.assign(ev.data(), ev.data() + ev.size());
    return out; // SelfAdjointEigenSolver already sorts ascending
}

double trace(const SymmetricMatrix& a) {
    return a.entries().trace();
}

} // namespace mgoe
