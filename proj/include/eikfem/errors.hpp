#pragma once

#include <stdexcept>
#include <string>

namespace eikfem {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PointOutsideDomain : Error {
    using Error::Error;
};

struct UnsupportedDegree : Error {
    using Error::Error;
};

struct LumpingUnsupported : Error {
    using Error::Error;
};

struct ResourceLimit : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    NoConvergence(int iters, double residual)
        : Error("CG failed to converge after " + std::to_string(iters) +
                " iterations (relative residual " + std::to_string(residual) + ")"),
          iterations(iters),
          final_relative_residual(residual) {}
    int iterations;
    double final_relative_residual;
};

struct NotPositiveDefinite : Error {
    using Error::Error;
};

struct UndefinedField : Error {
    using Error::Error;
};

} // namespace eikfem
