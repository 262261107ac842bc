#pragma once

#include <utility>
#include <vector>

#include "eikfem/errors.hpp"
#include "eikfem/sparse.hpp"

namespace eikfem {

struct SolverConfig {
    double rel_tol = 1e-10;
    int max_iters = 0; // 0 means 10 * n
    enum class Precond { None, Jacobi } precond = Precond::Jacobi;
};

struct SolveStats {
    int iterations = 0;
    double final_relative_residual = 0.0;
};

/// Preconditioned conjugate gradients for an SPD system; x0, when given,
/// is the starting iterate.
std::pair<std::vector<double>, SolveStats> solve_spd(const SparseSpdMatrix& a,
                                                     const std::vector<double>& b,
                                                     const SolverConfig& cfg = {},
                                                     const std::vector<double>* x0 = nullptr);

} // namespace eikfem
