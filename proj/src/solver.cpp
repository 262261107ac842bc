#include "eikfem/solver.hpp"

#include <cmath>

namespace eikfem {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

std::pair<std::vector<double>, SolveStats> solve_spd(const SparseSpdMatrix& a,
                                                     const std::vector<double>& b,
                                                     const SolverConfig& cfg,
                                                     const std::vector<double>* x0) {
    if (static_cast<int>(b.size()) != a.n)
        throw Error("solve_spd: dimension mismatch");
    if (cfg.rel_tol <= 0.0 || cfg.rel_tol >= 1.0)
        throw Error("solve_spd: rel_tol must lie in (0,1)");

    const int n = a.n;
    const int max_iters = cfg.max_iters > 0 ? cfg.max_iters : 10 * std::max(n, 1);

    std::vector<double> x = x0 ? *x0 : std::vector<double>(n, 0.0);
    SolveStats stats;

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        x.assign(n, 0.0);
        return {std::move(x), stats};
    }

    std::vector<double> inv_diag;
    if (cfg.precond == SolverConfig::Precond::Jacobi) {
        inv_diag = a.diagonal();
        for (double& d : inv_diag) {
            if (d <= 0.0) throw NotPositiveDefinite("solve_spd: non-positive diagonal entry");
            d = 1.0 / d;
        }
    }
    auto apply_precond = [&](const std::vector<double>& r, std::vector<double>& z) {
        if (inv_diag.empty()) {
            z = r;
        } else {
            z.resize(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) z[i] = inv_diag[i] * r[i];
        }
    };

    std::vector<double> r(n), z(n), p(n), q(n);
    a.multiply(x, q);
    for (int i = 0; i < n; ++i) r[i] = b[i] - q[i];

    double res = norm2(r) / bnorm;
    if (res <= cfg.rel_tol) {
        stats.final_relative_residual = res;
        return {std::move(x), stats};
    }

    apply_precond(r, z);
    p = z;
    double rho = dot(r, z);
    if (rho <= 0.0) throw NotPositiveDefinite("solve_spd: preconditioned inner product <= 0");

    for (int iter = 1; iter <= max_iters; ++iter) {
        a.multiply(p, q);
        const double denom = dot(p, q);
        if (denom <= 0.0)
            throw NotPositiveDefinite("solve_spd: p^T A p <= 0, matrix is not SPD");
        const double step = rho / denom;
        for (int i = 0; i < n; ++i) {
            x[i] += step * p[i];
            r[i] -= step * q[i];
        }
        res = norm2(r) / bnorm;
        stats.iterations = iter;
        if (res <= cfg.rel_tol) {
            stats.final_relative_residual = res;
            return {std::move(x), stats};
        }
        apply_precond(r, z);
        const double rho_next = dot(r, z);
        if (rho_next <= 0.0)
            throw NotPositiveDefinite("solve_spd: preconditioned inner product <= 0");
        const double beta = rho_next / rho;
        rho = rho_next;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw NoConvergence(max_iters, res);
}

} // namespace eikfem
