#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "eikfem/fem.hpp"
#include "eikfem/mesh.hpp"
#include "eikfem/solver.hpp"

namespace eikfem {

struct FixedAlpha {
    double alpha = 0.25;
};

/// alpha = 2^-k for k = k_min .. k_max.
struct AlphaSweep {
    int k_min = 3;
    int k_max = 8;
};

/// Warm start for the linear solves.  BoundaryDistance seeds CG with
/// exp(-d/alpha), d being the Dijkstra distance to the Dirichlet boundary
/// over the DOF graph in the scaled metric; this keeps deep-interior values
/// strictly positive where the residual tolerance alone cannot resolve
/// their magnitude.
enum class WarmStart { Zero, BoundaryDistance };

struct RunConfig {
    DomainSpec domain = DomainSpec::lshape();
    int level = 1;  // LShape grids
    int nx = 32;    // Rect grids
    int ny = 32;
    int degree = 1;
    bool lumping = false;
    double a1sq = 1.0;
    double a2sq = 1.0;
    std::variant<FixedAlpha, AlphaSweep> alpha_mode = AlphaSweep{};
    double monotone_eps = 0.0;
    SolverConfig solver;
    WarmStart warm_start = WarmStart::BoundaryDistance;
};

/// Mesh, space and coefficients built once and shared by all alpha solves.
struct Problem {
    std::shared_ptr<const Mesh> mesh;
    FeSpace space;
    CoefficientField coeff;
    bool lumping = false;
    double monotone_eps = 0.0;
    SolverConfig solver;
    std::vector<double> seed_distance; // empty for cold starts
};

Problem make_problem(const RunConfig& config);

struct SolveResult {
    double alpha = 0.0;
    std::vector<double> v;     // all DOFs, Dirichlet entries exactly 1
    std::vector<double> u;     // empty until transform_u; NaN marks undefined
    bool monotone = false;
    double v_min_interior = 0.0;
    double v_max_interior = 0.0;
    SolveStats stats;
};

struct SweepResult {
    std::vector<SolveResult> per_alpha;       // ordered by decreasing alpha
    std::optional<std::size_t> selected;      // last of the monotone prefix
    int k_min = 0;
};

struct NoMonotoneAlpha : Error {
    explicit NoMonotoneAlpha(SweepResult s)
        : Error("no monotone solution: the largest swept alpha already violates "
                "the discrete maximum principle"),
          sweep(std::move(s)) {}
    SweepResult sweep;
};

struct MonotoneVerdict {
    bool monotone = false;
    double v_min = 0.0;
    double v_max = 0.0;
};

MonotoneVerdict check_monotone(const std::vector<double>& v,
                               const std::vector<char>& is_boundary, double eps);

/// Solve the auxiliary linear problem at one alpha; u is left unpopulated.
SolveResult solve_v(const Problem& problem, double alpha);

/// u_i = -alpha ln(v_i); entries with v_i <= 0 become NaN, never clamped.
std::vector<double> transform_u(const std::vector<double>& v, double alpha);

/// Halve alpha from 2^-k_min to 2^-k_max; every k is solved for reporting,
/// the selection follows the monotone prefix.  The selected result gets u
/// populated.  Throws NoMonotoneAlpha when even k_min fails.
SweepResult alpha_sweep(const Problem& problem, int k_min, int k_max);

struct CrossSectionSample {
    double t = 0.0;
    double u = 0.0; // NaN when undefined along the section
};

/// Sample u along the diagonal x1 = x2, t in [0,1].
std::vector<CrossSectionSample> cross_section(const FeSpace& space,
                                              const std::vector<double>& u, int n_samples);

/// Dijkstra distance from the Dirichlet boundary over the DOF graph, edge
/// lengths measured in the scaled metric sqrt(dx^2/a1^2 + dy^2/a2^2).
std::vector<double> graph_distance_to_boundary(const FeSpace& space,
                                               const CoefficientField& coeff);

} // namespace eikfem
