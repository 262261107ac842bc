#include "eikfem/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>

namespace eikfem {

Problem make_problem(const RunConfig& config) {
    Problem p;
    auto mesh = std::make_shared<Mesh>(
        config.domain.shape == DomainSpec::Shape::LShape
            ? build_lshape(config.level)
            : build_rect(config.nx, config.ny, config.domain));
    p.mesh = mesh;
    p.space = build_space(mesh, config.degree);
    p.coeff = CoefficientField::constant(config.a1sq, config.a2sq);
    p.lumping = config.lumping;
    p.monotone_eps = config.monotone_eps;
    p.solver = config.solver;
    if (config.warm_start == WarmStart::BoundaryDistance)
        p.seed_distance = graph_distance_to_boundary(p.space, p.coeff);
    return p;
}

std::vector<double> graph_distance_to_boundary(const FeSpace& space,
                                               const CoefficientField& coeff) {
    const int n = space.num_dofs();
    const double inf = std::numeric_limits<double>::infinity();

    // adjacency: all DOF pairs sharing a cell
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    const int nd = space.dofs_per_cell;
    for (std::size_t c = 0; c < space.mesh->triangles.size(); ++c) {
        const auto dofs = space.dofs_of(static_cast<int>(c));
        for (int i = 0; i < nd; ++i) {
            for (int j = i + 1; j < nd; ++j) {
                const Vec2 a = space.dof_coords[dofs[i]];
                const Vec2 b = space.dof_coords[dofs[j]];
                const Vec2 mid = 0.5 * (a + b);
                const Vec2 d = b - a;
                const double len =
                    std::sqrt(d.x * d.x / coeff.a1sq(mid) + d.y * d.y / coeff.a2sq(mid));
                adj[dofs[i]].push_back({dofs[j], len});
                adj[dofs[j]].push_back({dofs[i], len});
            }
        }
    }

    std::vector<double> dist(n, inf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    for (int d = 0; d < n; ++d) {
        if (space.is_boundary[d]) {
            dist[d] = 0.0;
            queue.push({0.0, d});
        }
    }
    while (!queue.empty()) {
        const auto [dd, u] = queue.top();
        queue.pop();
        if (dd > dist[u]) continue;
        for (const auto& [w, len] : adj[u]) {
            const double cand = dd + len;
            if (cand < dist[w]) {
                dist[w] = cand;
                queue.push({cand, w});
            }
        }
    }
    return dist;
}

MonotoneVerdict check_monotone(const std::vector<double>& v,
                               const std::vector<char>& is_boundary, double eps) {
    MonotoneVerdict verdict;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < v.size(); ++d) {
        if (is_boundary[d]) continue;
        lo = std::min(lo, v[d]);
        hi = std::max(hi, v[d]);
    }
    verdict.v_min = lo;
    verdict.v_max = hi;
    verdict.monotone = (lo > eps) && (hi < 1.0);
    return verdict;
}

namespace {

// Componentwise polish of a CG solution.  Krylov iterations carry an
// additive error floor of roughly machine epsilon times the solution norm,
// which swamps the exponentially small deep-interior values whose sign the
// monotonicity verdict depends on.  Gauss-Seidel sweeps ordered by distance
// from the Dirichlet boundary rebuild each value from its (already accurate)
// shallower neighbours as sums of like-magnitude products, restoring
// relative accuracy scale by scale; on an SPD matrix the sweeps also never
// increase the energy-norm error.
void polish_gauss_seidel(const SparseSpdMatrix& a, const std::vector<double>& b,
                         std::vector<double>& x, const std::vector<int>& order) {
    constexpr int max_sweeps = 300;
    constexpr double rel_tol = 1e-13;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (int i : order) {
            double sum = b[i];
            double diag = 0.0;
            for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
                if (a.col[p] == i)
                    diag = a.val[p];
                else
                    sum -= a.val[p] * x[a.col[p]];
            }
            const double next = sum / diag;
            const double change =
                std::abs(next - x[i]) / (std::abs(next) + 1e-290);
            worst = std::max(worst, change);
            x[i] = next;
        }
        if (worst < rel_tol) break;
    }
}

} // namespace

SolveResult solve_v(const Problem& problem, double alpha) {
    if (alpha <= 0) throw Error("solve_v: alpha must be positive");

    const AssembledSystem sys = assemble(problem.space, problem.coeff, alpha, problem.lumping);

    std::vector<double> x0;
    const std::vector<double>* seed = nullptr;
    if (!problem.seed_distance.empty()) {
        x0.resize(sys.interior_to_global.size());
        for (std::size_t i = 0; i < x0.size(); ++i)
            x0[i] = std::exp(-problem.seed_distance[sys.interior_to_global[i]] / alpha);
        seed = &x0;
    }

    auto [x, stats] = solve_spd(sys.matrix, sys.rhs, problem.solver, seed);

    if (!problem.seed_distance.empty()) {
        std::vector<int> order(x.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int i, int j) {
            return problem.seed_distance[sys.interior_to_global[i]] <
                   problem.seed_distance[sys.interior_to_global[j]];
        });
        polish_gauss_seidel(sys.matrix, sys.rhs, x, order);
    }

    SolveResult result;
    result.alpha = alpha;
    result.stats = stats;
    result.v.assign(sys.full_dim, 1.0); // Dirichlet value, exactly
    for (std::size_t i = 0; i < sys.interior_to_global.size(); ++i)
        result.v[sys.interior_to_global[i]] = x[i];

    const MonotoneVerdict verdict =
        check_monotone(result.v, problem.space.is_boundary, problem.monotone_eps);
    result.monotone = verdict.monotone;
    result.v_min_interior = verdict.v_min;
    result.v_max_interior = verdict.v_max;
    return result;
}

std::vector<double> transform_u(const std::vector<double>& v, double alpha) {
    if (alpha <= 0) throw Error("transform_u: alpha must be positive");
    std::vector<double> u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        u[i] = v[i] > 0.0 ? -alpha * std::log(v[i])
                          : std::numeric_limits<double>::quiet_NaN();
    return u;
}

SweepResult alpha_sweep(const Problem& problem, int k_min, int k_max) {
    if (k_min > k_max) throw Error("alpha_sweep: k_min must not exceed k_max");

    SweepResult sweep;
    sweep.k_min = k_min;
    bool prefix_alive = true;
    for (int k = k_min; k <= k_max; ++k) {
        SolveResult result = solve_v(problem, std::pow(2.0, -k));
        if (result.monotone && prefix_alive)
            sweep.selected = sweep.per_alpha.size();
        else
            prefix_alive = false;
        sweep.per_alpha.push_back(std::move(result));
    }
    if (!sweep.selected) throw NoMonotoneAlpha(std::move(sweep));
    SolveResult& chosen = sweep.per_alpha[*sweep.selected];
    chosen.u = transform_u(chosen.v, chosen.alpha);
    return sweep;
}

std::vector<CrossSectionSample> cross_section(const FeSpace& space,
                                              const std::vector<double>& u, int n_samples) {
    if (n_samples < 2) throw Error("cross_section: need at least 2 samples");
    std::vector<Vec2> points;
    points.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / (n_samples - 1);
        points.push_back({t, t});
    }
    const std::vector<double> values = evaluate_field(space, u, points);
    std::vector<CrossSectionSample> samples(n_samples);
    for (int i = 0; i < n_samples; ++i) samples[i] = {points[i].x, values[i]};
    return samples;
}

} // namespace eikfem
