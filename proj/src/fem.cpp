#include "eikfem/fem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace eikfem {

namespace {

QuadRule make_rule(int exactness,
                   std::initializer_list<std::pair<std::array<double, 3>, double>> groups) {
    QuadRule rule;
    rule.exactness = exactness;
    for (const auto& [b, w] : groups) {
        // expand the symmetric orbit of the barycentric point
        std::array<double, 3> p = b;
        std::sort(p.begin(), p.end());
        std::vector<std::array<double, 3>> orbit;
        do {
            orbit.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        if (orbit.empty()) orbit.push_back(p);
        for (const auto& q : orbit) {
            rule.bary.push_back(q);
            rule.weight.push_back(w);
        }
    }
    return rule;
}

// Dunavant symmetric rules with positive weights.
const QuadRule& rule_degree4() {
    static const QuadRule rule = make_rule(
        4, {{{0.108103018168070, 0.445948490915965, 0.445948490915965}, 0.22338158967801172},
            {{0.816847572980459, 0.091576213509771, 0.091576213509771}, 0.10995174365532162}});
    return rule;
}

const QuadRule& rule_degree6() {
    static const QuadRule rule = make_rule(
        6, {{{0.501426509658179, 0.249286745170910, 0.249286745170910}, 0.11678627572637985},
            {{0.873821971016996, 0.063089014491502, 0.063089014491502}, 0.050844906370206666},
            {{0.053145049844816, 0.310352451033785, 0.636502499121399}, 0.082851075618373279}});
    return rule;
}

const QuadRule& rule_degree8() {
    static const QuadRule rule = make_rule(
        8, {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.14431560767778454},
            {{0.081414823414554, 0.459292588292723, 0.459292588292723}, 0.095091634267285494},
            {{0.658861384496480, 0.170569307751760, 0.170569307751760}, 0.10321737053471791},
            {{0.898905543365938, 0.050547228317031, 0.050547228317031}, 0.032458497623198447},
            {{0.008394777409958, 0.263112829634638, 0.728492392955404}, 0.027230314174434948}});
    return rule;
}

// barycentric multi-indices (i+j+k = m): vertices, then edge nodes along
// edges (0,1), (1,2), (2,0), then the interior node for m = 3
std::vector<std::array<int, 3>> lattice_nodes(int degree) {
    const int m = degree;
    std::vector<std::array<int, 3>> nodes = {{m, 0, 0}, {0, m, 0}, {0, 0, m}};
    for (int t = 1; t < m; ++t) nodes.push_back({m - t, t, 0});
    for (int t = 1; t < m; ++t) nodes.push_back({0, m - t, t});
    for (int t = 1; t < m; ++t) nodes.push_back({t, 0, m - t});
    if (m == 3) nodes.push_back({1, 1, 1});
    return nodes;
}

// Silvester polynomial P_a(t) = prod_{r<a} (m t - r) / a! and its derivative
void silvester(int a, int m, double t, double& p, double& dp) {
    p = 1.0;
    dp = 0.0;
    for (int r = 0; r < a; ++r) {
        dp = dp * (m * t - r) + p * m;
        p *= (m * t - r);
    }
    double fact = 1.0;
    for (int r = 2; r <= a; ++r) fact *= r;
    p /= fact;
    dp /= fact;
}

int check_degree(int degree) {
    if (degree < 1 || degree > 3)
        throw UnsupportedDegree("finite-element degree must be 1, 2 or 3, got " +
                                std::to_string(degree));
    return degree;
}

struct TriGeometry {
    double area;
    std::array<Vec2, 3> grad_lambda;
};

TriGeometry triangle_geometry(const std::array<Vec2, 3>& v) {
    const double area2 = cross(v[1] - v[0], v[2] - v[0]);
    TriGeometry g;
    g.area = 0.5 * area2;
    g.grad_lambda[0] = {(v[1].y - v[2].y) / area2, (v[2].x - v[1].x) / area2};
    g.grad_lambda[1] = {(v[2].y - v[0].y) / area2, (v[0].x - v[2].x) / area2};
    g.grad_lambda[2] = {(v[0].y - v[1].y) / area2, (v[1].x - v[0].x) / area2};
    return g;
}

} // namespace

const QuadRule& triangle_rule(int min_degree) {
    if (min_degree <= 4) return rule_degree4();
    if (min_degree <= 6) return rule_degree6();
    if (min_degree <= 8) return rule_degree8();
    throw Error("triangle_rule: no rule of exactness " + std::to_string(min_degree));
}

void shape_functions(int degree, const std::array<double, 3>& lambda,
                     std::span<double> values, std::span<std::array<double, 3>> dlambda) {
    const auto nodes = lattice_nodes(degree);
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        double p[3], dp[3];
        for (int c = 0; c < 3; ++c) silvester(nodes[n][c], degree, lambda[c], p[c], dp[c]);
        values[n] = p[0] * p[1] * p[2];
        dlambda[n] = {dp[0] * p[1] * p[2], p[0] * dp[1] * p[2], p[0] * p[1] * dp[2]};
    }
}

FeSpace build_space(std::shared_ptr<const Mesh> mesh, int degree) {
    check_degree(degree);

    FeSpace space;
    space.mesh = mesh;
    space.degree = degree;
    space.dofs_per_cell = (degree + 1) * (degree + 2) / 2;
    space.dof_coords.assign(mesh->vertices.begin(), mesh->vertices.end());

    const int num_vertices = static_cast<int>(mesh->vertices.size());
    const int per_edge = degree - 1;

    // global edges in order of first appearance, keyed by sorted vertex pair
    std::map<std::pair<int, int>, int> edge_index;
    auto edge_of = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto [it, inserted] = edge_index.try_emplace(key, static_cast<int>(edge_index.size()));
        if (inserted && per_edge > 0) {
            const Vec2 lo = mesh->vertices[key.first];
            const Vec2 hi = mesh->vertices[key.second];
            for (int t = 1; t < degree; ++t)
                space.dof_coords.push_back(lo + (double(t) / degree) * (hi - lo));
        }
        return it->second;
    };

    const int num_cells = static_cast<int>(mesh->triangles.size());
    std::vector<std::array<int, 3>> cell_edges(num_cells);
    for (int c = 0; c < num_cells; ++c) {
        const auto& t = mesh->triangles[c];
        cell_edges[c] = {edge_of(t[0], t[1]), edge_of(t[1], t[2]), edge_of(t[2], t[0])};
    }

    const int num_edges = static_cast<int>(edge_index.size());
    const int interior_base = num_vertices + num_edges * per_edge;

    space.cell_dofs.resize(static_cast<std::size_t>(num_cells) * space.dofs_per_cell);
    for (int c = 0; c < num_cells; ++c) {
        const auto& t = mesh->triangles[c];
        int* dofs = space.cell_dofs.data() + static_cast<std::size_t>(c) * space.dofs_per_cell;
        dofs[0] = t[0];
        dofs[1] = t[1];
        dofs[2] = t[2];
        int pos = 3;
        const std::array<std::pair<int, int>, 3> local_edges = {
            {{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}}};
        for (int e = 0; e < 3; ++e) {
            const int base = num_vertices + cell_edges[c][e] * per_edge;
            const bool forward = local_edges[e].first < local_edges[e].second;
            for (int s = 0; s < per_edge; ++s)
                dofs[pos++] = base + (forward ? s : per_edge - 1 - s);
        }
        if (degree == 3) {
            dofs[pos] = interior_base + c;
        }
    }
    if (degree == 3) {
        for (int c = 0; c < num_cells; ++c) {
            const auto& t = mesh->triangles[c];
            space.dof_coords.push_back(
                (1.0 / 3.0) * (mesh->vertices[t[0]] + mesh->vertices[t[1]] + mesh->vertices[t[2]]));
        }
    }

    space.is_boundary.assign(space.dof_coords.size(), 0);
    for (const auto& be : mesh->boundary_edges) {
        if (be.marker != BcType::Dirichlet) continue;
        space.is_boundary[be.a] = 1;
        space.is_boundary[be.b] = 1;
        if (per_edge > 0) {
            const int e = edge_index.at(std::minmax(be.a, be.b));
            for (int s = 0; s < per_edge; ++s)
                space.is_boundary[num_vertices + e * per_edge + s] = 1;
        }
    }
    for (int d = 0; d < space.num_dofs(); ++d)
        if (space.is_boundary[d]) space.boundary_dofs.push_back(d);

    return space;
}

ElementBlocks element_matrices(const std::array<Vec2, 3>& tri_vertices,
                               const CoefficientField& coeff, double alpha, int degree) {
    check_degree(degree);
    const int n = (degree + 1) * (degree + 2) / 2;
    const TriGeometry geom = triangle_geometry(tri_vertices);
    const QuadRule& rule = triangle_rule(2 * degree + 1);

    ElementBlocks blocks;
    blocks.n = n;

    std::array<double, 10> N;
    std::array<std::array<double, 3>, 10> dL;
    std::array<Vec2, 10> grad;

    for (std::size_t q = 0; q < rule.bary.size(); ++q) {
        const auto& lam = rule.bary[q];
        shape_functions(degree, lam, {N.data(), N.size()}, {dL.data(), dL.size()});
        for (int i = 0; i < n; ++i) {
            grad[i] = {0.0, 0.0};
            for (int c = 0; c < 3; ++c) grad[i] = grad[i] + dL[i][c] * geom.grad_lambda[c];
        }
        const Vec2 xq = lam[0] * tri_vertices[0] + lam[1] * tri_vertices[1] +
                        lam[2] * tri_vertices[2];
        const double a1 = coeff.a1sq(xq);
        const double a2 = coeff.a2sq(xq);
        const double w = rule.weight[q] * geom.area;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                blocks.stiffness[i * n + j] +=
                    w * alpha * alpha * (a1 * grad[i].x * grad[j].x + a2 * grad[i].y * grad[j].y);
                blocks.mass[i * n + j] += w * N[i] * N[j];
            }
        }
    }
    return blocks;
}

namespace {

// Element loop shared by the reduced and the full assembly.
template <class Emit>
void for_each_element(const FeSpace& space, const CoefficientField& coeff, double alpha,
                      bool lumping, Emit&& emit) {
    if (lumping && space.degree != 1)
        throw LumpingUnsupported("mass lumping requires degree 1, got degree " +
                                 std::to_string(space.degree));

    const Mesh& mesh = *space.mesh;
    const int n = space.dofs_per_cell;
    for (std::size_t c = 0; c < mesh.triangles.size(); ++c) {
        const auto& t = mesh.triangles[c];
        ElementBlocks blocks = element_matrices(
            {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]},
            coeff, alpha, space.degree);
        if (lumping) {
            for (int i = 0; i < n; ++i) {
                double row = 0.0;
                for (int j = 0; j < n; ++j) {
                    row += blocks.mass[i * n + j];
                    blocks.mass[i * n + j] = 0.0;
                }
                blocks.mass[i * n + i] = row;
            }
        }
        emit(static_cast<int>(c), blocks);
    }
}

} // namespace

AssembledSystem assemble(const FeSpace& space, const CoefficientField& coeff,
                         double alpha, bool lumping) {
    if (alpha <= 0) throw Error("assemble: alpha must be positive");

    AssembledSystem sys;
    sys.full_dim = space.num_dofs();
    sys.lumped = lumping;
    sys.global_to_interior.assign(sys.full_dim, -1);
    for (int d = 0; d < sys.full_dim; ++d) {
        if (!space.is_boundary[d]) {
            sys.global_to_interior[d] = static_cast<int>(sys.interior_to_global.size());
            sys.interior_to_global.push_back(d);
        }
    }
    const int n_int = static_cast<int>(sys.interior_to_global.size());
    sys.rhs.assign(n_int, 0.0);

    std::vector<Triplet> triplets;
    triplets.reserve(space.cell_dofs.size() * space.dofs_per_cell);
    const int n = space.dofs_per_cell;

    for_each_element(space, coeff, alpha, lumping, [&](int c, const ElementBlocks& blocks) {
        const auto dofs = space.dofs_of(c);
        for (int i = 0; i < n; ++i) {
            const int ri = sys.global_to_interior[dofs[i]];
            if (ri < 0) continue;
            for (int j = 0; j < n; ++j) {
                const double a = blocks.stiffness[i * n + j] + blocks.mass[i * n + j];
                if (a == 0.0) continue;
                const int rj = sys.global_to_interior[dofs[j]];
                if (rj < 0)
                    sys.rhs[ri] -= a; // Dirichlet lifting of v = 1
                else
                    triplets.push_back({ri, rj, a});
            }
        }
    });

    sys.matrix = SparseSpdMatrix::from_triplets(n_int, std::move(triplets));
    return sys;
}

SparseSpdMatrix assemble_full(const FeSpace& space, const CoefficientField& coeff,
                              double alpha, bool lumping) {
    std::vector<Triplet> triplets;
    const int n = space.dofs_per_cell;
    for_each_element(space, coeff, alpha, lumping, [&](int c, const ElementBlocks& blocks) {
        const auto dofs = space.dofs_of(c);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double a = blocks.stiffness[i * n + j] + blocks.mass[i * n + j];
                if (a != 0.0) triplets.push_back({dofs[i], dofs[j], a});
            }
    });
    return SparseSpdMatrix::from_triplets(space.num_dofs(), std::move(triplets));
}

std::vector<double> lumped_mass_weights(const FeSpace& space) {
    std::vector<double> w(space.num_dofs(), 0.0);
    const Mesh& mesh = *space.mesh;
    const int n = space.dofs_per_cell;
    const auto unit = CoefficientField::constant(1.0, 1.0);
    for (std::size_t c = 0; c < mesh.triangles.size(); ++c) {
        const auto& t = mesh.triangles[c];
        const ElementBlocks blocks = element_matrices(
            {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]},
            unit, 1.0, space.degree);
        const auto dofs = space.dofs_of(static_cast<int>(c));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[dofs[i]] += blocks.mass[i * n + j];
    }
    return w;
}

std::vector<double> evaluate_field(const FeSpace& space, const std::vector<double>& dof_values,
                                   std::span<const Vec2> points) {
    std::vector<double> out;
    out.reserve(points.size());
    std::array<double, 10> N;
    std::array<std::array<double, 3>, 10> dL;
    for (const Vec2& p : points) {
        const PointLocation loc = space.mesh->locate(p);
        shape_functions(space.degree, loc.bary, {N.data(), N.size()}, {dL.data(), dL.size()});
        const auto dofs = space.dofs_of(loc.triangle);
        double v = 0.0;
        for (int i = 0; i < space.dofs_per_cell; ++i) v += N[i] * dof_values[dofs[i]];
        out.push_back(v);
    }
    return out;
}

} // namespace eikfem
