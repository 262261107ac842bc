#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "eikfem/mesh.hpp"
#include "eikfem/sparse.hpp"

namespace eikfem {

/// Squared coefficients a_i^2(x) of the anisotropic operator.  Strictly
/// positive wherever evaluated.
struct CoefficientField {
    std::function<double(Vec2)> a1sq;
    std::function<double(Vec2)> a2sq;

    static CoefficientField constant(double a1sq_val, double a2sq_val) {
        return {[a1sq_val](Vec2) { return a1sq_val; },
                [a2sq_val](Vec2) { return a2sq_val; }};
    }
};

/// Symmetric quadrature rule on the reference triangle.  Weights sum to 1
/// and get scaled by the physical triangle area.
struct QuadRule {
    std::vector<std::array<double, 3>> bary;
    std::vector<double> weight;
    int exactness = 0;
};

/// Smallest built-in rule whose polynomial exactness is >= min_degree.
const QuadRule& triangle_rule(int min_degree);

/// Lagrangian finite-element space of degree m in {1,2,3} with equispaced
/// edge nodes.  DOF numbering: mesh vertices first, then edge nodes, then
/// cell interior nodes (degree 3 only).
struct FeSpace {
    std::shared_ptr<const Mesh> mesh;
    int degree = 1;
    int dofs_per_cell = 3;
    std::vector<Vec2> dof_coords;
    std::vector<int> cell_dofs; // flattened, dofs_per_cell per triangle
    std::vector<int> boundary_dofs;
    std::vector<char> is_boundary; // Dirichlet-DOF mask, size num_dofs()

    int num_dofs() const { return static_cast<int>(dof_coords.size()); }

    std::span<const int> dofs_of(int triangle) const {
        return {cell_dofs.data() + static_cast<std::size_t>(triangle) * dofs_per_cell,
                static_cast<std::size_t>(dofs_per_cell)};
    }
};

FeSpace build_space(std::shared_ptr<const Mesh> mesh, int degree);

/// Local Lagrange basis at a barycentric point: values and derivatives with
/// respect to the three barycentric coordinates.
void shape_functions(int degree, const std::array<double, 3>& lambda,
                     std::span<double> values, std::span<std::array<double, 3>> dlambda);

/// Local alpha^2-weighted anisotropic stiffness and consistent mass blocks
/// for one triangle, dense row-major n-by-n with n = (m+1)(m+2)/2.
struct ElementBlocks {
    int n = 0;
    std::array<double, 100> stiffness{};
    std::array<double, 100> mass{};
};

ElementBlocks element_matrices(const std::array<Vec2, 3>& tri_vertices,
                               const CoefficientField& coeff, double alpha, int degree);

/// System reduced to interior (non-Dirichlet) DOFs; rhs carries the lifting
/// of the boundary value v = 1.
struct AssembledSystem {
    SparseSpdMatrix matrix;
    std::vector<double> rhs;
    int full_dim = 0;
    std::vector<int> interior_to_global;
    std::vector<int> global_to_interior; // -1 on Dirichlet DOFs
    bool lumped = false;
};

AssembledSystem assemble(const FeSpace& space, const CoefficientField& coeff,
                         double alpha, bool lumping);

/// Full alpha^2 K + M over all DOFs, no boundary treatment.
SparseSpdMatrix assemble_full(const FeSpace& space, const CoefficientField& coeff,
                              double alpha, bool lumping);

/// Row sums of the consistent mass matrix.
std::vector<double> lumped_mass_weights(const FeSpace& space);

std::vector<double> evaluate_field(const FeSpace& space, const std::vector<double>& dof_values,
                                   std::span<const Vec2> points);

} // namespace eikfem
