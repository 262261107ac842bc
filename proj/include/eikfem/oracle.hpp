#pragma once

#include <vector>

#include "eikfem/fem.hpp"
#include "eikfem/mesh.hpp"

namespace eikfem {

/// Closed boundary of the computational domain, counterclockwise.
struct BoundaryPolygon {
    std::vector<Vec2> points;

    static BoundaryPolygon lshape();
    static BoundaryPolygon rect(double width, double height);
    static BoundaryPolygon of(const DomainSpec& spec);

    bool contains(Vec2 p, double tol = 1e-12) const;
};

/// Exact viscosity solution for constant coefficients: the distance from p
/// to the boundary measured in the norm sqrt(z1^2/a1^2 + z2^2/a2^2),
/// computed as the Euclidean point-to-segment minimum after scaling each
/// axis by 1/a_i.
double exact_u(Vec2 p, const BoundaryPolygon& poly, double a1sq, double a2sq);

struct ErrorReport {
    double l_inf = 0.0;
    double l2 = 0.0;
    int n_points = 0;
};

/// Nodal errors of u against exact_u over interior DOFs; the discrete L2
/// norm is weighted by lumped-mass weights.
ErrorReport error_norms(const FeSpace& space, const std::vector<double>& u,
                        const BoundaryPolygon& poly, double a1sq, double a2sq);

} // namespace eikfem
