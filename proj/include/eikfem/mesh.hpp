#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "eikfem/errors.hpp"

namespace eikfem {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

enum class BcType { Dirichlet, Neumann };
enum class Side { Left, Right, Bottom, Top };

/// Geometry of the computational domain plus boundary-condition markers
/// on its straight sides.  The L-shape is [0,1]x[0,1.5] united with
/// [1,2]x[0,1] and only supports all-Dirichlet markers.
struct DomainSpec {
    enum class Shape { LShape, Rect };

    Shape shape = Shape::LShape;
    double width = 1.0;  // Rect only
    double height = 1.0; // Rect only
    std::map<Side, BcType> markers = all_dirichlet();

    static std::map<Side, BcType> all_dirichlet() {
        return {{Side::Left, BcType::Dirichlet},
                {Side::Right, BcType::Dirichlet},
                {Side::Bottom, BcType::Dirichlet},
                {Side::Top, BcType::Dirichlet}};
    }

    static DomainSpec lshape() { return DomainSpec{}; }

    static DomainSpec rect(double width, double height) {
        DomainSpec s;
        s.shape = Shape::Rect;
        s.width = width;
        s.height = height;
        return s;
    }

    double area() const {
        return shape == Shape::LShape ? 2.5 : width * height;
    }
};

struct BoundaryEdge {
    int a = 0;
    int b = 0;
    BcType marker = BcType::Dirichlet;
};

struct PointLocation {
    int triangle = -1;
    std::array<double, 3> bary{};
};

/// Conforming triangulation of a DomainSpec.  Every square lattice cell is
/// split along the (1,1) diagonal into two counterclockwise triangles.
/// Immutable after construction.
struct Mesh {
    DomainSpec domain;
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles; // CCW vertex triples
    std::vector<BoundaryEdge> boundary_edges;
    double hx = 0.0;
    double hy = 0.0;

    // lattice extents and cell -> first-triangle lookup for point location
    int ncols = 0;
    int nrows = 0;
    std::unordered_map<std::int64_t, int> cell_to_tri;

    double h() const { return hx; }
    double total_area() const;
    PointLocation locate(Vec2 p, double tol = 1e-10) const;
};

/// L-shaped domain at grid step h = 1/(32*2^level), all sides Dirichlet.
Mesh build_lshape(int level);

/// nx-by-ny cell rectangle with per-side markers taken from spec.
Mesh build_rect(int nx, int ny, const DomainSpec& spec);

inline PointLocation locate_point(const Mesh& mesh, Vec2 p, double tol = 1e-10) {
    return mesh.locate(p, tol);
}

} // namespace eikfem
