#include "eikfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace eikfem {

namespace {

std::int64_t cell_key(int i, int j, int stride) {
    return static_cast<std::int64_t>(j) * stride + i;
}

// Shared lattice builder.  A vertex exists when it touches at least one
// present cell; vertices and cells are enumerated row-major (j outer) so
// construction is deterministic.
Mesh build_lattice(int ni, int nj, double hx, double hy, const DomainSpec& spec,
                   const std::function<bool(int, int)>& cell_in,
                   const std::function<BcType(int, int, int, int)>& edge_marker) {
    Mesh mesh;
    mesh.domain = spec;
    mesh.hx = hx;
    mesh.hy = hy;
    mesh.ncols = ni;
    mesh.nrows = nj;

    auto cell_present = [&](int i, int j) {
        return i >= 0 && j >= 0 && i < ni && j < nj && cell_in(i, j);
    };

    std::vector<int> vid(static_cast<std::size_t>(ni + 1) * (nj + 1), -1);
    auto vindex = [&](int i, int j) -> int& {
        return vid[static_cast<std::size_t>(j) * (ni + 1) + i];
    };

    for (int j = 0; j <= nj; ++j) {
        for (int i = 0; i <= ni; ++i) {
            bool used = cell_present(i, j) || cell_present(i - 1, j) ||
                        cell_present(i, j - 1) || cell_present(i - 1, j - 1);
            if (used) {
                vindex(i, j) = static_cast<int>(mesh.vertices.size());
                mesh.vertices.push_back({i * hx, j * hy});
            }
        }
    }

    for (int j = 0; j < nj; ++j) {
        for (int i = 0; i < ni; ++i) {
            if (!cell_present(i, j)) continue;
            int v00 = vindex(i, j);
            int v10 = vindex(i + 1, j);
            int v01 = vindex(i, j + 1);
            int v11 = vindex(i + 1, j + 1);
            mesh.cell_to_tri[cell_key(i, j, ni)] =
                static_cast<int>(mesh.triangles.size());
            mesh.triangles.push_back({v00, v10, v11}); // below the diagonal
            mesh.triangles.push_back({v00, v11, v01}); // above the diagonal

            if (!cell_present(i, j - 1))
                mesh.boundary_edges.push_back({v00, v10, edge_marker(i, j, i + 1, j)});
            if (!cell_present(i + 1, j))
                mesh.boundary_edges.push_back({v10, v11, edge_marker(i + 1, j, i + 1, j + 1)});
            if (!cell_present(i, j + 1))
                mesh.boundary_edges.push_back({v11, v01, edge_marker(i + 1, j + 1, i, j + 1)});
            if (!cell_present(i - 1, j))
                mesh.boundary_edges.push_back({v01, v00, edge_marker(i, j + 1, i, j)});
        }
    }
    return mesh;
}

} // namespace

Mesh build_lshape(int level) {
    if (level < 0) throw Error("build_lshape: level must be >= 0");
    if (level > 8)
        throw ResourceLimit("build_lshape: level " + std::to_string(level) +
                            " exceeds the supported maximum of 8");

    const int n = 32 << level; // cells per unit length, h = 1/n
    const double h = 1.0 / n;
    const int ni = 2 * n;
    const int nj = 3 * n / 2;

    auto cell_in = [n](int i, int j) {
        return (i < n) || (j < n); // [0,1]x[0,1.5] union [1,2]x[0,1]
    };
    auto marker = [](int, int, int, int) { return BcType::Dirichlet; };

    return build_lattice(ni, nj, h, h, DomainSpec::lshape(), cell_in, marker);
}

Mesh build_rect(int nx, int ny, const DomainSpec& spec) {
    if (spec.shape != DomainSpec::Shape::Rect)
        throw Error("build_rect: spec.shape must be Rect");
    if (nx < 1 || ny < 1) throw Error("build_rect: cell counts must be >= 1");
    if (spec.width <= 0 || spec.height <= 0)
        throw Error("build_rect: domain dimensions must be positive");

    bool any_dirichlet = false;
    for (auto side : {Side::Left, Side::Right, Side::Bottom, Side::Top}) {
        auto it = spec.markers.find(side);
        if (it == spec.markers.end())
            throw Error("build_rect: missing marker for a boundary side");
        if (it->second == BcType::Dirichlet) any_dirichlet = true;
    }
    if (!any_dirichlet)
        throw Error("build_rect: at least one side must be Dirichlet");

    const double hx = spec.width / nx;
    const double hy = spec.height / ny;

    auto cell_in = [](int, int) { return true; };
    auto marker = [&spec, nx, ny](int i0, int j0, int i1, int j1) {
        if (i0 == 0 && i1 == 0) return spec.markers.at(Side::Left);
        if (i0 == nx && i1 == nx) return spec.markers.at(Side::Right);
        if (j0 == 0 && j1 == 0) return spec.markers.at(Side::Bottom);
        return spec.markers.at(Side::Top);
    };

    return build_lattice(nx, ny, hx, hy, spec, cell_in, marker);
}

double Mesh::total_area() const {
    double area = 0.0;
    for (const auto& t : triangles) {
        Vec2 a = vertices[t[0]], b = vertices[t[1]], c = vertices[t[2]];
        area += 0.5 * cross(b - a, c - a);
    }
    return area;
}

PointLocation Mesh::locate(Vec2 p, double tol) const {
    const int ci = static_cast<int>(std::floor(p.x / hx));
    const int cj = static_cast<int>(std::floor(p.y / hy));

    std::vector<int> candidates;
    for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
            auto it = cell_to_tri.find(cell_key(ci + di, cj + dj, ncols));
            if (it == cell_to_tri.end()) continue;
            candidates.push_back(it->second);
            candidates.push_back(it->second + 1);
        }
    }
    std::sort(candidates.begin(), candidates.end());

    // lowest containing triangle wins, so ties on shared edges are stable
    for (int ti : candidates) {
        const auto& t = triangles[ti];
        Vec2 a = vertices[t[0]], b = vertices[t[1]], c = vertices[t[2]];
        const double area2 = cross(b - a, c - a);
        PointLocation loc;
        loc.triangle = ti;
        loc.bary[0] = cross(b - p, c - p) / area2;
        loc.bary[1] = cross(c - p, a - p) / area2;
        loc.bary[2] = cross(a - p, b - p) / area2;
        if (loc.bary[0] >= -tol && loc.bary[1] >= -tol && loc.bary[2] >= -tol)
            return loc;
    }
    throw PointOutsideDomain("locate_point: (" + std::to_string(p.x) + ", " +
                             std::to_string(p.y) + ") is outside the mesh");
}

} // namespace eikfem
