#include "eikfem/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eikfem {

BoundaryPolygon BoundaryPolygon::lshape() {
    return {{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 1.5}, {0, 1.5}}};
}

BoundaryPolygon BoundaryPolygon::rect(double width, double height) {
    return {{{0, 0}, {width, 0}, {width, height}, {0, height}}};
}

BoundaryPolygon BoundaryPolygon::of(const DomainSpec& spec) {
    return spec.shape == DomainSpec::Shape::LShape ? lshape()
                                                   : rect(spec.width, spec.height);
}

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 q = a + t * ab;
    return std::sqrt(dot(p - q, p - q));
}

double boundary_distance(Vec2 p, const BoundaryPolygon& poly) {
    double best = std::numeric_limits<double>::infinity();
    const auto& pts = poly.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2 a = pts[i];
        const Vec2 b = pts[(i + 1) % pts.size()];
        best = std::min(best, point_segment_distance(p, a, b));
    }
    return best;
}

} // namespace

bool BoundaryPolygon::contains(Vec2 p, double tol) const {
    if (boundary_distance(p, *this) <= tol) return true;
    // crossing-number test
    bool inside = false;
    for (std::size_t i = 0, j = points.size() - 1; i < points.size(); j = i++) {
        const Vec2 a = points[i];
        const Vec2 b = points[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xc) inside = !inside;
        }
    }
    return inside;
}

double exact_u(Vec2 p, const BoundaryPolygon& poly, double a1sq, double a2sq) {
    if (a1sq <= 0.0 || a2sq <= 0.0)
        throw Error("exact_u: squared coefficients must be positive");
    if (!poly.contains(p, 1e-9))
        throw PointOutsideDomain("exact_u: point (" + std::to_string(p.x) + ", " +
                                 std::to_string(p.y) + ") lies outside the domain");

    const double sx = 1.0 / std::sqrt(a1sq);
    const double sy = 1.0 / std::sqrt(a2sq);
    BoundaryPolygon scaled;
    scaled.points.reserve(poly.points.size());
    for (Vec2 q : poly.points) scaled.points.push_back({q.x * sx, q.y * sy});
    return boundary_distance({p.x * sx, p.y * sy}, scaled);
}

ErrorReport error_norms(const FeSpace& space, const std::vector<double>& u,
                        const BoundaryPolygon& poly, double a1sq, double a2sq) {
    const std::vector<double> weights = lumped_mass_weights(space);

    ErrorReport rep;
    double sum = 0.0;
    for (int d = 0; d < space.num_dofs(); ++d) {
        if (space.is_boundary[d]) continue;
        if (!std::isfinite(u[d]))
            throw UndefinedField("error_norms: u is undefined at DOF " + std::to_string(d));
        const double diff = u[d] - exact_u(space.dof_coords[d], poly, a1sq, a2sq);
        rep.l_inf = std::max(rep.l_inf, std::abs(diff));
        sum += weights[d] * diff * diff;
        ++rep.n_points;
    }
    rep.l2 = std::sqrt(std::max(sum, 0.0));
    return rep;
}

} // namespace eikfem
