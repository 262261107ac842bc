#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <queue>
#include <random>

#include "eikfem/driver.hpp"
#include "eikfem/oracle.hpp"

using namespace eikfem;

TEST_CASE("unit square distances") {
    const BoundaryPolygon sq = BoundaryPolygon::rect(1.0, 1.0);
    CHECK(exact_u({0.5, 0.5}, sq, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(exact_u({0.25, 0.5}, sq, 1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(exact_u({0.1, 0.7}, sq, 1.0, 1.0) == doctest::Approx(0.1).epsilon(1e-13));
    // boundary and corner points are at distance zero
    CHECK(exact_u({0.0, 0.3}, sq, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(exact_u({1.0, 1.0}, sq, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("L-shape distances honour the reentrant corner") {
    const BoundaryPolygon poly = BoundaryPolygon::lshape();
    // near the reentrant corner the closest boundary point is the corner itself
    CHECK(exact_u({0.7, 0.7}, poly, 1.0, 1.0) ==
          doctest::Approx(std::hypot(0.3, 0.3)).epsilon(1e-13));
    CHECK(exact_u({0.5, 1.25}, poly, 1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(exact_u({1.5, 0.5}, poly, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(exact_u({1.0, 1.0}, poly, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK_THROWS_AS(exact_u({1.5, 1.25}, poly, 1.0, 1.0), PointOutsideDomain);
    CHECK_THROWS_AS(exact_u({-0.1, 0.5}, poly, 1.0, 1.0), PointOutsideDomain);
}

TEST_CASE("anisotropic metric scales per axis") {
    const BoundaryPolygon sq = BoundaryPolygon::rect(1.0, 1.0);
    // vertical travel is twice as cheap with a2^2 = 4, so the top/bottom walls win
    CHECK(exact_u({0.5, 0.5}, sq, 1.0, 4.0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(exact_u({0.1, 0.5}, sq, 1.0, 4.0) == doctest::Approx(0.1).epsilon(1e-13));
    // isotropic scaling by c^2 divides all distances by c
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    for (int trial = 0; trial < 50; ++trial) {
        const Vec2 p{unif(rng), unif(rng)};
        const double base = exact_u(p, sq, 1.0, 1.0);
        CHECK(exact_u(p, sq, 9.0, 9.0) == doctest::Approx(base / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("oracle matches dense boundary sampling") {
    const BoundaryPolygon poly = BoundaryPolygon::lshape();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ux(0.0, 2.0);
    std::uniform_real_distribution<double> uy(0.0, 1.5);
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    int tested = 0;
    while (tested < 40) {
        const Vec2 p{ux(rng), uy(rng)};
        double brute = 1e300;
        try {
            const double fast = exact_u(p, poly, 1.0, 3.0);
            const auto& pts = poly.points;
            for (std::size_t s = 0; s < pts.size(); ++s) {
                const Vec2 a = pts[s];
                const Vec2 b = pts[(s + 1) % pts.size()];
                for (int j = 0; j <= 4000; ++j) {
                    const double t = j / 4000.0;
                    const Vec2 q = a + t * (b - a);
                    const double dx = (p.x - q.x);
                    const double dy = (p.y - q.y);
                    brute = std::min(brute, std::sqrt(dx * dx / 1.0 + dy * dy / 3.0));
                }
            }
            CHECK(fast <= brute + 1e-12);
            CHECK(fast >= brute - 1e-3);  // sampling gap of the brute force
            ++tested;
        } catch (const PointOutsideDomain&) {
            (void)ut;  // resample
        }
    }
}

TEST_CASE("distance is 1-Lipschitz in the scaled metric") {
    const BoundaryPolygon poly = BoundaryPolygon::lshape();
    const double a1sq = 1.0, a2sq = 5.0;
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ux(0.0, 2.0);
    std::uniform_real_distribution<double> uy(0.0, 1.5);
    int tested = 0;
    while (tested < 200) {
        const Vec2 p{ux(rng), uy(rng)};
        const Vec2 q{ux(rng), uy(rng)};
        try {
            const double du = std::abs(exact_u(p, poly, a1sq, a2sq) -
                                       exact_u(q, poly, a1sq, a2sq));
            const double dx = p.x - q.x;
            const double dy = p.y - q.y;
            const double metric = std::sqrt(dx * dx / a1sq + dy * dy / a2sq);
            CHECK(du <= metric + 1e-12);
            ++tested;
        } catch (const PointOutsideDomain&) {
        }
    }
}

TEST_CASE("error norms") {
    RunConfig cfg;
    cfg.level = 0;
    cfg.lumping = true;
    const Problem problem = make_problem(cfg);
    const BoundaryPolygon poly = BoundaryPolygon::lshape();
    const int n = problem.space.num_dofs();

    std::vector<double> exact(n, 0.0);
    for (int d = 0; d < n; ++d)
        exact[d] = exact_u(problem.space.dof_coords[d], poly, 1.0, 1.0);

    SUBCASE("exact field has zero error") {
        const ErrorReport r = error_norms(problem.space, exact, poly, 1.0, 1.0);
        CHECK(r.l_inf == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(r.l2 == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(r.n_points > 0);
    }
    SUBCASE("constant interior shift is measured exactly") {
        std::vector<double> shifted = exact;
        for (int d = 0; d < n; ++d)
            if (!problem.space.is_boundary[d]) shifted[d] += 0.01;
        const ErrorReport r = error_norms(problem.space, shifted, poly, 1.0, 1.0);
        CHECK(r.l_inf == doctest::Approx(0.01).epsilon(1e-12));
        // weighted l2 of a constant is bounded by the constant times sqrt(area)
        CHECK(r.l2 <= 0.01 * std::sqrt(2.5) + 1e-12);
        CHECK(r.l2 > 0.005);
    }
    SUBCASE("l2 never exceeds l_inf times sqrt(area)") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::vector<double> noisy = exact;
        for (int d = 0; d < n; ++d) noisy[d] += 0.05 * unif(rng);
        const ErrorReport r = error_norms(problem.space, noisy, poly, 1.0, 1.0);
        CHECK(r.l2 <= r.l_inf * std::sqrt(2.5) + 1e-12);
    }
    SUBCASE("non-finite values are rejected") {
        std::vector<double> bad = exact;
        bad[n / 2] = std::nan("");
        if (!problem.space.is_boundary[n / 2])
            CHECK_THROWS_AS(error_norms(problem.space, bad, poly, 1.0, 1.0), UndefinedField);
    }
}

TEST_CASE("grid Dijkstra stays within the octile band of the exact distance") {
    // independent 8-neighbour Dijkstra on a rectangle, compared to the oracle
    const double w = 2.0, h = 1.5;
    const int nx = 200, ny = 150;
    const double hx = w / nx, hy = h / ny;
    const double a1sq = 1.0, a2sq = 4.0;
    const int n = (nx + 1) * (ny + 1);
    const auto id = [&](int i, int j) { return j * (nx + 1) + i; };

    std::vector<double> dist(n, 1e300);
    using Node = std::pair<double, int>;
    std::priority_queue<Node, std::vector<Node>, std::greater<>> pq;
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j)
            if (i == 0 || i == nx || j == 0 || j == ny) {
                dist[id(i, j)] = 0.0;
                pq.push({0.0, id(i, j)});
            }
    while (!pq.empty()) {
        const auto [d, node] = pq.top();
        pq.pop();
        if (d > dist[node]) continue;
        const int i = node % (nx + 1), j = node / (nx + 1);
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                if ((di == 0 && dj == 0) || i + di < 0 || i + di > nx || j + dj < 0 ||
                    j + dj > ny)
                    continue;
                const double step = std::sqrt(di * di * hx * hx / a1sq +
                                              dj * dj * hy * hy / a2sq);
                const int other = id(i + di, j + dj);
                if (d + step < dist[other]) {
                    dist[other] = d + step;
                    pq.push({dist[other], other});
                }
            }
    }

    const BoundaryPolygon poly = BoundaryPolygon::rect(w, h);
    const double cell = std::max(hx, hy);
    for (int i = 1; i < nx; i += 7)
        for (int j = 1; j < ny; j += 5) {
            const double exact = exact_u({i * hx, j * hy}, poly, a1sq, a2sq);
            const double graph = dist[id(i, j)];
            // the graph distance can never undercut the continuum distance,
            // and the octile metric overshoots it by at most a factor
            // sqrt(2) / sqrt(1 + 1/sqrt(2))^... ~ 8.25%, plus O(h) snapping
            CHECK(graph >= exact - 1e-12);
            CHECK(graph <= 1.085 * exact + 3.0 * cell);
        }
}

TEST_CASE("containment test") {
    const BoundaryPolygon poly = BoundaryPolygon::lshape();
    CHECK(poly.contains({0.5, 0.5}, 1e-9));
    CHECK(poly.contains({1.5, 0.5}, 1e-9));
    CHECK(poly.contains({1.0, 1.5 - 1e-12}, 1e-9));
    CHECK(poly.contains({2.0, 1.0}, 1e-9));   // boundary corner
    CHECK_FALSE(poly.contains({1.5, 1.25}, 1e-9));
    CHECK_FALSE(poly.contains({2.1, 0.5}, 1e-9));
}
