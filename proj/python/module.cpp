#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "eikfem/driver.hpp"
#include "eikfem/oracle.hpp"

namespace py = pybind11;
using namespace eikfem;

namespace {

DomainSpec domain_from(const std::string& domain, double width, double height,
                       const std::vector<std::string>& neumann) {
    if (domain == "lshape") {
        if (!neumann.empty())
            throw Error("neumann sides apply to rect domains only");
        return DomainSpec::lshape();
    }
    if (domain != "rect") throw Error("domain must be 'lshape' or 'rect'");
    DomainSpec spec = DomainSpec::rect(width, height);
    for (const auto& side : neumann) {
        if (side == "left") spec.markers[Side::Left] = BcType::Neumann;
        else if (side == "right") spec.markers[Side::Right] = BcType::Neumann;
        else if (side == "top") spec.markers[Side::Top] = BcType::Neumann;
        else if (side == "bottom") spec.markers[Side::Bottom] = BcType::Neumann;
        else throw Error("unknown neumann side '" + side + "'");
    }
    return spec;
}

} // namespace

PYBIND11_MODULE(_eikfem, m) {
    m.doc() = "Finite-element eikonal solver via the exponential transform";

    py::register_exception<Error>(m, "EikfemError", PyExc_RuntimeError);
    py::register_exception<PointOutsideDomain>(m, "PointOutsideDomainError", PyExc_ValueError);
    py::register_exception<UnsupportedDegree>(m, "UnsupportedDegreeError", PyExc_ValueError);
    py::register_exception<NoMonotoneAlpha>(m, "NoMonotoneAlphaError", PyExc_RuntimeError);

    py::class_<Mesh, std::shared_ptr<Mesh>>(m, "Mesh")
        .def_property_readonly("num_vertices",
                               [](const Mesh& mesh) { return mesh.vertices.size(); })
        .def_property_readonly("num_triangles",
                               [](const Mesh& mesh) { return mesh.triangles.size(); })
        .def_property_readonly("h", [](const Mesh& mesh) { return mesh.h(); })
        .def("total_area", &Mesh::total_area)
        .def("vertices",
             [](const Mesh& mesh) {
                 std::vector<std::pair<double, double>> out;
                 out.reserve(mesh.vertices.size());
                 for (const Vec2& v : mesh.vertices) out.emplace_back(v.x, v.y);
                 return out;
             })
        .def("triangles", [](const Mesh& mesh) { return mesh.triangles; });

    m.def("build_lshape", [](int level) { return std::make_shared<Mesh>(build_lshape(level)); },
          py::arg("level"));
    m.def(
        "build_rect",
        [](int nx, int ny, double width, double height,
           const std::vector<std::string>& neumann) {
            return std::make_shared<Mesh>(
                build_rect(nx, ny, domain_from("rect", width, height, neumann)));
        },
        py::arg("nx"), py::arg("ny"), py::arg("width") = 1.0, py::arg("height") = 1.0,
        py::arg("neumann") = std::vector<std::string>{});

    m.def(
        "locate_point",
        [](const std::shared_ptr<Mesh>& mesh, double x, double y) {
            const PointLocation loc = mesh->locate({x, y});
            return py::make_tuple(loc.triangle,
                                  py::make_tuple(loc.bary[0], loc.bary[1], loc.bary[2]));
        },
        py::arg("mesh"), py::arg("x"), py::arg("y"));

    py::class_<FeSpace>(m, "FeSpace")
        .def_property_readonly("degree", [](const FeSpace& s) { return s.degree; })
        .def_property_readonly("num_dofs", &FeSpace::num_dofs)
        .def("dof_coords",
             [](const FeSpace& s) {
                 std::vector<std::pair<double, double>> out;
                 for (const Vec2& v : s.dof_coords) out.emplace_back(v.x, v.y);
                 return out;
             })
        .def("boundary_dofs", [](const FeSpace& s) { return s.boundary_dofs; });

    m.def(
        "build_space",
        [](const std::shared_ptr<Mesh>& mesh, int degree) { return build_space(mesh, degree); },
        py::arg("mesh"), py::arg("degree"));

    m.def(
        "evaluate_field",
        [](const FeSpace& space, const std::vector<double>& values,
           const std::vector<std::pair<double, double>>& points) {
            std::vector<Vec2> pts;
            pts.reserve(points.size());
            for (auto [x, y] : points) pts.push_back({x, y});
            return evaluate_field(space, values, pts);
        },
        py::arg("space"), py::arg("values"), py::arg("points"));

    py::class_<Problem>(m, "Problem")
        .def_property_readonly("space", [](const Problem& p) { return p.space; })
        .def_property_readonly("mesh", [](const Problem& p) {
            return std::const_pointer_cast<Mesh>(p.mesh);
        });

    m.def(
        "make_problem",
        [](const std::string& domain, int level, int nx, int ny, double width, double height,
           const std::vector<std::string>& neumann, int degree, bool lumping, double a1sq,
           double a2sq, double monotone_eps, double rel_tol, bool warm_start) {
            RunConfig cfg;
            cfg.domain = domain_from(domain, width, height, neumann);
            cfg.level = level;
            cfg.nx = nx;
            cfg.ny = ny;
            cfg.degree = degree;
            cfg.lumping = lumping;
            cfg.a1sq = a1sq;
            cfg.a2sq = a2sq;
            cfg.monotone_eps = monotone_eps;
            cfg.solver.rel_tol = rel_tol;
            cfg.warm_start = warm_start ? WarmStart::BoundaryDistance : WarmStart::Zero;
            return make_problem(cfg);
        },
        py::arg("domain") = "lshape", py::arg("level") = 1, py::arg("nx") = 32,
        py::arg("ny") = 32, py::arg("width") = 1.0, py::arg("height") = 1.0,
        py::arg("neumann") = std::vector<std::string>{}, py::arg("degree") = 1,
        py::arg("lumping") = false, py::arg("a1sq") = 1.0, py::arg("a2sq") = 1.0,
        py::arg("monotone_eps") = 0.0, py::arg("rel_tol") = 1e-10,
        py::arg("warm_start") = true);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("alpha", &SolveResult::alpha)
        .def_readonly("v", &SolveResult::v)
        .def_readonly("u", &SolveResult::u)
        .def_readonly("monotone", &SolveResult::monotone)
        .def_readonly("v_min_interior", &SolveResult::v_min_interior)
        .def_readonly("v_max_interior", &SolveResult::v_max_interior)
        .def_property_readonly("iterations",
                               [](const SolveResult& r) { return r.stats.iterations; });

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("per_alpha", &SweepResult::per_alpha)
        .def_readonly("k_min", &SweepResult::k_min)
        .def_property_readonly("selected", [](const SweepResult& s) {
            return s.selected ? py::cast(*s.selected) : py::none().cast<py::object>();
        });

    m.def("solve_v", &solve_v, py::arg("problem"), py::arg("alpha"));
    m.def("transform_u", &transform_u, py::arg("v"), py::arg("alpha"));
    m.def("alpha_sweep", &alpha_sweep, py::arg("problem"), py::arg("k_min"), py::arg("k_max"));
    m.def(
        "cross_section",
        [](const FeSpace& space, const std::vector<double>& u, int n_samples) {
            std::vector<std::pair<double, double>> out;
            for (const auto& s : cross_section(space, u, n_samples))
                out.emplace_back(s.t, s.u);
            return out;
        },
        py::arg("space"), py::arg("u"), py::arg("n_samples") = 257);

    m.def(
        "exact_u",
        [](double x, double y, double a1sq, double a2sq, const std::string& domain,
           double width, double height) {
            const BoundaryPolygon poly =
                BoundaryPolygon::of(domain_from(domain, width, height, {}));
            return exact_u({x, y}, poly, a1sq, a2sq);
        },
        py::arg("x"), py::arg("y"), py::arg("a1sq") = 1.0, py::arg("a2sq") = 1.0,
        py::arg("domain") = "lshape", py::arg("width") = 1.0, py::arg("height") = 1.0);

    m.def(
        "error_norms",
        [](const FeSpace& space, const std::vector<double>& u, double a1sq, double a2sq,
           const std::string& domain, double width, double height) {
            const BoundaryPolygon poly =
                BoundaryPolygon::of(domain_from(domain, width, height, {}));
            const ErrorReport rep = error_norms(space, u, poly, a1sq, a2sq);
            return py::make_tuple(rep.l_inf, rep.l2, rep.n_points);
        },
        py::arg("space"), py::arg("u"), py::arg("a1sq") = 1.0, py::arg("a2sq") = 1.0,
        py::arg("domain") = "lshape", py::arg("width") = 1.0, py::arg("height") = 1.0);
}
