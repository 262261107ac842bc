#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eikfem/driver.hpp"
#include "eikfem/io.hpp"
#include "eikfem/oracle.hpp"

namespace {

using nlohmann::json;
using namespace eikfem;

struct CliConfig {
    RunConfig run;
    std::string output_prefix = "out";
    std::set<std::string> emit = {"json"};
    int samples = 257;
};

double rounded(double v) { return std::strtod(format_sig12(v).c_str(), nullptr); }

json result_to_json(const SolveResult& r, const std::vector<double>& u,
                    const CliConfig& cfg, const BoundaryPolygon& poly,
                    const Problem& problem) {
    json entry;
    entry["alpha"] = rounded(r.alpha);
    entry["monotone"] = r.monotone;
    entry["v_min"] = rounded(r.v_min_interior);
    entry["v_max"] = rounded(r.v_max_interior);
    entry["iterations"] = r.stats.iterations;
    bool defined = true;
    for (std::size_t d = 0; d < u.size(); ++d)
        if (!std::isfinite(u[d])) { defined = false; break; }
    if (defined) {
        const ErrorReport err =
            error_norms(problem.space, u, poly, cfg.run.a1sq, cfg.run.a2sq);
        entry["l_inf"] = rounded(err.l_inf);
        entry["l2"] = rounded(err.l2);
    } else {
        entry["l_inf"] = nullptr;
        entry["l2"] = nullptr;
    }
    return entry;
}

void emit_fields(const CliConfig& cfg, const Problem& problem, const SolveResult& r,
                 const std::vector<double>& u, const std::string& suffix) {
    if (cfg.emit.count("csv")) {
        const auto samples = cross_section(problem.space, u, cfg.samples);
        std::ofstream out(cfg.output_prefix + suffix + ".csv");
        if (!out) throw Error("cannot open CSV output for writing");
        write_cross_section_csv(out, samples);
    }
    if (cfg.emit.count("vtk")) {
        const std::size_t nv = problem.mesh->vertices.size();
        std::vector<double> v_vert(r.v.begin(), r.v.begin() + nv);
        std::vector<double> u_vert(nv), u_defined(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            const bool ok = std::isfinite(u[i]);
            u_vert[i] = ok ? u[i] : -1.0; // undefined values stay distinguishable
            u_defined[i] = ok ? 1.0 : 0.0;
        }
        std::ofstream out(cfg.output_prefix + suffix + ".vtk");
        if (!out) throw Error("cannot open VTK output for writing");
        write_vtk(out, *problem.mesh,
                  {{"v", &v_vert}, {"u", &u_vert}, {"u_defined", &u_defined}});
    }
}

int run(const CliConfig& cfg) {
    const Problem problem = make_problem(cfg.run);
    const BoundaryPolygon poly = BoundaryPolygon::of(cfg.run.domain);

    json summary;
    summary["schema"] = 1;
    summary["domain"] =
        cfg.run.domain.shape == DomainSpec::Shape::LShape ? "lshape" : "rect";
    if (cfg.run.domain.shape == DomainSpec::Shape::LShape)
        summary["level"] = cfg.run.level;
    summary["degree"] = cfg.run.degree;
    summary["lumping"] = cfg.run.lumping;
    summary["a1sq"] = cfg.run.a1sq;
    summary["a2sq"] = cfg.run.a2sq;
    summary["per_alpha"] = json::array();

    int exit_code = 0;

    if (const auto* fixed = std::get_if<FixedAlpha>(&cfg.run.alpha_mode)) {
        summary["mode"] = "fixed";
        const SolveResult r = solve_v(problem, fixed->alpha);
        const std::vector<double> u = transform_u(r.v, r.alpha);
        summary["per_alpha"].push_back(result_to_json(r, u, cfg, poly, problem));
        summary["selected_alpha"] = r.monotone ? json(rounded(r.alpha)) : json(nullptr);
        emit_fields(cfg, problem, r, u, "");
    } else {
        summary["mode"] = "sweep";
        const auto& sw = std::get<AlphaSweep>(cfg.run.alpha_mode);
        SweepResult sweep;
        try {
            sweep = alpha_sweep(problem, sw.k_min, sw.k_max);
        } catch (const NoMonotoneAlpha& e) {
            sweep = e.sweep;
            exit_code = 2;
            std::cerr << "eikfem: " << e.what() << "\n";
        }
        for (std::size_t i = 0; i < sweep.per_alpha.size(); ++i) {
            const SolveResult& r = sweep.per_alpha[i];
            const int k = sw.k_min + static_cast<int>(i);
            const std::vector<double> u = transform_u(r.v, r.alpha);
            json entry = result_to_json(r, u, cfg, poly, problem);
            entry["k"] = k;
            summary["per_alpha"].push_back(std::move(entry));
            emit_fields(cfg, problem, r, u, "_k" + std::to_string(k));
        }
        if (sweep.selected) {
            summary["selected_k"] = sw.k_min + static_cast<int>(*sweep.selected);
            summary["selected_alpha"] =
                rounded(sweep.per_alpha[*sweep.selected].alpha);
        } else {
            summary["selected_k"] = nullptr;
            summary["selected_alpha"] = nullptr;
        }
    }

    if (cfg.emit.count("json")) {
        std::ofstream out(cfg.output_prefix + ".json");
        if (!out) throw Error("cannot open JSON output for writing");
        out << summary.dump(2) << "\n";
    }
    std::cout << summary.dump(2) << "\n";
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-element eikonal solver via the exponential transform"};

    CliConfig cfg;
    std::string domain = "lshape";
    std::vector<double> rect_size;
    int nx = 32, ny = 32;
    int level = 1, degree = 1;
    bool lumping = false;
    double a1sq = 1.0, a2sq = 1.0;
    std::optional<double> alpha;
    std::vector<int> sweep_range;
    int samples = 257;
    double tol = 1e-10;
    std::string emit = "json";
    std::string output = "out";
    std::string neumann;

    app.add_option("--domain", domain, "Computational domain")
        ->check(CLI::IsMember({"lshape", "rect"}));
    app.add_option("--rect-size", rect_size, "Rect width and height")->expected(2);
    app.add_option("--nx", nx, "Rect cells along x");
    app.add_option("--ny", ny, "Rect cells along y");
    app.add_option("--level", level, "LShape refinement level, h = 1/(32*2^level)");
    app.add_option("--degree", degree, "Lagrange element degree");
    app.add_flag("--lumping", lumping, "Row-sum lump the reaction term (degree 1 only)");
    app.add_option("--a1sq", a1sq, "Squared coefficient a1^2");
    app.add_option("--a2sq", a2sq, "Squared coefficient a2^2");
    auto* alpha_opt = app.add_option("--alpha", alpha, "Fixed regularization parameter");
    auto* sweep_opt =
        app.add_option("--sweep", sweep_range, "Sweep alpha = 2^-k, k = KMIN..KMAX")
            ->expected(2);
    alpha_opt->excludes(sweep_opt);
    app.add_option("--samples", samples, "Cross-section sample count");
    app.add_option("--tol", tol, "Solver relative residual tolerance");
    app.add_option("--emit", emit, "Comma list from {csv,vtk,json}");
    app.add_option("--output", output, "Output path prefix");
    app.add_option("--neumann", neumann,
                   "Comma list of Neumann sides (rect only): left,right,top,bottom");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (degree < 1 || degree > 3)
            throw UnsupportedDegree("--degree must be 1, 2 or 3");
        if (samples < 2) throw Error("--samples must be at least 2");

        cfg.emit.clear();
        std::stringstream ss(emit);
        for (std::string tok; std::getline(ss, tok, ',');) {
            if (tok.empty()) continue;
            if (tok != "csv" && tok != "vtk" && tok != "json")
                throw Error("--emit: unknown format '" + tok + "'");
            cfg.emit.insert(tok);
        }
        if (cfg.emit.empty()) throw Error("--emit must name at least one format");

        if (domain == "lshape") {
            if (!neumann.empty())
                throw Error("--neumann applies to rect domains only");
            cfg.run.domain = DomainSpec::lshape();
            cfg.run.level = level;
        } else {
            double w = 1.0, h = 1.0;
            if (!rect_size.empty()) {
                w = rect_size[0];
                h = rect_size[1];
            }
            cfg.run.domain = DomainSpec::rect(w, h);
            std::stringstream ns(neumann);
            for (std::string tok; std::getline(ns, tok, ',');) {
                if (tok == "left") cfg.run.domain.markers[Side::Left] = BcType::Neumann;
                else if (tok == "right") cfg.run.domain.markers[Side::Right] = BcType::Neumann;
                else if (tok == "top") cfg.run.domain.markers[Side::Top] = BcType::Neumann;
                else if (tok == "bottom") cfg.run.domain.markers[Side::Bottom] = BcType::Neumann;
                else if (!tok.empty()) throw Error("--neumann: unknown side '" + tok + "'");
            }
            cfg.run.nx = nx;
            cfg.run.ny = ny;
        }

        cfg.run.degree = degree;
        cfg.run.lumping = lumping;
        cfg.run.a1sq = a1sq;
        cfg.run.a2sq = a2sq;
        cfg.run.solver.rel_tol = tol;
        if (alpha) {
            if (*alpha <= 0) throw Error("--alpha must be positive");
            cfg.run.alpha_mode = FixedAlpha{*alpha};
        } else if (!sweep_range.empty()) {
            if (sweep_range[0] > sweep_range[1])
                throw Error("--sweep: KMIN must not exceed KMAX");
            cfg.run.alpha_mode = AlphaSweep{sweep_range[0], sweep_range[1]};
        }
        cfg.samples = samples;
        cfg.output_prefix = output;

        return run(cfg);
    } catch (const std::exception& e) {
        std::cerr << "eikfem: " << e.what() << "\n";
        return 1;
    }
}
