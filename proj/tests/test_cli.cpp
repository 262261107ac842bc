// End-to-end checks of the eikfem command-line tool.  argv[1] is the path to
// the built executable; every scenario runs in its own scratch directory.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_failures = 0;
std::string g_binary;
fs::path g_scratch;

void report(bool ok, const std::string& what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << '\n';
    if (!ok) ++g_failures;
}

int run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " >cli_stdout.txt 2>cli_stderr.txt";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void sweep_scenario() {
    const int rc = run("--domain lshape --level 0 --lumping --sweep 3 6 "
                       "--emit json,csv,vtk --output sweep");
    report(rc == 0, "sweep run exits 0");
    report(fs::exists("sweep.json"), "sweep emits json");
    if (!fs::exists("sweep.json")) return;

    const json j = json::parse(slurp("sweep.json"));
    report(j.at("schema") == 1, "json schema tag");
    report(j.at("domain") == "lshape", "json domain field");
    report(j.at("degree") == 1, "json degree field");
    report(j.at("lumping") == true, "json lumping field");
    const auto& runs = j.at("per_alpha");
    report(runs.size() == 4, "json has one entry per swept alpha");
    bool all_monotone = true, alphas_halve = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (!runs[i].at("monotone").get<bool>()) all_monotone = false;
        const double a = runs[i].at("alpha").get<double>();
        if (std::abs(a - std::ldexp(1.0, -(3 + static_cast<int>(i)))) > 1e-15)
            alphas_halve = false;
    }
    report(all_monotone, "lumped sweep is monotone at every alpha");
    report(alphas_halve, "alpha halves across the sweep");
    report(j.at("selected_k") == 6, "smallest alpha selected under lumping");
    report(std::abs(j.at("selected_alpha").get<double>() - 0.015625) < 1e-15,
           "selected_alpha matches selected_k");

    // per-alpha artifacts carry the k suffix
    for (int k = 3; k <= 6; ++k) {
        const std::string tag = "sweep_k" + std::to_string(k);
        report(fs::exists(tag + ".csv"), tag + ".csv exists");
        report(fs::exists(tag + ".vtk"), tag + ".vtk exists");
    }

    // csv: header plus strictly increasing t with boundary zeros at the ends
    std::ifstream csv("sweep_k6.csv");
    std::string line;
    std::getline(csv, line);
    report(line == "t,u", "csv header");
    double prev_t = -1.0, first_u = 1.0, last_u = 1.0;
    int rows = 0;
    bool increasing = true;
    while (std::getline(csv, line)) {
        double t = 0.0, u = 0.0;
        std::sscanf(line.c_str(), "%lf,%lf", &t, &u);
        if (t <= prev_t) increasing = false;
        if (rows == 0) first_u = u;
        last_u = u;
        prev_t = t;
        ++rows;
    }
    report(rows == 257, "csv has the default 257 samples");
    report(increasing, "csv t column strictly increases");
    report(std::abs(first_u) < 1e-12 && std::abs(last_u) < 1e-12,
           "cross-section vanishes at both boundary endpoints");

    const std::string vtk = slurp("sweep_k6.vtk");
    report(vtk.rfind("# vtk DataFile Version", 0) == 0, "vtk header");
    report(vtk.find("SCALARS u ") != std::string::npos, "vtk carries u field");

    // determinism: rerunning produces byte-identical output
    const std::string first_json = slurp("sweep.json");
    run("--domain lshape --level 0 --lumping --sweep 3 6 "
        "--emit json,csv,vtk --output sweep");
    report(slurp("sweep.json") == first_json, "rerun reproduces json byte-for-byte");
}

void fixed_alpha_scenario() {
    const int rc = run("--domain rect --rect-size 1 1 --nx 16 --ny 16 "
                       "--alpha 0.125 --emit json,csv --output fixed");
    report(rc == 0, "fixed-alpha run exits 0");
    const json j = json::parse(slurp("fixed.json"));
    report(j.at("per_alpha").size() == 1, "fixed run emits a single entry");
    report(!j.contains("selected_k") || j.at("selected_k").is_null(),
           "fixed run has no selection");
    report(fs::exists("fixed.csv") && !fs::exists("fixed_k3.csv"),
           "fixed run has no k suffix");
    report(j.at("per_alpha")[0].at("monotone").get<bool>(), "modest alpha is monotone");
    report(j.at("per_alpha")[0].at("l_inf").is_number(), "error norms recorded");
}

void failure_scenario() {
    // consistent mass at tiny alpha on the coarse grid violates the maximum
    // principle, so the sweep finds no admissible alpha
    const int rc = run("--domain lshape --level 0 --sweep 7 8 "
                       "--emit json --output nomono");
    report(rc == 2, "sweep without a monotone alpha exits 2");
    const json j = json::parse(slurp("nomono.json"));
    report(j.at("per_alpha").size() == 2, "failed sweep still reports every alpha");
    report(j.at("selected_k").is_null(), "failed sweep has null selected_k");
    bool none = true;
    for (const auto& r : j.at("per_alpha"))
        if (r.at("monotone").get<bool>()) none = false;
    report(none, "failed sweep marks every alpha non-monotone");
}

void usage_errors() {
    report(run("--domain lshape --level 0 --degree 5 --alpha 0.5") == 1,
           "unsupported degree exits 1");
    report(run("--domain lshape --level 0 --alpha 0.5 --emit \"\"") == 1,
           "empty emit list exits 1");
    report(run("--domain lshape --level 0 --alpha 0.5 --sweep 3 6") == 1,
           "alpha and sweep together exit 1");
    report(run("--domain lshape --level 0 --alpha 0.5 --neumann left") == 1,
           "neumann markers on the lshape exit 1");
    report(run("--domain rect --rect-size 1 1 --nx 8 --ny 8 --alpha 0.5 "
               "--neumann left,right,top,bottom") == 1,
           "all-neumann rectangle exits 1");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-eikfem-binary>\n";
        return 2;
    }
    g_binary = fs::absolute(argv[1]).string();
    g_scratch = fs::temp_directory_path() / "eikfem_cli_test";
    fs::remove_all(g_scratch);
    fs::create_directories(g_scratch);
    fs::current_path(g_scratch);

    sweep_scenario();
    fixed_alpha_scenario();
    failure_scenario();
    usage_errors();

    std::cout << (g_failures == 0 ? "all cli checks passed\n"
                                  : "cli checks FAILED\n");
    return g_failures == 0 ? 0 : 1;
}
