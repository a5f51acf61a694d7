#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chiral/commands.hpp"
#include "chiral/inner.hpp"

namespace {

int write_result(const chiral::cli::CommandResult& res, const std::string& format,
                 const std::string& out_path) {
    std::string payload;
    if (format == "json") {
        payload = res.output.dump(2) + "\n";
    } else if (format == "csv") {
        if (res.csv.empty()) {
            std::cerr << "this command has no CSV output\n";
            return 2;
        }
        payload = res.csv;
    } else {
        std::cerr << "unknown format '" << format << "'\n";
        return 2;
    }
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write '" << out_path << "'\n";
            return 2;
        }
        out << payload;
    }
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolbox for exact character identities, fermionic mode "
                 "algebra, inner-function unitaries and the two-particle S-matrix sector"};
    app.require_subcommand(1);
    app.fallthrough();  // let --format/--out appear after the subcommand

    std::string format = "json";
    std::string out_path;
    app.add_option("--format", format, "output format: json|csv")->capture_default_str();
    app.add_option("--out", out_path, "write output to this path instead of stdout");

    auto* character = app.add_subcommand("character", "character identities (exact series)");
    int order2 = 40;
    bool corrupt = false;
    character->add_option("--order", order2, "truncation order in doubled units (<= 80)")
        ->capture_default_str();
    character->add_flag("--corrupt", corrupt,
                        "deliberately corrupt one coefficient (negative control)");

    auto* fockcmd = app.add_subcommand("fock-check", "exact fermionic mode-algebra bundle");
    int e2_max = 12;
    std::string pair;
    fockcmd->add_option("--emax", e2_max, "energy cutoff in doubled units (<= 16)")
        ->capture_default_str();
    fockcmd->add_option("--pair", pair, "run a single commutator check [J_m,J_n], as m,n");

    auto* innercmd = app.add_subcommand("inner-check", "inner-function unitary checks");
    std::string phi_spec;
    int grid_points = 101;
    innercmd->add_option("--phi", phi_spec, "inner function spec")->required();
    innercmd->add_option("--grid", grid_points, "real-line grid points")
        ->capture_default_str();

    auto* production = app.add_subcommand("production", "phi_tilde curve and production flag");
    std::string prod_phi, prod_range = "0.1:10:50";
    double tol = 1e-7;
    int prod_panels = 1024;
    production->add_option("--phi", prod_phi, "inner function spec")->required();
    production->add_option("--s", prod_range, "log-uniform s grid, a:b:n")
        ->capture_default_str();
    production->add_option("--tol", tol, "quadrature tolerance")->capture_default_str();
    production->add_option("--grid", prod_panels, "quadrature panel cap per axis")
        ->capture_default_str();

    auto* scattercmd = app.add_subcommand("scatter", "raw phi_prime / phi_tilde evaluation");
    std::string sc_phi, sc_range;
    double sc_tol = 1e-7;
    int sc_panels = 1024;
    std::optional<double> sc_p, sc_q;
    double sc_p_val = 0, sc_q_val = 0;
    auto* popt = scattercmd->add_option("--p", sc_p_val, "first kernel argument");
    auto* qopt = scattercmd->add_option("--q", sc_q_val, "second kernel argument");
    scattercmd->add_option("--phi", sc_phi, "inner function spec")->required();
    scattercmd->add_option("--s", sc_range, "log-uniform s grid, a:b:n");
    scattercmd->add_option("--tol", sc_tol, "quadrature tolerance")->capture_default_str();
    scattercmd->add_option("--grid", sc_panels, "quadrature panel cap per axis")
        ->capture_default_str();

    auto* reportall = app.add_subcommand("report-all", "run the full verification suite");
    std::string config_path;
    reportall->add_option("--config", config_path, "config file (nested key-value sections)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        chiral::cli::CommandResult res;
        if (*character) {
            res = chiral::cli::cmd_character(order2, corrupt);
        } else if (*fockcmd) {
            if (!pair.empty()) {
                int m = 0, n = 0;
                char extra = 0;
                if (std::sscanf(pair.c_str(), "%d,%d%c", &m, &n, &extra) != 2)
                    throw chiral::cli::UsageError("bad --pair '" + pair + "' (want m,n)");
                res = chiral::cli::cmd_fock_pair(e2_max, m, n);
            } else {
                res = chiral::cli::cmd_fock(e2_max);
            }
        } else if (*innercmd) {
            res = chiral::cli::cmd_inner(phi_spec, grid_points);
        } else if (*production) {
            res = chiral::cli::cmd_production(prod_phi, chiral::cli::parse_s_range(prod_range),
                                              tol, prod_panels);
        } else if (*scattercmd) {
            if (popt->count()) sc_p = sc_p_val;
            if (qopt->count()) sc_q = sc_q_val;
            std::vector<double> s_grid;
            if (!sc_range.empty()) s_grid = chiral::cli::parse_s_range(sc_range);
            res = chiral::cli::cmd_scatter(sc_phi, sc_p, sc_q, s_grid, sc_tol, sc_panels);
        } else if (*reportall) {
            chiral::cli::RunAllConfig cfg = config_path.empty()
                                                ? chiral::cli::RunAllConfig::defaults()
                                                : chiral::cli::parse_config_file(config_path);
            res = chiral::cli::cmd_report_all(cfg);
        }
        return write_result(res, format, out_path);
    } catch (const chiral::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const chiral::inner::PhiParseError& e) {
        std::cerr << "phi parse error: " << e.what() << "\n";
        return 2;
    } catch (const chiral::EmptySafeBlock& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const chiral::QuadratureError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
}
