#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiral/report.hpp"

// Command implementations behind the CLI. Each returns the JSON document it
// would print plus the process exit code: 0 all checks pass, 1 some check
// failed, 3 quadrature did not converge. Usage errors (code 2) are raised as
// exceptions and mapped by the front end.

namespace chiral::cli {

struct CommandResult {
    int exit_code = 0;
    nlohmann::json output;
    std::string csv;  // curve table when the command produces one
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// order2 is the doubled truncation order (t^(order2/2) retained), <= 80
CommandResult cmd_character(int order2, bool corrupt = false);

// full exact-arithmetic bundle at cutoff e2_max <= 16
CommandResult cmd_fock(int e2_max);

// single commutator report [J_m, J_n]
CommandResult cmd_fock_pair(int e2_max, int m, int n);

// unitarity / diagonalization / involution / causality / functional equation
CommandResult cmd_inner(const std::string& phi_spec, int grid_points = 101);

// phi_tilde curve over an s grid; CSV columns s, Re, Im, |.|, |.|^2
CommandResult cmd_production(const std::string& phi_spec, const std::vector<double>& s_grid,
                             double quad_tol = 1e-7, int max_panels = 1024);

// raw phi_prime / phi_tilde evaluation
CommandResult cmd_scatter(const std::string& phi_spec, std::optional<double> p,
                          std::optional<double> q, const std::vector<double>& s_grid,
                          double quad_tol = 1e-7, int max_panels = 1024);

struct PhiSlot {
    std::string spec;
    bool elastic = false;  // expectation recorded in the config
};

struct RunAllConfig {
    int order2 = 40;
    int e2_max = 12;
    int inner_grid_points = 101;
    double quad_tol = 1e-7;
    double s_min = 0.1, s_max = 10.0;
    int s_points = 25;
    std::vector<PhiSlot> slots;  // empty -> built-in catalog

    static RunAllConfig defaults();
};

// Nested key-value config: [section] lines with key = value entries.
// Unknown sections or keys are usage errors; an empty file is too.
RunAllConfig parse_config_file(const std::string& path);

CommandResult cmd_report_all(const RunAllConfig& cfg);

// "a:b:n" -> n log-uniform points from a to b
std::vector<double> parse_s_range(const std::string& text);

}  // namespace chiral::cli
