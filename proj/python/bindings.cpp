#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chiral/commands.hpp"
#include "chiral/fock.hpp"
#include "chiral/inner.hpp"
#include "chiral/scatter.hpp"
#include "chiral/series.hpp"

namespace py = pybind11;

namespace {

// JSON documents cross the boundary as strings; the python package parses them.
std::string character_report(int order2) {
    return chiral::cli::cmd_character(order2).output.dump();
}

std::string fock_report(int e2_max) { return chiral::cli::cmd_fock(e2_max).output.dump(); }

std::string inner_report(const std::string& phi_spec) {
    return chiral::cli::cmd_inner(phi_spec).output.dump();
}

std::string production_report_json(const std::string& phi_spec, double s_min, double s_max,
                                   int n, double tol) {
    auto grid = chiral::scatter::log_grid(s_min, s_max, n);
    return chiral::cli::cmd_production(phi_spec, grid, tol).output.dump();
}

std::string report_all() {
    return chiral::cli::cmd_report_all(chiral::cli::RunAllConfig::defaults()).output.dump();
}

std::vector<std::string> partition_numbers(int order2) {
    auto gf = chiral::series::partition_gf(order2);
    std::vector<std::string> out;
    for (int t2 = 0; t2 <= order2; t2 += 2) out.push_back(gf.coeff(t2).str());
    return out;
}

std::complex<double> phi_tilde(const std::string& phi_spec, double s, double tol) {
    chiral::scatter::QuadratureSpec quad;
    quad.tol = tol;
    return chiral::scatter::phi_tilde(chiral::inner::parse_phi(phi_spec), s, quad);
}

std::complex<double> phi_prime(const std::string& phi_spec, double p, double q, double tol) {
    chiral::scatter::QuadratureSpec quad;
    quad.tol = tol;
    return chiral::scatter::phi_prime(chiral::inner::parse_phi(phi_spec), p, q, quad);
}

std::complex<double> eval_phi(const std::string& phi_spec, double p) {
    return chiral::inner::eval(chiral::inner::parse_phi(phi_spec), p);
}

double lw_invariance_residual(const std::string& phi_spec, double tol) {
    chiral::scatter::QuadratureSpec quad;
    quad.tol = tol;
    auto grid = chiral::scatter::Grid1D::gauss_legendre(64, 20.0);
    chiral::scatter::BoseWave psi = [](double s) {
        return std::complex<double>{std::exp(-s), 0.0};
    };
    return chiral::scatter::lw_invariance_residual(chiral::inner::parse_phi(phi_spec), psi,
                                                   grid, quad);
}

std::size_t basis_size(int e2_max) {
    return chiral::fock::enumerate_basis(chiral::fock::Cutoff{e2_max}).size();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact character identities, fermionic mode algebra, inner-function "
              "unitaries and two-particle S-matrix checks";

    py::register_exception<chiral::cli::UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<chiral::inner::PhiParseError>(m, "PhiParseError",
                                                         PyExc_ValueError);
    py::register_exception<chiral::QuadratureError>(m, "QuadratureError",
                                                    PyExc_RuntimeError);

    m.def("character_report", &character_report, py::arg("order") = 40,
          "jacobi identity and charge-zero checks as a JSON string");
    m.def("fock_report", &fock_report, py::arg("emax") = 12,
          "exact mode-algebra bundle as a JSON string");
    m.def("inner_report", &inner_report, py::arg("phi"),
          "inner-function unitary checks as a JSON string");
    m.def("production_report", &production_report_json, py::arg("phi"),
          py::arg("s_min") = 0.1, py::arg("s_max") = 10.0, py::arg("n") = 50,
          py::arg("tol") = 1e-7, "phi_tilde curve and production flag as a JSON string");
    m.def("report_all", &report_all, "full verification suite as a JSON string");

    m.def("partition_numbers", &partition_numbers, py::arg("order") = 40,
          "partition counts p(0..order/2) as decimal strings");
    m.def("basis_size", &basis_size, py::arg("emax") = 12,
          "number of basis states with doubled energy <= emax");
    m.def("eval_phi", &eval_phi, py::arg("phi"), py::arg("p"),
          "boundary value of the inner function at real p");
    m.def("phi_tilde", &phi_tilde, py::arg("phi"), py::arg("s"), py::arg("tol") = 1e-7,
          "two-particle elastic amplitude phi_tilde(s)");
    m.def("phi_prime", &phi_prime, py::arg("phi"), py::arg("p"), py::arg("q"),
          py::arg("tol") = 1e-7, "double-integral kernel phi_prime(p,q)");
    m.def("lw_invariance_residual", &lw_invariance_residual, py::arg("phi"),
          py::arg("tol") = 1e-7,
          "relative mass of V_phi iota(e^-s) outside the embedded one-particle space");
}
