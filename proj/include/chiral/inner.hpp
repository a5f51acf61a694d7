#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "chiral/report.hpp"

// Inner functions on the upper half-plane, restricted to a finite catalog:
// exponentials e^{i(kappa p + theta)}, finite Blaschke products, and finite
// products of those. All have unit modulus on the real line.

namespace chiral::inner {

using Complex = std::complex<double>;

struct InnerFunction;

struct Exponential {
    double kappa = 0.0;  // >= 0
    double theta = 0.0;
};

struct BlaschkeProduct {
    std::vector<Complex> zeros;  // all with Im > 0
};

struct ProductFunction {
    std::vector<InnerFunction> factors;
};

struct InnerFunction {
    std::variant<Exponential, BlaschkeProduct, ProductFunction> spec;

    static InnerFunction exponential(double kappa, double theta = 0.0);
    static InnerFunction blaschke(std::vector<Complex> zeros);
    static InnerFunction product(std::vector<InnerFunction> factors);
};

// Boundary value at real p; |result| = 1 up to rounding.
Complex eval(const InnerFunction& phi, double p);

// phi_check(p) = conj(phi(-p)), realized in closed form on the catalog:
// Exponential{kappa,theta} -> Exponential{kappa,-theta}, Blaschke zero z -> -conj(z).
InnerFunction check_conjugate(const InnerFunction& phi);

// True when the function is a pure exponential (no Blaschke factor anywhere).
bool is_exponential(const InnerFunction& phi);

// a(p) = (phi(p)+phi_check(p))/2 and b(p) = (phi(p)-phi_check(p))/2.
struct SymParts {
    Complex a;
    Complex b;
};
SymParts sym_parts(const InnerFunction& phi, double p);

// The 2x2 unitary [[a, ib], [-ib, a]] built from the symmetric and
// antisymmetric parts at a real point.
struct LWMatrix {
    Complex a;
    Complex b;

    // max-abs entry of M M* - 1
    double unitarity_error() const;
};
LWMatrix lw_matrix(const InnerFunction& phi, double p);

// max-abs entry of U M U* - diag(phi(p), phi_check(p)), U = [[1,i],[i,1]]/sqrt(2)
double lw_diagonalization_error(const InnerFunction& phi, double p);

// Unitarity + diagonalization + modulus + involution + symmetry of a /
// antisymmetry of b, swept over a uniform real grid.
std::vector<CheckReport> lw_grid_checks(const InnerFunction& phi, double p_min,
                                        double p_max, int n_points, double tol = 1e-12);

// Applies phi as a Fourier multiplier (convention f(s) = int e^{-isp} fhat(p) dp)
// to f(x) = e^{-x} 1_{x>0} on a 2^log2_points momentum grid over
// [-p_window, p_window), and measures the relative L2 mass that lands on
// x < 0. A phi = 1 control run detects an under-resolved grid.
struct CausalitySpec {
    int log2_points = 14;
    double p_window = 2048.0;
    double tol = 1e-4;
};
CheckReport causality_check(const InnerFunction& phi, const CausalitySpec& spec = {});
double causality_leakage(const InnerFunction& phi, const CausalitySpec& spec = {});

// Pairs (p1,q1), (p2,q2) with p1+q1 = p2+q2, all entries positive.
struct ProbePair {
    double p1, q1, p2, q2;
};
// max over pairs of |phi(p1) phi_check(q1) - phi(p2) phi_check(q2)|; zero
// exactly when phi(p)phi_check(q) is a function of p+q alone.
double functional_equation_probe(const InnerFunction& phi,
                                 const std::vector<ProbePair>& samples);
std::vector<ProbePair> default_probe_pairs();

// CLI spec grammar: exp:kappa=<float>,theta=<float> |
// blaschke:<re>+<im>i[;...] | factors joined with '*'.
struct PhiParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
InnerFunction parse_phi(const std::string& spec);
std::string to_spec_string(const InnerFunction& phi);

// Built-in catalog spanning both regimes: exponentials (elastic) and
// Blaschke-containing functions (producing).
struct CatalogEntry {
    std::string name;
    InnerFunction phi;
    bool elastic;  // true iff purely exponential
};
std::vector<CatalogEntry> catalog();

}  // namespace chiral::inner
