#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "chiral/inner.hpp"
#include "chiral/report.hpp"

// The (1,1) two-particle sector: embedding of one-particle waves, the
// line-average projection back onto them, the multiplier action of an inner
// function, and the phi'/phi_tilde quadratures behind the particle-production
// report.

namespace chiral::scatter {

using Complex = std::complex<double>;

// sampler on s > 0
using BoseWave = std::function<Complex(double)>;
// sampler on p, q > 0
using Kernel11 = std::function<Complex(double, double)>;

struct QuadratureSpec {
    double tol = 1e-7;
    int max_panels = 1024;  // per axis, box rule
    int max_depth = 44;     // line rule
};

// Gauss-Legendre nodes and weights on (0, p_max].
struct Grid1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    double p_max = 0.0;

    static Grid1D gauss_legendre(int n, double p_max);
};

// iota(Psi)(p,q) = -(1/2pi) Psi(p+q)
Kernel11 iota_embed(BoseWave psi);

// (e0 f)(p,q) = 1/(p+q) int_0^{p+q} f(p+q-x, x) dx
Kernel11 e0_project(Kernel11 f, QuadratureSpec quad = {});

// (p,q) -> phi(p) phi_check(q) f(p,q)
Kernel11 v_phi_11(const inner::InnerFunction& phi, Kernel11 f);

// ||(1-e0) V_phi iota(Psi)|| / ||V_phi iota(Psi)|| in the grid L2(dp dq) norm
double lw_invariance_residual(const inner::InnerFunction& phi, const BoseWave& psi,
                              const Grid1D& grid, QuadratureSpec quad = {});

// phi(p pbar) phi_check(q pbar) phi_check(p qbar) phi(q qbar)
Complex s_phi_4pt(const inner::InnerFunction& phi, double p, double q, double pbar,
                  double qbar);

// 1/(pq) int_0^p int_0^q phi((p-x)(q-y)) phi(xy) phi_check((p-x)y) phi_check(x(q-y))
Complex phi_prime(const inner::InnerFunction& phi, double p, double q,
                  QuadratureSpec quad = {});

// phi_tilde(s) = phi_prime(s, 1)
Complex phi_tilde(const inner::InnerFunction& phi, double s, QuadratureSpec quad = {});

struct ProductionReport {
    std::vector<double> s;
    std::vector<Complex> phi_tilde;
    std::vector<double> elastic_modulus;      // |phi_tilde|
    std::vector<double> elastic_mod_squared;  // |phi_tilde|^2
    bool bound_ok = false;       // |phi_tilde| <= 1 + 1e-9 everywhere
    bool production = false;     // |phi_tilde| < 1 - 10*tol somewhere
    double quad_tol = 0.0;
};

ProductionReport production_report(const inner::InnerFunction& phi,
                                   const std::vector<double>& s_grid,
                                   QuadratureSpec quad = {});

// log-uniform grid with n points from a to b
std::vector<double> log_grid(double a, double b, int n);

}  // namespace chiral::scatter
