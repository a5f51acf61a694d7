#include "chiral/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "chiral/quadrature.hpp"

namespace chiral::scatter {

Grid1D Grid1D::gauss_legendre(int n, double p_max) {
    if (n < 1 || p_max <= 0)
        throw std::invalid_argument("Grid1D: need n >= 1 and p_max > 0");
    // composite 16-point panels so any n that is a multiple of 16 works
    if (n % 16 != 0) throw std::invalid_argument("Grid1D: n must be a multiple of 16");
    using rule = boost::math::quadrature::gauss<double, 16>;
    const auto& xs = rule::abscissa();
    const auto& ws = rule::weights();
    Grid1D g;
    g.p_max = p_max;
    const int panels = n / 16;
    const double h = p_max / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = (p + 0.5) * h;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            g.nodes.push_back(c - 0.5 * h * xs[i]);
            g.weights.push_back(0.5 * h * ws[i]);
            g.nodes.push_back(c + 0.5 * h * xs[i]);
            g.weights.push_back(0.5 * h * ws[i]);
        }
    }
    // ascending
    std::vector<std::pair<double, double>> nw(g.nodes.size());
    for (std::size_t i = 0; i < nw.size(); ++i) nw[i] = {g.nodes[i], g.weights[i]};
    std::sort(nw.begin(), nw.end());
    for (std::size_t i = 0; i < nw.size(); ++i) {
        g.nodes[i] = nw[i].first;
        g.weights[i] = nw[i].second;
    }
    return g;
}

Kernel11 iota_embed(BoseWave psi) {
    return [psi = std::move(psi)](double p, double q) {
        return -psi(p + q) / (2.0 * std::numbers::pi);
    };
}

Kernel11 e0_project(Kernel11 f, QuadratureSpec quad) {
    return [f = std::move(f), quad](double p, double q) -> Complex {
        const double s = p + q;
        if (s <= 0) return {0.0, 0.0};
        Complex integral = quad::integrate_line(
            [&](double x) { return f(s - x, x); }, 0.0, s, quad.tol * s, quad.max_depth);
        return integral / s;
    };
}

Kernel11 v_phi_11(const inner::InnerFunction& phi, Kernel11 f) {
    inner::InnerFunction chk = inner::check_conjugate(phi);
    return [phi, chk, f = std::move(f)](double p, double q) {
        return inner::eval(phi, p) * inner::eval(chk, q) * f(p, q);
    };
}

double lw_invariance_residual(const inner::InnerFunction& phi, const BoseWave& psi,
                              const Grid1D& grid, QuadratureSpec quad) {
    Kernel11 g = v_phi_11(phi, iota_embed(psi));
    Kernel11 pg = e0_project(g, quad);
    double num2 = 0.0, den2 = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
            const double w = grid.weights[i] * grid.weights[j];
            Complex gv = g(grid.nodes[i], grid.nodes[j]);
            Complex dv = gv - pg(grid.nodes[i], grid.nodes[j]);
            den2 += w * std::norm(gv);
            num2 += w * std::norm(dv);
        }
    }
    if (den2 <= 1e-300)
        throw std::invalid_argument("lw_invariance_residual: degenerate state");
    return std::sqrt(num2 / den2);
}

Complex s_phi_4pt(const inner::InnerFunction& phi, double p, double q, double pbar,
                  double qbar) {
    if (p <= 0 || q <= 0 || pbar <= 0 || qbar <= 0)
        throw std::invalid_argument("s_phi_4pt: arguments must be positive");
    inner::InnerFunction chk = inner::check_conjugate(phi);
    return inner::eval(phi, p * pbar) * inner::eval(chk, q * pbar) *
           inner::eval(chk, p * qbar) * inner::eval(phi, q * qbar);
}

Complex phi_prime(const inner::InnerFunction& phi, double p, double q,
                  QuadratureSpec quad) {
    if (p <= 0 || q <= 0) throw std::invalid_argument("phi_prime: need p, q > 0");
    inner::InnerFunction chk = inner::check_conjugate(phi);
    auto integrand = [&](double x, double y) {
        return inner::eval(phi, (p - x) * (q - y)) * inner::eval(phi, x * y) *
               inner::eval(chk, (p - x) * y) * inner::eval(chk, x * (q - y));
    };
    Complex integral =
        quad::integrate_box_doubling(integrand, p, q, quad.tol, quad.max_panels);
    return integral / (p * q);
}

Complex phi_tilde(const inner::InnerFunction& phi, double s, QuadratureSpec quad) {
    if (s <= 0) throw std::invalid_argument("phi_tilde: need s > 0");
    return phi_prime(phi, s, 1.0, quad);
}

ProductionReport production_report(const inner::InnerFunction& phi,
                                   const std::vector<double>& s_grid,
                                   QuadratureSpec quad) {
    ProductionReport rep;
    rep.quad_tol = quad.tol;
    rep.bound_ok = true;
    for (double s : s_grid) {
        if (s <= 0) throw std::invalid_argument("production_report: grid must be positive");
        Complex v = phi_tilde(phi, s, quad);
        double m = std::abs(v);
        rep.s.push_back(s);
        rep.phi_tilde.push_back(v);
        rep.elastic_modulus.push_back(m);
        rep.elastic_mod_squared.push_back(m * m);
        if (m > 1.0 + 1e-9) rep.bound_ok = false;
        if (m < 1.0 - 10.0 * quad.tol) rep.production = true;
    }
    return rep;
}

std::vector<double> log_grid(double a, double b, int n) {
    if (a <= 0 || b <= a || n < 2)
        throw std::invalid_argument("log_grid: need 0 < a < b and n >= 2");
    std::vector<double> out(n);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i)
        out[i] = std::exp(la + (lb - la) * i / (n - 1));
    return out;
}

}  // namespace chiral::scatter
