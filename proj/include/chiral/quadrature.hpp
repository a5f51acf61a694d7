#pragma once

#include <cmath>
#include <complex>

#include <boost/math/quadrature/gauss.hpp>

#include "chiral/report.hpp"

namespace chiral::quad {

using Complex = std::complex<double>;

// one 16-point Gauss-Legendre panel on [a,b]
template <class F>
Complex gl16(F&& f, double a, double b) {
    using rule = boost::math::quadrature::gauss<double, 16>;
    const auto& xs = rule::abscissa();  // non-negative half nodes
    const auto& ws = rule::weights();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        acc += ws[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
    }
    return acc * half;
}

namespace detail {

template <class F>
Complex refine(F& f, double a, double b, Complex whole, double tol, int depth,
               int max_depth, double& unresolved) {
    const double m = 0.5 * (a + b);
    Complex left = gl16(f, a, m);
    Complex right = gl16(f, m, b);
    Complex sum = left + right;
    double err = std::abs(sum - whole);
    if (err <= tol || depth >= max_depth) {
        if (err > tol) unresolved += err;
        return sum;
    }
    return refine(f, a, m, left, 0.5 * tol, depth + 1, max_depth, unresolved) +
           refine(f, m, b, right, 0.5 * tol, depth + 1, max_depth, unresolved);
}

}  // namespace detail

// Adaptive composite Gauss-Legendre on [a,b]: panels bisect until the local
// two-half estimate settles. Bounded integrands with isolated kinks converge
// before the depth cap; whatever remains unresolved at the cap is summed and
// must stay below the requested tolerance.
template <class F>
Complex integrate_line(F&& f, double a, double b, double tol, int max_depth = 44) {
    if (!(b > a)) return {0.0, 0.0};
    double unresolved = 0.0;
    Complex whole = gl16(f, a, b);
    Complex v = detail::refine(f, a, b, whole, tol, 0, max_depth, unresolved);
    if (unresolved > tol)
        throw QuadratureError("line quadrature left unresolved error above tolerance");
    return v;
}

// Tensor-product composite Gauss-Legendre on [0,bx] x [0,by] with uniform
// panels per axis, doubled until two successive refinements agree to tol
// (absolute, on the normalized mean). Throws past max_panels per axis.
template <class F>
Complex integrate_box_doubling(F&& f, double bx, double by, double tol,
                               int max_panels = 1024) {
    using rule = boost::math::quadrature::gauss<double, 16>;
    const auto& xs = rule::abscissa();
    const auto& ws = rule::weights();
    auto value_at = [&](int panels) {
        const double hx = bx / panels, hy = by / panels;
        Complex acc{0.0, 0.0};
        for (int px = 0; px < panels; ++px) {
            const double cx = (px + 0.5) * hx;
            for (int py = 0; py < panels; ++py) {
                const double cy = (py + 0.5) * hy;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    const double wxi = ws[i];
                    const double xn[2] = {cx + 0.5 * hx * xs[i], cx - 0.5 * hx * xs[i]};
                    for (std::size_t j = 0; j < xs.size(); ++j) {
                        const double w = wxi * ws[j] * 0.25 * hx * hy;
                        const double yn[2] = {cy + 0.5 * hy * xs[j], cy - 0.5 * hy * xs[j]};
                        acc += w * (f(xn[0], yn[0]) + f(xn[0], yn[1]) +
                                    f(xn[1], yn[0]) + f(xn[1], yn[1]));
                    }
                }
            }
        }
        return acc;
    };
    const double scale = bx * by;
    Complex prev = value_at(1);
    for (int panels = 2; panels <= max_panels; panels *= 2) {
        Complex cur = value_at(panels);
        if (std::abs(cur - prev) <= tol * scale) return cur;
        prev = cur;
    }
    throw QuadratureError("box quadrature did not converge within the panel cap");
}

}  // namespace chiral::quad
