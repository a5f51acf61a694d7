#include <doctest.h>

#include <cmath>
#include <complex>

#include "chiral/inner.hpp"
#include "chiral/scatter.hpp"

using namespace chiral;
using inner::InnerFunction;
using scatter::Complex;

namespace {

const double kTwoPi = 2.0 * std::acos(-1.0);

scatter::BoseWave exp_wave() {
    return [](double s) { return Complex{std::exp(-s), 0.0}; };
}

// plain midpoint Riemann double sum, the independent low-tech route
Complex riemann_phi_prime(const InnerFunction& phi, double p, double q, int n) {
    InnerFunction chk = inner::check_conjugate(phi);
    Complex acc{0.0, 0.0};
    const double hx = p / n, hy = q / n;
    for (int i = 0; i < n; ++i) {
        double x = (i + 0.5) * hx;
        for (int j = 0; j < n; ++j) {
            double y = (j + 0.5) * hy;
            acc += inner::eval(phi, (p - x) * (q - y)) * inner::eval(phi, x * y) *
                   inner::eval(chk, (p - x) * y) * inner::eval(chk, x * (q - y));
        }
    }
    return acc * hx * hy / (p * q);
}

}  // namespace

TEST_CASE("grid construction") {
    auto g = scatter::Grid1D::gauss_legendre(64, 20.0);
    REQUIRE(g.nodes.size() == 64);
    double wsum = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        CHECK(g.nodes[i] > 0);
        if (i) CHECK(g.nodes[i] > g.nodes[i - 1]);
        CHECK(g.weights[i] > 0);
        wsum += g.weights[i];
    }
    CHECK(wsum == doctest::Approx(20.0).epsilon(1e-12));
    CHECK_THROWS_AS(scatter::Grid1D::gauss_legendre(0, 1.0), std::invalid_argument);

    auto lg = scatter::log_grid(0.1, 10.0, 50);
    CHECK(lg.size() == 50);
    CHECK(lg.front() == doctest::Approx(0.1));
    CHECK(lg.back() == doctest::Approx(10.0));
    CHECK_THROWS_AS(scatter::log_grid(-1.0, 2.0, 5), std::invalid_argument);
}

TEST_CASE("embedding into the (1,1) sector") {
    auto emb = scatter::iota_embed(exp_wave());
    CHECK(std::abs(emb(1.0, 2.0) - Complex{-std::exp(-3.0) / kTwoPi, 0.0}) < 1e-15);

    auto zero = scatter::iota_embed([](double) { return Complex{0.0, 0.0}; });
    CHECK(std::abs(zero(0.5, 0.5)) == 0.0);

    // constant along p + q = const
    for (double s : {0.7, 2.0, 5.0})
        CHECK(std::abs(emb(0.25 * s, 0.75 * s) - emb(0.5 * s, 0.5 * s)) < 1e-15);
}

TEST_CASE("line-average projection") {
    scatter::QuadratureSpec quad;

    // functions of p+q are fixed points
    auto emb = scatter::iota_embed(exp_wave());
    auto proj = scatter::e0_project(emb, quad);
    for (double p : {0.3, 1.0, 2.2})
        for (double q : {0.5, 1.7})
            CHECK(std::abs(proj(p, q) - emb(p, q)) < 1e-10);

    // unit square: averaged overlap length, piecewise in s = p+q
    scatter::Kernel11 square = [](double p, double q) {
        return (p <= 1.0 && q <= 1.0) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    };
    auto psq = scatter::e0_project(square, quad);
    auto expected = [](double s) { return s <= 1.0 ? 1.0 : (s <= 2.0 ? (2.0 - s) / s : 0.0); };
    for (double s : {0.4, 0.9, 1.3, 1.75, 2.6}) {
        CHECK(std::abs(psq(0.5 * s, 0.5 * s) - expected(s)) < 1e-8);
        CHECK(std::abs(psq(0.3 * s, 0.7 * s) - expected(s)) < 1e-8);
    }

    // idempotence on a generic smooth kernel, against a tighter-tolerance run
    scatter::Kernel11 bump = [](double p, double q) {
        double dx = p - 1.2, dy = q - 0.8;
        return Complex{std::exp(-(dx * dx + dy * dy)), 0.1 * std::exp(-p * q)};
    };
    auto once = scatter::e0_project(bump, quad);
    auto twice = scatter::e0_project(once, quad);
    scatter::QuadratureSpec tight;
    tight.tol = 1e-9;
    auto once_tight = scatter::e0_project(bump, tight);
    for (double p : {0.4, 1.1, 2.0})
        for (double q : {0.6, 1.5}) {
            CHECK(std::abs(twice(p, q) - once(p, q)) < 1e-6);
            CHECK(std::abs(once(p, q) - once_tight(p, q)) < 1e-6);
        }
}

TEST_CASE("multiplier action preserves moduli") {
    auto cayley = InnerFunction::blaschke({{0.0, 1.0}});
    auto emb = scatter::iota_embed(exp_wave());
    auto acted = scatter::v_phi_11(cayley, emb);
    for (double p : {0.3, 1.0, 4.0})
        for (double q : {0.2, 2.5})
            CHECK(std::abs(std::abs(acted(p, q)) - std::abs(emb(p, q))) < 1e-15);

    auto same = scatter::v_phi_11(InnerFunction::exponential(0.0, 0.0), emb);
    for (double p : {0.3, 1.0})
        CHECK(std::abs(same(p, 0.5) - emb(p, 0.5)) < 1e-15);

    // an exponential multiplier keeps the embedded image inside itself
    scatter::QuadratureSpec quad;
    auto pushed = scatter::v_phi_11(InnerFunction::exponential(1.0, 0.0), emb);
    auto projected = scatter::e0_project(pushed, quad);
    for (double p : {0.5, 1.5})
        for (double q : {0.5, 2.0}) CHECK(std::abs(projected(p, q) - pushed(p, q)) < 1e-10);
}

TEST_CASE("one-particle invariance residual") {
    auto grid = scatter::Grid1D::gauss_legendre(64, 20.0);
    scatter::QuadratureSpec quad;

    CHECK(scatter::lw_invariance_residual(InnerFunction::exponential(0.0, 0.0), exp_wave(),
                                          grid, quad) < 1e-10);
    CHECK(scatter::lw_invariance_residual(InnerFunction::exponential(1.0, 0.0), exp_wave(),
                                          grid, quad) < 1e-6);
    CHECK(scatter::lw_invariance_residual(InnerFunction::blaschke({{0.0, 1.0}}), exp_wave(),
                                          grid, quad) > 1e-2);

    CHECK_THROWS_AS(
        scatter::lw_invariance_residual(InnerFunction::exponential(1.0, 0.0),
                                        [](double) { return Complex{0.0, 0.0}; }, grid, quad),
        std::invalid_argument);
}

TEST_CASE("four-point multiplier") {
    auto one = InnerFunction::exponential(0.0, 0.0);
    CHECK(std::abs(scatter::s_phi_4pt(one, 0.5, 1.0, 2.0, 3.0) - Complex{1.0, 0.0}) < 1e-15);

    // exponent algebra collapses to kappa (p+q)(pbar+qbar)
    auto ek = InnerFunction::exponential(1.7, 0.4);
    for (double p : {0.3, 1.1})
        for (double q : {0.5, 2.0}) {
            Complex lhs = scatter::s_phi_4pt(ek, p, q, 0.8, 1.9);
            Complex rhs = std::polar(1.0, 1.7 * (p + q) * (0.8 + 1.9));
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }

    auto cayley = InnerFunction::blaschke({{0.0, 1.0}});
    for (double p : {0.2, 1.0, 3.3})
        CHECK(std::abs(std::abs(scatter::s_phi_4pt(cayley, p, 2 * p, 0.7, 1.3)) - 1.0) <
              1e-14);

    CHECK_THROWS_AS(scatter::s_phi_4pt(one, -1.0, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("phi_prime quadrature") {
    scatter::QuadratureSpec quad;
    auto one = InnerFunction::exponential(0.0, 0.0);
    CHECK(std::abs(scatter::phi_prime(one, 0.7, 2.3, quad) - Complex{1.0, 0.0}) < 1e-12);

    // integrand is constant for exponentials: phi'(p,q) = e^{i kappa p q}
    auto ek = InnerFunction::exponential(2.0, 0.3);
    for (double p : {0.4, 1.0, 3.0})
        for (double q : {0.6, 2.0}) {
            Complex expect = std::polar(1.0, 2.0 * p * q);
            CHECK(std::abs(scatter::phi_prime(ek, p, q, quad) - expect) < 1e-9);
        }

    // independent dense Riemann oracle for a Blaschke factor
    auto cayley = InnerFunction::blaschke({{0.0, 1.0}});
    Complex fast = scatter::phi_prime(cayley, 1.0, 1.0, quad);
    Complex slow = riemann_phi_prime(cayley, 1.0, 1.0, 1500);
    CHECK(std::abs(fast - slow) < 1e-6);

    CHECK_THROWS_AS(scatter::phi_prime(one, -1.0, 1.0, quad), std::invalid_argument);

    // an unreachable tolerance must be reported, not absorbed
    scatter::QuadratureSpec hopeless;
    hopeless.tol = 1e-30;
    hopeless.max_panels = 8;
    CHECK_THROWS_AS(scatter::phi_prime(cayley, 1.0, 1.0, hopeless), QuadratureError);
}

TEST_CASE("phi_tilde and the collapse property") {
    scatter::QuadratureSpec quad;
    auto one = InnerFunction::exponential(0.0, 0.0);
    CHECK(std::abs(scatter::phi_tilde(one, 3.0, quad) - Complex{1.0, 0.0}) < 1e-12);

    auto ek = InnerFunction::exponential(1.0, 0.0);
    for (double s : {0.2, 1.0, 5.0})
        CHECK(std::abs(scatter::phi_tilde(ek, s, quad) - std::polar(1.0, s)) < 1e-9);

    // phi'(p,q) depends on pq only
    auto cayley = InnerFunction::blaschke({{0.0, 1.0}});
    for (const InnerFunction& phi : {ek, cayley}) {
        for (double p : {0.5, 1.3})
            for (double q : {0.4, 2.1}) {
                Complex a = scatter::phi_prime(phi, p, q, quad);
                Complex b = scatter::phi_tilde(phi, p * q, quad);
                CHECK(std::abs(a - b) < 1e-6);
            }
    }

    // strict production for the Cayley factor
    bool some_loss = false;
    for (double s : scatter::log_grid(0.5, 10.0, 12))
        some_loss = some_loss || std::abs(scatter::phi_tilde(cayley, s, quad)) < 1.0 - 1e-3;
    CHECK(some_loss);
}

TEST_CASE("production report") {
    scatter::QuadratureSpec quad;
    auto sgrid = scatter::log_grid(0.1, 10.0, 20);

    auto flat = scatter::production_report(InnerFunction::exponential(0.0, 0.0), sgrid, quad);
    CHECK(flat.bound_ok);
    CHECK_FALSE(flat.production);
    for (double m : flat.elastic_modulus) CHECK(std::abs(m - 1.0) < 1e-9);

    auto ek2 = scatter::production_report(InnerFunction::exponential(2.0, 0.0), sgrid, quad);
    CHECK(ek2.bound_ok);
    CHECK_FALSE(ek2.production);
    for (double m : ek2.elastic_modulus) CHECK(std::abs(m - 1.0) < 1e-6);

    auto cay = scatter::production_report(InnerFunction::blaschke({{0.0, 1.0}}), sgrid, quad);
    CHECK(cay.bound_ok);
    CHECK(cay.production);

    CHECK_THROWS_AS(
        scatter::production_report(InnerFunction::exponential(1.0, 0.0), {0.0}, quad),
        std::invalid_argument);
}

TEST_CASE("elastic bound over wide kinematics") {
    scatter::QuadratureSpec quad;
    for (const auto& entry : inner::catalog()) {
        for (double s : scatter::log_grid(0.01, 100.0, 9)) {
            CHECK(std::abs(scatter::phi_tilde(entry.phi, s, quad)) <= 1.0 + 1e-9);
        }
    }
}
