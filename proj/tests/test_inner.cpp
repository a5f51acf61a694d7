#include <doctest.h>

#include <cmath>
#include <complex>

#include "chiral/inner.hpp"

using namespace chiral;
using inner::Complex;
using inner::InnerFunction;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("pointwise evaluation") {
    auto one = InnerFunction::exponential(0.0, 0.0);
    CHECK(std::abs(inner::eval(one, 3.7) - Complex{1.0, 0.0}) < 1e-15);

    auto cayley = InnerFunction::blaschke({{0.0, 1.0}});
    CHECK(std::abs(inner::eval(cayley, 0.0) - Complex{-1.0, 0.0}) < 1e-15);

    auto ek1 = InnerFunction::exponential(1.0, 0.0);
    CHECK(std::abs(inner::eval(ek1, kPi) - Complex{-1.0, 0.0}) < 1e-12);

    for (double p : {-7.3, -1.0, 0.0, 0.4, 2.0, 9.9}) {
        for (const auto& entry : inner::catalog())
            CHECK(std::abs(std::abs(inner::eval(entry.phi, p)) - 1.0) < 1e-12);
    }

    CHECK_THROWS_AS(InnerFunction::blaschke({{1.0, -0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(InnerFunction::exponential(-1.0), std::invalid_argument);
}

TEST_CASE("check conjugate") {
    // phi_check(p) = conj(phi(-p)) pointwise, and double application returns phi
    for (const auto& entry : inner::catalog()) {
        auto chk = inner::check_conjugate(entry.phi);
        auto chk2 = inner::check_conjugate(chk);
        for (double p : {-3.0, -0.7, 0.1, 1.0, 5.5}) {
            CHECK(std::abs(inner::eval(chk, p) - std::conj(inner::eval(entry.phi, -p))) <
                  1e-12);
            CHECK(std::abs(inner::eval(chk2, p) - inner::eval(entry.phi, p)) < 1e-12);
        }
    }

    // purely imaginary zeros are fixed by z -> -conj(z)
    auto cayley = InnerFunction::blaschke({{0.0, 1.0}});
    auto chk = inner::check_conjugate(cayley);
    for (double p : {-2.0, 0.3, 4.0})
        CHECK(std::abs(inner::eval(chk, p) - inner::eval(cayley, p)) < 1e-15);

    // zero 1+i moves to -1+i: genuinely different boundary values
    auto skew = InnerFunction::blaschke({{1.0, 1.0}});
    auto skew_chk = inner::check_conjugate(skew);
    CHECK(std::abs(inner::eval(skew_chk, 1.0) - inner::eval(skew, 1.0)) > 0.1);
}

TEST_CASE("symmetric and antisymmetric parts") {
    auto expo = InnerFunction::exponential(1.5, 0.0);
    for (double p : {-2.0, 0.5, 3.0}) {
        auto s = inner::sym_parts(expo, p);
        CHECK(std::abs(s.b) < 1e-15);  // theta = 0 is self-check-conjugate
        CHECK(std::abs(s.a - inner::eval(expo, p)) < 1e-15);
    }

    auto skew = InnerFunction::blaschke({{1.0, 1.0}});
    auto s1 = inner::sym_parts(skew, 1.0);
    CHECK(std::abs(s1.a + s1.b - inner::eval(skew, 1.0)) < 1e-15);

    for (const auto& entry : inner::catalog()) {
        for (double p : {-4.0, -1.3, 0.2, 2.5}) {
            auto s = inner::sym_parts(entry.phi, p);
            CHECK(std::abs(std::norm(s.a) + std::norm(s.b) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("longo-witten matrix") {
    auto one = InnerFunction::exponential(0.0, 0.0);
    auto m = inner::lw_matrix(one, 1.3);
    CHECK(std::abs(m.a - Complex{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(m.b) < 1e-15);
    CHECK(m.unitarity_error() < 1e-15);

    CHECK(inner::lw_diagonalization_error(InnerFunction::blaschke({{1.0, 1.0}}), 2.0) <
          1e-12);

    for (const auto& entry : inner::catalog()) {
        auto checks = inner::lw_grid_checks(entry.phi, -10.0, 10.0, 101, 1e-12);
        for (const auto& c : checks) CHECK(c.pass);
    }
}

TEST_CASE("causality under the catalog") {
    // the sharp edge of e^{-x} 1_{x>0} rings at the grid's own truncation
    // scale; all multipliers must stay inside the certified budget
    CHECK(inner::causality_leakage(InnerFunction::exponential(0.0, 0.0)) < 0.5e-4);
    CHECK(inner::causality_leakage(InnerFunction::exponential(1.0, 0.0)) < 1e-4);
    CHECK(inner::causality_leakage(InnerFunction::blaschke({{0.0, 1.0}})) < 1e-4);

    auto rep = inner::causality_check(InnerFunction::blaschke({{0.0, 1.0}}));
    CHECK(rep.pass);

    // a hopeless grid is reported, not silently passed
    inner::CausalitySpec coarse;
    coarse.log2_points = 4;
    coarse.p_window = 2.0;
    auto bad = inner::causality_check(InnerFunction::exponential(0.0, 0.0), coarse);
    CHECK_FALSE(bad.pass);
    CHECK(std::get<std::string>(bad.measured).find("grid too coarse") != std::string::npos);
}

TEST_CASE("functional equation probe") {
    auto pairs = inner::default_probe_pairs();
    CHECK(inner::functional_equation_probe(InnerFunction::exponential(0.0, 0.0), pairs) <
          1e-15);
    CHECK(inner::functional_equation_probe(InnerFunction::exponential(2.0, 0.9), pairs) <
          1e-12);

    // independent direct evaluation for the Cayley factor on (1,3) vs (2,2)
    auto cayley = InnerFunction::blaschke({{0.0, 1.0}});
    auto phi = [](double p) { return (Complex{p, -1.0}) / (Complex{p, 1.0}); };
    double expected = std::abs(phi(1.0) * phi(3.0) - phi(2.0) * phi(2.0));
    double measured =
        inner::functional_equation_probe(cayley, {inner::ProbePair{1.0, 3.0, 2.0, 2.0}});
    CHECK(measured == doctest::Approx(expected).epsilon(1e-12));
    CHECK(measured > 1e-3);

    // residual < 1e-12 exactly on the exponential part of the catalog
    for (const auto& entry : inner::catalog()) {
        double r = inner::functional_equation_probe(entry.phi, pairs);
        if (entry.elastic)
            CHECK(r < 1e-12);
        else
            CHECK(r > 1e-3);
    }

    CHECK_THROWS_AS(
        inner::functional_equation_probe(cayley, {inner::ProbePair{1.0, 1.0, 0.5, 0.5}}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        inner::functional_equation_probe(cayley, {inner::ProbePair{-1.0, 3.0, 1.0, 1.0}}),
        std::invalid_argument);
}

TEST_CASE("phi spec grammar") {
    auto expo = inner::parse_phi("exp:kappa=1.5,theta=-0.25");
    CHECK(std::abs(inner::eval(expo, 2.0) - std::polar(1.0, 1.5 * 2.0 - 0.25)) < 1e-15);

    auto blas = inner::parse_phi("blaschke:0+1i;1.5+2i");
    CHECK(std::abs(std::abs(inner::eval(blas, 0.7)) - 1.0) < 1e-14);

    auto prod = inner::parse_phi("exp:kappa=1,theta=0*blaschke:0+1i");
    CHECK(std::abs(inner::eval(prod, 1.1) -
                   inner::eval(inner::parse_phi("exp:kappa=1,theta=0"), 1.1) *
                       inner::eval(inner::parse_phi("blaschke:0+1i"), 1.1)) < 1e-15);
    CHECK_FALSE(inner::is_exponential(prod));
    CHECK(inner::is_exponential(expo));

    // spec strings round-trip through the printer
    for (const auto& entry : inner::catalog()) {
        auto reparsed = inner::parse_phi(inner::to_spec_string(entry.phi));
        for (double p : {-1.0, 0.3, 2.2})
            CHECK(std::abs(inner::eval(reparsed, p) - inner::eval(entry.phi, p)) < 1e-12);
    }

    // parse errors name the offending token
    CHECK_THROWS_WITH_AS(inner::parse_phi("exp:kapa=1"), doctest::Contains("kapa"),
                         inner::PhiParseError);
    CHECK_THROWS_WITH_AS(inner::parse_phi("blaschke:1+0i"), doctest::Contains("1+0i"),
                         inner::PhiParseError);
    CHECK_THROWS_WITH_AS(inner::parse_phi("sine:1"), doctest::Contains("sine:1"),
                         inner::PhiParseError);
    CHECK_THROWS_AS(inner::parse_phi(""), inner::PhiParseError);
    CHECK_THROWS_AS(inner::parse_phi("blaschke:1"), inner::PhiParseError);
    CHECK_THROWS_AS(inner::parse_phi("exp:kappa=-1"), inner::PhiParseError);
}

TEST_CASE("catalog spans both regimes") {
    int exponentials = 0, blaschkes = 0, skew = 0;
    for (const auto& entry : inner::catalog()) {
        if (entry.elastic) ++exponentials;
        if (!entry.elastic) ++blaschkes;
        auto chk = inner::check_conjugate(entry.phi);
        bool self = true;
        for (double p : {0.5, 1.7})
            self = self && std::abs(inner::eval(chk, p) - inner::eval(entry.phi, p)) < 1e-12;
        if (!entry.elastic && !self) ++skew;
    }
    CHECK(exponentials >= 1);
    CHECK(blaschkes >= 2);
    CHECK(skew >= 1);  // at least one Blaschke entry is not self-check-conjugate
}
