#pragma once

#include <map>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "chiral/report.hpp"

// Exact truncated power series in t^(1/2) (and z for the bivariate case).
// Exponents of t are half-integers r; every key stores the doubled value 2r
// so all arithmetic stays in integers. A series of truncation order t2_max
// carries exactly the coefficients with 2r <= t2_max; products silently drop
// anything beyond that.

namespace chiral::series {

using BigInt = boost::multiprecision::cpp_int;

struct UnivariateSeries {
    int t2_max = 0;
    std::map<int, BigInt> coeffs;  // doubled exponent -> coefficient, zero-pruned

    static UnivariateSeries one(int t2_max);
    static UnivariateSeries monomial(int t2, BigInt c, int t2_max);

    BigInt coeff(int t2) const;
    void add_to(int t2, const BigInt& c);
    bool operator==(const UnivariateSeries&) const = default;
};

struct BivariateSeries {
    int t2_max = 0;
    std::map<std::pair<int, int>, BigInt> coeffs;  // (2r, charge q) -> coefficient

    static BivariateSeries one(int t2_max);

    BigInt coeff(int t2, int q) const;
    void add_to(int t2, int q, const BigInt& c);
    bool operator==(const BivariateSeries&) const = default;
};

// Truncated Cauchy products. Both operands must share t2_max.
UnivariateSeries mul(const UnivariateSeries& a, const UnivariateSeries& b);
BivariateSeries mul(const BivariateSeries& a, const BivariateSeries& b);

// Reciprocal of a series with constant term 1.
UnivariateSeries invert_unit(const UnivariateSeries& a);

// prod_{k>=1} (1 - t^k), truncated.
UnivariateSeries euler_phi(int t2_max);

// Partition generating function, 1 / euler_phi.
UnivariateSeries partition_gf(int t2_max);

// prod_{r in N0+1/2} (1 + z t^r)(1 + z^-1 t^r), truncated.
BivariateSeries fermionic_character(int t2_max);

// partition_gf(t) * sum_q z^q t^(q^2/2), truncated.
BivariateSeries theta_jacobi(int t2_max);

// Charge-zero row of a bivariate series.
UnivariateSeries z0_slice(const BivariateSeries& b);

// Coefficient-by-coefficient comparison of the product and theta forms of
// the character. `corrupt` flips one coefficient first (negative control).
CheckReport jacobi_identity_check(int t2_max, bool corrupt = false);

}  // namespace chiral::series
