#include <doctest.h>

#include <random>
#include <vector>

#include "chiral/series.hpp"

using namespace chiral;
using series::BigInt;
using series::BivariateSeries;
using series::UnivariateSeries;

namespace {

// independent oracle: number of partitions of n with parts <= max_part
long count_partitions(int n, int max_part) {
    if (n == 0) return 1;
    if (n < 0 || max_part == 0) return 0;
    return count_partitions(n - max_part, max_part) + count_partitions(n, max_part - 1);
}

long count_partitions(int n) { return count_partitions(n, n); }

// independent oracle: expand prod_{k=1..kmax} (1 - t^k) as a plain vector
std::vector<long> euler_product_vector(int kmax, int order) {
    std::vector<long> c(order + 1, 0);
    c[0] = 1;
    for (int k = 1; k <= kmax; ++k) {
        for (int d = order; d >= k; --d) c[d] -= c[d - k];
    }
    return c;
}

// independent oracle: character coefficients by enumerating occupied-mode
// subsets; e2 is the doubled total energy, q the charge
std::map<std::pair<int, int>, long> enumerate_character(int e2_max) {
    std::vector<std::vector<int>> packs;
    std::vector<int> cur;
    auto gen = [&](auto&& self, int budget, int next) -> void {
        packs.push_back(cur);
        for (int r = next; r <= budget; r += 2) {
            cur.push_back(r);
            self(self, budget - r, r + 2);
            cur.pop_back();
        }
    };
    gen(gen, e2_max, 1);
    std::map<std::pair<int, int>, long> counts;
    for (const auto& a : packs) {
        int ea = 0;
        for (int r : a) ea += r;
        for (const auto& b : packs) {
            int eb = 0;
            for (int s : b) eb += s;
            if (ea + eb > e2_max) continue;
            counts[{ea + eb, static_cast<int>(a.size()) - static_cast<int>(b.size())}]++;
        }
    }
    return counts;
}

UnivariateSeries random_sparse(std::mt19937& rng, int t2_max) {
    std::uniform_int_distribution<int> expo(0, t2_max);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> terms(1, 6);
    UnivariateSeries s;
    s.t2_max = t2_max;
    int n = terms(rng);
    for (int i = 0; i < n; ++i) s.add_to(expo(rng), coef(rng));
    return s;
}

}  // namespace

TEST_CASE("univariate multiplication basics") {
    auto one = UnivariateSeries::one(20);
    CHECK(series::mul(one, one) == one);

    // (1 - t) * sum t^k = 1
    UnivariateSeries lin = UnivariateSeries::one(20);
    lin.add_to(2, -1);
    UnivariateSeries geo;
    geo.t2_max = 20;
    for (int t2 = 0; t2 <= 20; t2 += 2) geo.add_to(t2, 1);
    CHECK(series::mul(lin, geo) == one);

    UnivariateSeries other = UnivariateSeries::one(10);
    CHECK_THROWS_AS(series::mul(one, other), std::invalid_argument);
}

TEST_CASE("euler product and inversion") {
    CHECK(series::euler_phi(0) == UnivariateSeries::one(0));
    CHECK(series::euler_phi(8).coeff(2) == -1);

    // full comparison against an independently expanded product, to t^20
    auto phi = series::euler_phi(40);
    auto oracle = euler_product_vector(20, 20);
    for (int n = 0; n <= 20; ++n) CHECK(phi.coeff(2 * n) == oracle[n]);

    CHECK(series::mul(series::euler_phi(40), series::partition_gf(40)) ==
          UnivariateSeries::one(40));

    CHECK(series::invert_unit(UnivariateSeries::one(12)) == UnivariateSeries::one(12));
    UnivariateSeries lin = UnivariateSeries::one(12);
    lin.add_to(2, -1);
    auto inv = series::invert_unit(lin);
    for (int t2 = 0; t2 <= 12; t2 += 2) CHECK(inv.coeff(t2) == 1);

    UnivariateSeries no_unit;
    no_unit.t2_max = 4;
    no_unit.add_to(2, 1);
    CHECK_THROWS_AS(series::invert_unit(no_unit), std::invalid_argument);
}

TEST_CASE("partition generating function") {
    auto gf = series::partition_gf(40);
    // frozen first values, then the enumeration oracle for the whole range
    const long expected[] = {1, 1, 2, 3, 5, 7, 11};
    for (int n = 0; n <= 6; ++n) CHECK(gf.coeff(2 * n) == expected[n]);
    for (int n = 0; n <= 20; ++n) CHECK(gf.coeff(2 * n) == count_partitions(n));
}

TEST_CASE("fermionic character coefficients") {
    auto chr = series::fermionic_character(12);
    CHECK(chr.coeff(0, 0) == 1);   // vacuum
    CHECK(chr.coeff(1, 1) == 1);   // z t^(1/2)
    CHECK(chr.coeff(2, 0) == 1);   // z^0 t^1

    auto oracle = enumerate_character(12);
    for (const auto& [key, c] : chr.coeffs) CHECK(c == oracle[key]);
    for (const auto& [key, c] : oracle) CHECK(chr.coeff(key.first, key.second) == c);
}

TEST_CASE("theta form coefficients") {
    auto theta = series::theta_jacobi(12);
    CHECK(theta.coeff(0, 0) == 1);
    CHECK(theta.coeff(4, 2) == 1);  // z^2 t^2
    CHECK(theta.coeff(3, 1) == 1);  // z t^(3/2)
}

TEST_CASE("character coefficients are nonnegative") {
    for (const auto& [key, c] : series::fermionic_character(40).coeffs) CHECK(c >= 0);
    for (const auto& [key, c] : series::theta_jacobi(40).coeffs) CHECK(c >= 0);
}

TEST_CASE("jacobi identity") {
    CHECK(series::jacobi_identity_check(0).pass);
    CHECK(series::jacobi_identity_check(40).pass);
    auto bad = series::jacobi_identity_check(40, /*corrupt=*/true);
    CHECK_FALSE(bad.pass);
    CHECK(std::get<std::string>(bad.measured).find("mismatch") != std::string::npos);
}

TEST_CASE("charge-zero slice") {
    CHECK(series::z0_slice(series::theta_jacobi(40)) == series::partition_gf(40));
    CHECK(series::z0_slice(BivariateSeries::one(8)) == UnivariateSeries::one(8));
    CHECK(series::z0_slice(series::fermionic_character(40)).coeff(6) == 3);
    for (int t2 = 0; t2 <= 40; ++t2)
        CHECK(series::z0_slice(series::fermionic_character(t2)) ==
              series::partition_gf(t2));
}

TEST_CASE("multiplication is commutative and associative") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_sparse(rng, 24);
        auto b = random_sparse(rng, 24);
        auto c = random_sparse(rng, 24);
        CHECK(series::mul(a, b) == series::mul(b, a));
        CHECK(series::mul(series::mul(a, b), c) == series::mul(a, series::mul(b, c)));
    }
}

TEST_CASE("random unit series invert exactly") {
    std::mt19937 rng(717);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_sparse(rng, 24);
        a.coeffs.erase(0);
        a.add_to(0, 1);  // force constant term 1
        CHECK(series::mul(a, series::invert_unit(a)) == UnivariateSeries::one(24));
    }
}
