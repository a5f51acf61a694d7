#include "chiral/series.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace chiral::series {

UnivariateSeries UnivariateSeries::one(int t2_max) {
    UnivariateSeries s;
    s.t2_max = t2_max;
    s.coeffs[0] = 1;
    return s;
}

UnivariateSeries UnivariateSeries::monomial(int t2, BigInt c, int t2_max) {
    UnivariateSeries s;
    s.t2_max = t2_max;
    if (t2 <= t2_max && c != 0) s.coeffs[t2] = std::move(c);
    return s;
}

BigInt UnivariateSeries::coeff(int t2) const {
    auto it = coeffs.find(t2);
    return it == coeffs.end() ? BigInt(0) : it->second;
}

void UnivariateSeries::add_to(int t2, const BigInt& c) {
    if (t2 > t2_max || c == 0) return;
    auto [it, inserted] = coeffs.try_emplace(t2, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

BivariateSeries BivariateSeries::one(int t2_max) {
    BivariateSeries s;
    s.t2_max = t2_max;
    s.coeffs[{0, 0}] = 1;
    return s;
}

BigInt BivariateSeries::coeff(int t2, int q) const {
    auto it = coeffs.find({t2, q});
    return it == coeffs.end() ? BigInt(0) : it->second;
}

void BivariateSeries::add_to(int t2, int q, const BigInt& c) {
    // t^(q^2/2) alone already needs q^2 <= t2_max, so wider charges can
    // never contribute to a retained coefficient.
    if (t2 > t2_max || std::abs(q) > t2_max || c == 0) return;
    auto [it, inserted] = coeffs.try_emplace(std::pair{t2, q}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

UnivariateSeries mul(const UnivariateSeries& a, const UnivariateSeries& b) {
    if (a.t2_max != b.t2_max)
        throw std::invalid_argument("series::mul: mismatched truncation orders");
    UnivariateSeries out;
    out.t2_max = a.t2_max;
    for (const auto& [ea, ca] : a.coeffs) {
        for (const auto& [eb, cb] : b.coeffs) {
            if (ea + eb > out.t2_max) break;  // keys ascend within b
            out.add_to(ea + eb, ca * cb);
        }
    }
    return out;
}

BivariateSeries mul(const BivariateSeries& a, const BivariateSeries& b) {
    if (a.t2_max != b.t2_max)
        throw std::invalid_argument("series::mul: mismatched truncation orders");
    BivariateSeries out;
    out.t2_max = a.t2_max;
    for (const auto& [ka, ca] : a.coeffs) {
        for (const auto& [kb, cb] : b.coeffs) {
            int t2 = ka.first + kb.first;
            if (t2 > out.t2_max) continue;
            out.add_to(t2, ka.second + kb.second, ca * cb);
        }
    }
    return out;
}

UnivariateSeries invert_unit(const UnivariateSeries& a) {
    if (a.coeff(0) != 1)
        throw std::invalid_argument("series::invert_unit: constant term must be 1");
    // b_n = -sum_{0<k<=n} a_k b_{n-k}, n in doubled units
    UnivariateSeries b = UnivariateSeries::one(a.t2_max);
    for (int n = 1; n <= a.t2_max; ++n) {
        BigInt acc = 0;
        for (const auto& [k, ak] : a.coeffs) {
            if (k == 0) continue;
            if (k > n) break;
            acc += ak * b.coeff(n - k);
        }
        if (acc != 0) b.coeffs[n] = -acc;
    }
    return b;
}

UnivariateSeries euler_phi(int t2_max) {
    UnivariateSeries p = UnivariateSeries::one(t2_max);
    for (int k = 1; 2 * k <= t2_max; ++k) {
        UnivariateSeries factor = UnivariateSeries::one(t2_max);
        factor.coeffs[2 * k] = -1;
        p = mul(p, factor);
    }
    return p;
}

UnivariateSeries partition_gf(int t2_max) { return invert_unit(euler_phi(t2_max)); }

BivariateSeries fermionic_character(int t2_max) {
    BivariateSeries prod = BivariateSeries::one(t2_max);
    for (int r2 = 1; r2 <= t2_max; r2 += 2) {
        // (1 + z t^r)(1 + z^-1 t^r) = 1 + z t^r + z^-1 t^r + t^(2r)
        BivariateSeries factor;
        factor.t2_max = t2_max;
        factor.add_to(0, 0, 1);
        factor.add_to(r2, 1, 1);
        factor.add_to(r2, -1, 1);
        factor.add_to(2 * r2, 0, 1);
        prod = mul(prod, factor);
    }
    return prod;
}

BivariateSeries theta_jacobi(int t2_max) {
    UnivariateSeries p = partition_gf(t2_max);
    BivariateSeries theta;
    theta.t2_max = t2_max;
    for (int q = 0; q * q <= t2_max; ++q) {
        theta.add_to(q * q, q, 1);  // t^(q^2/2) has doubled exponent q^2
        if (q > 0) theta.add_to(q * q, -q, 1);
    }
    BivariateSeries pb;
    pb.t2_max = t2_max;
    for (const auto& [e, c] : p.coeffs) pb.add_to(e, 0, c);
    return mul(pb, theta);
}

UnivariateSeries z0_slice(const BivariateSeries& b) {
    UnivariateSeries out;
    out.t2_max = b.t2_max;
    for (const auto& [k, c] : b.coeffs)
        if (k.second == 0) out.coeffs[k.first] = c;
    return out;
}

CheckReport jacobi_identity_check(int t2_max, bool corrupt) {
    BivariateSeries lhs = fermionic_character(t2_max);
    BivariateSeries rhs = theta_jacobi(t2_max);
    if (corrupt) rhs.add_to(std::min(2, t2_max), 0, 1);
    if (lhs == rhs) {
        std::ostringstream ok;
        ok << lhs.coeffs.size() << " coefficients equal";
        return CheckReport::exact("jacobi_triple_product", true, ok.str(),
                                  "prod (1+zt^r)(1+z^-1 t^r) = p(t) sum_q z^q t^(q^2/2)");
    }
    // name the first offending coefficient
    std::ostringstream bad;
    for (int t2 = 0; t2 <= t2_max; ++t2) {
        for (int q = -t2_max; q <= t2_max; ++q) {
            if (lhs.coeff(t2, q) != rhs.coeff(t2, q)) {
                bad << "mismatch at t^(" << t2 << "/2) z^" << q << ": product "
                    << lhs.coeff(t2, q) << " vs theta " << rhs.coeff(t2, q);
                return CheckReport::exact(
                    "jacobi_triple_product", false, bad.str(),
                    "prod (1+zt^r)(1+z^-1 t^r) = p(t) sum_q z^q t^(q^2/2)");
            }
        }
    }
    return CheckReport::exact("jacobi_triple_product", false, "structural mismatch",
                              "prod (1+zt^r)(1+z^-1 t^r) = p(t) sum_q z^q t^(q^2/2)");
}

}  // namespace chiral::series
