#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chiral/report.hpp"
#include "chiral/series.hpp"

// Truncated fermionic Fock space over modes psi_r, psibar_r with half-integer
// r, in exact complex-rational arithmetic. Mode indices are stored doubled
// (2r, an odd integer); energies are stored doubled as well. A basis word is
// written in canonical order psi-block then psibar-block, each strictly
// ascending in r; that convention fixes every sign below.

namespace chiral::fock {

using Rational = boost::multiprecision::cpp_rational;

// Exact complex number with rational real and imaginary parts.
struct RatC {
    Rational re = 0;
    Rational im = 0;

    RatC() = default;
    RatC(Rational r) : re(std::move(r)) {}
    RatC(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RatC(int r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }
    RatC conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    friend RatC operator+(const RatC& a, const RatC& b) { return {a.re + b.re, a.im + b.im}; }
    friend RatC operator-(const RatC& a, const RatC& b) { return {a.re - b.re, a.im - b.im}; }
    friend RatC operator-(const RatC& a) { return {-a.re, -a.im}; }
    friend RatC operator*(const RatC& a, const RatC& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const RatC& a, const RatC& b) = default;

    static RatC i() { return {0, 1}; }
};

struct FockBasisState {
    std::vector<int> psi;     // occupied psi_{-r}: doubled r, odd, ascending
    std::vector<int> psibar;  // occupied psibar_{-s}: doubled s, odd, ascending

    int energy2() const;                      // 2 * (sum r + sum s)
    int charge() const;                       // #psi - #psibar
    bool operator==(const FockBasisState&) const = default;
    bool operator<(const FockBasisState&) const;  // (energy, charge, lex)
};

struct FockVector {
    std::map<FockBasisState, RatC> terms;  // zero-pruned

    void add_term(const FockBasisState& s, const RatC& c);
    FockVector& operator+=(const FockVector& o);
    FockVector& operator-=(const FockVector& o);
    FockVector scaled(const RatC& c) const;
    Rational norm2() const;  // sum |coeff|^2, exact
    bool is_zero() const { return terms.empty(); }
    bool operator==(const FockVector&) const = default;

    static FockVector vacuum();
    static FockVector unit(FockBasisState s);
};

enum class Field { Psi, PsiBar };

// Action of psi_index or psibar_index (index doubled, odd, signed) on a
// canonical word. Negative index creates, positive index annihilates the
// conjugate occupation; the sign counts crossings to canonical position.
FockVector apply_mode(Field kind, int index2, const FockBasisState& s);
FockVector apply_mode(Field kind, int index2, const FockVector& v);

struct Cutoff {
    int e2_max = 12;
};

// All basis states with energy2 <= e2_max, ordered by (energy, charge, lex).
std::vector<FockBasisState> enumerate_basis(Cutoff c);

// A linear operator given by its exact action on basis states. The action is
// untruncated; cutoffs only enter when compressing to a block matrix.
struct FockOperator {
    std::string name;
    std::function<FockVector(const FockBasisState&)> action;

    FockVector apply(const FockBasisState& s) const { return action(s); }
    FockVector apply(const FockVector& v) const;
};

FockOperator mode_op(Field kind, int index2);
FockOperator current_mode(int n);  // J_n = sum_{r+s=n} :psibar_r psi_s:
FockOperator l0_op();              // diagonal energy
FockOperator q_op();               // diagonal charge
FockOperator gamma_op();           // (-1)^(k+l)
FockOperator z_op();               // (1 - i Gamma)/(1 - i): 1 on even, i on odd

// Finite linear combinations: coeffs maps a doubled (field) or plain
// (current) mode index to its coefficient.
FockOperator smeared_field(const std::map<int, RatC>& coeffs, Field kind);
FockOperator smeared_current(const std::map<int, RatC>& coeffs);

// omega(f,g) = -i/2 sum_k k fhat_k ghat_{-k}, integer-indexed coefficients.
RatC omega_form(const std::map<int, RatC>& fhat, const std::map<int, RatC>& ghat);

// Compression of an operator to the cutoff block. Columns whose exact image
// has support outside the block are flagged escaped; their stored entries
// are still the exact in-block components.
struct BlockMatrix {
    int dim = 0;
    std::vector<std::map<int, RatC>> cols;  // col -> (row -> entry)
    std::vector<bool> escaped;

    static BlockMatrix identity(int dim);
    static BlockMatrix zero(int dim);
    BlockMatrix operator*(const BlockMatrix& rhs) const;  // truncated product
    BlockMatrix operator+(const BlockMatrix& rhs) const;
    BlockMatrix operator-(const BlockMatrix& rhs) const;
    BlockMatrix scaled(const RatC& c) const;
    BlockMatrix adjoint() const;
    bool equal_on_columns(const BlockMatrix& rhs, const std::vector<int>& cols_idx) const;
    RatC entry(int row, int col) const;
};

BlockMatrix matrix_of(const FockOperator& op, Cutoff c);
BlockMatrix matrix_of(const FockOperator& op, const std::vector<FockBasisState>& basis);

// Column indices of basis states with energy2 <= e2_max - budget2. Throws
// EmptySafeBlock when no state qualifies.
std::vector<int> safe_columns(const std::vector<FockBasisState>& basis, int e2_max,
                              int budget2);

// {psi_n,psi_m} = 0, {psibar_n,psibar_m} = 0, {psibar_n,psi_m} = delta_{m+n,0}
// as exact block-matrix identities on the safe columns. Indices doubled.
CheckReport car_check(int n2, int m2, Cutoff c);

// [J_m, J_n] = m delta_{m+n,0} on the safe columns.
CheckReport current_algebra_check(int m, int n, Cutoff c);

// [J_n, psi_k] = -psi_{n+k} and [J_n, psibar_k] = psibar_{n+k}; k doubled.
CheckReport field_current_commutator_check(int n, int k2, Cutoff c);

// ||J_n xi|| <= ||(2(L0+1)+|n|) xi|| for every safe basis vector, compared
// on exact squared norms.
CheckReport energy_bound_check(int n, Cutoff c);

// Z^2 = Gamma as exact matrices on the whole block.
CheckReport twist_check(Cutoff c);

// sum over the basis of t^energy z^charge; matches the product character on
// the shared truncation.
series::BivariateSeries character_trace(Cutoff c);

}  // namespace chiral::fock
