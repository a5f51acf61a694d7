#include "chiral/fock.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace chiral::fock {

namespace {

// insertion position in an ascending list, or -1 if already present
int insert_pos(const std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) return -1;
    return static_cast<int>(it - v.begin());
}

int find_pos(const std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) return -1;
    return static_cast<int>(it - v.begin());
}

RatC sign_of(int crossings) { return RatC(crossings % 2 == 0 ? 1 : -1); }

}  // namespace

int FockBasisState::energy2() const {
    int e = 0;
    for (int r : psi) e += r;
    for (int s : psibar) e += s;
    return e;
}

int FockBasisState::charge() const {
    return static_cast<int>(psi.size()) - static_cast<int>(psibar.size());
}

bool FockBasisState::operator<(const FockBasisState& o) const {
    int ea = energy2(), eb = o.energy2();
    if (ea != eb) return ea < eb;
    int qa = charge(), qb = o.charge();
    if (qa != qb) return qa < qb;
    if (psi != o.psi) return psi < o.psi;
    return psibar < o.psibar;
}

void FockVector::add_term(const FockBasisState& s, const RatC& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(s, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

FockVector& FockVector::operator+=(const FockVector& o) {
    for (const auto& [s, c] : o.terms) add_term(s, c);
    return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
    for (const auto& [s, c] : o.terms) add_term(s, -c);
    return *this;
}

FockVector FockVector::scaled(const RatC& c) const {
    FockVector out;
    if (c.is_zero()) return out;
    for (const auto& [s, v] : terms) out.terms.emplace(s, v * c);
    return out;
}

Rational FockVector::norm2() const {
    Rational n = 0;
    for (const auto& [s, c] : terms) n += c.norm2();
    return n;
}

FockVector FockVector::vacuum() { return unit(FockBasisState{}); }

FockVector FockVector::unit(FockBasisState s) {
    FockVector v;
    v.terms.emplace(std::move(s), RatC(1));
    return v;
}

FockVector apply_mode(Field kind, int index2, const FockBasisState& s) {
    if (index2 % 2 == 0)
        throw std::invalid_argument("apply_mode: mode index must be a half-integer");
    FockVector out;
    FockBasisState t = s;
    if (index2 < 0) {
        int r2 = -index2;
        if (kind == Field::Psi) {
            int pos = insert_pos(t.psi, r2);
            if (pos < 0) return out;  // Pauli blocked
            t.psi.insert(t.psi.begin() + pos, r2);
            out.add_term(t, sign_of(pos));
        } else {
            int pos = insert_pos(t.psibar, r2);
            if (pos < 0) return out;
            t.psibar.insert(t.psibar.begin() + pos, r2);
            out.add_term(t, sign_of(static_cast<int>(t.psi.size()) + pos));
        }
    } else {
        // positive index annihilates the conjugate occupation
        if (kind == Field::Psi) {
            int pos = find_pos(t.psibar, index2);
            if (pos < 0) return out;
            t.psibar.erase(t.psibar.begin() + pos);
            out.add_term(t, sign_of(static_cast<int>(t.psi.size()) + pos));
        } else {
            int pos = find_pos(t.psi, index2);
            if (pos < 0) return out;
            t.psi.erase(t.psi.begin() + pos);
            out.add_term(t, sign_of(pos));
        }
    }
    return out;
}

FockVector apply_mode(Field kind, int index2, const FockVector& v) {
    FockVector out;
    for (const auto& [s, c] : v.terms) {
        FockVector part = apply_mode(kind, index2, s);
        out += part.scaled(c);
    }
    return out;
}

FockVector FockOperator::apply(const FockVector& v) const {
    FockVector out;
    for (const auto& [s, c] : v.terms) out += action(s).scaled(c);
    return out;
}

std::vector<FockBasisState> enumerate_basis(Cutoff c) {
    // ascending lists of distinct odd positives with bounded sum
    std::vector<std::vector<int>> packs;
    std::vector<int> cur;
    auto gen = [&](auto&& self, int budget, int min_odd) -> void {
        packs.push_back(cur);
        for (int r = min_odd; r <= budget; r += 2) {
            cur.push_back(r);
            self(self, budget - r, r + 2);
            cur.pop_back();
        }
    };
    gen(gen, c.e2_max, 1);

    std::vector<FockBasisState> basis;
    for (const auto& p : packs) {
        int ep = 0;
        for (int r : p) ep += r;
        for (const auto& q : packs) {
            int eq = 0;
            for (int s : q) eq += s;
            if (ep + eq <= c.e2_max) basis.push_back({p, q});
        }
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

FockOperator mode_op(Field kind, int index2) {
    std::ostringstream name;
    name << (kind == Field::Psi ? "psi" : "psibar") << "(" << index2 << "/2)";
    return {name.str(),
            [kind, index2](const FockBasisState& s) { return apply_mode(kind, index2, s); }};
}

FockOperator current_mode(int n) {
    std::ostringstream name;
    name << "J_" << n;
    int n2 = 2 * n;
    auto act = [n2](const FockBasisState& st) {
        FockVector out;
        // psibar_r psi_{n-r} with r<0, n-r>0: annihilate s=n-r from the
        // psibar block, create |r|=s-n there
        for (int s2 : st.psibar) {
            if (s2 <= n2) continue;
            FockVector w = apply_mode(Field::Psi, s2, st);
            out += apply_mode(Field::PsiBar, n2 - s2, w);
        }
        // double creation branch, only for n<0: n<r<0
        for (int r2 = -1; r2 > n2; r2 -= 2) {
            FockVector w = apply_mode(Field::Psi, n2 - r2, st);
            out += apply_mode(Field::PsiBar, r2, w);
        }
        // -psi_{n-r} psibar_r with r>0: annihilate r from the psi block
        for (int r2 : st.psi) {
            FockVector w = apply_mode(Field::PsiBar, r2, st);
            out -= apply_mode(Field::Psi, n2 - r2, w);
        }
        return out;
    };
    return {name.str(), act};
}

FockOperator l0_op() {
    return {"L0", [](const FockBasisState& s) {
                return FockVector::unit(s).scaled(RatC(Rational(s.energy2(), 2)));
            }};
}

FockOperator q_op() {
    return {"Q", [](const FockBasisState& s) {
                return FockVector::unit(s).scaled(RatC(s.charge()));
            }};
}

FockOperator gamma_op() {
    return {"Gamma", [](const FockBasisState& s) {
                int occ = static_cast<int>(s.psi.size() + s.psibar.size());
                return FockVector::unit(s).scaled(RatC(occ % 2 == 0 ? 1 : -1));
            }};
}

FockOperator z_op() {
    // (1 - i Gamma)/(1 - i): 1 on even words, i on odd words
    return {"Z", [](const FockBasisState& s) {
                int occ = static_cast<int>(s.psi.size() + s.psibar.size());
                return FockVector::unit(s).scaled(occ % 2 == 0 ? RatC(1) : RatC::i());
            }};
}

FockOperator smeared_field(const std::map<int, RatC>& coeffs, Field kind) {
    return {kind == Field::Psi ? "psi(f)" : "psibar(f)",
            [coeffs, kind](const FockBasisState& s) {
                FockVector out;
                for (const auto& [k2, c] : coeffs)
                    out += apply_mode(kind, k2, s).scaled(c);
                return out;
            }};
}

FockOperator smeared_current(const std::map<int, RatC>& coeffs) {
    return {"J(f)", [coeffs](const FockBasisState& s) {
                FockVector out;
                for (const auto& [n, c] : coeffs)
                    out += current_mode(n).apply(s).scaled(c);
                return out;
            }};
}

RatC omega_form(const std::map<int, RatC>& fhat, const std::map<int, RatC>& ghat) {
    RatC acc;
    for (const auto& [k, fk] : fhat) {
        auto it = ghat.find(-k);
        if (it == ghat.end()) continue;
        acc = acc + fk * it->second * RatC(k);
    }
    return RatC(0, Rational(-1, 2)) * acc;
}

BlockMatrix BlockMatrix::identity(int dim) {
    BlockMatrix m = zero(dim);
    for (int j = 0; j < dim; ++j) m.cols[j][j] = RatC(1);
    return m;
}

BlockMatrix BlockMatrix::zero(int dim) {
    BlockMatrix m;
    m.dim = dim;
    m.cols.resize(dim);
    m.escaped.assign(dim, false);
    return m;
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& rhs) const {
    BlockMatrix out = zero(dim);
    for (int j = 0; j < dim; ++j) {
        bool esc = rhs.escaped[j];
        for (const auto& [k, c] : rhs.cols[j]) {
            esc = esc || escaped[k];
            for (const auto& [i, a] : cols[k]) {
                RatC& e = out.cols[j][i];
                e = e + a * c;
            }
        }
        std::erase_if(out.cols[j], [](const auto& kv) { return kv.second.is_zero(); });
        out.escaped[j] = esc;
    }
    return out;
}

BlockMatrix BlockMatrix::operator+(const BlockMatrix& rhs) const {
    BlockMatrix out = *this;
    for (int j = 0; j < dim; ++j) {
        for (const auto& [i, c] : rhs.cols[j]) {
            RatC& e = out.cols[j][i];
            e = e + c;
        }
        std::erase_if(out.cols[j], [](const auto& kv) { return kv.second.is_zero(); });
        out.escaped[j] = out.escaped[j] || rhs.escaped[j];
    }
    return out;
}

BlockMatrix BlockMatrix::operator-(const BlockMatrix& rhs) const {
    return *this + rhs.scaled(RatC(-1));
}

BlockMatrix BlockMatrix::scaled(const RatC& c) const {
    BlockMatrix out = zero(dim);
    out.escaped = escaped;
    if (c.is_zero()) return out;
    for (int j = 0; j < dim; ++j)
        for (const auto& [i, a] : cols[j]) out.cols[j][i] = a * c;
    return out;
}

BlockMatrix BlockMatrix::adjoint() const {
    BlockMatrix out = zero(dim);
    for (int j = 0; j < dim; ++j)
        for (const auto& [i, a] : cols[j]) out.cols[i][j] = a.conj();
    return out;
}

bool BlockMatrix::equal_on_columns(const BlockMatrix& rhs,
                                   const std::vector<int>& cols_idx) const {
    for (int j : cols_idx)
        if (cols[j] != rhs.cols[j]) return false;
    return true;
}

RatC BlockMatrix::entry(int row, int col) const {
    auto it = cols[col].find(row);
    return it == cols[col].end() ? RatC() : it->second;
}

BlockMatrix matrix_of(const FockOperator& op, Cutoff c) {
    return matrix_of(op, enumerate_basis(c));
}

BlockMatrix matrix_of(const FockOperator& op, const std::vector<FockBasisState>& basis) {
    std::map<FockBasisState, int> index;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) index.emplace(basis[i], i);
    BlockMatrix m = BlockMatrix::zero(static_cast<int>(basis.size()));
    for (int j = 0; j < m.dim; ++j) {
        FockVector image = op.apply(basis[j]);
        for (const auto& [s, coeff] : image.terms) {
            auto it = index.find(s);
            if (it == index.end())
                m.escaped[j] = true;
            else
                m.cols[j][it->second] = coeff;
        }
    }
    return m;
}

std::vector<int> safe_columns(const std::vector<FockBasisState>& basis, int e2_max,
                              int budget2) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i)
        if (basis[i].energy2() <= e2_max - budget2) idx.push_back(i);
    if (idx.empty()) throw EmptySafeBlock("safe block is empty for this index budget");
    return idx;
}

namespace {

std::string exact_summary(bool pass, std::size_t n_cols) {
    std::ostringstream os;
    if (pass)
        os << "exact on " << n_cols << " safe columns";
    else
        os << "matrix mismatch on safe columns";
    return os.str();
}

}  // namespace

CheckReport car_check(int n2, int m2, Cutoff c) {
    auto basis = enumerate_basis(c);
    auto safe = safe_columns(basis, c.e2_max, std::abs(n2) + std::abs(m2));
    BlockMatrix psi_n = matrix_of(mode_op(Field::Psi, n2), basis);
    BlockMatrix psi_m = matrix_of(mode_op(Field::Psi, m2), basis);
    BlockMatrix psibar_n = matrix_of(mode_op(Field::PsiBar, n2), basis);
    BlockMatrix psibar_m = matrix_of(mode_op(Field::PsiBar, m2), basis);

    auto anti = [](const BlockMatrix& a, const BlockMatrix& b) { return a * b + b * a; };
    BlockMatrix zero = BlockMatrix::zero(psi_n.dim);
    BlockMatrix delta = (m2 + n2 == 0) ? BlockMatrix::identity(psi_n.dim) : zero;

    bool pass = anti(psi_n, psi_m).equal_on_columns(zero, safe) &&
                anti(psibar_n, psibar_m).equal_on_columns(zero, safe) &&
                anti(psibar_n, psi_m).equal_on_columns(delta, safe);

    std::ostringstream name;
    name << "car(" << n2 << "/2," << m2 << "/2)";
    return CheckReport::exact(name.str(), pass, exact_summary(pass, safe.size()),
                              "{psi_n,psi_m} = {psibar_n,psibar_m} = 0, "
                              "{psibar_n,psi_m} = delta_{m+n,0}");
}

CheckReport current_algebra_check(int m, int n, Cutoff c) {
    auto basis = enumerate_basis(c);
    auto safe = safe_columns(basis, c.e2_max, 2 * std::abs(m) + 2 * std::abs(n));
    BlockMatrix jm = matrix_of(current_mode(m), basis);
    BlockMatrix jn = matrix_of(current_mode(n), basis);
    BlockMatrix comm = jm * jn - jn * jm;
    BlockMatrix expect = (m + n == 0) ? BlockMatrix::identity(jm.dim).scaled(RatC(m))
                                      : BlockMatrix::zero(jm.dim);
    bool pass = comm.equal_on_columns(expect, safe);
    std::ostringstream name;
    name << "current_algebra(" << m << "," << n << ")";
    return CheckReport::exact(name.str(), pass, exact_summary(pass, safe.size()),
                              "[J_m,J_n] = m delta_{m+n,0}");
}

CheckReport field_current_commutator_check(int n, int k2, Cutoff c) {
    auto basis = enumerate_basis(c);
    auto safe = safe_columns(basis, c.e2_max, 2 * std::abs(n) + std::abs(k2));
    BlockMatrix jn = matrix_of(current_mode(n), basis);
    BlockMatrix psi_k = matrix_of(mode_op(Field::Psi, k2), basis);
    BlockMatrix psibar_k = matrix_of(mode_op(Field::PsiBar, k2), basis);
    BlockMatrix psi_nk = matrix_of(mode_op(Field::Psi, 2 * n + k2), basis);
    BlockMatrix psibar_nk = matrix_of(mode_op(Field::PsiBar, 2 * n + k2), basis);

    bool pass = (jn * psi_k - psi_k * jn).equal_on_columns(psi_nk.scaled(RatC(-1)), safe) &&
                (jn * psibar_k - psibar_k * jn).equal_on_columns(psibar_nk, safe);
    std::ostringstream name;
    name << "field_current(" << n << "," << k2 << "/2)";
    return CheckReport::exact(name.str(), pass, exact_summary(pass, safe.size()),
                              "[J_n,psi_k] = -psi_{n+k}, [J_n,psibar_k] = psibar_{n+k}");
}

CheckReport energy_bound_check(int n, Cutoff c) {
    auto basis = enumerate_basis(c);
    auto safe = safe_columns(basis, c.e2_max, 2 * std::abs(n));
    FockOperator jn = current_mode(n);
    bool pass = true;
    double max_ratio = 0.0;
    for (int j : safe) {
        const FockBasisState& xi = basis[j];
        Rational lhs2 = jn.apply(xi).norm2();
        Rational bound = Rational(xi.energy2() + 2 + std::abs(n));  // 2(E+1)+|n|
        Rational rhs2 = bound * bound;
        if (lhs2 > rhs2) pass = false;
        if (rhs2 != 0) {
            double ratio = static_cast<double>(lhs2) / static_cast<double>(rhs2);
            max_ratio = std::max(max_ratio, ratio);
        }
    }
    std::ostringstream name;
    name << "energy_bound(J_" << n << ")";
    CheckReport r = CheckReport::within(name.str(), max_ratio, 1.0,
                                        "||J_n xi|| <= ||(2(L0+1)+|n|) xi||");
    r.pass = pass;  // decided by the exact rational comparison, not the ratio
    return r;
}

CheckReport twist_check(Cutoff c) {
    auto basis = enumerate_basis(c);
    BlockMatrix z = matrix_of(z_op(), basis);
    BlockMatrix gamma = matrix_of(gamma_op(), basis);
    std::vector<int> all(basis.size());
    for (int i = 0; i < static_cast<int>(all.size()); ++i) all[i] = i;
    bool pass = (z * z).equal_on_columns(gamma, all);
    return CheckReport::exact("twist", pass, exact_summary(pass, all.size()),
                              "Z^2 = Gamma");
}

series::BivariateSeries character_trace(Cutoff c) {
    series::BivariateSeries out;
    out.t2_max = c.e2_max;
    for (const auto& s : enumerate_basis(c)) out.add_to(s.energy2(), s.charge(), 1);
    return out;
}

}  // namespace chiral::fock
