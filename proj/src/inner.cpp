#include "chiral/inner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace chiral::inner {

namespace {
constexpr Complex I{0.0, 1.0};
}

InnerFunction InnerFunction::exponential(double kappa, double theta) {
    if (kappa < 0) throw std::invalid_argument("exponential inner function needs kappa >= 0");
    return {Exponential{kappa, theta}};
}

InnerFunction InnerFunction::blaschke(std::vector<Complex> zeros) {
    for (const Complex& z : zeros)
        if (z.imag() <= 0)
            throw std::invalid_argument("Blaschke zeros must lie in the upper half-plane");
    return {BlaschkeProduct{std::move(zeros)}};
}

InnerFunction InnerFunction::product(std::vector<InnerFunction> factors) {
    return {ProductFunction{std::move(factors)}};
}

Complex eval(const InnerFunction& phi, double p) {
    return std::visit(
        [p](const auto& f) -> Complex {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return std::exp(I * (f.kappa * p + f.theta));
            } else if constexpr (std::is_same_v<T, BlaschkeProduct>) {
                Complex v{1.0, 0.0};
                for (const Complex& z : f.zeros) v *= (p - z) / (p - std::conj(z));
                return v;
            } else {
                Complex v{1.0, 0.0};
                for (const InnerFunction& g : f.factors) v *= eval(g, p);
                return v;
            }
        },
        phi.spec);
}

InnerFunction check_conjugate(const InnerFunction& phi) {
    return std::visit(
        [](const auto& f) -> InnerFunction {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return {Exponential{f.kappa, -f.theta}};
            } else if constexpr (std::is_same_v<T, BlaschkeProduct>) {
                BlaschkeProduct out;
                out.zeros.reserve(f.zeros.size());
                for (const Complex& z : f.zeros) out.zeros.push_back(-std::conj(z));
                return {out};
            } else {
                ProductFunction out;
                out.factors.reserve(f.factors.size());
                for (const InnerFunction& g : f.factors) out.factors.push_back(check_conjugate(g));
                return {out};
            }
        },
        phi.spec);
}

bool is_exponential(const InnerFunction& phi) {
    return std::visit(
        [](const auto& f) -> bool {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return true;
            } else if constexpr (std::is_same_v<T, BlaschkeProduct>) {
                return f.zeros.empty();
            } else {
                return std::all_of(f.factors.begin(), f.factors.end(),
                                   [](const InnerFunction& g) { return is_exponential(g); });
            }
        },
        phi.spec);
}

SymParts sym_parts(const InnerFunction& phi, double p) {
    Complex v = eval(phi, p);
    Complex vc = std::conj(eval(phi, -p));
    return {0.5 * (v + vc), 0.5 * (v - vc)};
}

double LWMatrix::unitarity_error() const {
    // M = [[a, ib], [-ib, a]]: M M* has diagonal |a|^2+|b|^2 and off-diagonal
    // i(a conj(b) + conj(a) b)
    double diag = std::abs(std::norm(a) + std::norm(b) - 1.0);
    double off = std::abs(a * std::conj(b) + std::conj(a) * b);
    return std::max(diag, off);
}

LWMatrix lw_matrix(const InnerFunction& phi, double p) {
    SymParts s = sym_parts(phi, p);
    return {s.a, s.b};
}

double lw_diagonalization_error(const InnerFunction& phi, double p) {
    LWMatrix m = lw_matrix(phi, p);
    const Complex a = m.a, b = m.b;
    // U M U* with U = [[1,i],[i,1]]/sqrt(2)
    Complex m00 = a, m01 = I * b, m10 = -I * b, m11 = a;
    Complex u00 = 1.0 / std::sqrt(2.0), u01 = I / std::sqrt(2.0);
    Complex u10 = u01, u11 = u00;
    // T = U M
    Complex t00 = u00 * m00 + u01 * m10, t01 = u00 * m01 + u01 * m11;
    Complex t10 = u10 * m00 + u11 * m10, t11 = u10 * m01 + u11 * m11;
    // D = T U*
    Complex d00 = t00 * std::conj(u00) + t01 * std::conj(u01);
    Complex d01 = t00 * std::conj(u10) + t01 * std::conj(u11);
    Complex d10 = t10 * std::conj(u00) + t11 * std::conj(u01);
    Complex d11 = t10 * std::conj(u10) + t11 * std::conj(u11);
    Complex phi_p = eval(phi, p);
    Complex phic_p = eval(check_conjugate(phi), p);
    double err = std::abs(d00 - phi_p);
    err = std::max(err, std::abs(d11 - phic_p));
    err = std::max(err, std::abs(d01));
    err = std::max(err, std::abs(d10));
    return err;
}

std::vector<CheckReport> lw_grid_checks(const InnerFunction& phi, double p_min,
                                        double p_max, int n_points, double tol) {
    InnerFunction chk = check_conjugate(phi);
    InnerFunction chk2 = check_conjugate(chk);
    double modulus_err = 0, unit_err = 0, diag_err = 0, invol_err = 0;
    double sym_err = 0, recomb_err = 0;
    for (int i = 0; i < n_points; ++i) {
        double p = p_min + (p_max - p_min) * i / (n_points - 1);
        Complex v = eval(phi, p);
        modulus_err = std::max(modulus_err, std::abs(std::abs(v) - 1.0));
        unit_err = std::max(unit_err, lw_matrix(phi, p).unitarity_error());
        diag_err = std::max(diag_err, lw_diagonalization_error(phi, p));
        invol_err = std::max(invol_err, std::abs(eval(chk2, p) - v));
        // a symmetric, b antisymmetric; a+b and a-b recombine to phi, phi_check
        SymParts s = sym_parts(phi, p);
        SymParts sm = sym_parts(phi, -p);
        sym_err = std::max(sym_err, std::abs(s.a - std::conj(sm.a)));
        sym_err = std::max(sym_err, std::abs(s.b + std::conj(sm.b)));
        recomb_err = std::max(recomb_err, std::abs(s.a + s.b - v));
        recomb_err = std::max(recomb_err, std::abs(s.a - s.b - eval(chk, p)));
    }
    std::vector<CheckReport> out;
    out.push_back(CheckReport::within("modulus_one", modulus_err, tol, "|phi(p)| = 1"));
    out.push_back(CheckReport::within("lw_unitarity", unit_err, tol,
                                      "[[a,ib],[-ib,a]] is unitary at real p"));
    out.push_back(CheckReport::within("lw_diagonalization", diag_err, tol,
                                      "U M U* = diag(phi, phi_check)"));
    out.push_back(CheckReport::within("check_involution", invol_err, tol,
                                      "phi_check_check = phi"));
    out.push_back(CheckReport::within("sym_antisym", sym_err, tol,
                                      "a(-p) = conj(a(p)), b(-p) = -conj(b(p))"));
    out.push_back(CheckReport::within("recombination", recomb_err, tol,
                                      "a+b = phi, a-b = phi_check"));
    return out;
}

namespace {

// in-place radix-2 DIT, X_j = sum_k x_k e^{-2 pi i jk/N}
void fft(std::vector<Complex>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        Complex wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            Complex w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                Complex u = a[i + k];
                Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// relative mass of phi(P)f on x<0 for f(x) = e^{-x} 1_{x>0}
double leakage_of(const InnerFunction& phi, const CausalitySpec& spec) {
    const std::size_t n = std::size_t{1} << spec.log2_points;
    const double dp = 2.0 * spec.p_window / static_cast<double>(n);
    std::vector<Complex> buf(n);
    for (std::size_t k = 0; k < n; ++k) {
        double p = (static_cast<double>(k) - static_cast<double>(n) / 2) * dp;
        Complex fhat = 1.0 / (2.0 * std::numbers::pi * Complex{1.0, -p});
        Complex v = eval(phi, p) * fhat;
        buf[k] = (k % 2 == 0) ? v : -v;  // centers the output grid
    }
    fft(buf);
    // output bin j holds x_j = (j - n/2) * pi / p_window
    double neg = 0, tot = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double m = std::norm(buf[j]);
        tot += m;
        if (j < n / 2) neg += m;
    }
    return tot > 0 ? neg / tot : 0.0;
}

}  // namespace

double causality_leakage(const InnerFunction& phi, const CausalitySpec& spec) {
    return leakage_of(phi, spec);
}

CheckReport causality_check(const InnerFunction& phi, const CausalitySpec& spec) {
    // the identity multiplier measures what the grid itself leaks; if that
    // already eats half the budget the resolution cannot certify the bound
    double control = leakage_of(InnerFunction::exponential(0.0, 0.0), spec);
    if (control > 0.5 * spec.tol) {
        CheckReport r = CheckReport::within("causality", control, 0.5 * spec.tol,
                                            "phi(P) leaves L2(R_+) invariant");
        r.pass = false;
        r.measured = "grid too coarse: identity control leaks " + std::to_string(control);
        return r;
    }
    double leak = leakage_of(phi, spec);
    return CheckReport::within("causality", leak, spec.tol,
                               "phi(P) leaves L2(R_+) invariant");
}

double functional_equation_probe(const InnerFunction& phi,
                                 const std::vector<ProbePair>& samples) {
    InnerFunction chk = check_conjugate(phi);
    double residual = 0.0;
    for (const ProbePair& s : samples) {
        if (s.p1 <= 0 || s.q1 <= 0 || s.p2 <= 0 || s.q2 <= 0)
            throw std::invalid_argument("probe pairs must be positive");
        if (std::abs((s.p1 + s.q1) - (s.p2 + s.q2)) > 1e-9)
            throw std::invalid_argument("probe pairs must share p+q");
        Complex lhs = eval(phi, s.p1) * eval(chk, s.q1);
        Complex rhs = eval(phi, s.p2) * eval(chk, s.q2);
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    return residual;
}

std::vector<ProbePair> default_probe_pairs() {
    std::vector<ProbePair> out;
    for (double sum : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (double frac : {0.125, 0.25, 0.375}) {
            out.push_back({frac * sum, (1 - frac) * sum, 0.5 * sum, 0.5 * sum});
        }
    }
    out.push_back({1.0, 3.0, 2.0, 2.0});
    return out;
}

namespace {

double parse_double(const std::string& token, const std::string& what) {
    const char* begin = token.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || end != begin + token.size())
        throw PhiParseError("bad " + what + " '" + token + "'");
    return v;
}

InnerFunction parse_exp(const std::string& body) {
    double kappa = 0.0, theta = 0.0;
    bool saw_kappa = false;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw PhiParseError("expected key=value in exp spec, got '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        if (key == "kappa") {
            kappa = parse_double(val, "kappa");
            saw_kappa = true;
        } else if (key == "theta") {
            theta = parse_double(val, "theta");
        } else {
            throw PhiParseError("unknown exp key '" + key + "'");
        }
    }
    if (!saw_kappa) throw PhiParseError("exp spec requires kappa=<float>");
    if (kappa < 0) throw PhiParseError("exp spec requires kappa >= 0");
    return InnerFunction::exponential(kappa, theta);
}

Complex parse_zero(const std::string& token) {
    const char* begin = token.c_str();
    char* end = nullptr;
    double re = std::strtod(begin, &end);
    if (end == begin) throw PhiParseError("bad Blaschke zero '" + token + "'");
    const char* ims = end;
    double im = std::strtod(ims, &end);
    if (end == ims || *end != 'i' || *(end + 1) != '\0')
        throw PhiParseError("bad Blaschke zero '" + token + "' (want <re>+<im>i)");
    if (im <= 0)
        throw PhiParseError("Blaschke zero '" + token + "' must have positive imaginary part");
    return {re, im};
}

InnerFunction parse_blaschke(const std::string& body) {
    std::vector<Complex> zeros;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) throw PhiParseError("empty Blaschke zero entry");
        zeros.push_back(parse_zero(item));
    }
    if (zeros.empty()) throw PhiParseError("blaschke spec needs at least one zero");
    return InnerFunction::blaschke(std::move(zeros));
}

InnerFunction parse_factor(const std::string& token) {
    if (token.rfind("exp:", 0) == 0) return parse_exp(token.substr(4));
    if (token.rfind("blaschke:", 0) == 0) return parse_blaschke(token.substr(9));
    throw PhiParseError("unknown inner-function factor '" + token + "'");
}

}  // namespace

InnerFunction parse_phi(const std::string& spec) {
    if (spec.empty()) throw PhiParseError("empty phi spec");
    std::vector<InnerFunction> factors;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, '*')) {
        if (token.empty()) throw PhiParseError("empty factor in phi spec");
        factors.push_back(parse_factor(token));
    }
    if (factors.size() == 1) return factors.front();
    return InnerFunction::product(std::move(factors));
}

std::string to_spec_string(const InnerFunction& phi) {
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<T, Exponential>) {
                os << "exp:kappa=" << f.kappa << ",theta=" << f.theta;
            } else if constexpr (std::is_same_v<T, BlaschkeProduct>) {
                os << "blaschke:";
                for (std::size_t i = 0; i < f.zeros.size(); ++i) {
                    if (i) os << ";";
                    os << f.zeros[i].real() << (f.zeros[i].imag() >= 0 ? "+" : "")
                       << f.zeros[i].imag() << "i";
                }
            } else {
                for (std::size_t i = 0; i < f.factors.size(); ++i) {
                    if (i) os << "*";
                    os << to_spec_string(f.factors[i]);
                }
            }
            return os.str();
        },
        phi.spec);
}

std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> out;
    out.push_back({"identity", InnerFunction::exponential(0.0, 0.0), true});
    out.push_back({"exp_k1", InnerFunction::exponential(1.0, 0.0), true});
    out.push_back({"exp_k2", InnerFunction::exponential(2.0, 0.0), true});
    out.push_back({"exp_k1_t07", InnerFunction::exponential(1.0, 0.7), true});
    out.push_back({"blaschke_i", InnerFunction::blaschke({{0.0, 1.0}}), false});
    out.push_back({"blaschke_1p1i", InnerFunction::blaschke({{1.0, 1.0}}), false});
    out.push_back({"blaschke_pair",
                   InnerFunction::blaschke({{0.0, 1.0}, {1.0, 2.0}}), false});
    out.push_back({"exp_blaschke_mix",
                   InnerFunction::product({InnerFunction::exponential(1.0, 0.0),
                                           InnerFunction::blaschke({{0.0, 1.0}})}),
                   false});
    return out;
}

}  // namespace chiral::inner
