#include "chiral/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "chiral/fock.hpp"
#include "chiral/inner.hpp"
#include "chiral/scatter.hpp"
#include "chiral/series.hpp"

namespace chiral::cli {

namespace {

constexpr int kSchemaVersion = 1;

nlohmann::json doc_for(const std::string& command) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

int finish(CommandResult& res, const std::vector<CheckReport>& checks) {
    res.output["checks"] = to_json(checks);
    bool ok = all_pass(checks);
    res.output["pass"] = ok;
    res.exit_code = ok ? 0 : 1;
    return res.exit_code;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// total kappa of a purely exponential function
double kappa_total(const inner::InnerFunction& phi) {
    return std::visit(
        [](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, inner::Exponential>) {
                return f.kappa;
            } else if constexpr (std::is_same_v<T, inner::BlaschkeProduct>) {
                return 0.0;
            } else {
                double k = 0.0;
                for (const auto& g : f.factors) k += kappa_total(g);
                return k;
            }
        },
        phi.spec);
}

}  // namespace

CommandResult cmd_character(int order2, bool corrupt) {
    if (order2 < 0 || order2 > 80)
        throw UsageError("character: order must lie in [0, 80] (doubled units)");
    CommandResult res;
    res.output = doc_for("character");
    res.output["params"] = {{"order", order2}};

    std::vector<CheckReport> checks;
    checks.push_back(series::jacobi_identity_check(order2, corrupt));

    series::BivariateSeries chr = series::fermionic_character(order2);
    bool z0_ok = series::z0_slice(chr) == series::partition_gf(order2);
    checks.push_back(CheckReport::exact(
        "charge_zero_row", z0_ok, z0_ok ? "exact" : "coefficient mismatch",
        "z^0 row of the character equals the partition generating function"));

    nlohmann::json table = nlohmann::json::array();
    for (const auto& [key, c] : chr.coeffs)
        table.push_back({{"t2", key.first}, {"z", key.second}, {"coeff", c.str()}});
    res.output["coefficients"] = table;

    finish(res, checks);
    return res;
}

CommandResult cmd_fock(int e2_max) {
    if (e2_max < 0 || e2_max > 16)
        throw UsageError("fock-check: emax must lie in [0, 16] (doubled units)");
    fock::Cutoff cut{e2_max};
    CommandResult res;
    res.output = doc_for("fock-check");
    auto basis = fock::enumerate_basis(cut);
    res.output["params"] = {{"emax", e2_max}, {"basis_size", basis.size()}};

    std::vector<CheckReport> checks;
    const std::vector<int> half_idx = {-5, -3, -1, 1, 3, 5};
    const std::vector<int> current_idx = {-3, -2, -1, 1, 2, 3};

    // vacuum annihilation and the lowest current mode
    {
        bool ok = true;
        for (int n = 0; n <= 3; ++n)
            ok = ok && fock::current_mode(n).apply(fock::FockBasisState{}).is_zero();
        checks.push_back(CheckReport::exact("vacuum_annihilation", ok,
                                            ok ? "exact" : "nonzero image",
                                            "J_n Omega = 0 for n >= 0"));
        fock::Rational n2 = fock::current_mode(-1).apply(fock::FockBasisState{}).norm2();
        checks.push_back(CheckReport::exact("j_minus1_norm", n2 == 1,
                                            "||J_{-1} Omega||^2 = " + n2.str(),
                                            "<Omega,[J_1,J_{-1}]Omega> = 1"));
    }

    for (int n2 : half_idx) {
        for (int m2 : half_idx) {
            if (std::abs(n2) + std::abs(m2) > e2_max) continue;
            checks.push_back(fock::car_check(n2, m2, cut));
        }
    }

    // psi_n^* = psibar_{-n} on the block
    {
        bool ok = true;
        std::vector<int> all(basis.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        for (int n2 : half_idx) {
            auto lhs = fock::matrix_of(fock::mode_op(fock::Field::Psi, n2), basis).adjoint();
            auto rhs = fock::matrix_of(fock::mode_op(fock::Field::PsiBar, -n2), basis);
            ok = ok && lhs.equal_on_columns(rhs, all);
        }
        checks.push_back(CheckReport::exact("mode_adjoint", ok,
                                            ok ? "exact" : "matrix mismatch",
                                            "psi_n^* = psibar_{-n}"));
    }

    for (int m : current_idx)
        for (int n : current_idx)
            if (2 * (std::abs(m) + std::abs(n)) <= e2_max)
                checks.push_back(fock::current_algebra_check(m, n, cut));

    for (int n = -2; n <= 2; ++n)
        for (int k2 : half_idx)
            if (2 * std::abs(n) + std::abs(k2) <= e2_max)
                checks.push_back(fock::field_current_commutator_check(n, k2, cut));

    // [L0, J_n] = -n J_n on safe columns
    for (int n : current_idx) {
        if (2 * std::abs(n) > e2_max) continue;
        auto safe = fock::safe_columns(basis, e2_max, 2 * std::abs(n));
        auto l0 = fock::matrix_of(fock::l0_op(), basis);
        auto jn = fock::matrix_of(fock::current_mode(n), basis);
        bool ok = (l0 * jn - jn * l0).equal_on_columns(jn.scaled(fock::RatC(-n)), safe);
        std::ostringstream name;
        name << "l0_shift(J_" << n << ")";
        checks.push_back(CheckReport::exact(name.str(), ok,
                                            ok ? "exact" : "matrix mismatch",
                                            "[L0,J_n] = -n J_n"));
    }

    for (int n = -4; n <= 4; ++n)
        if (2 * std::abs(n) <= e2_max) checks.push_back(fock::energy_bound_check(n, cut));

    checks.push_back(fock::twist_check(cut));

    {
        bool ok = fock::character_trace(cut) == series::fermionic_character(e2_max);
        checks.push_back(CheckReport::exact("character_coincidence", ok,
                                            ok ? "exact" : "coefficient mismatch",
                                            "tr(t^{L0} z^Q) over the basis equals the "
                                            "mode product character"));
    }

    finish(res, checks);
    return res;
}

CommandResult cmd_fock_pair(int e2_max, int m, int n) {
    if (e2_max < 0 || e2_max > 16)
        throw UsageError("fock-check: emax must lie in [0, 16] (doubled units)");
    CommandResult res;
    res.output = doc_for("fock-check");
    res.output["params"] = {{"emax", e2_max}, {"pair", {m, n}}};
    std::vector<CheckReport> checks;
    checks.push_back(fock::current_algebra_check(m, n, fock::Cutoff{e2_max}));
    finish(res, checks);
    return res;
}

CommandResult cmd_inner(const std::string& phi_spec, int grid_points) {
    inner::InnerFunction phi = inner::parse_phi(phi_spec);
    CommandResult res;
    res.output = doc_for("inner-check");
    res.output["params"] = {{"phi", phi_spec}, {"grid_points", grid_points}};

    std::vector<CheckReport> checks =
        inner::lw_grid_checks(phi, -10.0, 10.0, grid_points, 1e-12);
    checks.push_back(inner::causality_check(phi));

    double residual = inner::functional_equation_probe(phi, inner::default_probe_pairs());
    bool expo = inner::is_exponential(phi);
    CheckReport fe;
    fe.name = "functional_equation_dichotomy";
    fe.measured = residual;
    fe.tolerance = expo ? 1e-12 : 1e-3;
    fe.pass = expo ? residual < 1e-12 : residual > 1e-3;
    fe.claim = expo ? "phi(p) phi_check(q) depends on p+q only"
                    : "phi(p) phi_check(q) is not a function of p+q";
    checks.push_back(fe);

    finish(res, checks);
    return res;
}

namespace {

std::string production_csv(const scatter::ProductionReport& rep) {
    std::ostringstream os;
    os << "s,re_phi_tilde,im_phi_tilde,abs_phi_tilde,abs2_phi_tilde\n";
    for (std::size_t i = 0; i < rep.s.size(); ++i) {
        os << fmt17(rep.s[i]) << "," << fmt17(rep.phi_tilde[i].real()) << ","
           << fmt17(rep.phi_tilde[i].imag()) << "," << fmt17(rep.elastic_modulus[i])
           << "," << fmt17(rep.elastic_mod_squared[i]) << "\n";
    }
    return os.str();
}

nlohmann::json production_json(const scatter::ProductionReport& rep) {
    nlohmann::json j;
    j["s"] = rep.s;
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (const auto& v : rep.phi_tilde) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    j["re_phi_tilde"] = re;
    j["im_phi_tilde"] = im;
    j["abs_phi_tilde"] = rep.elastic_modulus;
    j["abs2_phi_tilde"] = rep.elastic_mod_squared;
    j["bound_ok"] = rep.bound_ok;
    j["production"] = rep.production;
    j["quad_tol"] = rep.quad_tol;
    return j;
}

}  // namespace

CommandResult cmd_production(const std::string& phi_spec, const std::vector<double>& s_grid,
                             double quad_tol, int max_panels) {
    inner::InnerFunction phi = inner::parse_phi(phi_spec);
    if (s_grid.empty()) throw UsageError("production: empty s grid");
    scatter::QuadratureSpec quad;
    quad.tol = quad_tol;
    quad.max_panels = max_panels;
    scatter::ProductionReport rep = scatter::production_report(phi, s_grid, quad);

    CommandResult res;
    res.output = doc_for("production");
    res.output["params"] = {{"phi", phi_spec}, {"quad_tol", quad_tol}};
    res.output["report"] = production_json(rep);
    res.csv = production_csv(rep);

    std::vector<CheckReport> checks;
    double max_mod = 0.0;
    for (double m : rep.elastic_modulus) max_mod = std::max(max_mod, m);
    checks.push_back(CheckReport::within("elastic_bound", std::max(0.0, max_mod - 1.0),
                                         1e-9, "|phi_tilde(p)| <= 1"));
    finish(res, checks);
    return res;
}

CommandResult cmd_scatter(const std::string& phi_spec, std::optional<double> p,
                          std::optional<double> q, const std::vector<double>& s_grid,
                          double quad_tol, int max_panels) {
    inner::InnerFunction phi = inner::parse_phi(phi_spec);
    scatter::QuadratureSpec quad;
    quad.tol = quad_tol;
    quad.max_panels = max_panels;
    CommandResult res;
    res.output = doc_for("scatter");
    res.output["params"] = {{"phi", phi_spec}, {"quad_tol", quad_tol}};
    if (p && q) {
        scatter::Complex v = scatter::phi_prime(phi, *p, *q, quad);
        res.output["phi_prime"] = {{"p", *p}, {"q", *q}, {"re", v.real()}, {"im", v.imag()},
                                   {"abs", std::abs(v)}};
    } else if (p || q) {
        throw UsageError("scatter: provide both --p and --q or neither");
    }
    if (!s_grid.empty()) {
        scatter::ProductionReport rep = scatter::production_report(phi, s_grid, quad);
        res.output["phi_tilde"] = production_json(rep);
        res.csv = production_csv(rep);
    }
    if (!p && s_grid.empty())
        throw UsageError("scatter: nothing to evaluate (need --p/--q or --s)");
    res.output["pass"] = true;
    res.exit_code = 0;
    return res;
}

RunAllConfig RunAllConfig::defaults() {
    RunAllConfig cfg;
    for (const auto& entry : inner::catalog())
        cfg.slots.push_back({inner::to_spec_string(entry.phi), entry.elastic});
    return cfg;
}

std::vector<double> parse_s_range(const std::string& text) {
    double a = 0, b = 0;
    int n = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &a, &b, &n, &extra) != 3)
        throw UsageError("bad s range '" + text + "' (want a:b:n)");
    if (a <= 0 || b <= a || n < 2)
        throw UsageError("bad s range '" + text + "' (need 0 < a < b, n >= 2)");
    return scatter::log_grid(a, b, n);
}

RunAllConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    RunAllConfig cfg = RunAllConfig::defaults();
    bool saw_catalog = false;
    std::vector<PhiSlot> slots;
    std::string line, section;
    int lineno = 0;
    int entries = 0;
    auto trim = [](std::string s) {
        auto a = s.find_first_not_of(" \t\r");
        auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw UsageError("config line " + std::to_string(lineno) + ": bad section");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        ++entries;
        if (section == "character" && key == "order") {
            cfg.order2 = std::stoi(value);
        } else if (section == "fock" && key == "emax") {
            cfg.e2_max = std::stoi(value);
        } else if (section == "inner" && key == "grid_points") {
            cfg.inner_grid_points = std::stoi(value);
        } else if (section == "scatter" && key == "tol") {
            cfg.quad_tol = std::stod(value);
        } else if (section == "scatter" && key == "s") {
            auto grid = parse_s_range(value);
            cfg.s_min = grid.front();
            cfg.s_max = grid.back();
            cfg.s_points = static_cast<int>(grid.size());
        } else if (section == "catalog" && (key == "elastic" || key == "producing")) {
            saw_catalog = true;
            slots.push_back({value, key == "elastic"});
        } else {
            throw UsageError("config line " + std::to_string(lineno) + ": unknown entry '" +
                             section + "." + key + "'");
        }
    }
    if (entries == 0) throw UsageError("config file '" + path + "' is empty");
    if (saw_catalog) cfg.slots = std::move(slots);
    return cfg;
}

CommandResult cmd_report_all(const RunAllConfig& cfg) {
    CommandResult res;
    res.output = doc_for("report-all");
    res.output["params"] = {{"order", cfg.order2},
                            {"emax", cfg.e2_max},
                            {"quad_tol", cfg.quad_tol},
                            {"s_range", {cfg.s_min, cfg.s_max, cfg.s_points}}};

    std::vector<CheckReport> checks;
    auto absorb = [&checks](const CommandResult& sub, const std::string& prefix) {
        for (const auto& j : sub.output["checks"]) {
            CheckReport r;
            r.name = prefix + "/" + j["name"].get<std::string>();
            r.pass = j["pass"].get<bool>();
            if (j["measured"].is_number())
                r.measured = j["measured"].get<double>();
            else
                r.measured = j["measured"].get<std::string>();
            r.tolerance = j["tolerance"].get<double>();
            r.claim = j["claim"].get<std::string>();
            checks.push_back(std::move(r));
        }
    };

    absorb(cmd_character(cfg.order2), "character");
    absorb(cmd_fock(cfg.e2_max), "fock");

    scatter::QuadratureSpec quad;
    quad.tol = cfg.quad_tol;
    scatter::Grid1D grid = scatter::Grid1D::gauss_legendre(64, 20.0);
    scatter::BoseWave psi = [](double s) { return scatter::Complex{std::exp(-s), 0.0}; };
    auto s_grid = scatter::log_grid(cfg.s_min, cfg.s_max, cfg.s_points);

    for (const PhiSlot& slot : cfg.slots) {
        inner::InnerFunction phi = inner::parse_phi(slot.spec);
        std::string tag = (slot.elastic ? "elastic:" : "producing:") + slot.spec;

        absorb(cmd_inner(slot.spec, cfg.inner_grid_points), tag);

        double residual = scatter::lw_invariance_residual(phi, psi, grid, quad);
        CheckReport inv;
        inv.name = tag + "/one_particle_invariance";
        inv.measured = residual;
        inv.tolerance = slot.elastic ? 1e-6 : 1e-2;
        inv.pass = slot.elastic ? residual < 1e-6 : residual > 1e-2;
        inv.claim = slot.elastic ? "V_phi preserves the embedded one-particle space"
                                 : "V_phi mixes the embedded one-particle space";
        checks.push_back(inv);

        scatter::ProductionReport rep = scatter::production_report(phi, s_grid, quad);
        double max_mod = 0.0, min_mod = 2.0;
        for (double m : rep.elastic_modulus) {
            max_mod = std::max(max_mod, m);
            min_mod = std::min(min_mod, m);
        }
        checks.push_back(CheckReport::within(tag + "/elastic_bound",
                                             std::max(0.0, max_mod - 1.0), 1e-9,
                                             "|phi_tilde(p)| <= 1"));
        CheckReport prod;
        prod.name = tag + "/production_flag";
        prod.measured = 1.0 - min_mod;
        prod.tolerance = slot.elastic ? 10.0 * cfg.quad_tol : 1e-3;
        prod.pass = slot.elastic ? !rep.production : (rep.production && min_mod < 1.0 - 1e-3);
        prod.claim = slot.elastic ? "|phi_tilde| = 1: no particle production"
                                  : "|phi_tilde| < 1 somewhere: particle production";
        checks.push_back(prod);

        if (slot.elastic) {
            double k = kappa_total(phi);
            double err = 0.0;
            for (std::size_t i = 0; i < rep.s.size(); ++i) {
                scatter::Complex expect = std::polar(1.0, k * rep.s[i]);
                err = std::max(err, std::abs(rep.phi_tilde[i] - expect));
            }
            checks.push_back(CheckReport::within(tag + "/exponential_s_matrix", err, 1e-6,
                                                 "phi_tilde(s) = e^{i kappa s}"));
        }

        // collapse phi'(p,q) = phi_tilde(pq) on a positive grid
        double collapse_err = 0.0;
        auto pq_grid = scatter::log_grid(0.3, 3.0, 10);
        for (double pp : pq_grid) {
            for (double qq : pq_grid) {
                scatter::Complex a = scatter::phi_prime(phi, pp, qq, quad);
                scatter::Complex b = scatter::phi_tilde(phi, pp * qq, quad);
                collapse_err = std::max(collapse_err, std::abs(a - b));
            }
        }
        checks.push_back(CheckReport::within(tag + "/collapse", collapse_err,
                                             10.0 * cfg.quad_tol,
                                             "phi_prime(p,q) = phi_tilde(p q)"));
    }

    // projection behaviour independent of phi
    {
        scatter::Kernel11 emb = scatter::iota_embed(psi);
        scatter::Kernel11 proj = scatter::e0_project(emb, quad);
        double fix_err = 0.0;
        for (double pp : {0.3, 1.0, 2.5})
            for (double qq : {0.4, 1.5, 3.0})
                fix_err = std::max(fix_err, std::abs(proj(pp, qq) - emb(pp, qq)));
        checks.push_back(CheckReport::within("e0/iota_fixed_point", fix_err, 1e-9,
                                             "e0 fixes the embedded one-particle space"));

        scatter::Kernel11 bump = [](double pp, double qq) {
            double dx = pp - 1.2, dy = qq - 0.8;
            return scatter::Complex{std::exp(-(dx * dx + dy * dy)), 0.0};
        };
        scatter::Kernel11 once = scatter::e0_project(bump, quad);
        scatter::Kernel11 twice = scatter::e0_project(once, quad);
        double idem_num = 0.0, norm = 0.0;
        for (double pp : {0.2, 0.7, 1.3, 2.1})
            for (double qq : {0.3, 0.9, 1.6, 2.4}) {
                idem_num = std::max(idem_num, std::abs(twice(pp, qq) - once(pp, qq)));
                norm = std::max(norm, std::abs(bump(pp, qq)));
            }
        checks.push_back(CheckReport::within("e0/idempotent", idem_num / norm, 1e-6,
                                             "e0 e0 = e0"));
    }

    finish(res, checks);
    return res;
}

}  // namespace chiral::cli
