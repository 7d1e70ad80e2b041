#include "nh/errors.hpp"
#include "nh/homsolve.hpp"
#include "nh/materials.hpp"
#include "nh/stability.hpp"
#include "nh/volfun.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace nh;

namespace {

const std::vector<double> kStandardNus = {0.0, 0.25, 0.4, 0.45, 0.499, 0.4999};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Csv {
    std::ostringstream os;
    template <class... T>
    void row(const T&... cells) {
        bool first = true;
        ((os << (first ? "" : ",") << cell(cells), first = false), ...);
        os << '\n';
    }
    static std::string cell(double x) { return num(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(bool x) { return x ? "1" : "0"; }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
};

struct Material {
    double mu = 1.0;
    double nu = 0.25;
    double E = 0.0;
    std::string model = "mixed";
    std::string volfun = "1";
    std::string nu_set;

    void add(CLI::App* app, bool with_volfun = true) {
        app->add_option("--mu", mu, "shear modulus")->capture_default_str();
        app->add_option("--nu", nu, "Poisson ratio")->capture_default_str();
        app->add_option("--E", E, "Young's modulus; replaces --mu when given");
        app->add_option("--model", model, "inc, mixed or voliso")->capture_default_str();
        if (with_volfun) app->add_option("--volfun", volfun, "1..8, hn:<q> or ogden:<beta>")->capture_default_str();
    }

    std::vector<double> nus() const {
        if (nu_set.empty()) return {nu};
        if (nu_set == "paper") return kStandardNus;
        throw ParameterError("unknown --nu-set '" + nu_set + "' (expected paper)");
    }

    ModelSpec spec(double nu_value) const {
        const ModelKind kind = parse_model_kind(model);
        if (!(mu > 0.0) && E == 0.0) throw ParameterError("mu must be positive");
        if (kind == ModelKind::Incompressible) return ModelSpec::incompressible(E > 0.0 ? E / 3.0 : mu);
        const MaterialParams p = E > 0.0 ? MaterialParams::from_E_nu(E, nu_value) : MaterialParams::from_mu_nu(mu, nu_value);
        return ModelSpec::make(kind, VolFunId::parse(volfun), p);
    }
};

std::vector<double> grid(double lo, double hi, int n, bool log) {
    if (n < 1) throw ParameterError("--points must be at least 1");
    if (!(lo > 0.0) || !(hi >= lo)) throw ParameterError("range needs 0 < min <= max");
    std::vector<double> v;
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : double(i) / (n - 1);
        v.push_back(i == n - 1 ? hi : log ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo));
    }
    return v;
}

// Runs tasks on up to `jobs` threads; results keep the task order.
template <class R>
std::vector<R> run_ordered(const std::vector<std::function<R()>>& tasks, int jobs) {
    std::vector<R> out(tasks.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
        return out;
    }
    for (std::size_t start = 0; start < tasks.size(); start += jobs) {
        std::vector<std::future<R>> fs;
        for (std::size_t i = start; i < std::min(tasks.size(), start + jobs); ++i)
            fs.push_back(std::async(std::launch::async, tasks[i]));
        for (std::size_t i = 0; i < fs.size(); ++i) out[start + i] = fs[i].get();
    }
    return out;
}

// Uniform double in [-1, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0; }

std::vector<int> catalog_ids(const std::string& text) {
    if (text == "all") return {1, 2, 3, 4, 5, 6, 7, 8};
    return {VolFunId::parse(text).number()};
}

std::vector<ModelKind> compressible_kinds(const std::string& text) {
    if (text == "both") return {ModelKind::Mixed, ModelKind::VolIso};
    const ModelKind k = parse_model_kind(text);
    if (k == ModelKind::Incompressible) throw ParameterError("this subcommand needs mixed, voliso or both");
    return {k};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressible neo-Hookean models: volumetric audits, homogeneous load cases, stability scans"};
    app.require_subcommand(1);
    // --out and --jobs may also follow the subcommand
    app.fallthrough();
    std::string out_path;
    int jobs = 1;
    app.add_option("--out", out_path, "write CSV here instead of stdout");
    app.add_option("--jobs", jobs, "worker threads for sweep, stability and tangent-check")->capture_default_str();

    Csv csv;
    int status = 0;
    std::function<void()> action;

    // audit-volfun
    auto* audit_cmd = app.add_subcommand("audit-volfun", "check the five volumetric-function properties");
    std::string audit_ids = "all";
    audit_cmd->add_option("--volfun", audit_ids, "all, 1..8, hn:<q> or ogden:<beta>")->capture_default_str();
    audit_cmd->callback([&] {
        action = [&] {
            std::vector<VolFunId> ids;
            if (audit_ids == "all")
                for (int i = 1; i <= 8; ++i) ids.push_back(VolFunId::catalog(i));
            else
                ids.push_back(VolFunId::parse(audit_ids));
            csv.row("id", "constraint1", "constraint2", "constraint3", "constraint4", "constraint5", "witness_J");
            for (const VolFunId& id : ids) {
                const PropertyReport r = audit(id);
                std::string witness;
                for (const auto& w : r.witness)
                    if (w) {
                        witness = num(*w);
                        break;
                    }
                csv.row(id.number() ? std::to_string(id.number()) : id.name(), r.holds[0], r.holds[1], r.holds[2],
                        r.holds[3], r.holds[4], witness);
            }
        };
    });

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "solve a load case over a range of stretches");
    Material sweep_mat;
    std::string sweep_case = "ul";
    double lam_min = 0.5, lam_max = 2.0;
    int points = 16;
    bool log_spacing = false;
    sweep_mat.add(sweep_cmd);
    sweep_cmd->add_option("--nu-set", sweep_mat.nu_set, "paper: 0, 0.25, 0.4, 0.45, 0.499, 0.4999");
    sweep_cmd->add_option("--case", sweep_case, "ul, elp or ulp")->capture_default_str();
    sweep_cmd->add_option("--lam-min", lam_min)->capture_default_str();
    sweep_cmd->add_option("--lam-max", lam_max)->capture_default_str();
    sweep_cmd->add_option("--points", points)->capture_default_str();
    sweep_cmd->add_flag("--log", log_spacing, "log-spaced stretches");
    sweep_cmd->callback([&] {
        action = [&] {
            const LoadCase lc = parse_load_case(sweep_case);
            const std::vector<double> lams = grid(lam_min, lam_max, points, log_spacing);
            const std::vector<double> nus = sweep_mat.nus();
            std::vector<ModelSpec> models;
            for (double nu : nus) models.push_back(sweep_mat.spec(nu));
            std::vector<std::function<std::vector<SolveResult>()>> tasks;
            for (const ModelSpec& m : models) tasks.push_back([&, m] { return sweep(lc, m, lams); });
            const auto results = run_ordered(tasks, jobs);
            const bool with_nu = nus.size() > 1;
            if (with_nu)
                csv.row("nu", "lambda_tilde", "lambda_T", "J", "sigma11", "sigma22", "P11", "P22", "converged");
            else
                csv.row("lambda_tilde", "lambda_T", "J", "sigma11", "sigma22", "P11", "P22", "converged");
            for (std::size_t k = 0; k < nus.size(); ++k)
                for (const SolveResult& r : results[k]) {
                    if (!r.converged) {
                        status = 2;
                        std::cerr << "lambda=" << num(r.lambda_tilde) << ": " << r.diagnostics << '\n';
                    }
                    if (with_nu)
                        csv.row(nus[k], r.lambda_tilde, r.lambda_T, r.J, r.sigma11, r.sigma22, r.P11, r.P22,
                                r.converged);
                    else
                        csv.row(r.lambda_tilde, r.lambda_T, r.J, r.sigma11, r.sigma22, r.P11, r.P22, r.converged);
                }
        };
    });

    // limits
    auto* limits_cmd = app.add_subcommand("limits", "classify the limits lambda -> 0 and lambda -> infinity");
    Material limits_mat;
    std::string limits_case = "ul";
    limits_mat.add(limits_cmd);
    limits_cmd->add_option("--case", limits_case, "ul, elp or ulp")->capture_default_str();
    limits_cmd->callback([&] {
        action = [&] {
            const LoadCase lc = parse_load_case(limits_case);
            const ModelSpec m = limits_mat.spec(limits_mat.nu);
            csv.row("quantity", "direction", "class", "constant");
            for (Direction dir : {Direction::ToZero, Direction::ToInfinity})
                for (const LimitProbe& p : limit_probe(lc, m, dir)) {
                    if (p.cls.kind == LimitKind::Unresolved && p.cls.note.rfind("solver failed", 0) == 0) {
                        status = 2;
                        std::cerr << p.quantity << " " << to_string(dir) << ": " << p.cls.note << '\n';
                    }
                    csv.row(p.quantity, to_string(dir), to_string(p.cls.kind),
                            p.cls.kind == LimitKind::Finite ? num(p.cls.constant) : std::string());
                }
        };
    });

    // dilatation
    auto* dil_cmd = app.add_subcommand("dilatation", "mean stress under F = k I");
    Material dil_mat;
    double k_min = 0.5, k_max = 1.5;
    int k_points = 11;
    dil_mat.add(dil_cmd);
    dil_cmd->add_option("--k-min", k_min)->capture_default_str();
    dil_cmd->add_option("--k-max", k_max)->capture_default_str();
    dil_cmd->add_option("--points", k_points)->capture_default_str();
    dil_cmd->callback([&] {
        action = [&] {
            const ModelSpec m = dil_mat.spec(dil_mat.nu);
            csv.row("k", "sigma_m", "p");
            for (double k : grid(k_min, k_max, k_points, false)) {
                const double s = dilatation_response(m, k);
                csv.row(k, s, -s);
            }
        };
    });

    // stability
    auto* stab_cmd = app.add_subcommand("stability", "search a state grid for negative Hill or CSP contractions");
    std::string stab_model = "both", stab_volfun = "all", stab_kind = "both";
    double stab_mu = 1.0;
    std::string stab_nu_set = "paper";
    std::vector<double> stab_nus;
    stab_cmd->add_option("--model", stab_model, "mixed, voliso or both")->capture_default_str();
    stab_cmd->add_option("--volfun", stab_volfun, "all or 1..8")->capture_default_str();
    stab_cmd->add_option("--contraction", stab_kind, "hill, csp or both")->capture_default_str();
    stab_cmd->add_option("--mu", stab_mu)->capture_default_str();
    stab_cmd->add_option("--nu", stab_nus, "Poisson ratios to scan (overrides --nu-set)");
    stab_cmd->add_option("--nu-set", stab_nu_set)->capture_default_str();
    stab_cmd->callback([&] {
        action = [&] {
            std::vector<double> nus = stab_nus;
            if (nus.empty()) {
                if (stab_nu_set != "paper") throw ParameterError("unknown --nu-set '" + stab_nu_set + "'");
                nus = kStandardNus;
            }
            std::vector<ContractionKind> kinds;
            if (stab_kind == "hill" || stab_kind == "both") kinds.push_back(ContractionKind::Hill);
            if (stab_kind == "csp" || stab_kind == "both") kinds.push_back(ContractionKind::Csp);
            if (kinds.empty()) throw ParameterError("--contraction must be hill, csp or both");
            const SearchGrid g = default_search_grid(nus);

            struct Job {
                ModelKind model;
                int volfun;
                ContractionKind kind;
            };
            std::vector<Job> jobs_list;
            for (ModelKind mk : compressible_kinds(stab_model))
                for (int id : catalog_ids(stab_volfun))
                    for (ContractionKind ck : kinds) jobs_list.push_back({mk, id, ck});
            std::vector<std::function<std::optional<ViolationWitness>()>> tasks;
            for (const Job& j : jobs_list)
                tasks.push_back([&, j] { return find_violation(j.model, VolFunId::catalog(j.volfun), stab_mu, j.kind, g); });
            const auto found = run_ordered(tasks, jobs);

            csv.row("model", "volfun", "nu", "J", "contraction_kind", "value", "verdict", "lambda1", "lambda2",
                    "lambda3");
            for (std::size_t i = 0; i < jobs_list.size(); ++i) {
                const Job& j = jobs_list[i];
                if (found[i]) {
                    const ViolationWitness& w = *found[i];
                    csv.row(to_string(j.model), j.volfun, w.nu, w.J, to_string(j.kind), w.value, "negative",
                            w.stretches(0), w.stretches(1), w.stretches(2));
                } else {
                    csv.row(to_string(j.model), j.volfun, "", "", to_string(j.kind), "", "positive", "", "", "");
                }
            }
        };
    });

    // tangent-check
    auto* tan_cmd = app.add_subcommand("tangent-check", "finite-difference check of rates and tangents");
    std::string tan_model = "both", tan_volfun = "all";
    double tan_mu = 1.0, tan_nu = 0.25;
    int samples = 10;
    tan_cmd->add_option("--model", tan_model, "mixed, voliso or both")->capture_default_str();
    tan_cmd->add_option("--volfun", tan_volfun, "all or 1..8")->capture_default_str();
    tan_cmd->add_option("--mu", tan_mu)->capture_default_str();
    tan_cmd->add_option("--nu", tan_nu)->capture_default_str();
    tan_cmd->add_option("--samples", samples, "motions per model")->capture_default_str();
    tan_cmd->callback([&] {
        action = [&] {
            if (samples < 1) throw ParameterError("--samples must be positive");
            const MaterialParams p = MaterialParams::from_mu_nu(tan_mu, tan_nu);
            std::vector<std::pair<ModelKind, int>> cells;
            for (ModelKind mk : compressible_kinds(tan_model))
                for (int id : catalog_ids(tan_volfun)) cells.emplace_back(mk, id);
            std::vector<std::function<TangentCheck()>> tasks;
            for (const auto& [mk, id] : cells)
                tasks.push_back([&, mk = mk, id = id] {
                    const ModelSpec m = ModelSpec::make(mk, VolFunId::catalog(id), p);
                    std::mt19937_64 rng(20240611);
                    TangentCheck worst;
                    for (int n = 0; n < samples; ++n) {
                        Mat3 F, L;
                        do {
                            for (int i = 0; i < 3; ++i)
                                for (int k = 0; k < 3; ++k) F(i, k) = (i == k) + 0.3 * unit(rng);
                        } while (F.determinant() < 0.2);
                        for (int i = 0; i < 3; ++i)
                            for (int k = 0; k < 3; ++k) L(i, k) = unit(rng);
                        const TangentCheck t = tangent_check(m, F, L);
                        worst.zj_rel = std::max(worst.zj_rel, t.zj_rel);
                        worst.oldroyd_rel = std::max(worst.oldroyd_rel, t.oldroyd_rel);
                        worst.bh_rel = std::max(worst.bh_rel, t.bh_rel);
                    }
                    return worst;
                });
            const auto res = run_ordered(tasks, jobs);
            csv.row("model", "volfun", "zj_max_rel", "oldroyd_max_rel", "bh_max_rel");
            for (std::size_t i = 0; i < cells.size(); ++i)
                csv.row(to_string(cells[i].first), cells[i].second, res[i].zj_rel, res[i].oldroyd_rel, res[i].bh_rel);
        };
    });

    // table-repro
    auto* tab_cmd = app.add_subcommand("table-repro", "reproduce a limit table and compare with the published cells");
    std::string table = "ul";
    double tab_mu = 1.0, tab_nu = 0.25;
    tab_cmd->add_option("--table", table, "ul|3, elp|4 or ulp|6")->capture_default_str();
    tab_cmd->add_option("--mu", tab_mu)->capture_default_str();
    tab_cmd->add_option("--nu", tab_nu, "must be nonzero so the mixed bulk term is active")->capture_default_str();
    tab_cmd->callback([&] {
        action = [&] {
            const std::string t = table == "3" ? "ul" : table == "4" ? "elp" : table == "6" ? "ulp" : table;
            const LoadCase lc = parse_load_case(t);
            if (!(tab_nu > 0.0 && tab_nu < 0.5)) throw ParameterError("--nu must lie in (0, 0.5)");
            csv.row("load", "model", "volfun", "quantity", "direction", "expected", "expected_constant", "observed",
                    "observed_constant", "checked", "match");
            for (const LimitMatch& m : reproduce_limits(lc, tab_mu, tab_nu))
                csv.row(to_string(lc), to_string(m.cell.kind), m.cell.volfun, m.cell.quantity,
                        to_string(m.cell.direction), m.cell.expected,
                        m.expected_constant ? num(*m.expected_constant) : std::string(),
                        to_string(m.observed.kind),
                        m.observed.kind == LimitKind::Finite ? num(m.observed.constant) : std::string(), m.checked,
                        m.match);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (jobs < 1) throw ParameterError("--jobs must be positive");
        action();
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    const std::string text = csv.os.str();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open " << out_path << '\n';
            return 1;
        }
        f << text;
    }
    return status;
}
