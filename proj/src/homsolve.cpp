#include "nh/homsolve.hpp"

#include "nh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

namespace nh {

std::string to_string(LoadCase c) {
    switch (c) {
        case LoadCase::UL: return "ul";
        case LoadCase::ELP: return "elp";
        case LoadCase::ULP: return "ulp";
    }
    return "?";
}

LoadCase parse_load_case(const std::string& s) {
    if (s == "ul") return LoadCase::UL;
    if (s == "elp") return LoadCase::ELP;
    if (s == "ulp") return LoadCase::ULP;
    throw ParameterError("unknown load case '" + s + "' (expected ul, elp or ulp)");
}

std::string to_string(Direction d) { return d == Direction::ToZero ? "to_zero" : "to_infinity"; }

std::string to_string(LimitKind k) {
    switch (k) {
        case LimitKind::PosInf: return "+inf";
        case LimitKind::NegInf: return "-inf";
        case LimitKind::Zero: return "0";
        case LimitKind::Finite: return "finite";
        case LimitKind::Unresolved: return "unresolved";
    }
    return "?";
}

Vec3 case_stretches(LoadCase c, double lam, double lamT) {
    switch (c) {
        case LoadCase::UL: return {lam, lamT, lamT};
        case LoadCase::ELP: return {lam, lam, lamT};
        case LoadCase::ULP: return {lam, 1.0, lamT};
    }
    return {1.0, 1.0, 1.0};
}

double case_volume_ratio(LoadCase c, double lam, double lamT) {
    switch (c) {
        case LoadCase::UL: return lam * lamT * lamT;
        case LoadCase::ELP: return lam * lam * lamT;
        case LoadCase::ULP: return lam * lamT;
    }
    return 1.0;
}

namespace {

void fill_first_pk(SolveResult& r, const Vec3& l) {
    r.P11 = r.J / l(0) * r.sigma11;
    r.P22 = r.J / l(1) * r.sigma22;
}

double bulk_hp(const ModelSpec& model, double J) {
    const double b = model.bulk_factor();
    if (b == 0.0) return 0.0;  // avoids 0 * inf when h' overflows
    return b * eval(model.volfun(), J).hp;
}

// Principal Cauchy stress for axis i with the lateral stress not yet imposed.
double principal_stress(const ModelSpec& model, const Vec3& l, double J, int i) {
    const double mu = model.params().mu;
    const double vol = bulk_hp(model, J);
    if (model.kind() == ModelKind::Mixed) return vol + (mu / J) * (l(i) * l(i) - 1.0);
    // the deviatoric factor written as differences of squares
    double dev = 0.0;
    for (int k = 0; k < 3; ++k)
        if (k != i) dev += l(i) * l(i) - l(k) * l(k);
    return vol + mu / 3.0 * std::pow(J, -5.0 / 3.0) * dev;
}

SolveResult assemble(LoadCase c, const ModelSpec& model, double lam, double lamT) {
    SolveResult r;
    r.lambda_tilde = lam;
    r.lambda_T = lamT;
    const Vec3 l = case_stretches(c, lam, lamT);
    r.J = case_volume_ratio(c, lam, lamT);
    r.residual = principal_stress(model, l, r.J, 2);
    r.sigma11 = principal_stress(model, l, r.J, 0);
    switch (c) {
        case LoadCase::UL: r.sigma22 = r.residual; break;
        case LoadCase::ELP: r.sigma22 = r.sigma11; break;
        case LoadCase::ULP: r.sigma22 = principal_stress(model, l, r.J, 1); break;
    }
    if (model.kind() == ModelKind::VolIso && c != LoadCase::ULP) {
        // With sigma_33 = 0 the trace gives sigma_11 directly and avoids the
        // cancellation in lam^2 - lamT^2 near lamT = lam.
        const double factor = c == LoadCase::UL ? 3.0 : 1.5;
        const double shortcut = factor * bulk_hp(model, r.J);
        const double direct = r.sigma11;
        if (std::abs(shortcut - direct) > 1e-8 * std::max(std::abs(shortcut), model.params().mu)) {
            std::ostringstream os;
            os.precision(6);
            os << "trace shortcut differs from direct sigma11 (" << shortcut << " vs " << direct << ")";
            r.diagnostics = os.str();
        }
        r.sigma11 = shortcut;
        if (c == LoadCase::ELP) r.sigma22 = shortcut;
    } else if (model.kind() == ModelKind::VolIso) {
        // sigma_i - sigma_33 = mu J^{-5/3} (lambda_i^2 - lamT^2) at the root
        const double m = model.params().mu * std::pow(r.J, -5.0 / 3.0);
        r.sigma11 = m * (lam * lam - lamT * lamT);
        r.sigma22 = m * (1.0 - lamT * lamT);
    }
    fill_first_pk(r, l);
    return r;
}

}  // namespace

SolveResult solve_incompressible(LoadCase c, double mu, double lam) {
    if (!(lam > 0.0)) throw ParameterError("stretch must be positive");
    SolveResult r;
    r.lambda_tilde = lam;
    r.J = 1.0;
    switch (c) {
        case LoadCase::UL:
            r.lambda_T = 1.0 / std::sqrt(lam);
            r.sigma11 = mu * (lam * lam - 1.0 / lam);
            r.P11 = mu * (lam - 1.0 / (lam * lam));
            break;
        case LoadCase::ELP:
            r.lambda_T = 1.0 / (lam * lam);
            r.sigma11 = r.sigma22 = mu * (lam * lam - std::pow(lam, -4.0));
            r.P11 = r.P22 = mu * (lam - std::pow(lam, -5.0));
            break;
        case LoadCase::ULP:
            r.lambda_T = 1.0 / lam;
            r.sigma11 = mu * (lam * lam - 1.0 / (lam * lam));
            r.sigma22 = mu * (1.0 - 1.0 / (lam * lam));
            r.P11 = mu * (lam - std::pow(lam, -3.0));
            r.P22 = r.sigma22;
            break;
    }
    return r;
}

double residual(LoadCase c, const ModelSpec& model, double lam, double lamT) {
    if (!(lam > 0.0 && lamT > 0.0)) throw ParameterError("stretches must be positive");
    if (!model.compressible()) throw Unsupported("residual is defined for compressible models");
    const Vec3 l = case_stretches(c, lam, lamT);
    return principal_stress(model, l, case_volume_ratio(c, lam, lamT), 2);
}

double closed_form_mixed7(LoadCase c, const ModelSpec& model, double lam) {
    if (model.kind() != ModelKind::Mixed || model.volfun().number() != 7)
        throw Unsupported("closed form exists only for the mixed model with h = (J-1)^2/2");
    const double mu = model.params().mu;
    const double la = model.params().lambda;
    switch (c) {
        case LoadCase::UL: {
            // quadratic in y = lamT^2: la lam y^2 + (mu/lam - la) y - mu/lam = 0
            const double a = la * lam, b = mu / lam - la, cc = -mu / lam;
            if (a == 0.0) return 1.0;
            const double y = (-b + std::sqrt(b * b - 4.0 * a * cc)) / (2.0 * a);
            return std::sqrt(y);
        }
        case LoadCase::ELP: {
            const double l2 = lam * lam;
            const double a = la * l2 * l2 + mu;
            return (la * l2 + std::sqrt(la * la * l2 * l2 + 4.0 * mu * a)) / (2.0 * a);
        }
        case LoadCase::ULP: {
            const double a = la * lam * lam + mu;
            return (la * lam + std::sqrt(la * la * lam * lam + 4.0 * mu * a)) / (2.0 * a);
        }
    }
    return 1.0;
}

SolveResult solve(LoadCase c, const ModelSpec& model, double lam, const SolverConfig& cfg) {
    if (!(lam > 0.0)) throw ParameterError("stretch must be positive");
    if (!model.compressible()) return solve_incompressible(c, model.params().mu, lam);

    auto f = [&](double u) { return residual(c, model, lam, std::exp(u)); };

    const double decade = std::log(10.0);
    std::vector<std::pair<double, double>> brackets;
    std::vector<double> us, fs;
    double u_lo = std::log(cfg.lamT_min), u_hi = std::log(cfg.lamT_max);
    // the scan window grows by six decades per side, three times at most
    for (int attempt = 0; attempt < 4 && brackets.empty(); ++attempt) {
        if (attempt > 0) {
            u_lo -= 6.0 * decade;
            u_hi += 6.0 * decade;
        }
        const int n = std::max(2, static_cast<int>(std::ceil((u_hi - u_lo) / decade * cfg.scan_per_decade)) + 1);
        us.assign(n, 0.0);
        fs.assign(n, 0.0);
        for (int k = 0; k < n; ++k) {
            us[k] = u_lo + (u_hi - u_lo) * k / (n - 1);
            fs[k] = f(us[k]);
        }
        for (int k = 0; k + 1 < n; ++k) {
            if (std::isnan(fs[k]) || std::isnan(fs[k + 1])) continue;
            if (fs[k] == 0.0) brackets.emplace_back(us[k], us[k]);
            else if ((fs[k] < 0.0) != (fs[k + 1] < 0.0) && fs[k + 1] != 0.0) brackets.emplace_back(us[k], us[k + 1]);
        }
        if (fs[n - 1] == 0.0) brackets.emplace_back(us[n - 1], us[n - 1]);
    }
    if (brackets.empty()) {
        std::ostringstream os;
        os << "no sign change of the lateral stress for lambda_T in [" << std::exp(u_lo) << ", " << std::exp(u_hi)
           << "] at lambda=" << lam << " (f_lo=" << fs.front() << ", f_hi=" << fs.back() << ")";
        throw ConvergenceError(os.str());
    }

    const double us_seed = std::log(cfg.seed);
    const auto best = std::min_element(brackets.begin(), brackets.end(), [&](const auto& p, const auto& q) {
        return std::abs(0.5 * (p.first + p.second) - us_seed) < std::abs(0.5 * (q.first + q.second) - us_seed);
    });
    double a = best->first, b = best->second;

    const MaterialParams& mp = model.params();
    const double restol = 1e-12 * (mp.mu + mp.lambda + mp.K);
    double x = 0.5 * (a + b);
    bool converged = a == b;
    if (!converged) {
        double fa = f(a), fb = f(b);
        // stiff residuals (nu near 1/2) need the bracket down to a few ulps
        const double tight = 1e-15 * std::max(1.0, std::abs(x));
        for (int it = 0; it < 300; ++it) {
            const double fx = f(x);
            if (fx == 0.0) {
                converged = true;
                break;
            }
            if ((fx < 0.0) == (fa < 0.0)) {
                a = x;
                fa = fx;
            } else {
                b = x;
                fb = fx;
            }
            const double lo = std::min(a, b), hi = std::max(a, b);
            const double mid = 0.5 * (a + b);
            if (hi - lo <= tight || mid <= lo || mid >= hi) {
                converged = true;
                break;
            }
            const double h = 1e-7 * std::max(1.0, std::abs(x));
            const double df = (f(x + h) - f(x - h)) / (2.0 * h);
            double xn = x - fx / df;
            if (!std::isfinite(xn) || xn <= lo || xn >= hi) xn = mid;
            if (std::abs(fx) <= restol && std::abs(xn - x) <= tight) {
                converged = true;
                break;
            }
            x = xn;
        }
        // report whichever of the iterate and the bracket ends is closest to a root
        const double fx = f(x);
        if (std::abs(fa) < std::abs(fx) && std::abs(fa) <= std::abs(fb)) x = a;
        else if (std::abs(fb) < std::abs(fx)) x = b;
    }

    SolveResult r = assemble(c, model, lam, std::exp(x));
    r.converged = converged;
    r.multi_root = brackets.size() > 1;
    if (r.multi_root) {
        std::ostringstream os;
        os << (r.diagnostics.empty() ? "" : "; ") << brackets.size() << " sign changes; took the one nearest the seed "
           << cfg.seed;
        r.diagnostics += os.str();
    }
    return r;
}

std::vector<SolveResult> sweep(LoadCase c, const ModelSpec& model, const std::vector<double>& lams,
                               const SolverConfig& cfg) {
    std::vector<SolveResult> out;
    out.reserve(lams.size());
    SolverConfig local = cfg;
    for (double lam : lams) {
        try {
            out.push_back(solve(c, model, lam, local));
            if (out.back().converged) local.seed = out.back().lambda_T;
        } catch (const ConvergenceError& e) {
            SolveResult r;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            r.lambda_tilde = lam;
            r.lambda_T = r.J = r.sigma11 = r.sigma22 = r.P11 = r.P22 = r.residual = nan;
            r.converged = false;
            r.diagnostics = e.what();
            out.push_back(r);
        }
    }
    return out;
}

std::vector<double> monotonicity_breaks(const std::vector<SolveResult>& path, const std::string& q, double rel_tol) {
    double scale = 0.0;
    for (const SolveResult& r : path) scale = std::max(scale, std::abs(quantity_of(r, q)));
    std::vector<double> out;
    int last_sign = 0;
    for (std::size_t k = 1; k < path.size(); ++k) {
        const double inc = quantity_of(path[k], q) - quantity_of(path[k - 1], q);
        if (std::abs(inc) <= rel_tol * scale) continue;
        const int sign = inc > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) out.push_back(path[k - 1].lambda_tilde);
        last_sign = sign;
    }
    return out;
}

LimitClass classify_limit(const std::array<double, 3>& v) {
    LimitClass lc;
    lc.probes = v;
    for (double x : v)
        if (!std::isfinite(x)) {
            lc.note = "non-finite probe value";
            return lc;
        }
    const double a0 = std::abs(v[0]), a1 = std::abs(v[1]), a2 = std::abs(v[2]);
    if (std::abs(v[2] - v[1]) <= kLimitAgree * std::max(a1, a2)) {
        lc.kind = LimitKind::Finite;
        lc.constant = v[2];
        return lc;
    }
    const bool same_sign = (v[0] > 0 && v[1] > 0 && v[2] > 0) || (v[0] < 0 && v[1] < 0 && v[2] < 0);
    if (same_sign && a1 >= kLimitRatio * a0 && a2 >= kLimitRatio * a1) {
        lc.kind = v[2] > 0 ? LimitKind::PosInf : LimitKind::NegInf;
        return lc;
    }
    if (a1 * kLimitRatio <= a0 && a2 * kLimitRatio <= a1) {
        lc.kind = LimitKind::Zero;
        return lc;
    }
    lc.note = "no consistent trend over the probe decades";
    return lc;
}

std::vector<std::string> case_quantities(LoadCase c) {
    if (c == LoadCase::ULP) return {"lambda_T", "sigma11", "sigma22", "P11", "P22"};
    return {"lambda_T", "sigma11", "P11"};
}

double quantity_of(const SolveResult& r, const std::string& q) {
    if (q == "lambda_T") return r.lambda_T;
    if (q == "sigma11") return r.sigma11;
    if (q == "sigma22") return r.sigma22;
    if (q == "P11") return r.P11;
    if (q == "P22") return r.P22;
    throw ParameterError("unknown quantity " + q);
}

std::vector<LimitProbe> limit_probe(LoadCase c, const ModelSpec& model, Direction dir) {
    if (!model.compressible()) throw Unsupported("limit probes need a compressible model");
    const double sgn = dir == Direction::ToZero ? -1.0 : 1.0;
    const int steps_per_decade = 4;
    std::vector<double> lams;
    for (int k = 0; k <= 6 * steps_per_decade; ++k) lams.push_back(std::pow(10.0, sgn * k / double(steps_per_decade)));
    const std::vector<SolveResult> path = sweep(c, model, lams);

    std::array<const SolveResult*, 3> at{};
    for (int d = 0; d < 3; ++d) at[d] = &path[(4 + d) * steps_per_decade];

    std::string failure;
    for (const SolveResult& r : path)
        if (!r.converged) {
            std::ostringstream os;
            os << "solver failed at lambda=" << r.lambda_tilde << ": " << r.diagnostics;
            failure = os.str();
            break;
        }

    std::vector<LimitProbe> out;
    for (const std::string& q : case_quantities(c)) {
        LimitProbe p{q, dir, {}};
        if (!failure.empty()) {
            p.cls.note = failure;
        } else {
            p.cls = classify_limit({quantity_of(*at[0], q), quantity_of(*at[1], q), quantity_of(*at[2], q)});
        }
        out.push_back(p);
    }
    return out;
}

double dilatation_response(const ModelSpec& model, double k) {
    if (!(k > 0.0)) throw ParameterError("k must be positive");
    const double J = k * k * k;
    switch (model.kind()) {
        case ModelKind::Mixed:
            return model.params().mu / J * (k * k - 1.0) + bulk_hp(model, J);
        case ModelKind::VolIso:
            return bulk_hp(model, J);
        default:
            throw Unsupported("dilatation needs a compressible model");
    }
}

// --- published limit classifications ---

namespace {

std::optional<double> c_one(const MaterialParams&) { return 1.0; }
std::optional<double> c_inv_sqrt2(const MaterialParams&) { return 1.0 / std::sqrt(2.0); }
std::optional<double> c_mu(const MaterialParams& p) { return p.mu; }
std::optional<double> c_minus_lambda(const MaterialParams& p) { return -p.lambda; }
std::optional<double> c_minus_3K(const MaterialParams& p) { return -3.0 * p.K; }
std::optional<double> c_minus_3K_half(const MaterialParams& p) { return -1.5 * p.K; }

struct Cell {
    const char* text;
    std::optional<double> (*constant)(const MaterialParams&);
};

constexpr Cell P{"+inf", nullptr};
constexpr Cell N{"-inf", nullptr};
constexpr Cell Z{"0", nullptr};
constexpr Cell X{"skip", nullptr};
constexpr Cell Inf{"inf", nullptr};
constexpr Cell One{"finite", c_one};
constexpr Cell R2{"finite", c_inv_sqrt2};
constexpr Cell Mu{"finite", c_mu};
constexpr Cell ML{"finite", c_minus_lambda};
constexpr Cell M3K{"finite", c_minus_3K};
constexpr Cell M3K2{"finite", c_minus_3K_half};

struct Row {
    int volfun;
    const char* quantity;
    Cell mixed0, mixedInf, vol0, volInf;
};

void add_rows(std::vector<ExpectedLimit>& out, LoadCase c, std::initializer_list<Row> rows) {
    for (const Row& r : rows) {
        const std::pair<ModelKind, std::pair<Cell, Cell>> parts[] = {
            {ModelKind::Mixed, {r.mixed0, r.mixedInf}}, {ModelKind::VolIso, {r.vol0, r.volInf}}};
        for (const auto& [kind, cells] : parts) {
            out.push_back({c, kind, r.volfun, r.quantity, Direction::ToZero, cells.first.text, cells.first.constant});
            out.push_back(
                {c, kind, r.volfun, r.quantity, Direction::ToInfinity, cells.second.text, cells.second.constant});
        }
    }
}

}  // namespace

std::vector<ExpectedLimit> expected_limits(LoadCase c) {
    std::vector<ExpectedLimit> out;
    switch (c) {
        case LoadCase::UL:
            add_rows(out, c,
                     {{1, "lambda_T", P, Z, Z, P}, {1, "sigma11", N, P, N, Z},   {1, "P11", N, P, N, Z},
                      {2, "lambda_T", P, Z, P, P}, {2, "sigma11", N, P, N, X},   {2, "P11", N, P, N, P},
                      {3, "lambda_T", P, Z, P, Z}, {3, "sigma11", N, P, N, P},   {3, "P11", N, P, N, P},
                      {4, "lambda_T", P, Z, P, Z}, {4, "sigma11", N, P, N, P},   {4, "P11", N, P, N, P},
                      {5, "lambda_T", X, Z, Z, Z}, {5, "sigma11", N, P, N, P},   {5, "P11", N, P, N, P},
                      {6, "lambda_T", X, Z, Z, P}, {6, "sigma11", N, P, N, P},   {6, "P11", N, P, N, P},
                      {7, "lambda_T", One, Z, Z, Z}, {7, "sigma11", N, P, M3K, P}, {7, "P11", N, P, Z, P},
                      {8, "lambda_T", P, Z, P, Z}, {8, "sigma11", N, P, N, P},   {8, "P11", N, P, N, P}});
            break;
        case LoadCase::ELP:
            add_rows(out, c,
                     {{1, "lambda_T", P, Z, Z, P}, {1, "sigma11", N, P, N, Z},    {1, "P11", N, P, N, Z},
                      {4, "lambda_T", P, Z, P, Z}, {4, "sigma11", N, P, N, P},    {4, "P11", N, P, N, P},
                      {7, "lambda_T", One, Z, Z, Z}, {7, "sigma11", N, P, M3K2, P}, {7, "P11", N, P, Z, P},
                      {8, "lambda_T", P, Z, P, Z}, {8, "sigma11", N, P, N, P},    {8, "P11", N, P, N, P}});
            break;
        case LoadCase::ULP:
            add_rows(out, c,
                     {{1, "lambda_T", P, Z, R2, P}, {1, "sigma11", N, P, N, Z}, {1, "sigma22", N, X, N, Z},
                      {1, "P11", N, P, N, Z},       {1, "P22", N, Mu, X, N},
                      {4, "lambda_T", P, Z, P, Z},  {4, "sigma11", N, P, N, P}, {4, "sigma22", N, X, N, P},
                      {4, "P11", N, P, N, P},       {4, "P22", N, Mu, N, P},
                      {7, "lambda_T", One, Z, R2, Z}, {7, "sigma11", N, P, N, P}, {7, "sigma22", ML, X, P, P},
                      {7, "P11", N, P, N, P},       {7, "P22", Z, Mu, Inf, P},
                      {8, "lambda_T", P, Z, P, Z},  {8, "sigma11", N, P, N, P}, {8, "sigma22", N, X, N, P},
                      {8, "P11", N, P, N, P},       {8, "P22", N, Mu, N, P}});
            break;
    }
    return out;
}

namespace {

bool matches(const std::string& expected, std::optional<double> constant, const LimitClass& obs) {
    if (expected == "+inf") return obs.kind == LimitKind::PosInf;
    if (expected == "-inf") return obs.kind == LimitKind::NegInf;
    if (expected == "inf") return obs.kind == LimitKind::PosInf || obs.kind == LimitKind::NegInf;
    if (expected == "0") return obs.kind == LimitKind::Zero;
    if (expected == "finite") {
        if (obs.kind != LimitKind::Finite) return false;
        if (!constant) return true;
        return std::abs(obs.constant - *constant) <= kLimitAgree * std::abs(*constant);
    }
    return false;
}

}  // namespace

std::vector<LimitMatch> reproduce_limits(LoadCase c, double mu, double nu) {
    const MaterialParams params = MaterialParams::from_mu_nu(mu, nu);
    std::map<std::tuple<int, int, int>, std::vector<LimitProbe>> cache;
    std::vector<LimitMatch> out;
    for (const ExpectedLimit& cell : expected_limits(c)) {
        const auto key = std::make_tuple(static_cast<int>(cell.kind), cell.volfun, static_cast<int>(cell.direction));
        auto it = cache.find(key);
        if (it == cache.end()) {
            const ModelSpec model = ModelSpec::make(cell.kind, VolFunId::catalog(cell.volfun), params);
            it = cache.emplace(key, limit_probe(c, model, cell.direction)).first;
        }
        LimitMatch m;
        m.cell = cell;
        for (const LimitProbe& p : it->second)
            if (p.quantity == cell.quantity) m.observed = p.cls;
        if (cell.constant) m.expected_constant = cell.constant(params);
        m.checked = cell.expected != "skip";
        m.match = m.checked && matches(cell.expected, m.expected_constant, m.observed);
        out.push_back(m);
    }
    return out;
}

}  // namespace nh
