// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "nh/homsolve.hpp"
#include "nh/stability.hpp"
#include "nh/volfun.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace nh;
using nhtest::Rng;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) detail << "; ";
            else detail.str("");
            pass = false;
            detail << what;
        }
    }
};

const LoadCase kCases[] = {LoadCase::UL, LoadCase::ELP, LoadCase::ULP};
const ModelKind kKinds[] = {ModelKind::Mixed, ModelKind::VolIso};

std::string fmt(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", x);
    return b;
}

void table1(Outcome& o) {
    const bool expected[8][5] = {{1, 1, 0, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1},
                                 {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 0, 0}, {1, 1, 1, 1, 1}};
    int cells = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int id = 1; id <= 8; ++id) {
        const PropertyReport r = audit(VolFunId::catalog(id));
        for (int c = 0; c < 5; ++c) {
            const bool ok = r.holds[c] == expected[id - 1][c];
            cells += ok;
            o.require(ok, "#" + std::to_string(id) + " constraint " + std::to_string(c + 1));
        }
        if (id == 1) o.require(r.witness[2] && *r.witness[2] >= std::exp(1.0), "#1 witness below e");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
    if (o.pass) o.detail << cells << "/40 cells, " << fmt(secs) << " s";
}

void tables346(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    int checked = 0, matched = 0;
    std::ostringstream bad;
    for (LoadCase c : kCases)
        for (const LimitMatch& m : reproduce_limits(c, 1.0, 0.25)) {
            if (!m.checked) continue;
            ++checked;
            if (m.match) {
                ++matched;
                continue;
            }
            bad << " [" << to_string(c) << " " << to_string(m.cell.kind) << " #" << m.cell.volfun << " "
                << m.cell.quantity << " " << to_string(m.cell.direction) << ": table " << m.cell.expected
                << ", got " << to_string(m.observed.kind) << "]";
        }
    // the finite compression constants at the deepest probe
    const ModelSpec v7 = ModelSpec::voliso(VolFunId::catalog(7), MaterialParams::from_mu_nu(1.0, 0.25));
    const double K = v7.params().K;
    const double ul = solve(LoadCase::UL, v7, 1e-6).sigma11 / (-3 * K);
    const double elp = solve(LoadCase::ELP, v7, 1e-6).sigma11 / (-1.5 * K);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(std::abs(ul - 1) < 0.01, "UL -3K off by " + fmt(ul - 1));
    o.require(std::abs(elp - 1) < 0.01, "ELP -3K/2 off by " + fmt(elp - 1));
    o.require(secs < 120.0, "runtime " + fmt(secs) + " s");
    o.require(matched == checked, std::to_string(matched) + "/" + std::to_string(checked) +
                                      " cells match; mismatches:" + bad.str());
    if (o.pass) o.detail << matched << "/" << checked << " cells, constants within 1%, " << fmt(secs) << " s";
}

void incompressible(Outcome& o) {
    const double mu = 1.3;
    double worst = 0.0;
    for (int k = 0; k <= 40; ++k) {
        const double l = 0.1 * std::pow(100.0, k / 40.0);
        // sigma_i = mu (l_i^2 - lT^2), pressure from sigma_33 = 0, P_ii = sigma_ii / l_i
        const SolveResult ul = solve_incompressible(LoadCase::UL, mu, l);
        const SolveResult elp = solve_incompressible(LoadCase::ELP, mu, l);
        const SolveResult ulp = solve_incompressible(LoadCase::ULP, mu, l);
        const double cmp[][2] = {{ul.lambda_T, 1 / std::sqrt(l)},
                                 {ul.sigma11, mu * (l * l - 1 / l)},
                                 {ul.P11, mu * (l - 1 / (l * l))},
                                 {elp.lambda_T, 1 / (l * l)},
                                 {elp.sigma11, mu * (l * l - std::pow(l, -4))},
                                 {elp.P11, mu * (l - std::pow(l, -5))},
                                 {ulp.lambda_T, 1 / l},
                                 {ulp.sigma11, mu * (l * l - 1 / (l * l))},
                                 {ulp.sigma22, mu * (1 - 1 / (l * l))},
                                 {ulp.P11, mu * (l - 1 / (l * l * l))},
                                 {ulp.P22, mu * (1 - 1 / (l * l))}};
        for (const auto& c : cmp) worst = std::max(worst, std::abs(c[0] - c[1]) / std::max(1.0, std::abs(c[1])));
    }
    o.require(worst <= 1e-12, "closed forms off by " + fmt(worst));
    const SolveResult far = solve_incompressible(LoadCase::ULP, mu, 1e4);
    const double e22 = std::abs(far.sigma22 / mu - 1), p22 = std::abs(far.P22 / mu - 1);
    o.require(e22 < 1e-3 && p22 < 1e-3, "ULP limits off by " + fmt(std::max(e22, p22)));
    if (o.pass) o.detail << "max deviation " << fmt(worst) << "; sigma22, P22 at 1e4 within " << fmt(std::max(e22, p22));
}

void slight_compressibility(Outcome& o) {
    double worst = 0.0;
    std::string where;
    for (LoadCase c : kCases)
        for (ModelKind k : kKinds)
            for (int id = 1; id <= 8; ++id) {
                const ModelSpec m = ModelSpec::make(k, VolFunId::catalog(id), MaterialParams::from_mu_nu(1.0, 0.4999));
                std::vector<double> lams;
                for (int i = 0; i < 16; ++i) lams.push_back(0.5 + 1.5 * i / 15);
                const std::vector<SolveResult> path = sweep(c, m, lams);
                for (std::size_t i = 0; i < lams.size(); ++i) {
                    const SolveResult inc = solve_incompressible(c, 1.0, lams[i]);
                    o.require(path[i].converged, "no convergence");
                    const double pairs[][2] = {{path[i].lambda_T, inc.lambda_T},
                                               {path[i].sigma11, inc.sigma11},
                                               {path[i].P11, inc.P11}};
                    for (const auto& p : pairs) {
                        // both vanish in the undeformed state; measure against the modulus there
                        const double e = std::abs(p[0] - p[1]) / std::max(std::abs(p[1]), 1e-3);
                        if (e > worst) {
                            worst = e;
                            where = to_string(c) + " " + to_string(k) + " #" + std::to_string(id) + " at " +
                                    fmt(lams[i]);
                        }
                    }
                }
            }
    o.require(worst < 0.01, "max relative deviation " + fmt(worst) + " (" + where + ")");
    if (o.pass) o.detail << "max relative deviation " << fmt(worst) << " (" << where << ")";
}

void mixed7_closed_forms(Outcome& o) {
    double worst = 0.0;
    for (double nu : {0.25, 0.45}) {
        const ModelSpec m = ModelSpec::mixed(VolFunId::catalog(7), MaterialParams::from_mu_nu(1.0, nu));
        for (LoadCase c : kCases)
            for (int k = 0; k <= 60; ++k) {
                const double l = 0.1 * std::pow(100.0, k / 60.0);
                const double cf = closed_form_mixed7(c, m, l);
                worst = std::max(worst, std::abs(solve(c, m, l).lambda_T - cf) / cf);
            }
    }
    o.require(worst <= 1e-10, "max relative deviation " + fmt(worst));
    if (o.pass) o.detail << "max relative deviation " << fmt(worst);
}

void hyperelastic(Outcome& o) {
    double worst = 0.0;
    int samples = 0;
    const MaterialParams p = MaterialParams::from_mu_nu(1.3, 0.3);
    for (ModelKind k : kKinds)
        for (int id = 1; id <= 8; ++id) {
            const ModelSpec m = ModelSpec::make(k, VolFunId::catalog(id), p);
            Rng rng(700 + id);
            for (int n = 0; n < 100; ++n, ++samples) {
                const Mat3 F = rng.deformation();
                worst = std::max(worst, nhtest::rel_err(nhtest::fd_cauchy(m, F), cauchy_stress(m, F).cauchy.matrix()));
            }
        }
    const ModelSpec inc = ModelSpec::incompressible(1.3);
    Rng rng(799);
    for (int n = 0; n < 100; ++n, ++samples) {
        Mat3 F = rng.deformation();
        F /= std::cbrt(F.determinant());
        const double pr = rng.uniform(-1, 1);
        worst = std::max(worst, nhtest::rel_err(nhtest::fd_cauchy(inc, F, pr), cauchy_stress(inc, F, pr).cauchy.matrix()));
    }
    o.require(worst <= 1e-6, "max relative deviation " + fmt(worst));
    if (o.pass) o.detail << samples << " samples, max relative deviation " << fmt(worst);
}

void linearization(Outcome& o) {
    Rng rng(801);
    double worst = 0.0, split = 0.0;
    for (double nu : {0.0, 0.25, 0.45})
        for (ModelKind k : kKinds)
            for (int id = 1; id <= 8; ++id) {
                const ModelSpec m = ModelSpec::make(k, VolFunId::catalog(id), MaterialParams::from_mu_nu(1.0, nu));
                for (int n = 0; n < 20; ++n) {
                    SymTensor3 eps = rng.sym();
                    eps = (1e-6 / eps.norm()) * eps;
                    const SymTensor3 s = cauchy_stress(m, Mat3::Identity() + eps.matrix()).cauchy;
                    const SymTensor3 lin = linear_stress(m.params(), eps, k == ModelKind::VolIso);
                    worst = std::max(worst, (s - lin).norm() / lin.norm());
                }
            }
    for (int n = 0; n < 1000; ++n) {
        const MaterialParams p = MaterialParams::from_mu_nu(rng.uniform(0.1, 5), rng.uniform(0, 0.49));
        const SymTensor3 eps = rng.sym(1e-2);
        const SymTensor3 a = linear_stress(p, eps, false), b = linear_stress(p, eps, true);
        split = std::max(split, max_abs_diff(a, b) / std::max(1.0, a.norm()));
    }
    o.require(worst <= 1e-4, "nonlinear vs linear " + fmt(worst));
    o.require(split <= 1e-14, "coupled vs decoupled " + fmt(split));
    if (o.pass) o.detail << "nonlinear vs linear " << fmt(worst) << ", coupled vs decoupled " << fmt(split);
}

void rates_tangents(Outcome& o) {
    double zj = 0.0, old = 0.0, bh = 0.0;
    Rng rng(901);
    for (ModelKind k : kKinds)
        for (int id = 1; id <= 8; ++id) {
            const ModelSpec m = ModelSpec::make(k, VolFunId::catalog(id), MaterialParams::from_mu_nu(1.0, 0.3));
            for (int n = 0; n < 10; ++n) {
                const TangentCheck c = tangent_check(m, rng.deformation(), rng.matrix(0.5));
                zj = std::max(zj, c.zj_rel);
                old = std::max(old, c.oldroyd_rel);
                bh = std::max(bh, c.bh_rel);
            }
        }
    o.require(zj <= 1e-6, "ZJ rate " + fmt(zj));
    o.require(old <= 1e-6, "Oldroyd rate " + fmt(old));
    o.require(bh <= 1e-14, "BH correction " + fmt(bh));
    if (o.pass) o.detail << "ZJ " << fmt(zj) << ", Oldroyd " << fmt(old) << ", BH " << fmt(bh);
}

void stability(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> nus = {0.0, 0.25, 0.4, 0.45, 0.499, 0.4999};
    const SearchGrid g = default_search_grid(nus);
    const std::size_t n = g.stretches.size();
    const std::size_t states = n * (n + 1) * (n + 2) / 6 * g.directions.size() * g.nus.size();
    o.require(states >= 10000, "grid has only " + std::to_string(states) + " states");
    for (ModelKind k : kKinds)
        for (int id : {1, 2, 3, 4, 5, 6, 8})
            if (const auto w = find_violation(k, VolFunId::catalog(id), 1.0, ContractionKind::Hill, g))
                o.require(false, "(a) " + to_string(k) + " #" + std::to_string(id) + " Hill negative at J=" + fmt(w->J));
    for (ModelKind k : kKinds) {
        const auto w = find_violation(k, VolFunId::catalog(7), 1.0, ContractionKind::Hill, g);
        o.require(w && w->J < 0.5, "(b) no #7 Hill violation with J < 1/2 for " + to_string(k));
    }
    const ModelSpec m = ModelSpec::mixed(VolFunId::catalog(1), MaterialParams::from_mu_nu(1.0, 0.0));
    const double csp = csp_contraction(m, kinematics_from_F(2.0 * Mat3::Identity()), SymTensor3::identity()).value;
    o.require(csp < 0.0, "(c) CSP witness gives " + fmt(csp));
    int csp_found = 0;
    for (ModelKind k : kKinds)
        for (int id = 1; id <= 8; ++id) {
            const bool f = find_violation(k, VolFunId::catalog(id), 1.0, ContractionKind::Csp, g).has_value();
            csp_found += f;
            o.require(f, "(d) no CSP violation for " + to_string(k) + " #" + std::to_string(id));
        }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < 60.0, "runtime " + fmt(secs) + " s");
    if (o.pass)
        o.detail << states << " grid states; CSP witness " << fmt(csp) << "; CSP violations " << csp_found
                 << "/16; " << fmt(secs) << " s";
}

void quadratic_forms(Outcome& o) {
    Rng rng(1001);
    double e_worst = 0.0, ray = 0.0, a_worst = 0.0, det_lit = 0.0, det_exact = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const Vec3 l(rng.log_uniform(0.2, 5), rng.log_uniform(0.2, 5), rng.log_uniform(0.2, 5));
        const Vec3 x(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        const QuadFormE q = quad_form_E(l, x);
        e_worst = std::max(e_worst, std::abs(q.compact - q.expanded) / std::max(std::abs(q.compact), 1e-300));
        const double t = rng.uniform(-2, 2);
        // exact zero up to rounding of the ratios
        ray = std::max(ray, std::abs(quad_form_E(l, t * l).compact) / (t * t * l.squaredNorm()));
    }
    for (int n = 0; n < 1000; ++n) {
        const double a = rng.log_uniform(0.2, 5), b = rng.log_uniform(0.2, 5), c = rng.log_uniform(0.2, 5);
        const auto [det, sq] = detA_identity(a, b, c);
        det_lit = std::max(det_lit, std::abs(det - sq) / std::max(sq, 1e-300));
        det_exact = std::max(det_exact, std::abs(det + sq / (a * b * c)) / std::max(sq / (a * b * c), 1e-12));
    }
    for (int n = 0; n < 1000; ++n) {
        const DeformationState s = kinematics_from_F(rng.deformation(0.6));
        const SymTensor3 d = rng.sym();
        const double basis_free = ddot(sym_product2(d, s.c), d);
        const RateForms f = rate_forms(s, d);
        const double norm2 = 2 * (s.F.transpose() * d.matrix()).squaredNorm();
        a_worst = std::max({a_worst, std::abs(basis_free - norm2) / norm2, std::abs(f.P + f.R - norm2) / norm2});
    }
    o.require(e_worst <= 1e-10, "compact vs expanded E " + fmt(e_worst));
    o.require(ray <= 1e-14, "E on the proportional ray " + fmt(ray));
    o.require(a_worst <= 1e-11, "A vs 2|F^T d|^2 " + fmt(a_worst));
    o.require(det_lit <= 1e-12, "det A = (b - ac)^2 fails, max relative gap " + fmt(det_lit) +
                                    "; det A = -(b - ac)^2/(abc) holds to " + fmt(det_exact));
    if (o.pass) o.detail << "E " << fmt(e_worst) << ", ray " << fmt(ray) << ", A " << fmt(a_worst);
}

void example_tensor(Outcome& o) {
    SpectralDecomp sd;
    sd.m = 2;
    sd.mult = {1, 1};
    sd.proj = {SymTensor3::diag(1, 0, 0), SymTensor3::diag(0, 1, 0)};
    Rng rng(1101);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const double s1 = rng.uniform(0.01, 10), s2 = rng.uniform(0.01, 10), h12 = rng.uniform(-2, 2);
        sd.values = {s1, s2};
        Mat3 x = Mat3::Zero();
        x(0, 1) = x(1, 0) = s1 + s2;
        const SuperSymTensor4 X = pair_projection_tensor(sd, x);
        const SymTensor3 H = SymTensor3::from_voigt(rng.uniform(-1, 1), rng.uniform(-1, 1), 0, 0, 0, h12);
        const auto [tensor_path, voigt_path] = voigt_roundtrip(X, H);
        const double expect = 2 * h12 * h12 * (s1 + s2);
        worst = std::max({worst, nhtest::rel_err(tensor_path, expect), nhtest::rel_err(voigt_path, expect)});
    }
    o.require(worst <= 1e-12, "max relative deviation " + fmt(worst));
    if (o.pass) o.detail << "max relative deviation " << fmt(worst);
}

void dilatation(Outcome& o) {
    const MaterialParams p = MaterialParams::from_mu_nu(2.53, 0.34);
    double worst = 0.0;
    for (ModelKind k : kKinds)
        for (int id = 1; id <= 8; ++id) {
            const ModelSpec m = ModelSpec::make(k, VolFunId::catalog(id), p);
            for (int i = 0; i <= 100; ++i) {
                const double kk = 0.5 + i / 100.0;
                const double sm = cauchy_stress(m, kk * Mat3::Identity()).mean_stress;
                worst = std::max(worst, std::abs(dilatation_response(m, kk) - sm) / std::max(1.0, std::abs(sm)));
            }
        }
    const ModelSpec v7 = ModelSpec::voliso(VolFunId::catalog(7), p);
    const double lim = dilatation_response(v7, 1e-3) / -p.K;
    o.require(worst <= 1e-12, "curve vs stress evaluator " + fmt(worst));
    o.require(std::abs(lim - 1) < 1e-6, "vol-iso #7 at k = 1e-3 gives " + fmt(lim) + " K");
    if (o.pass) o.detail << "max deviation " << fmt(worst) << "; vol-iso #7 sigma_m/(-K) at k=1e-3: " << lim;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
        {"volumetric-function audit table", table1},
        {"limit tables for the three load cases", tables346},
        {"incompressible closed forms", incompressible},
        {"slight-compressibility convergence", slight_compressibility},
        {"mixed #7 closed forms vs root finder", mixed7_closed_forms},
        {"stress is the energy gradient", hyperelastic},
        {"small-strain linearization", linearization},
        {"objective rates and tangents", rates_tangents},
        {"stability postulates", stability},
        {"quadratic-form identities", quadratic_forms},
        {"two-eigenvalue example tensor", example_tensor},
        {"dilatational curves", dilatation},
    };
    int failed = 0, i = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", ++i, name, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", i - failed, i);
    return failed == 0 ? 0 : 1;
}
