#include "nh/stability.hpp"

#include "nh/errors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace nh {

namespace {

const SymTensor3 kI = SymTensor3::identity();

Verdict classify(double value, double scale) {
    if (std::abs(value) <= 1e-12 * scale) return Verdict::Zero;
    return value > 0.0 ? Verdict::Positive : Verdict::Negative;
}

// Principal stretches and their rates, repeated by multiplicity.
// Principal stretch rates repeated by multiplicity. Inside a repeated
// eigenspace they are lambda times the eigenvalues of d restricted to it,
// so that 2 sum rate^2 equals A of the coaxial part.
void principal_rates(const DeformationState& s, const SymTensor3& d, Vec3& lams, Vec3& rates) {
    int k = 0;
    for (int i = 0; i < s.stretch.m; ++i) {
        const double li = s.stretch.values[i];
        const int mi = s.stretch.mult[i];
        if (mi == 1) {
            lams(k) = li;
            rates(k++) = li * ddot(s.stretch.proj[i], d);
            continue;
        }
        Eigen::SelfAdjointEigenSolver<Mat3> proj(s.stretch.proj[i].matrix());
        const Eigen::MatrixXd Q = proj.eigenvectors().rightCols(mi);
        const Eigen::MatrixXd block = Q.transpose() * d.matrix() * Q;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
        for (int n = 0; n < mi; ++n) {
            lams(k) = li;
            rates(k++) = li * es.eigenvalues()(n);
        }
    }
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Positive: return "positive";
        case Verdict::Zero: return "zero";
        case Verdict::Negative: return "negative";
    }
    return "?";
}

std::string to_string(ContractionKind k) { return k == ContractionKind::Hill ? "hill" : "csp"; }

double ContractionReport::term(const std::string& name) const {
    for (const auto& [k, v] : breakdown)
        if (k == name) return v;
    throw std::out_of_range("no breakdown term " + name);
}

SymTensor3 zj_rate(const ModelSpec& model, const DeformationState& s, const SymTensor3& d, std::optional<double> pdot) {
    const double mu = model.params().mu;
    const SymTensor3 dc_cd = sym_product2(d, s.c);
    switch (model.kind()) {
        case ModelKind::Incompressible:
            if (!pdot) throw ParameterError("incompressible rate needs the pressure rate");
            return -(*pdot) * kI + mu * dc_cd;
        case ModelKind::Mixed: {
            const VolFunEval e = eval(model.volfun(), s.J);
            return mu * dc_cd + model.params().lambda * e.chi * s.J * d.trace() * kI;
        }
        case ModelKind::VolIso: {
            const VolFunEval e = eval(model.volfun(), s.J);
            const double trd = d.trace();
            const SymTensor3 bracket =
                (-2.0 / 3.0) * trd * s.c.dev() + dc_cd - (2.0 / 3.0) * ddot(s.c, d) * kI;
            return model.params().K * e.chi * s.J * trd * kI + mu * std::pow(s.J, -2.0 / 3.0) * bracket;
        }
    }
    return {};
}

SymTensor3 oldroyd_from_zj(const SymTensor3& zj, const SymTensor3& d, const SymTensor3& tau) {
    return zj - sym_product2(d, tau);
}

SuperSymTensor4 orthogonal_rate_tensor(const DeformationState& s) {
    Mat3 x = Mat3::Zero();
    for (int i = 0; i < s.stretch.m; ++i)
        for (int j = 0; j < s.stretch.m; ++j) {
            const double li = s.stretch.values[i], lj = s.stretch.values[j];
            x(i, j) = li * li + lj * lj;
        }
    return pair_projection_tensor(s.stretch, x);
}

RateForms rate_forms(const DeformationState& s, const SymTensor3& d) {
    RateForms f;
    f.A = 2.0 * (s.F.transpose() * d.matrix()).squaredNorm();

    Vec3 lams, rates;
    principal_rates(s, d, lams, rates);
    double s_cd = 0.0, s_tr = 0.0, s_c = 0.0;
    for (int k = 0; k < 3; ++k) {
        f.P += 2.0 * rates(k) * rates(k);
        s_cd += rates(k) * lams(k);
        s_tr += rates(k) / lams(k);
        s_c += lams(k) * lams(k);
    }
    f.B = s_cd * s_tr;
    f.C = s_c * s_tr * s_tr;
    f.F = s_tr * s_tr;
    f.E = -4.0 / 3.0 * f.B + 2.0 / 9.0 * f.C + f.P;

    const SymTensor3 dt = coaxial_orthogonal_split(s.stretch, d).orthogonal;
    f.R = orthogonal_rate_tensor(s).quad(dt);
    return f;
}

ContractionReport hill_contraction(const ModelSpec& model, const DeformationState& s, const SymTensor3& d_in) {
    const double mu = model.params().mu;
    const bool inc = model.kind() == ModelKind::Incompressible;
    const SymTensor3 d = inc ? d_in.dev() : d_in;

    ContractionReport r;
    const RateForms f = rate_forms(s, d);
    r.breakdown = {{"A", f.A}, {"P", f.P}, {"R", f.R}, {"trd", d.trace()}};
    double scale = 0.0;
    switch (model.kind()) {
        case ModelKind::Incompressible:
            r.value = ddot(zj_rate(model, s, d, 0.0), d);
            r.recomposed = mu * (f.P + f.R);
            scale = mu * (f.P + f.R);
            break;
        case ModelKind::Mixed: {
            const VolFunEval e = eval(model.volfun(), s.J);
            const double lam = model.params().lambda;
            r.value = ddot(zj_rate(model, s, d), d);
            r.recomposed = mu * (f.P + f.R) + lam * e.chi * s.J * f.F;
            scale = mu * (f.P + f.R) + std::abs(lam * e.chi * s.J * f.F);
            break;
        }
        case ModelKind::VolIso: {
            const VolFunEval e = eval(model.volfun(), s.J);
            const double K = model.params().K;
            const double m = mu * std::pow(s.J, -2.0 / 3.0);
            r.breakdown.insert(r.breakdown.end(), {{"B", f.B}, {"C", f.C}, {"E", f.E}, {"D", f.E + f.R}});
            r.value = ddot(zj_rate(model, s, d), d);
            r.recomposed = K * e.chi * s.J * f.F + m * (f.E + f.R);
            scale = std::abs(K * e.chi * s.J * f.F) + m * (f.P + f.R + std::abs(f.B) + f.C);
            break;
        }
    }
    r.verdict = classify(r.value, scale);
    return r;
}

ContractionReport csp_contraction(const ModelSpec& model, const DeformationState& s, const SymTensor3& d_in) {
    const double mu = model.params().mu;
    const bool inc = model.kind() == ModelKind::Incompressible;
    const SymTensor3 d = inc ? d_in.dev() : d_in;

    const ContractionReport hill = hill_contraction(model, s, d);
    const RateForms f = rate_forms(s, d);
    const double trd = d.trace();
    const SymTensor3 sigma = cauchy_stress(model, s.F, inc ? std::optional<double>(0.0) : std::nullopt).cauchy;

    ContractionReport r;
    r.value = hill.value / s.J - ddot(sigma, d) * trd;
    const double G = f.P + f.F - f.B;
    r.breakdown = {{"A", f.A}, {"P", f.P}, {"R", f.R}, {"B", f.B}, {"F", f.F}, {"G", G}};
    double scale = 0.0;
    switch (model.kind()) {
        case ModelKind::Incompressible:
            r.recomposed = mu * (f.P + f.R);
            scale = r.recomposed;
            break;
        case ModelKind::Mixed: {
            const VolFunEval e = eval(model.volfun(), s.J);
            const double lam = model.params().lambda;
            r.recomposed = lam * s.J * e.hpp * f.F + (mu / s.J) * (G + f.R);
            scale = std::abs(lam * s.J * e.hpp * f.F) + (mu / s.J) * (f.P + f.F + std::abs(f.B) + f.R);
            break;
        }
        case ModelKind::VolIso: {
            const VolFunEval e = eval(model.volfun(), s.J);
            const double K = model.params().K;
            const double m = mu * std::pow(s.J, -5.0 / 3.0);
            r.breakdown.insert(r.breakdown.end(), {{"C", f.C}, {"E", f.E}});
            r.recomposed = K * s.J * e.hpp * f.F + m * (f.E + f.R - f.B + f.C / 3.0);
            scale = std::abs(K * s.J * e.hpp * f.F) + m * (f.P + f.R + 2.0 * std::abs(f.B) + f.C);
            break;
        }
    }
    r.verdict = classify(r.value, scale);
    return r;
}

QuadFormE quad_form_E(const Vec3& l, const Vec3& x) {
    const double a = l(0) / l(1), b = l(0) / l(2), c = l(1) / l(2);
    const double t1 = 2.0 * x(0) - x(1) * a - x(2) * b;
    const double t2 = 2.0 * x(1) - x(0) / a - x(2) * c;
    const double t3 = 2.0 * x(2) - x(0) / b - x(1) / c;
    QuadFormE q;
    q.compact = t1 * t1 + t2 * t2 + t3 * t3;
    q.expanded = x(0) * x(0) * (4.0 + 1.0 / (a * a) + 1.0 / (b * b)) +
                 x(1) * x(1) * (4.0 + a * a + 1.0 / (c * c)) +
                 x(2) * x(2) * (4.0 + b * b + c * c) +
                 x(0) * x(1) * (-4.0 * a - 4.0 / a + 2.0 / (b * c)) +
                 x(0) * x(2) * (-4.0 * b - 4.0 / b + 2.0 * c / a) +
                 x(1) * x(2) * (-4.0 * c - 4.0 / c + 2.0 * a * b);
    return q;
}

std::pair<double, double> detA_identity(double a, double b, double c) {
    Mat3 A;
    A << 2.0, -a, -b, -1.0 / a, 2.0, -c, -1.0 / b, -1.0 / c, 2.0;
    return {A.determinant(), (b - a * c) * (b - a * c)};
}

TangentPair tangents(const ModelSpec& model, const DeformationState& s) {
    const Mat3 I = Mat3::Identity();
    const Tensor4 IsI = sym_outer(I, I);
    const Tensor4 IxI = dyad(I, I);
    const double mu = model.params().mu;
    const double J = s.J;
    Tensor4 ctr;
    switch (model.kind()) {
        case ModelKind::Incompressible:
            throw Unsupported("no tangent for the incompressible model");
        case ModelKind::Mixed: {
            const VolFunEval e = eval(model.volfun(), J);
            const double lam = model.params().lambda;
            ctr = (2.0 / J) * (mu - lam * e.jhp) * IsI + lam * e.chi * IxI;
            break;
        }
        case ModelKind::VolIso: {
            const VolFunEval e = eval(model.volfun(), J);
            const double K = model.params().K;
            const double m = mu * std::pow(J, -5.0 / 3.0);
            const double trc = s.c.trace();
            const Mat3 c = s.c.matrix();
            ctr = (K * e.chi + 2.0 / 9.0 * m * trc) * IxI + (2.0 / 3.0 * m * trc - 2.0 * K * e.hp) * IsI -
                  (2.0 / 3.0 * m) * (dyad(c, I) + dyad(I, c));
            break;
        }
    }
    const Mat3 sigma = cauchy_stress(model, s.F).cauchy.matrix();
    TangentPair t;
    t.c_tr = SuperSymTensor4(ctr);
    t.c_bh = SuperSymTensor4(ctr + sym_outer(I, sigma) + sym_outer(sigma, I));
    return t;
}

TangentCheck tangent_check(const ModelSpec& model, const Mat3& F, const Mat3& L, double step) {
    const Mat3 I = Mat3::Identity();
    auto tau = [&](double t) { return cauchy_stress(model, (I + t * L) * F).kirchhoff.matrix(); };
    const Mat3 tau0 = tau(0.0);
    const Mat3 tdot = (tau(step) - tau(-step)) / (2.0 * step);
    const SymTensor3 d = sym(L);
    const Mat3 w = skew(L);
    const DeformationState s = kinematics_from_F(F);

    auto rel = [](const Mat3& a, const Mat3& b) {
        return (a - b).norm() / std::max(b.norm(), 1e-300);
    };
    TangentCheck out;
    const Mat3 zj_fd = tdot - w * tau0 + tau0 * w;
    out.zj_rel = rel(zj_fd, zj_rate(model, s, d).matrix());

    const TangentPair t = tangents(model, s);
    const Mat3 old_fd = tdot - L * tau0 - tau0 * L.transpose();
    out.oldroyd_rel = rel(old_fd, s.J * t.c_tr.contract(d).matrix());

    const Mat3 sigma = cauchy_stress(model, F).cauchy.matrix();
    const SuperSymTensor4 rebuilt(t.c_tr.full() + sym_outer(I, sigma) + sym_outer(sigma, I));
    out.bh_rel = (t.c_bh - rebuilt).full().max_abs() / std::max(t.c_bh.full().max_abs(), 1e-300);
    return out;
}

SearchGrid default_search_grid(const std::vector<double>& nus) {
    SearchGrid g;
    const int n = 13;
    for (int k = 0; k < n; ++k) g.stretches.push_back(std::pow(10.0, -1.0 + 2.0 * k / (n - 1)));
    g.nus = nus;
    const double levels[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (double a : levels)
        for (double b : levels)
            for (double c : levels)
                if (a != 0.0 || b != 0.0 || c != 0.0) g.directions.push_back(SymTensor3::diag(a, b, c));
    // shear-carrying directions exercise the orthogonal part
    g.directions.push_back(SymTensor3::from_voigt(1.0, 0.0, 0.0, 0.5, 0.5, 0.5));
    g.directions.push_back(SymTensor3::from_voigt(0.0, 0.0, 0.0, 1.0, 1.0, 1.0));
    return g;
}

std::optional<ViolationWitness> find_violation(ModelKind kind, const VolFunId& h, double mu, ContractionKind which,
                                               const SearchGrid& grid) {
    const auto& L = grid.stretches;
    for (double nu : grid.nus) {
        const ModelSpec model = ModelSpec::make(kind, h, MaterialParams::from_mu_nu(mu, nu));
        for (std::size_t i = 0; i < L.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                for (std::size_t k = 0; k <= j; ++k) {
                    const DeformationState s = kinematics_from_F(Vec3(L[i], L[j], L[k]).asDiagonal());
                    for (const SymTensor3& d : grid.directions) {
                        const ContractionReport r = which == ContractionKind::Hill ? hill_contraction(model, s, d)
                                                                                   : csp_contraction(model, s, d);
                        if (r.verdict == Verdict::Negative)
                            return ViolationWitness{Vec3(L[i], L[j], L[k]), nu, d, s.J, r.value};
                    }
                }
    }
    return std::nullopt;
}

}  // namespace nh
