#include "nh/materials.hpp"

#include "nh/errors.hpp"

#include <cmath>
#include <limits>

namespace nh {

MaterialParams MaterialParams::from_mu_nu(double mu, double nu) {
    if (nu == 0.5) throw ParameterError("nu = 0.5 is the incompressible model");
    if (nu == -1.0) throw ParameterError("nu = -1 is not a valid Poisson ratio");
    MaterialParams p;
    p.mu = mu;
    p.nu = nu;
    p.lambda = 2.0 * mu * nu / (1.0 - 2.0 * nu);
    p.K = p.lambda + 2.0 * mu / 3.0;
    p.E = 2.0 * mu * (1.0 + nu);
    return p;
}

MaterialParams MaterialParams::from_E_nu(double E, double nu) {
    if (nu == -1.0) throw ParameterError("nu = -1 is not a valid Poisson ratio");
    return from_mu_nu(E / (2.0 * (1.0 + nu)), nu);
}

MaterialParams MaterialParams::from_mu_lambda(double mu, double lambda) {
    if (lambda + mu == 0.0) throw ParameterError("lambda + mu must be nonzero");
    return from_mu_nu(mu, lambda / (2.0 * (lambda + mu)));
}

MaterialParams MaterialParams::incompressible(double mu) {
    MaterialParams p;
    p.mu = mu;
    p.nu = 0.5;
    p.lambda = std::numeric_limits<double>::infinity();
    p.K = p.lambda;
    p.E = 3.0 * mu;
    return p;
}

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Incompressible: return "inc";
        case ModelKind::Mixed: return "mixed";
        case ModelKind::VolIso: return "voliso";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& s) {
    if (s == "inc") return ModelKind::Incompressible;
    if (s == "mixed") return ModelKind::Mixed;
    if (s == "voliso") return ModelKind::VolIso;
    throw ParameterError("unknown model '" + s + "' (expected inc, mixed or voliso)");
}

ModelSpec ModelSpec::incompressible(double mu) {
    if (!(mu > 0.0)) throw ParameterError("mu must be positive");
    return {ModelKind::Incompressible, std::nullopt, MaterialParams::incompressible(mu)};
}

ModelSpec ModelSpec::mixed(const VolFunId& h, const MaterialParams& p) {
    if (!(p.mu > 0.0)) throw ParameterError("mu must be positive");
    if (!(p.nu >= 0.0 && p.nu < 0.5)) throw ParameterError("mixed model needs 0 <= nu < 0.5");
    return {ModelKind::Mixed, h, p};
}

ModelSpec ModelSpec::voliso(const VolFunId& h, const MaterialParams& p) {
    if (!(p.mu > 0.0)) throw ParameterError("mu must be positive");
    if (!(p.nu > -1.0 && p.nu < 0.5)) throw ParameterError("vol-iso model needs -1 < nu < 0.5");
    return {ModelKind::VolIso, h, p};
}

ModelSpec ModelSpec::make(ModelKind kind, const VolFunId& h, const MaterialParams& p) {
    switch (kind) {
        case ModelKind::Incompressible: return incompressible(p.mu);
        case ModelKind::Mixed: return mixed(h, p);
        case ModelKind::VolIso: return voliso(h, p);
    }
    throw ParameterError("bad model kind");
}

const VolFunId& ModelSpec::volfun() const {
    if (!h_) throw Unsupported("incompressible model has no volumetric function");
    return *h_;
}

double ModelSpec::bulk_factor() const {
    switch (kind_) {
        case ModelKind::Mixed: return params_.lambda;
        case ModelKind::VolIso: return params_.K;
        default: throw Unsupported("incompressible model has no bulk factor");
    }
}

namespace {

double checked_det(const Mat3& F) {
    const double J = F.determinant();
    if (!(J > 0.0)) throw InvalidDeformation("det F must be positive");
    return J;
}

double need_p(const ModelSpec& m, std::optional<double> p) {
    if (m.kind() != ModelKind::Incompressible) return 0.0;
    if (!p) throw ParameterError("incompressible model needs the pressure p");
    return *p;
}

}  // namespace

double energy(const ModelSpec& model, const Mat3& F, std::optional<double> p) {
    const double J = checked_det(F);
    const double pp = need_p(model, p);
    const double mu = model.params().mu;
    const double lnJ = std::log(J);
    const double f2 = F.squaredNorm();
    switch (model.kind()) {
        case ModelKind::Incompressible:
            return 0.5 * mu * (f2 - 3.0 - 2.0 * lnJ) - pp * lnJ;
        case ModelKind::Mixed:
            return 0.5 * mu * (f2 - 3.0 - 2.0 * lnJ) + model.params().lambda * eval(model.volfun(), J).h;
        case ModelKind::VolIso:
            return 0.5 * mu * (f2 * std::pow(J, -2.0 / 3.0) - 3.0) + model.params().K * eval(model.volfun(), J).h;
    }
    return 0.0;
}

StressResult cauchy_stress(const ModelSpec& model, const Mat3& F, std::optional<double> p) {
    const double J = checked_det(F);
    const double pp = need_p(model, p);
    const double mu = model.params().mu;
    const SymTensor3 I = SymTensor3::identity();
    const SymTensor3 c = SymTensor3::from_matrix(F * F.transpose());

    StressResult r;
    switch (model.kind()) {
        case ModelKind::Incompressible:
            r.cauchy = mu * (c - I) - pp * I;
            break;
        case ModelKind::Mixed:
            r.cauchy = (mu / J) * (c - I) + model.params().lambda * eval(model.volfun(), J).hp * I;
            break;
        case ModelKind::VolIso:
            r.cauchy = (mu / J) * (std::pow(J, -2.0 / 3.0) * c).dev() + model.params().K * eval(model.volfun(), J).hp * I;
            break;
    }
    r.kirchhoff = J * r.cauchy;
    r.first_pk = r.kirchhoff.matrix() * F.inverse().transpose();
    r.mean_stress = r.cauchy.trace() / 3.0;
    return r;
}

SymTensor3 linear_stress(const MaterialParams& p, const SymTensor3& eps, bool decoupled) {
    const SymTensor3 I = SymTensor3::identity();
    if (decoupled) return 2.0 * p.mu * eps.dev() + p.K * eps.trace() * I;
    return 2.0 * p.mu * eps + p.lambda * eps.trace() * I;
}

}  // namespace nh
