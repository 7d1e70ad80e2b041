#pragma once

#include "nh/tensor3.hpp"
#include "nh/volfun.hpp"

#include <optional>
#include <string>

namespace nh {

struct MaterialParams {
    double mu = 1.0;
    double nu = 0.0;
    double lambda = 0.0;
    double K = 2.0 / 3.0;
    double E = 2.0;

    static MaterialParams from_mu_nu(double mu, double nu);
    static MaterialParams from_E_nu(double E, double nu);
    static MaterialParams from_mu_lambda(double mu, double lambda);
    /// mu only; nu = 0.5 and lambda, K infinite.
    static MaterialParams incompressible(double mu);
};

enum class ModelKind { Incompressible, Mixed, VolIso };

std::string to_string(ModelKind k);
ModelKind parse_model_kind(const std::string& s);

/// Validated model: admissibility is checked once, here.
class ModelSpec {
public:
    static ModelSpec incompressible(double mu);
    static ModelSpec mixed(const VolFunId& h, const MaterialParams& p);
    static ModelSpec voliso(const VolFunId& h, const MaterialParams& p);
    static ModelSpec make(ModelKind kind, const VolFunId& h, const MaterialParams& p);

    ModelKind kind() const { return kind_; }
    const MaterialParams& params() const { return params_; }
    /// Throws Unsupported for the incompressible kind.
    const VolFunId& volfun() const;
    bool compressible() const { return kind_ != ModelKind::Incompressible; }
    /// lambda for mixed, K for vol-iso: the factor in front of h(J).
    double bulk_factor() const;

private:
    ModelSpec(ModelKind k, std::optional<VolFunId> h, MaterialParams p) : kind_(k), h_(h), params_(p) {}
    ModelKind kind_;
    std::optional<VolFunId> h_;
    MaterialParams params_;
};

/// Strain energy per reference volume; p is required iff incompressible.
double energy(const ModelSpec& model, const Mat3& F, std::optional<double> p = std::nullopt);

struct StressResult {
    SymTensor3 cauchy;
    SymTensor3 kirchhoff;
    Mat3 first_pk;
    double mean_stress = 0.0;
};

StressResult cauchy_stress(const ModelSpec& model, const Mat3& F, std::optional<double> p = std::nullopt);

/// Linear isotropic stress, coupled (2 mu eps + lambda tr eps I) or
/// decoupled (2 mu dev eps + K tr eps I).
SymTensor3 linear_stress(const MaterialParams& p, const SymTensor3& eps, bool decoupled);

}  // namespace nh
