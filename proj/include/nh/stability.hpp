#pragma once

#include "nh/kinematics.hpp"
#include "nh/materials.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nh {

/// Zaremba-Jaumann rate of the Kirchhoff stress (of the Cauchy stress for the
/// incompressible kind, which also needs the pressure rate).
SymTensor3 zj_rate(const ModelSpec& model, const DeformationState& s, const SymTensor3& d,
                   std::optional<double> pdot = std::nullopt);

/// tau_dot - l tau - tau l^T, obtained from the ZJ rate as zj - d tau - tau d.
SymTensor3 oldroyd_from_zj(const SymTensor3& zj, const SymTensor3& d, const SymTensor3& tau);

enum class Verdict { Positive, Zero, Negative };
std::string to_string(Verdict v);

struct ContractionReport {
    double value = 0.0;       // basis-free contraction
    double recomposed = 0.0;  // same quantity assembled from the breakdown
    std::vector<std::pair<std::string, double>> breakdown;
    Verdict verdict = Verdict::Zero;

    double term(const std::string& name) const;
};

/// Quadratic forms of the coaxial and orthogonal parts of d in the
/// eigenprojection coordinates of V.
struct RateForms {
    double A = 0.0;  // (dc + cd):d, basis-free
    double P = 0.0;  // 2 sum lambda_dot_k^2 over principal axes
    double R = 0.0;  // d~ : R(V) : d~
    double B = 0.0;  // (c:d) tr d
    double C = 0.0;  // tr c (tr d)^2
    double E = 0.0;  // -4/3 B + 2/9 C + P
    double F = 0.0;  // (tr d)^2
};

RateForms rate_forms(const DeformationState& s, const SymTensor3& d);

/// R(V) = sum_{i != j} (lambda_i^2 + lambda_j^2) V_i (x)sym V_j
SuperSymTensor4 orthogonal_rate_tensor(const DeformationState& s);

/// D^ZJ[tau]:d. For the incompressible kind d is first projected onto its deviator.
ContractionReport hill_contraction(const ModelSpec& model, const DeformationState& s, const SymTensor3& d);
/// D^ZJ[sigma]:d = (1/J) D^ZJ[tau]:d - (sigma:d) tr d
ContractionReport csp_contraction(const ModelSpec& model, const DeformationState& s, const SymTensor3& d);

struct QuadFormE {
    double compact = 0.0;   // sum of three squares
    double expanded = 0.0;  // polynomial expansion
};

/// E(x1, x2, x3) with x_i = lambda_dot_i, a = l1/l2, b = l1/l3, c = l2/l3.
QuadFormE quad_form_E(const Vec3& lams, const Vec3& lamdots);

/// (det of [[2, -a, -b], [-1/a, 2, -c], [-1/b, -1/c, 2]], (b - a c)^2).
/// The determinant equals -(b - a c)^2 / (a b c); both vanish iff b = a c.
std::pair<double, double> detA_identity(double a, double b, double c);

struct TangentPair {
    SuperSymTensor4 c_tr;  // Truesdell tangent: C_tr : d = D^Old[tau] / J
    SuperSymTensor4 c_bh;  // Biezeno-Hencky tangent: C_tr + I (x)sym sigma + sigma (x)sym I
};

TangentPair tangents(const ModelSpec& model, const DeformationState& s);

/// Finite-difference check of the rate forms and tangents along the motion
/// F(t) = (I + t L) F, so that l = L at t = 0.
struct TangentCheck {
    double zj_rel = 0.0;       // ZJ rate vs central difference of tau
    double oldroyd_rel = 0.0;  // J C_tr : d vs Oldroyd rate of tau from the same difference
    double bh_rel = 0.0;       // max |C_bh - C_tr - I (x)sym sigma - sigma (x)sym I| / max |C_bh|
};

TangentCheck tangent_check(const ModelSpec& model, const Mat3& F, const Mat3& L, double step = 1e-5);

enum class ContractionKind { Hill, Csp };
std::string to_string(ContractionKind k);

struct ViolationWitness {
    Vec3 stretches;
    double nu = 0.0;
    SymTensor3 d;
    double J = 1.0;
    double value = 0.0;
};

struct SearchGrid {
    std::vector<double> stretches;  // per principal axis
    std::vector<double> nus;
    std::vector<SymTensor3> directions;
};

/// Log-spaced stretches in [0.1, 10], the listed nu values and a fixed set
/// of spherical, uniaxial and mixed-sign principal rate directions.
SearchGrid default_search_grid(const std::vector<double>& nus);

/// Scans the grid in a fixed order (nu, sorted stretch triples, directions) and
/// returns the first state with a negative contraction.
std::optional<ViolationWitness> find_violation(ModelKind kind, const VolFunId& h, double mu, ContractionKind which,
                                               const SearchGrid& grid);

}  // namespace nh
