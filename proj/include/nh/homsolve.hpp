#pragma once

#include "nh/materials.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace nh {

/// UL: uniaxial loading, lateral faces free. ELP: equibiaxial loading in plane
/// stress. ULP: uniaxial loading in plane strain (lambda_2 = 1).
enum class LoadCase { UL, ELP, ULP };

std::string to_string(LoadCase c);
LoadCase parse_load_case(const std::string& s);

/// Stretches (lambda_1, lambda_2, lambda_3) for a load case.
Vec3 case_stretches(LoadCase c, double lam, double lamT);
double case_volume_ratio(LoadCase c, double lam, double lamT);

struct SolveResult {
    double lambda_tilde = 1.0;
    double lambda_T = 1.0;
    double J = 1.0;
    double sigma11 = 0.0;
    double sigma22 = 0.0;
    double P11 = 0.0;
    double P22 = 0.0;
    double residual = 0.0;
    bool converged = true;
    bool multi_root = false;
    std::string diagnostics;
};

SolveResult solve_incompressible(LoadCase c, double mu, double lam);

/// Transverse Cauchy stress sigma_33 at (lam, lamT); its root defines lambda_T.
double residual(LoadCase c, const ModelSpec& model, double lam, double lamT);

/// lambda_T of the mixed model with h = (J-1)^2/2 from the quadratic it reduces to.
double closed_form_mixed7(LoadCase c, const ModelSpec& model, double lam);

struct SolverConfig {
    double lamT_min = 1e-9;
    double lamT_max = 1e9;
    int scan_per_decade = 40;
    double seed = 1.0;
};

/// Incompressible models are routed to the closed forms.
SolveResult solve(LoadCase c, const ModelSpec& model, double lam, const SolverConfig& cfg = {});

/// Solves at each lam in order, seeding each point with the previous root.
std::vector<SolveResult> sweep(LoadCase c, const ModelSpec& model, const std::vector<double>& lams,
                               const SolverConfig& cfg = {});

/// Stretches at which the increments of quantity q along a sweep change sign.
/// Increments below rel_tol times the largest |q| count as flat and are skipped.
std::vector<double> monotonicity_breaks(const std::vector<SolveResult>& path, const std::string& q,
                                        double rel_tol = 1e-12);

enum class Direction { ToZero, ToInfinity };
std::string to_string(Direction d);

enum class LimitKind { PosInf, NegInf, Zero, Finite, Unresolved };
std::string to_string(LimitKind k);

struct LimitClass {
    LimitKind kind = LimitKind::Unresolved;
    double constant = 0.0;           // meaningful for Finite
    std::array<double, 3> probes{};  // values at the three probe decades
    std::string note;
};

/// Growth factor per decade treated as divergence (or its inverse as decay).
inline constexpr double kLimitRatio = 1.05;
/// Relative agreement of the last two probes treated as a finite limit.
inline constexpr double kLimitAgree = 0.01;

LimitClass classify_limit(const std::array<double, 3>& values);

struct LimitProbe {
    std::string quantity;  // lambda_T, sigma11, sigma22, P11, P22
    Direction direction;
    LimitClass cls;
};

std::vector<std::string> case_quantities(LoadCase c);
double quantity_of(const SolveResult& r, const std::string& q);

/// Continuation from lam = 1 to 1e-6 (or 1e6); classifies each quantity from
/// its values at lam = 1e-4, 1e-5, 1e-6 (or 1e4, 1e5, 1e6).
std::vector<LimitProbe> limit_probe(LoadCase c, const ModelSpec& model, Direction dir);

/// Mean stress at F = k I.
double dilatation_response(const ModelSpec& model, double k);

/// One cell of the published limit tables. `expected` is one of
/// "+inf", "-inf", "inf" (either sign), "0", "finite", or "skip" for entries
/// that are unspecified or depend on nu.
struct ExpectedLimit {
    LoadCase load;
    ModelKind kind;
    int volfun;
    std::string quantity;
    Direction direction;
    std::string expected;
    /// Finite constant as a function of (mu, lambda, K), if given.
    std::optional<double> (*constant)(const MaterialParams&) = nullptr;
};

std::vector<ExpectedLimit> expected_limits(LoadCase c);

struct LimitMatch {
    ExpectedLimit cell;
    LimitClass observed;
    std::optional<double> expected_constant;
    bool checked = false;  // false for skip cells
    bool match = false;
};

/// Probes every cell for one load case with the given mu and nu.
std::vector<LimitMatch> reproduce_limits(LoadCase c, double mu, double nu);

}  // namespace nh
