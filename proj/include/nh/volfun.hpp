#pragma once

#include <array>
#include <optional>
#include <string>

namespace nh {

enum class VolFamily { HartmannNeff, Ogden, Quadratic, ExpLog };

/// A volumetric function h(J): one of the catalog entries #1..#8 or a member
/// of the two parametric families.
class VolFunId {
public:
    static VolFunId catalog(int id);
    static VolFunId hartmann_neff(double q);
    static VolFunId ogden(double beta);
    /// Accepts "1".."8", "hn:<q>", "ogden:<beta>".
    static VolFunId parse(const std::string& text);

    VolFamily family() const { return family_; }
    double param() const { return param_; }
    /// Catalog number, 0 for parametric ids outside the catalog.
    int number() const { return number_; }
    std::string name() const;

private:
    VolFunId(VolFamily f, double p, int n) : family_(f), param_(p), number_(n) {}
    VolFamily family_;
    double param_;
    int number_;
};

struct VolFunEval {
    double h = 0.0;
    double hp = 0.0;   // h'
    double hpp = 0.0;  // h''
    double jhp = 0.0;  // J h'
    double chi = 0.0;  // h' + J h''
};

VolFunEval eval(const VolFunId& id, double J);

struct AuditGrid {
    double j_min = 1e-4;
    double j_max = 1e4;
    int points = 2001;
};

struct PropertyReport {
    std::array<bool, 5> holds{};
    std::array<std::optional<double>, 5> witness{};
};

/// Checks the five properties: normalization at J = 1, sign of h', h'' > 0,
/// chi > 0, and unbounded growth of h at both ends.
PropertyReport audit(const VolFunId& id, const AuditGrid& grid = {});

/// (h(J), h(1/J)) for the Hartmann-Neff family.
std::pair<double, double> symmetry_check(double q, double J);

}  // namespace nh
