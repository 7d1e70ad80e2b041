#include "nh/volfun.hpp"

#include "nh/errors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace nh {

namespace {

constexpr double kQZero = 1e-8;

double parse_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParameterError("bad volfun parameter: " + s);
    }
    if (used != s.size()) throw ParameterError("bad volfun parameter: " + s);
    return v;
}

}  // namespace

VolFunId VolFunId::catalog(int id) {
    switch (id) {
        case 1: return {VolFamily::HartmannNeff, 0.0, 1};
        case 2: return {VolFamily::HartmannNeff, 1.0, 2};
        case 3: return {VolFamily::HartmannNeff, 2.0, 3};
        case 4: return {VolFamily::HartmannNeff, 5.0, 4};
        case 5: return {VolFamily::Ogden, -2.0, 5};
        case 6: return {VolFamily::Ogden, -1.0, 6};
        case 7: return {VolFamily::Quadratic, 0.0, 7};
        case 8: return {VolFamily::ExpLog, 0.0, 8};
        default: throw ParameterError("unknown volfun id " + std::to_string(id));
    }
}

VolFunId VolFunId::hartmann_neff(double q) {
    if (!(q >= 0.0)) throw ParameterError("hartmann-neff q must be >= 0");
    return {VolFamily::HartmannNeff, q, 0};
}

VolFunId VolFunId::ogden(double beta) {
    if (beta == 0.0 || !std::isfinite(beta)) throw ParameterError("ogden beta must be nonzero");
    return {VolFamily::Ogden, beta, 0};
}

VolFunId VolFunId::parse(const std::string& text) {
    if (text.rfind("hn:", 0) == 0) return hartmann_neff(parse_number(text.substr(3)));
    if (text.rfind("ogden:", 0) == 0) return ogden(parse_number(text.substr(6)));
    if (text.size() == 1 && text[0] >= '1' && text[0] <= '8') return catalog(text[0] - '0');
    throw ParameterError("unknown volfun '" + text + "'");
}

std::string VolFunId::name() const {
    if (number_ > 0) return std::to_string(number_);
    std::ostringstream os;
    os.precision(17);
    os << (family_ == VolFamily::HartmannNeff ? "hn:" : "ogden:") << param_;
    return os.str();
}

VolFunEval eval(const VolFunId& id, double J) {
    if (!(J > 0.0)) throw DomainError("volumetric function needs J > 0");
    const double L = std::log(J);
    VolFunEval e;
    switch (id.family()) {
        case VolFamily::HartmannNeff: {
            const double q = id.param();
            if (q < kQZero) {
                e.h = 0.5 * L * L;
                e.jhp = L;
                e.hpp = (1.0 - L) / (J * J);
                e.chi = 1.0 / J;
            } else {
                // (J^q + J^-q - 2) = 4 sinh^2(qL/2), written this way to keep accuracy near J = 1
                const double sh = std::sinh(0.5 * q * L);
                e.h = 2.0 * sh * sh / (q * q);
                e.jhp = std::sinh(q * L) / q;
                e.hpp = (std::cosh(q * L) - std::sinh(q * L) / q) / (J * J);
                e.chi = std::cosh(q * L) / J;
            }
            e.hp = e.jhp / J;
            break;
        }
        case VolFamily::Ogden: {
            const double b = id.param();
            const double em1 = std::expm1(-b * L);  // J^-b - 1
            e.h = (b * L + em1) / (b * b);
            e.jhp = -em1 / b;
            e.hp = e.jhp / J;
            e.hpp = ((b + 1.0) * (em1 + 1.0) - 1.0) / (b * J * J);
            e.chi = std::exp(-(b + 1.0) * L);
            break;
        }
        case VolFamily::Quadratic:
            e.h = 0.5 * (J - 1.0) * (J - 1.0);
            e.hp = J - 1.0;
            e.jhp = J * (J - 1.0);
            e.hpp = 1.0;
            e.chi = 2.0 * J - 1.0;
            break;
        case VolFamily::ExpLog: {
            const double L2 = L * L;
            const double ex = std::exp(L2);
            e.h = 0.5 * std::expm1(L2);
            e.jhp = ex * L;
            e.hp = e.jhp / J;
            e.hpp = ex * (1.0 - L + 2.0 * L2) / (J * J);
            e.chi = ex * (1.0 + 2.0 * L2) / J;
            break;
        }
    }
    return e;
}

PropertyReport audit(const VolFunId& id, const AuditGrid& grid) {
    PropertyReport r;

    const VolFunEval one = eval(id, 1.0);
    r.holds[0] = std::abs(one.h) <= 1e-14 && std::abs(one.hp) <= 1e-14 && std::abs(one.hpp - 1.0) <= 1e-12;
    if (!r.holds[0]) r.witness[0] = 1.0;

    r.holds[1] = r.holds[2] = r.holds[3] = true;
    const double a = std::log(grid.j_min), b = std::log(grid.j_max);
    for (int k = 0; k < grid.points; ++k) {
        const double J = std::exp(a + (b - a) * k / (grid.points - 1));
        const VolFunEval e = eval(id, J);
        const bool sign_ok = std::abs(J - 1.0) < 1e-12 || (J < 1.0 ? e.hp < 0.0 : e.hp > 0.0);
        const bool checks[3] = {sign_ok, e.hpp > 0.0, e.chi > 0.0};
        for (int c = 0; c < 3; ++c) {
            if (!checks[c] && r.holds[c + 1]) {
                r.holds[c + 1] = false;
                r.witness[c + 1] = J;
            }
        }
    }

    // Unbounded growth at each end: over the last two probe decades the
    // increments of h must stay positive and must not collapse (a bounded h
    // has increments shrinking geometrically).
    r.holds[4] = true;
    for (double dir : {-1.0, 1.0}) {
        const double h4 = eval(id, std::pow(10.0, 4.0 * dir)).h;
        const double h5 = eval(id, std::pow(10.0, 5.0 * dir)).h;
        const double h6 = eval(id, std::pow(10.0, 6.0 * dir)).h;
        const double d1 = h5 - h4, d2 = h6 - h5;
        const bool grows = d1 > 0.0 && d2 > 0.0 && d2 >= 0.5 * d1;
        if (!grows && r.holds[4]) {
            r.holds[4] = false;
            r.witness[4] = std::pow(10.0, 6.0 * dir);
        }
    }
    return r;
}

std::pair<double, double> symmetry_check(double q, double J) {
    const VolFunId id = VolFunId::hartmann_neff(q);
    return {eval(id, J).h, eval(id, 1.0 / J).h};
}

}  // namespace nh
