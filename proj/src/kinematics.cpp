#include "nh/kinematics.hpp"

#include "nh/errors.hpp"

#include <cmath>

namespace nh {

DeformationState kinematics_from_F(const Mat3& F, double rel_tol) {
    const double J = F.determinant();
    if (!(J > 0.0)) throw InvalidDeformation("det F must be positive");

    DeformationState s;
    s.F = F;
    s.J = J;
    s.c = SymTensor3::from_matrix(F * F.transpose());

    const SpectralDecomp cs = spectral(s.c, rel_tol);
    s.stretch = cs;
    int k = 0;
    for (int i = 0; i < cs.m; ++i) {
        s.stretch.values[i] = std::sqrt(cs.values[i]);
        for (int r = 0; r < cs.mult[i]; ++r) s.principal(k++) = s.stretch.values[i];
    }
    s.modified = s.principal / std::cbrt(J);
    return s;
}

SymTensor3 finger_strain(const DeformationState& s) { return 0.5 * (s.c - SymTensor3::identity()); }

SymTensor3 modified_left_cauchy_green(const DeformationState& s) { return std::pow(s.J, -2.0 / 3.0) * s.c; }

SymTensor3 deviatoric_modified(const DeformationState& s) { return modified_left_cauchy_green(s).dev(); }

RateState rate_from_d(const DeformationState& s, const SymTensor3& d, const Mat3& w) {
    RateState r;
    r.d = d;
    r.w = w;
    r.l = d.matrix() + w;
    const CoaxialSplit split = coaxial_orthogonal_split(s.stretch, d);
    r.d_hat = split.coaxial;
    r.d_tilde = split.orthogonal;
    r.stretch_rates.resize(s.stretch.m);
    for (int i = 0; i < s.stretch.m; ++i)
        r.stretch_rates[i] = s.stretch.values[i] * ddot(s.stretch.proj[i], d) / s.stretch.mult[i];
    r.Jdot = s.J * d.trace();
    return r;
}

RateState rate_from_motion(const DeformationState& s, const Mat3& Fdot) {
    Eigen::FullPivLU<Mat3> lu(s.F);
    if (!lu.isInvertible()) throw InvalidDeformation("singular F");
    const Mat3 l = Fdot * lu.inverse();
    return rate_from_d(s, sym(l), skew(l));
}

}  // namespace nh
