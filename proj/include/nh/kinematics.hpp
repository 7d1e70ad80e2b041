#pragma once

#include "nh/tensor3.hpp"

#include <vector>

namespace nh {

struct DeformationState {
    Mat3 F;
    double J = 1.0;
    SymTensor3 c;  // F F^T
    /// Distinct principal stretches with eigenprojections V_i (shared by c and V).
    SpectralDecomp stretch;
    /// Principal stretches repeated by multiplicity, in the order of `stretch`.
    Vec3 principal;
    /// principal / J^{1/3}
    Vec3 modified;
};

DeformationState kinematics_from_F(const Mat3& F, double rel_tol = 1e-8);

/// e = (c - I)/2
SymTensor3 finger_strain(const DeformationState& s);
/// J^{-2/3} c
SymTensor3 modified_left_cauchy_green(const DeformationState& s);
/// dev of J^{-2/3} c
SymTensor3 deviatoric_modified(const DeformationState& s);

struct RateState {
    Mat3 l;
    Mat3 w;
    SymTensor3 d;
    SymTensor3 d_hat;
    SymTensor3 d_tilde;
    /// lambda_dot_i per distinct stretch, from V_i : d = m_i lambda_dot_i / lambda_i.
    std::vector<double> stretch_rates;
    double Jdot = 0.0;
};

RateState rate_from_motion(const DeformationState& s, const Mat3& Fdot);
/// Rate state for a prescribed stretching d and spin w.
RateState rate_from_d(const DeformationState& s, const SymTensor3& d, const Mat3& w = Mat3::Zero());

}  // namespace nh
