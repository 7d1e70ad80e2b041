#pragma once

#include "nh/materials.hpp"

#include <optional>

namespace nhtest {

// Cauchy stress from central differences of the energy: sigma = (1/J) (dW/dF) F^T.
inline nh::Mat3 fd_cauchy(const nh::ModelSpec& model, const nh::Mat3& F, std::optional<double> p = std::nullopt,
                          double rel_step = 1e-5) {
    nh::Mat3 P;
    const double h = rel_step * std::max(1.0, F.norm());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            nh::Mat3 Fp = F, Fm = F;
            Fp(i, j) += h;
            Fm(i, j) -= h;
            P(i, j) = (nh::energy(model, Fp, p) - nh::energy(model, Fm, p)) / (2 * h);
        }
    return P * F.transpose() / F.determinant();
}

}  // namespace nhtest
