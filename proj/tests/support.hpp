#pragma once

#include "nh/tensor3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace nhtest {

using nh::Mat3;
using nh::SymTensor3;
using nh::Vec3;

// Deterministic generator with a portable mapping to doubles.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double unit() { return (eng() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

    Mat3 matrix(double scale = 1.0) {
        Mat3 M;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M(i, j) = scale * uniform(-1.0, 1.0);
        return M;
    }
    SymTensor3 sym(double scale = 1.0) { return SymTensor3::from_matrix(matrix(scale)); }

    // Rodrigues rotation about a random axis.
    Mat3 rotation() {
        Vec3 a(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
        while (a.norm() < 1e-3) a = Vec3(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
        a.normalize();
        const double t = uniform(0.0, 3.14159);
        Mat3 K;
        K << 0, -a(2), a(1), a(2), 0, -a(0), -a(1), a(0), 0;
        return Mat3::Identity() + std::sin(t) * K + (1.0 - std::cos(t)) * K * K;
    }

    // Deformation gradient with det in a moderate range.
    Mat3 deformation(double spread = 0.4) {
        for (;;) {
            const Mat3 F = Mat3::Identity() + matrix(spread);
            if (F.determinant() > 0.2) return F;
        }
    }
};

inline double rel_err(double a, double b, double floor = 1e-300) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

inline double rel_err(const Mat3& a, const Mat3& b, double floor = 1e-300) {
    return (a - b).norm() / std::max({a.norm(), b.norm(), floor});
}

// Cyclic Jacobi eigenvalues, ascending; independent of the library path.
inline std::array<double, 3> jacobi_eigenvalues(Mat3 A) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-30 * std::max(1.0, A.squaredNorm())) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (A(p, q) == 0.0) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                Mat3 R = Mat3::Identity();
                R(p, p) = c;
                R(q, q) = c;
                R(p, q) = s;
                R(q, p) = -s;
                A = R.transpose() * A * R;
            }
    }
    std::array<double, 3> ev{A(0, 0), A(1, 1), A(2, 2)};
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace nhtest
