#include "nh/tensor3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace nh {

namespace {

constexpr int kVoigt[3][3] = {{0, 5, 4}, {5, 1, 3}, {4, 3, 2}};
constexpr int kVoigtI[6] = {0, 1, 2, 1, 0, 0};
constexpr int kVoigtJ[6] = {0, 1, 2, 2, 2, 1};

}  // namespace

int voigt_index(int i, int j) { return kVoigt[i][j]; }

SymTensor3 SymTensor3::diag(double a, double b, double c) {
    SymTensor3 t;
    t.v_[0] = a;
    t.v_[1] = b;
    t.v_[2] = c;
    return t;
}

SymTensor3 SymTensor3::from_matrix(const Mat3& M) {
    SymTensor3 t;
    for (int k = 0; k < 6; ++k) {
        const int i = kVoigtI[k], j = kVoigtJ[k];
        t.v_[k] = 0.5 * (M(i, j) + M(j, i));
    }
    return t;
}

SymTensor3 SymTensor3::from_voigt(double xx, double yy, double zz, double yz, double xz, double xy) {
    SymTensor3 t;
    t.v_ = {xx, yy, zz, yz, xz, xy};
    return t;
}

Mat3 SymTensor3::matrix() const {
    Mat3 M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = v_[kVoigt[i][j]];
    return M;
}

SymTensor3 SymTensor3::dev() const {
    SymTensor3 t = *this;
    const double m = trace() / 3.0;
    for (int k = 0; k < 3; ++k) t.v_[k] -= m;
    return t;
}

double SymTensor3::norm() const { return std::sqrt(ddot(*this, *this)); }

SymTensor3& SymTensor3::operator+=(const SymTensor3& o) {
    for (int k = 0; k < 6; ++k) v_[k] += o.v_[k];
    return *this;
}

SymTensor3& SymTensor3::operator-=(const SymTensor3& o) {
    for (int k = 0; k < 6; ++k) v_[k] -= o.v_[k];
    return *this;
}

SymTensor3& SymTensor3::operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
}

SymTensor3 operator+(SymTensor3 a, const SymTensor3& b) { return a += b; }
SymTensor3 operator-(SymTensor3 a, const SymTensor3& b) { return a -= b; }
SymTensor3 operator-(SymTensor3 a) { return a *= -1.0; }
SymTensor3 operator*(SymTensor3 a, double s) { return a *= s; }
SymTensor3 operator*(double s, SymTensor3 a) { return a *= s; }
SymTensor3 operator/(SymTensor3 a, double s) { return a *= 1.0 / s; }

double ddot(const SymTensor3& a, const SymTensor3& b) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += a.slot(k) * b.slot(k);
    for (int k = 3; k < 6; ++k) s += 2.0 * a.slot(k) * b.slot(k);
    return s;
}

double ddot(const Mat3& a, const Mat3& b) { return a.cwiseProduct(b).sum(); }

SymTensor3 sym(const Mat3& A) { return SymTensor3::from_matrix(A); }

Mat3 skew(const Mat3& A) { return 0.5 * (A - A.transpose()); }

SymTensor3 sym_product2(const SymTensor3& a, const SymTensor3& b) {
    const Mat3 ab = a.matrix() * b.matrix();
    return SymTensor3::from_matrix(ab + ab.transpose());
}

double max_abs_diff(const SymTensor3& a, const SymTensor3& b) {
    double m = 0.0;
    for (int k = 0; k < 6; ++k) m = std::max(m, std::abs(a.slot(k) - b.slot(k)));
    return m;
}

Vec6 voigt_strain(const SymTensor3& H) {
    Vec6 v;
    for (int k = 0; k < 6; ++k) v(k) = (k < 3 ? 1.0 : 2.0) * H.slot(k);
    return v;
}

Vec6 voigt_stress(const SymTensor3& S) {
    Vec6 v;
    for (int k = 0; k < 6; ++k) v(k) = S.slot(k);
    return v;
}

// --- Tensor4 ---

Mat3 Tensor4::contract(const Mat3& A) const {
    Mat3 R = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) s += (*this)(i, j, k, l) * A(k, l);
            R(i, j) = s;
        }
    return R;
}

double Tensor4::quad(const SymTensor3& A) const {
    const Mat3 M = A.matrix();
    return ddot(M, contract(M));
}

Tensor4& Tensor4::operator+=(const Tensor4& o) {
    for (int n = 0; n < 81; ++n) a_[n] += o.a_[n];
    return *this;
}

Tensor4& Tensor4::operator-=(const Tensor4& o) {
    for (int n = 0; n < 81; ++n) a_[n] -= o.a_[n];
    return *this;
}

Tensor4& Tensor4::operator*=(double s) {
    for (double& x : a_) x *= s;
    return *this;
}

double Tensor4::max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
}

Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
Tensor4 operator*(Tensor4 a, double s) { return a *= s; }
Tensor4 operator*(double s, Tensor4 a) { return a *= s; }

Tensor4 dyad(const Mat3& A, const Mat3& B) {
    Tensor4 X;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) X(i, j, k, l) = A(i, j) * B(k, l);
    return X;
}

Tensor4 direct_product(const Mat3& A, const Mat3& B) {
    Tensor4 X;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) X(i, j, k, l) = A(i, k) * B(j, l);
    return X;
}

Tensor4 alternate_product(const Mat3& A, const Mat3& B) {
    Tensor4 X;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) X(i, j, k, l) = A(i, l) * B(j, k);
    return X;
}

Tensor4 sym_outer(const Mat3& A, const Mat3& B) {
    return 0.5 * (direct_product(A, B) + alternate_product(A, B));
}

Tensor4 sym_outer(const SymTensor3& A, const SymTensor3& B) { return sym_outer(A.matrix(), B.matrix()); }

// --- SuperSymTensor4 ---

SuperSymTensor4::SuperSymTensor4(const Tensor4& X) {
    // average over the 8-element group generated by ij<->ji, kl<->lk, (ij)<->(kl)
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    std::array<double, 8> v{X(i, j, k, l), X(j, i, k, l), X(i, j, l, k), X(j, i, l, k),
                                            X(k, l, i, j), X(l, k, i, j), X(k, l, j, i), X(l, k, j, i)};
                    // fixed summation order so every orbit member is bit-identical
                    std::sort(v.begin(), v.end());
                    t_(i, j, k, l) = std::accumulate(v.begin(), v.end(), 0.0) / 8.0;
                }
}

SymTensor3 SuperSymTensor4::contract(const SymTensor3& A) const {
    return SymTensor3::from_matrix(t_.contract(A.matrix()));
}

Mat6 SuperSymTensor4::voigt() const {
    Mat6 M;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) M(a, b) = t_(kVoigtI[a], kVoigtJ[a], kVoigtI[b], kVoigtJ[b]);
    return M;
}

SuperSymTensor4& SuperSymTensor4::operator+=(const SuperSymTensor4& o) {
    t_ += o.t_;
    return *this;
}

SuperSymTensor4& SuperSymTensor4::operator*=(double s) {
    t_ *= s;
    return *this;
}

SuperSymTensor4 operator+(SuperSymTensor4 a, const SuperSymTensor4& b) { return a += b; }
SuperSymTensor4 operator-(SuperSymTensor4 a, const SuperSymTensor4& b) { return a += b * -1.0; }
SuperSymTensor4 operator*(SuperSymTensor4 a, double s) { return a *= s; }
SuperSymTensor4 operator*(double s, SuperSymTensor4 a) { return a *= s; }

double symmetry_defect(const Tensor4& X) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const double x = X(i, j, k, l);
                    m = std::max({m, std::abs(x - X(j, i, k, l)), std::abs(x - X(i, j, l, k)),
                                  std::abs(x - X(k, l, i, j))});
                }
    return m;
}

std::pair<double, double> voigt_roundtrip(const SuperSymTensor4& X, const SymTensor3& H) {
    const Vec6 h = voigt_strain(H);
    return {X.quad(H), h.dot(X.voigt() * h)};
}

// --- spectral decomposition ---

SymTensor3 SpectralDecomp::reconstruct() const {
    SymTensor3 S;
    for (int i = 0; i < m; ++i) S += values[i] * proj[i];
    return S;
}

SpectralDecomp spectral(const SymTensor3& S, double rel_tol) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(S.matrix());
    const Vec3 ev = es.eigenvalues();  // ascending
    const Mat3 vec = es.eigenvectors();

    auto close = [rel_tol](double a, double b) {
        return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
    };
    auto dyad_of = [&vec](int k) { return SymTensor3::from_matrix(vec.col(k) * vec.col(k).transpose()); };

    const bool c01 = close(ev(0), ev(1));
    const bool c12 = close(ev(1), ev(2));

    SpectralDecomp sd;
    const SymTensor3 I = SymTensor3::identity();
    if (c01 && c12) {
        sd.m = 1;
        sd.values = {ev.sum() / 3.0};
        sd.mult = {3};
        sd.proj = {I};
    } else if (c01 || c12) {
        const int single = c01 ? 2 : 0;
        const double pair = c01 ? 0.5 * (ev(0) + ev(1)) : 0.5 * (ev(1) + ev(2));
        const SymTensor3 S1 = dyad_of(single);
        sd.m = 2;
        sd.values = {ev(single), pair};
        sd.mult = {1, 2};
        sd.proj = {S1, I - S1};
    } else {
        sd.m = 3;
        sd.values = {ev(2), ev(1), ev(0)};
        sd.mult = {1, 1, 1};
        sd.proj = {dyad_of(2), dyad_of(1), dyad_of(0)};
    }
    return sd;
}

CoaxialSplit coaxial_orthogonal_split(const SpectralDecomp& sd, const SymTensor3& H) {
    const Mat3 Hm = H.matrix();
    Mat3 hat = Mat3::Zero();
    for (int i = 0; i < sd.m; ++i) {
        const Mat3 Si = sd.proj[i].matrix();
        hat += Si * Hm * Si;
    }
    CoaxialSplit out;
    out.coaxial = SymTensor3::from_matrix(hat);
    // the off-diagonal sum equals H minus the diagonal one because sum S_i = I
    out.orthogonal = H - out.coaxial;
    return out;
}

CoaxialSplit coaxial_orthogonal_split(const SymTensor3& S, const SymTensor3& H, double rel_tol) {
    return coaxial_orthogonal_split(spectral(S, rel_tol), H);
}

SuperSymTensor4 pair_projection_tensor(const SpectralDecomp& sd, const Mat3& x) {
    Tensor4 X;
    for (int i = 0; i < sd.m; ++i)
        for (int j = 0; j < sd.m; ++j)
            if (i != j) X += x(i, j) * sym_outer(sd.proj[i], sd.proj[j]);
    return SuperSymTensor4(X);
}

}  // namespace nh
