#pragma once

#include <Eigen/Dense>

#include <array>
#include <utility>
#include <vector>

namespace nh {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Voigt slot of the (i, j) component: 11, 22, 33, 23, 13, 12.
int voigt_index(int i, int j);

/// Symmetric 3x3 tensor stored as its six independent components.
class SymTensor3 {
public:
    SymTensor3() { v_.fill(0.0); }

    static SymTensor3 zero() { return {}; }
    static SymTensor3 identity() { return diag(1.0, 1.0, 1.0); }
    static SymTensor3 diag(double a, double b, double c);
    /// Takes the symmetric part of M.
    static SymTensor3 from_matrix(const Mat3& M);
    static SymTensor3 from_voigt(double xx, double yy, double zz, double yz, double xz, double xy);

    double operator()(int i, int j) const { return v_[voigt_index(i, j)]; }
    double& slot(int k) { return v_[k]; }
    double slot(int k) const { return v_[k]; }

    Mat3 matrix() const;
    double trace() const { return v_[0] + v_[1] + v_[2]; }
    SymTensor3 dev() const;
    double norm() const;

    SymTensor3& operator+=(const SymTensor3& o);
    SymTensor3& operator-=(const SymTensor3& o);
    SymTensor3& operator*=(double s);

private:
    std::array<double, 6> v_;
};

SymTensor3 operator+(SymTensor3 a, const SymTensor3& b);
SymTensor3 operator-(SymTensor3 a, const SymTensor3& b);
SymTensor3 operator-(SymTensor3 a);
SymTensor3 operator*(SymTensor3 a, double s);
SymTensor3 operator*(double s, SymTensor3 a);
SymTensor3 operator/(SymTensor3 a, double s);

double ddot(const SymTensor3& a, const SymTensor3& b);
double ddot(const Mat3& a, const Mat3& b);
SymTensor3 sym(const Mat3& A);
Mat3 skew(const Mat3& A);
/// a*b + b*a, which is symmetric for symmetric a, b.
SymTensor3 sym_product2(const SymTensor3& a, const SymTensor3& b);
double max_abs_diff(const SymTensor3& a, const SymTensor3& b);

/// Strain-kind vector: shear entries doubled.
Vec6 voigt_strain(const SymTensor3& H);
/// Stress-kind vector: shear entries as is.
Vec6 voigt_stress(const SymTensor3& S);

/// General fourth-order tensor, 81 components, X_ijkl.
class Tensor4 {
public:
    Tensor4() { a_.fill(0.0); }
    static Tensor4 zero() { return {}; }

    double& operator()(int i, int j, int k, int l) { return a_[idx(i, j, k, l)]; }
    double operator()(int i, int j, int k, int l) const { return a_[idx(i, j, k, l)]; }

    /// (X:A)_ij = X_ijkl A_kl
    Mat3 contract(const Mat3& A) const;
    /// A:X:A for symmetric A.
    double quad(const SymTensor3& A) const;

    Tensor4& operator+=(const Tensor4& o);
    Tensor4& operator-=(const Tensor4& o);
    Tensor4& operator*=(double s);

    double max_abs() const;

private:
    static int idx(int i, int j, int k, int l) { return ((i * 3 + j) * 3 + k) * 3 + l; }
    std::array<double, 81> a_;
};

Tensor4 operator+(Tensor4 a, const Tensor4& b);
Tensor4 operator-(Tensor4 a, const Tensor4& b);
Tensor4 operator*(Tensor4 a, double s);
Tensor4 operator*(double s, Tensor4 a);

/// (A (x) B)_ijkl = A_ij B_kl
Tensor4 dyad(const Mat3& A, const Mat3& B);
/// A_ik B_jl
Tensor4 direct_product(const Mat3& A, const Mat3& B);
/// A_il B_jk
Tensor4 alternate_product(const Mat3& A, const Mat3& B);
/// Half the sum of the direct and alternate products; (A (x)sym B):X = A sym(X) B^T.
Tensor4 sym_outer(const Mat3& A, const Mat3& B);
Tensor4 sym_outer(const SymTensor3& A, const SymTensor3& B);

/// Fourth-order tensor with major and both minor symmetries.
/// Symmetrized on construction.
class SuperSymTensor4 {
public:
    SuperSymTensor4() = default;
    explicit SuperSymTensor4(const Tensor4& X);

    double operator()(int i, int j, int k, int l) const { return t_(i, j, k, l); }
    const Tensor4& full() const { return t_; }

    SymTensor3 contract(const SymTensor3& A) const;
    double quad(const SymTensor3& A) const { return t_.quad(A); }
    /// 6x6 matrix acting on strain-kind vectors and returning stress-kind ones.
    Mat6 voigt() const;

    SuperSymTensor4& operator+=(const SuperSymTensor4& o);
    SuperSymTensor4& operator*=(double s);

private:
    Tensor4 t_;
};

SuperSymTensor4 operator+(SuperSymTensor4 a, const SuperSymTensor4& b);
SuperSymTensor4 operator-(SuperSymTensor4 a, const SuperSymTensor4& b);
SuperSymTensor4 operator*(SuperSymTensor4 a, double s);
SuperSymTensor4 operator*(double s, SuperSymTensor4 a);

/// Largest violation of the major and minor symmetries.
double symmetry_defect(const Tensor4& X);

/// Returns (H:X:H, vec(H)^T mat(X) vec(H)).
std::pair<double, double> voigt_roundtrip(const SuperSymTensor4& X, const SymTensor3& H);

/// Eigenvalues grouped into distinct values with multiplicities and projections.
/// For m = 2 the simple eigenvalue comes first; for m = 3 values are descending.
struct SpectralDecomp {
    int m = 0;
    std::vector<double> values;
    std::vector<int> mult;
    std::vector<SymTensor3> proj;

    SymTensor3 reconstruct() const;
};

SpectralDecomp spectral(const SymTensor3& S, double rel_tol = 1e-8);

struct CoaxialSplit {
    SymTensor3 coaxial;     // sum_i S_i H S_i
    SymTensor3 orthogonal;  // sum_{i != j} S_i H S_j
};

CoaxialSplit coaxial_orthogonal_split(const SpectralDecomp& sd, const SymTensor3& H);
CoaxialSplit coaxial_orthogonal_split(const SymTensor3& S, const SymTensor3& H, double rel_tol = 1e-8);

/// sum_{i != j} x(i, j) S_i (x)sym S_j over ordered pairs of eigenprojections.
SuperSymTensor4 pair_projection_tensor(const SpectralDecomp& sd, const Mat3& x);

}  // namespace nh
