#include "ryd/transpiler.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ryd {

namespace {

constexpr double kPi = std::numbers::pi;

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Matrix4d;
using Eigen::Vector4d;

Matrix4cd to_eigen(const Mat4& u) {
    Matrix4cd m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = u[r * 4 + c];
    return m;
}

Mat2 to_mat2(const Matrix2cd& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

// Makhlin magic basis; columns are Bell states (up to i factors) in the order
// Phi+, i Psi+, Psi-, i Phi-.
Matrix4cd magic_basis() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix4cd m;
    const cplx i{0.0, 1.0};
    m << cplx{s, 0}, cplx{0, 0}, cplx{0, 0}, i * s,
         cplx{0, 0}, i * s, cplx{s, 0}, cplx{0, 0},
         cplx{0, 0}, i * s, cplx{-s, 0}, cplx{0, 0},
         cplx{s, 0}, cplx{0, 0}, cplx{0, 0}, -i * s;
    return m;
}

// Split a tensor-product unitary L = phase * (A (x) B) into SU(2) factors.
// The (iA jA) x (iB jB) rearrangement of L is rank one.
void factor_local(const Matrix4cd& l, Matrix2cd& a, Matrix2cd& b) {
    Matrix4cd r;
    for (int ia = 0; ia < 2; ++ia)
        for (int ja = 0; ja < 2; ++ja)
            for (int ib = 0; ib < 2; ++ib)
                for (int jb = 0; jb < 2; ++jb)
                    r(ia * 2 + ja, ib * 2 + jb) = l(ia * 2 + ib, ja * 2 + jb);
    Eigen::JacobiSVD<Matrix4cd> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(1) > 1e-9)
        throw std::runtime_error("factor_local: matrix is not a tensor product");
    const double s0 = std::sqrt(svd.singularValues()(0));
    const Eigen::Vector4cd va = svd.matrixU().col(0) * s0;
    const Eigen::Vector4cd vb = svd.matrixV().col(0).conjugate() * s0;
    a << va(0), va(1), va(2), va(3);
    b << vb(0), vb(1), vb(2), vb(3);
    a /= std::sqrt(a.determinant());
    b /= std::sqrt(b.determinant());
}

Matrix4cd kron2(const Matrix2cd& a, const Matrix2cd& b) {
    Matrix4cd k;
    for (int ia = 0; ia < 2; ++ia)
        for (int ja = 0; ja < 2; ++ja)
            for (int ib = 0; ib < 2; ++ib)
                for (int jb = 0; jb < 2; ++jb) k(ia * 2 + ib, ja * 2 + jb) = a(ia, ja) * b(ib, jb);
    return k;
}

} // namespace

Mat4 haar_su4(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix4cd g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = cplx{re, im};
        }
    Eigen::HouseholderQR<Matrix4cd> qr(g);
    Matrix4cd q = qr.householderQ();
    const Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 4; ++c) {
        const cplx d = r(c, c);
        q.col(c) *= d / std::abs(d);
    }
    const cplx det = q.determinant();
    q /= std::pow(det, 0.25);
    Mat4 out;
    for (int rr = 0; rr < 4; ++rr)
        for (int cc = 0; cc < 4; ++cc) out[rr * 4 + cc] = q(rr, cc);
    return out;
}

Mat4 canonical_gate(double a, double b, double c) {
    // Eigenphases on the Bell basis: Phi+ -> a-b+c, Psi+ -> a+b-c,
    // Phi- -> -a+b+c, Psi- -> -a-b-c.
    const double s = 1.0 / std::sqrt(2.0);
    struct BellLine {
        cplx v0, v1, v2, v3;
        double lambda;
    };
    const BellLine bells[4] = {
        {cplx{s, 0}, cplx{0, 0}, cplx{0, 0}, cplx{s, 0}, a - b + c},
        {cplx{0, 0}, cplx{s, 0}, cplx{s, 0}, cplx{0, 0}, a + b - c},
        {cplx{s, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-s, 0}, -a + b + c},
        {cplx{0, 0}, cplx{s, 0}, cplx{-s, 0}, cplx{0, 0}, -a - b - c},
    };
    Mat4 n{};
    for (const auto& bell : bells) {
        const cplx vec[4] = {bell.v0, bell.v1, bell.v2, bell.v3};
        const cplx w = std::polar(1.0, bell.lambda);
        for (int r = 0; r < 4; ++r)
            for (int col = 0; col < 4; ++col) n[r * 4 + col] += w * vec[r] * std::conj(vec[col]);
    }
    return n;
}

namespace {

// Residual scalar between L and the normalized product (a phase, and for
// SO(4)-conjugated locals just a sign).
cplx orient(const Matrix4cd& l, const Matrix2cd& a, const Matrix2cd& b) {
    const Matrix4cd recon = kron2(a, b);
    cplx best{0.0, 0.0};
    double best_mag = -1.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (std::abs(recon(r, c)) > best_mag) {
                best_mag = std::abs(recon(r, c));
                best = l(r, c) / recon(r, c);
            }
    return best;
}

bool kak_attempt(const Matrix4cd& u, const Matrix4cd& um, const Matrix4cd& m2, const cplx& root,
                 double blend_angle, KakDecomposition& out) {
    const Matrix4d re = m2.real();
    const Matrix4d im = m2.imag();
    const Matrix4d blend = re * std::cos(blend_angle) + im * std::sin(blend_angle);
    Eigen::SelfAdjointEigenSolver<Matrix4d> solver(blend);
    Matrix4d p = solver.eigenvectors();
    const Matrix4d dre = p.transpose() * re * p;
    const Matrix4d dim = p.transpose() * im * p;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (r != c && (std::abs(dre(r, c)) > 1e-9 || std::abs(dim(r, c)) > 1e-9)) return false;
    if (p.determinant() < 0) p.col(3) *= -1.0;

    const Matrix4cd d_full = p.transpose() * m2 * p;
    double lambda[4];
    for (int k = 0; k < 4; ++k) lambda[k] = std::arg(d_full(k, k)) / 2.0;
    // Branch choice: the eigenphase sum must vanish mod 2*pi so that both
    // orthogonal factors land in SO(4).
    double sum = lambda[0] + lambda[1] + lambda[2] + lambda[3];
    const double wrapped = std::remainder(sum, 2.0 * kPi);
    if (std::abs(wrapped) > kPi / 2) lambda[0] -= std::copysign(kPi, wrapped);
    sum = lambda[0] + lambda[1] + lambda[2] + lambda[3];
    lambda[0] -= std::remainder(sum, 2.0 * kPi);

    Matrix4cd d_inv = Matrix4cd::Zero();
    for (int k = 0; k < 4; ++k) d_inv(k, k) = std::polar(1.0, -lambda[k]);
    const Matrix4cd o1 = um * p * d_inv;
    if (o1.imag().cwiseAbs().maxCoeff() > 1e-8) return false;

    out.a = (lambda[0] + lambda[1]) / 2.0;
    out.b = (lambda[1] + lambda[3]) / 2.0;
    out.c = (lambda[0] + lambda[3]) / 2.0;

    static const Matrix4cd kMagic = magic_basis();
    const Matrix4cd l1 = kMagic * o1 * kMagic.adjoint();
    const Matrix4cd l2 = kMagic * p.transpose() * kMagic.adjoint();
    Matrix2cd k1a, k1b, k2a, k2b;
    try {
        factor_local(l1, k1a, k1b);
        factor_local(l2, k2a, k2b);
    } catch (const std::runtime_error&) {
        return false;
    }
    const cplx ph1 = orient(l1, k1a, k1b);
    const cplx ph2 = orient(l2, k2a, k2b);

    out.k1a = to_mat2(k1a);
    out.k1b = to_mat2(k1b);
    out.k2a = to_mat2(k2a);
    out.k2b = to_mat2(k2b);
    out.phase = root * ph1 * ph2;

    const Mat4 n = canonical_gate(out.a, out.b, out.c);
    const Matrix4cd recon = out.phase * kron2(k1a, k1b) * to_eigen(n) * kron2(k2a, k2b);
    return (recon - u).cwiseAbs().maxCoeff() <= 1e-9;
}

} // namespace

KakDecomposition kak_decompose(const Mat4& u_in) {
    const Matrix4cd u = to_eigen(u_in);
    if ((u.adjoint() * u - Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("kak_decompose: input is not unitary");

    const cplx det = u.determinant();
    const cplx root = std::pow(det, 0.25);
    const Matrix4cd u1 = u / root;

    static const Matrix4cd kMagic = magic_basis();
    const Matrix4cd um = kMagic.adjoint() * u1 * kMagic;
    const Matrix4cd m2 = um.transpose() * um;

    // A generic blend of Re/Im separates the eigenspaces; retry with other
    // blend angles when one hits a degeneracy.
    const double blends[] = {0.219018374, 0.403919327, 0.718512291, 0.925817364,
                             0.112963871, 0.569284712, 0.031872649, 0.847261593};
    KakDecomposition out;
    for (double t : blends)
        if (kak_attempt(u, um, m2, root, t, out)) return out;
    throw std::runtime_error("kak_decompose: all joint-diagonalization attempts failed");
}

} // namespace ryd
