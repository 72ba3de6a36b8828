// linalg.hpp — Dense complex backbone: Kronecker/Schur products, vectorization,
// the block rearrangement gamma, Hermitian spectra, operator norm, least squares.

#pragma once

#include "toepsys/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace toepsys {

using Index = Eigen::Index;

// --------------------------- products -----------------------------------

// Kronecker product: block (i,j) of the result is a(i,j)*b.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
        a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Schur (elementwise) product.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
schur(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("schur: dimension mismatch");
    return a.cwiseProduct(b);
}

// --------------------------- vectorization ------------------------------

// Column-stacking vectorization: columns of t concatenated top to bottom,
// so vec(T) = (t11, t21, ..., t12, t22, ...)^T.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
vec(const Eigen::MatrixBase<Derived>& t) {
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> v(t.size());
    Index p = 0;
    for (Index j = 0; j < t.cols(); ++j)
        for (Index i = 0; i < t.rows(); ++i) v(p++) = t(i, j);
    return v;
}

// Inverse of vec under the same column-stacking convention.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
unvec(const Eigen::MatrixBase<Derived>& v, Index rows, Index cols) {
    if (v.size() != rows * cols)
        throw std::invalid_argument("unvec: length does not match rows*cols");
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
    Index p = 0;
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = v(p++);
    return m;
}

// --------------------------- gamma rearrangement -------------------------

// Row-to-block rearrangement of an n^2 x n^2 matrix: with 1-based indices and
// [i,j] = (i-1)n + j, block (i,j) entry (r,s) of the result is t at global
// position ([i,j], [r,s]). Involutive, linear, bijective.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
gamma(const Eigen::MatrixBase<Derived>& t) {
    if (t.rows() != t.cols()) throw std::invalid_argument("gamma: matrix not square");
    const Index n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(t.rows()))));
    if (n * n != t.rows())
        throw std::invalid_argument("gamma: side length is not a perfect square");
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(t.rows(), t.cols());
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            for (Index r = 0; r < n; ++r)
                for (Index s = 0; s < n; ++s)
                    out(i * n + r, j * n + s) = t(i * n + j, r * n + s);
    return out;
}

// --------------------------- Hermitian spectra ---------------------------

struct HermitianEig {
    RVec values;   // ascending
    CMat vectors;  // columns are orthonormal eigenvectors
};

inline double hermitian_defect(const CMat& h) {
    return (h - h.adjoint()).norm();
}

// Eigen-decomposition of a Hermitian matrix. Input must be Hermitian within
// tolerance; the solve runs on the symmetrized (h + h*)/2.
inline HermitianEig hermitian_eig(const CMat& h, const Tol& tol = {}) {
    if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
    if (hermitian_defect(h) > threshold(tol, h.norm()))
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian within tolerance");
    CMat sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

// Real eigenvalues of a Hermitian matrix, ascending.
inline RVec hermitian_eigvals(const CMat& h, const Tol& tol = {}) {
    return hermitian_eig(h, tol).values;
}

// Positive semidefiniteness with relative slack. Non-Hermitian input is
// simply not PSD (no throw).
inline bool is_psd(const CMat& h, const Tol& tol = {}) {
    if (h.rows() != h.cols()) return false;
    if (h.size() == 0) return true;
    if (hermitian_defect(h) > threshold(tol, h.norm())) return false;
    CMat sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) return false;
    const RVec& ev = solver.eigenvalues();
    const double spectral = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    return ev(0) >= -tol.psd_slack * std::max(1.0, spectral);
}

// --------------------------- norms and solves ----------------------------

// Operator (spectral) norm: largest singular value, via the top eigenvalue
// of m* m.
inline double operator_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    CMat gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<CMat> solver(0.5 * (gram + gram.adjoint()),
                                               Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("operator_norm: eigensolver failed to converge");
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

// Singular values, descending.
inline RVec singular_values(const CMat& m) {
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues();
}

struct LstsqResult {
    CMat solution;
    double residual;  // Frobenius norm of a*x - b
};

// Minimum-residual solve of a*x = b by SVD pseudo-inverse; singular values
// below tol.rel * sigma_max are truncated.
inline LstsqResult lstsq(const CMat& a, const CMat& b, const Tol& tol = {}) {
    if (a.rows() != b.rows()) throw std::invalid_argument("lstsq: row count mismatch");
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tol.rel);
    CMat x = svd.solve(b);
    return LstsqResult{x, (a * x - b).norm()};
}

}  // namespace toepsys
