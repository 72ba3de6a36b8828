// types.hpp — Scalar/matrix aliases and the numerical comparison policy

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace toepsys {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Comparison policy shared by all membership predicates and solvers.
// psd_slack is relative: eigenvalues above -psd_slack*max(1, ||h||) count
// as nonnegative.
struct Tol {
    double abs = 1e-9;
    double rel = 1e-9;
    double psd_slack = 1e-8;
};

// Residual threshold at a given scale (typically a Frobenius norm).
inline double threshold(const Tol& tol, double scale) {
    return tol.abs + tol.rel * scale;
}

}  // namespace toepsys
