// toeplitz.hpp — The Toeplitz operator system Toep_n: diagonal basis tau_k,
// membership/projection, the Delta matrix of vectorized basis elements, and
// spectral truncation of circle functions.
//
// All (2n-1)-length objects are indexed by the diagonal offset
// k = -n+1 ... n-1, stored at array position k + n - 1.

#pragma once

#include "toepsys/linalg.hpp"
#include "toepsys/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toepsys {

struct ToeplitzSystem {
    int n;  // truncation level, n >= 1

    explicit ToeplitzSystem(int level) : n(level) {
        if (n < 1) throw std::invalid_argument("ToeplitzSystem: n must be >= 1");
    }
};

// Coefficients of a Toeplitz matrix on its diagonals.
struct ToeplitzCoeffs {
    int n;
    CVec diag;  // length 2n-1, position k+n-1 holds the k-th diagonal value

    Complex at(int k) const { return diag(k + n - 1); }
};

// Basis element tau_k: ones on the k-th diagonal (k > 0 above the main
// diagonal), zeros elsewhere.
inline CMat tau(int n, int k) {
    if (n < 1) throw std::invalid_argument("tau: n must be >= 1");
    if (std::abs(k) >= n) throw std::invalid_argument("tau: |k| must be < n");
    CMat t = CMat::Zero(n, n);
    for (int i = 0; i < n - std::abs(k); ++i) {
        if (k >= 0)
            t(i, i + k) = 1.0;
        else
            t(i - k, i) = 1.0;
    }
    return t;
}

// Frobenius-orthogonal projection onto span{tau_k}: coefficient k is the mean
// of the entries on diagonal k.
inline ToeplitzCoeffs project(const CMat& t, const ToeplitzSystem& sys) {
    const int n = sys.n;
    if (t.rows() != n || t.cols() != n)
        throw std::invalid_argument("project: matrix size does not match system");
    CVec diag = CVec::Zero(2 * n - 1);
    for (int k = -n + 1; k <= n - 1; ++k) {
        Complex sum = 0.0;
        const int len = n - std::abs(k);
        for (int i = 0; i < len; ++i)
            sum += (k >= 0) ? t(i, i + k) : t(i - k, i);
        diag(k + n - 1) = sum / static_cast<double>(len);
    }
    return ToeplitzCoeffs{n, diag};
}

// Toeplitz matrix with the given diagonal values.
inline CMat embed(const ToeplitzCoeffs& c) {
    if (c.diag.size() != 2 * c.n - 1)
        throw std::invalid_argument("embed: coefficient length must be 2n-1");
    CMat t(c.n, c.n);
    for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j) t(i, j) = c.at(j - i);
    return t;
}

// Distance to the nearest Toeplitz matrix (Frobenius).
inline double membership_residual(const CMat& t, const ToeplitzSystem& sys) {
    return (t - embed(project(t, sys))).norm();
}

// True iff every diagonal of t is constant within tolerance.
inline bool is_member(const CMat& t, const ToeplitzSystem& sys, const Tol& tol = {}) {
    if (t.rows() != sys.n || t.cols() != sys.n)
        throw std::invalid_argument("is_member: matrix size does not match system");
    return membership_residual(t, sys) <= threshold(tol, t.norm());
}

// The n^2 x (2n-1) matrix with columns vec(tau_k), k = -n+1 ... n-1.
// Full column rank; Delta* Delta = diag(n - |k|).
inline CMat delta(int n) {
    if (n < 1) throw std::invalid_argument("delta: n must be >= 1");
    CMat d(n * n, 2 * n - 1);
    for (int k = -n + 1; k <= n - 1; ++k) d.col(k + n - 1) = vec(tau(n, k));
    return d;
}

// n x n Toeplitz matrix with entry (i, j) = a_{i-j}; coefficients outside
// [-n+1, n-1] are discarded. `coeffs` has length 2K+1, indexed -K ... K.
inline CMat truncate(const CVec& coeffs, int big_k, int n) {
    if (n < 1) throw std::invalid_argument("truncate: n must be >= 1");
    if (big_k < 0 || coeffs.size() != 2 * big_k + 1)
        throw std::invalid_argument("truncate: coefficient length must be 2K+1");
    auto a = [&](int k) -> Complex {
        return (std::abs(k) <= big_k) ? coeffs(k + big_k) : Complex(0.0, 0.0);
    };
    CMat t(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t(i, j) = a(i - j);
    return t;
}

// Fourier coefficients a_k, |k| <= K, from equispaced samples f(2*pi*m/M),
// m = 0 ... M-1, by the direct DFT a_k = (1/M) sum_m f_m exp(-2*pi*i*k*m/M).
inline CVec fourier_from_samples(const CVec& samples, int big_k) {
    const int m_count = static_cast<int>(samples.size());
    if (big_k < 0) throw std::invalid_argument("fourier_from_samples: K must be >= 0");
    if (m_count < 2 * big_k + 1)
        throw std::invalid_argument("fourier_from_samples: need at least 2K+1 samples");
    CVec coeffs(2 * big_k + 1);
    for (int k = -big_k; k <= big_k; ++k) {
        Complex acc = 0.0;
        for (int m = 0; m < m_count; ++m) {
            const double phase = -2.0 * std::numbers::pi * k * m / m_count;
            acc += samples(m) * Complex(std::cos(phase), std::sin(phase));
        }
        coeffs(k + big_k) = acc / static_cast<double>(m_count);
    }
    return coeffs;
}

}  // namespace toepsys
