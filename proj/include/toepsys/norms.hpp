// norms.hpp — Norm diagnostics for perturbation elements: the operator norm
// of the Kronecker matrix, Haagerup-norm upper bounds from representations,
// completely bounded norm values (exact in the CP case) and sampled lower
// bounds, and the necessary unital-CP condition on the map matrix.
//
// The exact Haagerup norm (the infimum over all representations) is not
// computed; reports carry the bracket (min_norm, haagerup_upper, cb_lower)
// and flag representations whose bound strictly exceeds the matrix norm.

#pragma once

#include "toepsys/linalg.hpp"
#include "toepsys/pert.hpp"
#include "toepsys/rng.hpp"
#include "toepsys/toeplitz.hpp"
#include "toepsys/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace toepsys {

// ||sum a_i a_i*||^(1/2) * ||sum b_i* b_i||^(1/2) for the given representation:
// an upper bound on the Haagerup norm, not the infimum.
inline double haagerup_upper(const KrausFamily& f) {
    if (f.pairs.empty()) throw std::invalid_argument("haagerup_upper: family is empty");
    const int n = f.n;
    CMat row = CMat::Zero(n, n);
    CMat col = CMat::Zero(n, n);
    for (const auto& [a, b] : f.pairs) {
        row += a * a.adjoint();
        col += b.adjoint() * b;
    }
    return std::sqrt(operator_norm(row)) * std::sqrt(operator_norm(col));
}

// Operator norm of the n^2 x n^2 Kronecker matrix. Reported alongside the
// Haagerup bound, never asserted equal to it.
inline double min_norm(const PertElement& p) { return operator_norm(p.omega); }

// For a CP element the completely bounded norm is the norm of the image of
// the identity. Requires gamma(omega) PSD; unitality is not required (the
// value is then ||Phi(I)|| rather than 1).
inline double cb_exact_cp(const PertElement& p, const Tol& tol = {}) {
    if (!is_psd(gamma(p.omega), tol))
        throw std::invalid_argument("cb_exact_cp: gamma(omega) is not positive semidefinite");
    return operator_norm(apply_map(p, CMat::Identity(p.n, p.n)));
}

namespace detail {

// (Phi (x) id_k)(X): Phi applied to each n x n block of the kn x kn input.
inline CMat amplify(const PertElement& p, const CMat& x, int level) {
    const int n = p.n;
    CMat y(level * n, level * n);
    for (int u = 0; u < level; ++u)
        for (int v = 0; v < level; ++v)
            y.block(u * n, v * n, n, n) = apply_map(p, x.block(u * n, v * n, n, n));
    return y;
}

inline double amplified_ratio(const PertElement& p, const CMat& x, int level) {
    const double denom = operator_norm(x);
    if (denom <= 0.0) return 0.0;
    return operator_norm(amplify(p, x, level)) / denom;
}

}  // namespace detail

// Lower bound on the cb norm by sampling the level-k amplification. The
// sample set at each level contains the identity, the entangled unit-pattern
// witness sum E_uv (x) E_uv, its index-swapped partner sum E_uv (x) E_vu
// (which certifies the transpose value), and `trials` Gaussian matrices.
// Levels 1..level all contribute, so the bound is nondecreasing in `level`
// for a fixed seed.
inline double cb_lower(const PertElement& p, int level, int trials, std::uint64_t seed) {
    if (level < 1) throw std::invalid_argument("cb_lower: level must be >= 1");
    if (trials < 0) throw std::invalid_argument("cb_lower: trials must be >= 0");
    const int n = p.n;
    SplitMix64 root(seed);
    double best = 0.0;
    for (int k = 1; k <= level; ++k) {
        const int m = std::min(k, n);
        best = std::max(best, detail::amplified_ratio(p, CMat::Identity(k * n, k * n), k));
        CMat entangled = CMat::Zero(k * n, k * n);
        CMat swapped = CMat::Zero(k * n, k * n);
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v) {
                entangled(u * n + u, v * n + v) = 1.0;
                swapped(u * n + v, v * n + u) = 1.0;
            }
        best = std::max(best, detail::amplified_ratio(p, entangled, k));
        best = std::max(best, detail::amplified_ratio(p, swapped, k));
        SplitMix64 g = root.fork(k);
        for (int t = 0; t < trials; ++t) {
            const CMat x = random_cmat(k * n, k * n, g);
            best = std::max(best, detail::amplified_ratio(p, x, k));
        }
    }
    return best;
}

// --------------------------- the UCP condition ---------------------------

struct UcpConditionResult {
    double lhs;  // ||Delta * conj(W)||
    double rhs;  // ||Delta|| = sqrt(n)
    bool holds;
};

// Necessary condition for the map of W to be unital completely positive.
inline UcpConditionResult ucp_condition(const MapMatrixW& w, const Tol& tol = {}) {
    if (w.w.rows() != 2 * w.n - 1 || w.w.cols() != 2 * w.n - 1)
        throw std::invalid_argument("ucp_condition: W has wrong dimensions");
    const CMat d = delta(w.n);
    const double lhs = operator_norm(d * w.w.conjugate());
    const double rhs = operator_norm(d);
    return UcpConditionResult{lhs, rhs, lhs <= rhs + threshold(tol, rhs)};
}

// --------------------------- the combined report -------------------------

struct NormReport {
    double min_norm;
    std::optional<double> haagerup_upper;  // absent when no representation is available
    std::optional<double> cb_exact;        // present iff gamma(omega) is PSD
    double cb_lower;
    std::optional<UcpConditionResult> ucp;  // absent when the element is not invariant
    bool gap_flagged;  // the Haagerup bound strictly exceeds the matrix norm
};

inline NormReport norm_report(const PertElement& p, int level, int trials,
                              std::uint64_t seed, const Tol& tol = {}) {
    NormReport r{};
    r.min_norm = min_norm(p);

    const CMat choi = gamma(p.omega);
    if (p.family) {
        r.haagerup_upper = haagerup_upper(*p.family);
    } else if (hermitian_defect(choi) <= threshold(tol, p.omega.norm())) {
        r.haagerup_upper = haagerup_upper(kraus_from_hermitian_choi(choi, tol));
    }

    if (is_psd(choi, tol)) r.cb_exact = cb_exact_cp(p, tol);
    r.cb_lower = cb_lower(p, level, trials, seed);

    try {
        r.ucp = ucp_condition(w_from_map(p, tol), tol);
    } catch (const std::runtime_error&) {
        r.ucp = std::nullopt;
    }

    r.gap_flagged = r.haagerup_upper.has_value() &&
                    *r.haagerup_upper - r.min_norm > threshold(tol, std::max(1.0, r.min_norm));
    return r;
}

}  // namespace toepsys
