// gauge.hpp — The gauge group of Toep_n: unitaries preserving the system
// under conjugation. Every element is diagonal or anti-diagonal; diagonal
// elements follow the two-parameter chain diag(alpha, beta, conj(alpha)*beta^2,
// ...) and anti-diagonal elements factor as V * U_{alpha,beta} with V the
// flip permutation. Diagonal action is a Schur multiplier by the phase
// Vandermonde mask Omega_omega, omega = alpha * conj(beta).

#pragma once

#include "toepsys/linalg.hpp"
#include "toepsys/rng.hpp"
#include "toepsys/toeplitz.hpp"
#include "toepsys/types.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toepsys {

inline constexpr double kUnimodularTol = 1e-12;

// Validates |z| = 1 within kUnimodularTol, then renormalizes exactly so that
// long generator words stay unitary.
inline Complex require_unimodular(Complex z, const char* what) {
    const double m = std::abs(z);
    if (std::abs(m - 1.0) > kUnimodularTol)
        throw std::invalid_argument(std::string(what) + ": parameter is not unimodular");
    return z / m;
}

enum class GaugeKind { Diagonal, AntiDiagonal };

struct GaugeElement {
    int n;
    GaugeKind kind;
    Complex alpha;
    Complex beta;
};

inline GaugeElement gauge_element(int n, GaugeKind kind, Complex alpha, Complex beta) {
    if (n < 1) throw std::invalid_argument("gauge_element: n must be >= 1");
    return GaugeElement{n, kind, require_unimodular(alpha, "gauge_element"),
                        require_unimodular(beta, "gauge_element")};
}

// Diagonal generator: entries alpha, beta, then each next entry times
// conj(alpha)*beta, i.e. entry i (1-based) is conj(alpha)^(i-2) * beta^(i-1).
inline CMat u_alpha_beta(int n, Complex alpha, Complex beta) {
    if (n < 1) throw std::invalid_argument("u_alpha_beta: n must be >= 1");
    alpha = require_unimodular(alpha, "u_alpha_beta");
    beta = require_unimodular(beta, "u_alpha_beta");
    CMat u = CMat::Zero(n, n);
    Complex d = alpha;
    const Complex step = std::conj(alpha) * beta;
    for (int i = 0; i < n; ++i) {
        u(i, i) = d;
        d = (i == 0) ? beta : d * step;
    }
    return u;
}

// Anti-diagonal permutation: ones from top-right to bottom-left. V^2 = I,
// V* = V, and V*(.)V transposes Toeplitz matrices.
inline CMat v_flip(int n) {
    if (n < 1) throw std::invalid_argument("v_flip: n must be >= 1");
    CMat v = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) v(i, n - 1 - i) = 1.0;
    return v;
}

inline CMat materialize(const GaugeElement& g) {
    CMat u = u_alpha_beta(g.n, g.alpha, g.beta);
    if (g.kind == GaugeKind::AntiDiagonal) return v_flip(g.n) * u;
    return u;
}

// The Schur-multiplier phase of a gauge element.
inline Complex omega_phase(const GaugeElement& g) { return g.alpha * std::conj(g.beta); }

// Mask with entry (i, j) = omega^(i-j); negative powers are conjugates.
struct OmegaMultiplier {
    int n;
    Complex omega;

    CMat matrix() const {
        const Complex w = omega;
        CMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Complex p(1.0, 0.0);
                for (int d = 0; d < std::abs(i - j); ++d) p *= w;
                m(i, j) = (i >= j) ? p : std::conj(p);
            }
        return m;
    }
};

inline CMat omega_mask(int n, Complex omega) {
    return OmegaMultiplier{n, require_unimodular(omega, "omega_mask")}.matrix();
}

// --------------------------- membership ---------------------------------

struct GaugeResidual {
    double unitarity;   // ||u* u - I||_F
    double membership;  // max_k distance of u* tau_k u from Toep_n
};

inline GaugeResidual gauge_residual(const CMat& u, const ToeplitzSystem& sys) {
    const int n = sys.n;
    GaugeResidual r{};
    r.unitarity = (u.adjoint() * u - CMat::Identity(n, n)).norm();
    r.membership = 0.0;
    for (int k = -n + 1; k <= n - 1; ++k) {
        CMat conj_t = u.adjoint() * tau(n, k) * u;
        r.membership = std::max(r.membership, membership_residual(conj_t, sys));
    }
    return r;
}

// True iff u is unitary and conjugation by u maps every basis element back
// into Toep_n (linearity extends the basis certificate to the whole system).
inline bool is_gauge(const CMat& u, const ToeplitzSystem& sys, const Tol& tol = {}) {
    if (u.rows() != sys.n || u.cols() != sys.n)
        throw std::invalid_argument("is_gauge: matrix size does not match system");
    const double scale = std::sqrt(static_cast<double>(sys.n));
    const GaugeResidual r = gauge_residual(u, sys);
    return r.unitarity <= threshold(tol, scale) && r.membership <= threshold(tol, scale);
}

// --------------------------- classification ------------------------------

// Recovers (kind, alpha, beta) from a gauge unitary and validates the full
// diagonal chain; a mismatch is an error, never a silent projection.
inline GaugeElement classify(const CMat& u, const Tol& tol = {}) {
    if (u.rows() != u.cols() || u.rows() < 1)
        throw std::invalid_argument("classify: matrix must be square and nonempty");
    const int n = static_cast<int>(u.rows());
    const double shape_thr = threshold(tol, u.norm());
    const double match_thr = threshold(tol, std::sqrt(static_cast<double>(n)));

    auto diagonal_params = [&](const CMat& d) -> std::optional<std::pair<Complex, Complex>> {
        CMat off = d;
        off.diagonal().setZero();
        if (off.norm() > shape_thr) return std::nullopt;
        const Complex alpha = d(0, 0);
        const Complex beta = (n >= 2) ? d(1, 1) : d(0, 0);
        return std::make_pair(alpha, beta);
    };

    if (auto p = diagonal_params(u)) {
        GaugeElement g = gauge_element(n, GaugeKind::Diagonal, p->first, p->second);
        if ((materialize(g) - u).norm() <= match_thr) return g;
        throw std::invalid_argument("classify: diagonal entries violate the generator chain");
    }
    CMat flipped = u.colwise().reverse();  // V * u
    if (auto p = diagonal_params(flipped)) {
        GaugeElement g = gauge_element(n, GaugeKind::AntiDiagonal, p->first, p->second);
        if ((materialize(g) - u).norm() <= match_thr) return g;
        throw std::invalid_argument("classify: anti-diagonal entries violate the generator chain");
    }
    throw std::invalid_argument("classify: matrix is neither diagonal nor anti-diagonal");
}

// --------------------------- action -------------------------------------

// Conjugation action u*(.)u on a Toeplitz input.
inline CMat act(const GaugeElement& g, const CMat& t, const Tol& tol = {}) {
    ToeplitzSystem sys(g.n);
    if (!is_member(t, sys, tol))
        throw std::invalid_argument("act: input is not in Toep_n within tolerance");
    const CMat u = materialize(g);
    return u.adjoint() * t * u;
}

// Same action through the Schur-multiplier identities: Omega_omega masks the
// input (Diagonal) or its transpose (AntiDiagonal), omega = alpha*conj(beta).
inline CMat act_schur(const GaugeElement& g, const CMat& t) {
    const CMat mask = OmegaMultiplier{g.n, omega_phase(g)}.matrix();
    if (g.kind == GaugeKind::Diagonal) return schur(mask, t);
    return schur(mask, t.transpose());
}

// --------------------------- randomized verification ---------------------

struct GroupCheck {
    std::string name;
    bool pass;
    double max_residual;
};

struct GroupReport {
    int n;
    int trials;
    std::uint64_t seed;
    std::vector<GroupCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline GaugeElement random_gauge_element(int n, SplitMix64& g) {
    const GaugeKind kind = (g.next() & 1u) ? GaugeKind::AntiDiagonal : GaugeKind::Diagonal;
    return gauge_element(n, kind, g.unimodular(), g.unimodular());
}

inline CMat random_toeplitz(int n, SplitMix64& g) {
    CVec diag(2 * n - 1);
    for (int i = 0; i < 2 * n - 1; ++i) diag(i) = g.cgaussian();
    return embed(ToeplitzCoeffs{n, diag});
}

}  // namespace detail

// Randomized group-structure report: generator-word closure, the extra
// U(1) kernel acting trivially, the flip/phase exchange relation, and
// agreement of the conjugation and Schur-multiplier action paths.
inline GroupReport group_checks(int n, int trials, std::uint64_t seed, const Tol& tol = {}) {
    if (n < 2) throw std::invalid_argument("group_checks: n must be >= 2");
    if (trials < 1) throw std::invalid_argument("group_checks: trials must be >= 1");
    ToeplitzSystem sys(n);
    SplitMix64 root(seed);
    GroupReport report{n, trials, seed, {}};
    const double pass_thr = threshold(tol, std::sqrt(static_cast<double>(n)));

    // (a) products of random generators stay in the gauge group and classify
    double closure_res = 0.0;
    bool closure_ok = true;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 g = root.fork(t);
        const int len = 2 + static_cast<int>(g.next() % 4);
        CMat word = CMat::Identity(n, n);
        for (int s = 0; s < len; ++s) {
            if (g.next() % 3 == 0)
                word = word * v_flip(n);
            else
                word = word * u_alpha_beta(n, g.unimodular(), g.unimodular());
        }
        const GaugeResidual r = gauge_residual(word, sys);
        closure_res = std::max({closure_res, r.unitarity, r.membership});
        try {
            const GaugeElement e = classify(word, tol);
            closure_res = std::max(closure_res, (materialize(e) - word).norm());
        } catch (const std::invalid_argument&) {
            closure_ok = false;
        }
    }
    report.checks.push_back({"closure", closure_ok && closure_res <= pass_thr, closure_res});

    // (b) kernel: alpha = beta acts trivially (mask degenerates to all-ones)
    double kernel_res = 0.0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 g = root.fork(0x10000u + t);
        const Complex a = g.unimodular();
        const CMat tm = detail::random_toeplitz(n, g);
        const GaugeElement e = gauge_element(n, GaugeKind::Diagonal, a, a);
        kernel_res = std::max(kernel_res, (act(e, tm, tol) - tm).norm() / tm.norm());
    }
    report.checks.push_back({"kernel", kernel_res <= pass_thr, kernel_res});

    // (c) transpose conjugates the phase: flip . mask_w . flip = mask_conj(w)
    double semi_res = 0.0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 g = root.fork(0x20000u + t);
        const Complex w = g.unimodular();
        const CMat tm = detail::random_toeplitz(n, g);
        const CMat lhs = schur(omega_mask(n, w), tm.transpose().eval()).transpose();
        const CMat rhs = schur(omega_mask(n, std::conj(w)), tm);
        semi_res = std::max(semi_res, (lhs - rhs).norm() / tm.norm());
    }
    report.checks.push_back({"semidirect", semi_res <= pass_thr, semi_res});

    // (d) conjugation equals the Schur path for all three generator layouts
    double act_res = 0.0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 g = root.fork(0x30000u + t);
        const Complex alpha = g.unimodular();
        const Complex beta = g.unimodular();
        const CMat tm = detail::random_toeplitz(n, g);
        const CMat u = u_alpha_beta(n, alpha, beta);
        const CMat v = v_flip(n);
        const Complex w = alpha * std::conj(beta);
        const CMat mask = omega_mask(n, w);
        const CMat mask_conj = omega_mask(n, std::conj(w));
        const double scale = tm.norm();
        act_res = std::max(act_res,
                           (u.adjoint() * tm * u - schur(mask, tm)).norm() / scale);
        const CMat vu = v * u;
        act_res = std::max(act_res, (vu.adjoint() * tm * vu -
                                     schur(mask, tm.transpose().eval())).norm() / scale);
        const CMat uv = u * v;
        act_res = std::max(act_res, (uv.adjoint() * tm * uv -
                                     schur(mask_conj, tm.transpose().eval())).norm() / scale);
        const GaugeElement e = detail::random_gauge_element(n, g);
        act_res = std::max(act_res, (act(e, tm, tol) - act_schur(e, tm)).norm() / scale);
    }
    report.checks.push_back({"schur_action", act_res <= pass_thr, act_res});

    return report;
}

}  // namespace toepsys
