// pert.hpp — Perturbation-semigroup elements over Toep_n.
//
// An element is carried as the n^2 x n^2 Kronecker matrix
// omega = sum_i kron(a_i, b_i^T) of a Kraus family {(a_i, b_i)}; the opposite
// algebra is realized by transposition throughout. The induced map is
// Phi(omega): x -> sum_i a_i x b_i. With only the matrix available the action
// is recovered through the vectorization bridge
//
//     omega * vec(x^T) = vec((sum_i a_i x b_i)^T),
//
// i.e. Phi(omega)(x) = unvec(omega * vec(x^T))^T. Membership asks for
// unitality (Phi(I) = I), invariance (Phi maps Toep_n into itself) and the
// Hermitian symmetry of the gamma rearrangement; positivity of gamma(omega)
// singles out the completely positive sub-semigroup.

#pragma once

#include "toepsys/linalg.hpp"
#include "toepsys/toeplitz.hpp"
#include "toepsys/types.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace toepsys {

struct KrausFamily {
    int n;
    std::vector<std::pair<CMat, CMat>> pairs;  // (a_i, b_i), all n x n
};

struct PertElement {
    int n;
    CMat omega;                         // n^2 x n^2
    std::optional<KrausFamily> family;  // retained when the element was built from one
};

inline PertElement omega_from_family(const KrausFamily& f) {
    if (f.n < 1) throw std::invalid_argument("omega_from_family: n must be >= 1");
    if (f.pairs.empty()) throw std::invalid_argument("omega_from_family: family is empty");
    const int n = f.n;
    CMat omega = CMat::Zero(n * n, n * n);
    for (const auto& [a, b] : f.pairs) {
        if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
            throw std::invalid_argument("omega_from_family: pair dimension mismatch");
        omega += kron(a, b.transpose());
    }
    return PertElement{n, std::move(omega), f};
}

inline PertElement pert_from_omega(CMat omega) {
    if (omega.rows() != omega.cols())
        throw std::invalid_argument("pert_from_omega: matrix not square");
    const auto n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(omega.rows()))));
    if (static_cast<Eigen::Index>(n) * n != omega.rows())
        throw std::invalid_argument("pert_from_omega: side length is not a perfect square");
    return PertElement{n, std::move(omega), std::nullopt};
}

// The induced map Phi. Uses the family directly when present, otherwise the
// vectorization bridge on the Kronecker matrix.
inline CMat apply_map(const PertElement& p, const CMat& x) {
    const int n = p.n;
    if (x.rows() != n || x.cols() != n)
        throw std::invalid_argument("apply_map: input dimension mismatch");
    if (p.family) {
        CMat out = CMat::Zero(n, n);
        for (const auto& [a, b] : p.family->pairs) out += a * x * b;
        return out;
    }
    CVec image = p.omega * vec(x.transpose().eval());
    return unvec(image, n, n).transpose();
}

// Semigroup product: the Kronecker matrices multiply, and the induced maps
// compose with q applied first.
inline PertElement compose(const PertElement& p, const PertElement& q) {
    if (p.n != q.n) throw std::invalid_argument("compose: dimension mismatch");
    PertElement out{p.n, p.omega * q.omega, std::nullopt};
    if (p.family && q.family) {
        KrausFamily f{p.n, {}};
        f.pairs.reserve(p.family->pairs.size() * q.family->pairs.size());
        for (const auto& [a, b] : p.family->pairs)
            for (const auto& [at, bt] : q.family->pairs)
                f.pairs.emplace_back(a * at, bt * b);
        out.family = std::move(f);
    }
    return out;
}

// --------------------------- membership ---------------------------------

struct PertConditions {
    bool unital;
    bool invariant;
    bool symmetric;
    double unital_residual;
    double invariant_residual;
    double symmetric_residual;

    bool all() const { return unital && invariant && symmetric; }
};

// The three membership requirements, each with its residual: Phi(I) = I,
// Phi(tau_k) Toeplitz for every k, and gamma(omega) Hermitian.
inline PertConditions check_conditions(const PertElement& p, const Tol& tol = {}) {
    const int n = p.n;
    ToeplitzSystem sys(n);
    const double scale = std::sqrt(static_cast<double>(n));
    PertConditions out{};

    out.unital_residual = (apply_map(p, CMat::Identity(n, n)) - CMat::Identity(n, n)).norm();
    out.unital = out.unital_residual <= threshold(tol, scale);

    out.invariant_residual = 0.0;
    for (int k = -n + 1; k <= n - 1; ++k) {
        const CMat image = apply_map(p, tau(n, k));
        out.invariant_residual = std::max(out.invariant_residual, membership_residual(image, sys));
    }
    out.invariant = out.invariant_residual <= threshold(tol, scale);

    out.symmetric_residual = hermitian_defect(gamma(p.omega));
    out.symmetric = out.symmetric_residual <= threshold(tol, p.omega.norm());
    return out;
}

inline bool is_pert(const PertElement& p, const Tol& tol = {}) {
    return check_conditions(p, tol).all();
}

inline bool is_pert_plus(const PertElement& p, const Tol& tol = {}) {
    return is_pert(p, tol) && is_psd(gamma(p.omega), tol);
}

// --------------------------- the map matrix W ----------------------------

// Matrix of the induced map in the tau basis: Phi(tau_j) = sum_i w_ij tau_i,
// rows/columns indexed k = -n+1 ... n-1 (array position k+n-1). For members,
// the central column is the unit vector (unitality) and w_ij = conj(w_-i,-j)
// (Hermitian symmetry of the map).
struct MapMatrixW {
    int n;
    CMat w;  // (2n-1) x (2n-1)

    Complex at(int i, int j) const { return w(i + n - 1, j + n - 1); }
};

// W by expanding the images of the basis elements; throws if some image
// leaves the system.
inline MapMatrixW w_from_map(const PertElement& p, const Tol& tol = {}) {
    const int n = p.n;
    ToeplitzSystem sys(n);
    CMat w(2 * n - 1, 2 * n - 1);
    const double scale = std::sqrt(static_cast<double>(n));
    for (int j = -n + 1; j <= n - 1; ++j) {
        const CMat image = apply_map(p, tau(n, j));
        if (membership_residual(image, sys) > threshold(tol, scale))
            throw std::runtime_error("w_from_map: image of a basis element is not Toeplitz");
        w.col(j + n - 1) = project(image, sys).diag;
    }
    return MapMatrixW{n, std::move(w)};
}

// W through the linear identity omega*Delta = Delta*conj(W); Delta has full
// column rank, so the least-squares solution is the unique W. Must agree
// with w_from_map on every member.
inline MapMatrixW w_from_omega_solve(const PertElement& p, const Tol& tol = {}) {
    const CMat d = delta(p.n);
    const CMat rhs = p.omega * d;
    const LstsqResult sol = lstsq(d, rhs, tol);
    if (sol.residual > threshold(tol, rhs.norm()))
        throw std::runtime_error(
            "w_from_omega_solve: residual too large (omega does not preserve Toep_n)");
    return MapMatrixW{p.n, sol.solution.conjugate()};
}

// --------------------------- Kraus recovery ------------------------------

// Kraus family from a PSD rearrangement c = gamma(omega): eigenvectors of c,
// scaled by the root eigenvalue and reshaped row-major, give pairs
// (K, K*) with sum_v kron(K_v, conj(K_v)) = omega. Eigenvalues below the
// PSD slack are dropped; the pair count is the numerical rank of c.
inline KrausFamily kraus_from_choi(const CMat& c, const Tol& tol = {}) {
    if (!is_psd(c, tol))
        throw std::invalid_argument("kraus_from_choi: input is not positive semidefinite");
    const auto n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(c.rows()))));
    if (static_cast<Eigen::Index>(n) * n != c.rows())
        throw std::invalid_argument("kraus_from_choi: side length is not a perfect square");
    const HermitianEig eig = hermitian_eig(c, tol);
    const double top = std::max(0.0, eig.values.maxCoeff());
    const double cutoff = tol.psd_slack * std::max(1.0, top);
    KrausFamily f{n, {}};
    for (Eigen::Index v = eig.values.size() - 1; v >= 0; --v) {
        const double lambda = eig.values(v);
        if (lambda <= cutoff) break;  // ascending order: everything below is dropped
        const double root = std::sqrt(lambda);
        CMat k(n, n);
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < n; ++r) k(i, r) = root * eig.vectors(i * n + r, v);
        f.pairs.emplace_back(k, k.adjoint());
    }
    if (f.pairs.empty()) f.pairs.emplace_back(CMat::Zero(n, n), CMat::Zero(n, n));
    return f;
}

// Signed variant for a merely Hermitian rearrangement: pairs
// (sign * sqrt|lambda| * K, sqrt|lambda| * K*), reproducing omega with
// Hermitian (not necessarily PSD) gamma(omega).
inline KrausFamily kraus_from_hermitian_choi(const CMat& c, const Tol& tol = {}) {
    const auto n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(c.rows()))));
    if (static_cast<Eigen::Index>(n) * n != c.rows())
        throw std::invalid_argument("kraus_from_hermitian_choi: side length is not a perfect square");
    const HermitianEig eig = hermitian_eig(c, tol);
    double top = 0.0;
    for (Eigen::Index v = 0; v < eig.values.size(); ++v)
        top = std::max(top, std::abs(eig.values(v)));
    const double cutoff = tol.psd_slack * std::max(1.0, top);
    KrausFamily f{n, {}};
    for (Eigen::Index v = eig.values.size() - 1; v >= 0; --v) {
        const double lambda = eig.values(v);
        if (std::abs(lambda) <= cutoff) continue;
        const double root = std::sqrt(std::abs(lambda));
        const double sign = (lambda >= 0.0) ? 1.0 : -1.0;
        CMat k(n, n);
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < n; ++r) k(i, r) = root * eig.vectors(i * n + r, v);
        f.pairs.emplace_back(sign * k, k.adjoint());
    }
    if (f.pairs.empty()) f.pairs.emplace_back(CMat::Zero(n, n), CMat::Zero(n, n));
    return f;
}

// --------------------------- the 2x2 family ------------------------------

// The general parametrized element over Toep_2: a, b, c determine the induced
// map (W = [[a,0,conj(c)],[b,1,conj(b)],[c,0,conj(a)]]), z1 complex and
// z2, z4 real fill the kernel directions invisible to the map. Every
// parameter choice yields a member; positivity of gamma(omega) depends on
// the parameters.
inline PertElement toep2_parametrized(Complex a, Complex b, Complex c, Complex z1,
                                      double z2, double z4) {
    CMat omega(4, 4);
    const Complex one(1.0, 0.0);
    omega << one - z2, std::conj(b), b, Complex(z2, 0.0),
        -z1, std::conj(a), c, z1,
        -std::conj(z1), std::conj(c), a, std::conj(z1),
        one - z2 - z4, std::conj(b), b, Complex(z2 + z4, 0.0);
    return PertElement{2, std::move(omega), std::nullopt};
}

}  // namespace toepsys
