// generators.hpp — test-side constructions of semigroup members and families.
// These build elements from first principles (unitary conjugations, pinchings,
// convex/affine mixtures) so that membership predicates are exercised against
// independently constructed inputs.

#pragma once

#include "toepsys/gauge.hpp"
#include "toepsys/pert.hpp"
#include "toepsys/rng.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace toepsys::testgen {

inline CMat unit(int n, int i, int j) {
    CMat e = CMat::Zero(n, n);
    e(i, j) = 1.0;
    return e;
}

// x -> sum_i E_ii x E_ii keeps the main diagonal; unital, invariant, CP.
inline KrausFamily pinching_family(int n) {
    KrausFamily f{n, {}};
    for (int i = 0; i < n; ++i) f.pairs.emplace_back(unit(n, i, i), unit(n, i, i));
    return f;
}

// x -> V x V transposes Toeplitz inputs; a unitary conjugation, hence CP.
inline KrausFamily flip_family(int n) {
    const CMat v = v_flip(n);
    return KrausFamily{n, {{v, v}}};
}

// x -> sum_ij E_ij x E_ij: the transpose on all of M_n.
inline KrausFamily unit_transpose_family(int n) {
    KrausFamily f{n, {}};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f.pairs.emplace_back(unit(n, i, j), unit(n, i, j));
    return f;
}

// x -> u* x u for a random gauge unitary.
inline KrausFamily gauge_pair_family(int n, SplitMix64& rng) {
    const CMat u = materialize(detail::random_gauge_element(n, rng));
    return KrausFamily{n, {{CMat(u.adjoint()), u}}};
}

inline KrausFamily pick_component(int n, SplitMix64& rng) {
    switch (rng.next() % 4) {
        case 0: return pinching_family(n);
        case 1: return flip_family(n);
        default: return gauge_pair_family(n, rng);
    }
}

// Convex combination of unital CP invariant components; always a member of
// the positive sub-semigroup.
inline PertElement random_pert_plus(int n, SplitMix64& rng) {
    const int parts = 1 + static_cast<int>(rng.next() % 3);
    std::vector<KrausFamily> components;
    std::vector<double> weights;
    double total = 0.0;
    for (int i = 0; i < parts; ++i) {
        components.push_back(pick_component(n, rng));
        const double w = 0.05 + rng.uniform();
        weights.push_back(w);
        total += w;
    }
    KrausFamily f{n, {}};
    for (int i = 0; i < parts; ++i) {
        const double root = std::sqrt(weights[i] / total);
        for (const auto& [a, b] : components[i].pairs)
            f.pairs.emplace_back(root * a, root * b);
    }
    PertElement p = omega_from_family(f);
    if (rng.next() % 3 == 0) {
        // take one semigroup product for extra variety
        SplitMix64 sub = rng.fork(7);
        p = compose(p, random_pert_plus(n, sub));
    }
    return p;
}

// Real affine combination (coefficients sum to 1, some negative): keeps
// unitality, invariance and Hermitian symmetry, generically loses positivity.
inline PertElement random_pert(int n, SplitMix64& rng) {
    const int parts = 3 + static_cast<int>(rng.next() % 2);
    std::vector<KrausFamily> components;
    std::vector<double> raw;
    double total = 0.0;
    do {
        components.clear();
        raw.clear();
        total = 0.0;
        for (int i = 0; i < parts; ++i) {
            components.push_back(pick_component(n, rng));
            const double r = -0.4 + 1.4 * rng.uniform();
            raw.push_back(r);
            total += r;
        }
    } while (std::abs(total) < 0.3);
    KrausFamily f{n, {}};
    for (int i = 0; i < parts; ++i) {
        const double coeff = raw[i] / total;
        for (const auto& [a, b] : components[i].pairs)
            f.pairs.emplace_back(coeff * a, b);
    }
    return omega_from_family(f);
}

// k Gaussian pairs together with their involutes (b*, a*): the matrix-level
// symmetry condition holds exactly.
inline KrausFamily random_symmetric_family(int n, int k, SplitMix64& rng) {
    KrausFamily f{n, {}};
    for (int i = 0; i < k; ++i) {
        const CMat a = random_cmat(n, n, rng);
        const CMat b = random_cmat(n, n, rng);
        f.pairs.emplace_back(a, b);
        f.pairs.emplace_back(b.adjoint(), a.adjoint());
    }
    return f;
}

// k Gaussian pairs with no closure; the symmetry defect is generically O(1).
inline KrausFamily random_asymmetric_family(int n, int k, SplitMix64& rng) {
    KrausFamily f{n, {}};
    for (int i = 0; i < k; ++i)
        f.pairs.emplace_back(random_cmat(n, n, rng), random_cmat(n, n, rng));
    return f;
}

// PSD matrix of size m with the given rank, scaled to unit spectral order.
inline CMat random_psd(int m, int rank, SplitMix64& rng) {
    const CMat g = random_cmat(m, rank, rng);
    CMat c = g * g.adjoint();
    return c / operator_norm(c);
}

}  // namespace toepsys::testgen
