// rng.hpp — Seeded splitmix64 generator with Gaussian/unimodular helpers.
// Used everywhere randomness appears so that reports and tests are
// reproducible across platforms (no std::*_distribution).

#pragma once

#include "toepsys/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>

namespace toepsys {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (fixed algorithm, platform-independent).
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    Complex cgaussian() { return Complex(gaussian(), gaussian()); }

    // Uniform point on the unit circle.
    Complex unimodular() {
        const double theta = 2.0 * std::numbers::pi * uniform();
        return Complex(std::cos(theta), std::sin(theta));
    }

    // Independent stream for trial/check number `index`, so that per-trial
    // results do not depend on evaluation order.
    SplitMix64 fork(std::uint64_t index) {
        SplitMix64 g(state ^ (0x632be59bd9b4e019ULL * (index + 1)));
        g.next();
        return g;
    }
};

// Dense matrix with iid complex Gaussian entries.
inline CMat random_cmat(Eigen::Index rows, Eigen::Index cols, SplitMix64& g) {
    CMat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = g.cgaussian();
    return m;
}

// Haar-ish unitary: QR of a complex Gaussian with the phase fix Q*diag(r/|r|).
inline CMat random_unitary(Eigen::Index n, SplitMix64& g) {
    CMat a = random_cmat(n, n, g);
    Eigen::HouseholderQR<CMat> qr(a);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        const double m = std::abs(d);
        q.col(i) *= (m > 0.0) ? d / m : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace toepsys
