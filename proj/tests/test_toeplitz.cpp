#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toepsys/gauge.hpp"
#include "toepsys/rng.hpp"
#include "toepsys/toeplitz.hpp"

#include <cmath>
#include <numbers>

using namespace toepsys;

namespace {

CMat unit(int n, int i, int j) {
    CMat e = CMat::Zero(n, n);
    e(i, j) = 1.0;
    return e;
}

CVec circle_samples(int m_count, double (*re)(double), double (*im)(double)) {
    CVec s(m_count);
    for (int m = 0; m < m_count; ++m) {
        const double t = 2.0 * std::numbers::pi * m / m_count;
        s(m) = Complex(re(t), im(t));
    }
    return s;
}

}  // namespace

TEST_CASE("tau: placement, adjoints, range check") {
    CHECK((tau(2, 0) - CMat::Identity(2, 2)).norm() == doctest::Approx(0.0));
    CHECK((tau(3, 1) - (unit(3, 0, 1) + unit(3, 1, 2))).norm() == doctest::Approx(0.0));
    for (int n : {2, 5}) {
        for (int k = -n + 1; k <= n - 1; ++k)
            CHECK((tau(n, k).adjoint() - tau(n, -k)).norm() == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS((void)tau(3, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)tau(3, -3), std::invalid_argument);
}

TEST_CASE("tau: basis is Frobenius-orthogonal with norms n - |k|") {
    const int n = 5;
    for (int j = -n + 1; j <= n - 1; ++j)
        for (int k = -n + 1; k <= n - 1; ++k) {
            const Complex inner = (tau(n, j).adjoint() * tau(n, k)).trace();
            const double expect = (j == k) ? double(n - std::abs(k)) : 0.0;
            CHECK(std::abs(inner - expect) <= 1e-12);
        }
}

TEST_CASE("is_member: positives, negatives, closure under Schur masks") {
    ToeplitzSystem sys3(3);
    CHECK(is_member(CMat::Identity(3, 3), sys3));
    CHECK_FALSE(is_member(unit(3, 0, 1), sys3));  // superdiagonal entries 1, 0

    SplitMix64 rng(3);
    ToeplitzSystem sys5(5);
    for (int trial = 0; trial < 25; ++trial) {
        const CMat t = detail::random_toeplitz(5, rng);
        const CMat mask = omega_mask(5, rng.unimodular());
        CHECK(is_member(schur(mask, t), sys5));
    }
    CHECK_THROWS_AS((void)is_member(CMat::Identity(2, 2), sys3), std::invalid_argument);
}

TEST_CASE("project: indicators and explicit averaging") {
    const int n = 4;
    ToeplitzSystem sys(n);
    for (int k = -n + 1; k <= n - 1; ++k) {
        const ToeplitzCoeffs c = project(tau(n, k), sys);
        for (int j = -n + 1; j <= n - 1; ++j)
            CHECK(std::abs(c.at(j) - ((j == k) ? 1.0 : 0.0)) <= 1e-12);
    }
    // single off-diagonal entry in M_2 averages to coefficient 1 on its diagonal
    const ToeplitzCoeffs c = project(unit(2, 0, 1), ToeplitzSystem(2));
    CHECK(std::abs(c.at(-1)) <= 1e-12);
    CHECK(std::abs(c.at(0)) <= 1e-12);
    CHECK(std::abs(c.at(1) - 1.0) <= 1e-12);
}

TEST_CASE("project: Frobenius-nearest Toeplitz matrix (grid-search oracle)") {
    SplitMix64 rng(9);
    ToeplitzSystem sys(2);
    for (int trial = 0; trial < 5; ++trial) {
        const CMat t = random_cmat(2, 2, rng);
        const ToeplitzCoeffs best = project(t, sys);
        const double best_res = (t - embed(best)).norm();
        // scan a coefficient grid around the projection; nothing beats it
        for (int dk = -1; dk <= 1; ++dk)
            for (double step : {-0.37, -0.11, 0.13, 0.29})
                for (double imstep : {-0.17, 0.23}) {
                    ToeplitzCoeffs probe = best;
                    probe.diag(dk + 1) += Complex(step, imstep);
                    CHECK(best_res <= (t - embed(probe)).norm() + 1e-12);
                }
    }
    // idempotence of embed . project
    const CMat t = random_cmat(4, 4, rng);
    ToeplitzSystem sys4(4);
    const CMat fixed = embed(project(t, sys4));
    CHECK((embed(project(fixed, sys4)) - fixed).norm() <= 1e-12);
}

TEST_CASE("delta: explicit 2x2 display and column structure") {
    CMat expect(4, 3);
    expect << 0, 1, 0,
              1, 0, 0,
              0, 0, 1,
              0, 1, 0;
    CHECK((delta(2) - expect).norm() == doctest::Approx(0.0));

    for (int n : {2, 3, 6}) {
        const CMat d = delta(n);
        for (int k = -n + 1; k <= n - 1; ++k)
            CHECK((d.col(k + n - 1) - vec(tau(n, k))).norm() == doctest::Approx(0.0));
        // Delta* Delta = diag(n - |k|)
        CMat gram = d.adjoint() * d;
        for (int j = -n + 1; j <= n - 1; ++j)
            for (int k = -n + 1; k <= n - 1; ++k) {
                const double expect_entry = (j == k) ? double(n - std::abs(k)) : 0.0;
                CHECK(std::abs(gram(j + n - 1, k + n - 1) - expect_entry) <= 1e-12);
            }
    }
}

TEST_CASE("delta: full column rank and norm sqrt(n) up to n = 8") {
    for (int n = 1; n <= 8; ++n) {
        const RVec sv = singular_values(delta(n));
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-9 * sv(0)) ++rank;
        CHECK(rank == 2 * n - 1);
        CHECK(std::abs(operator_norm(delta(n)) - std::sqrt(double(n))) <= 1e-9);
    }
}

TEST_CASE("truncate: orientation puts a_1 below the main diagonal") {
    CVec only_a0 = CVec::Zero(1);
    only_a0(0) = 1.0;
    CHECK((truncate(only_a0, 0, 4) - CMat::Identity(4, 4)).norm() == doctest::Approx(0.0));

    CVec only_a1 = CVec::Zero(3);  // indexed -1, 0, 1
    only_a1(2) = 1.0;
    CHECK((truncate(only_a1, 1, 4) - tau(4, -1)).norm() == doctest::Approx(0.0));

    CVec cosine = CVec::Zero(3);
    cosine(0) = 1.0;  // a_{-1}
    cosine(2) = 1.0;  // a_1
    CHECK((truncate(cosine, 1, 4) - (tau(4, 1) + tau(4, -1))).norm() == doctest::Approx(0.0));

    // coefficients beyond the matrix size are discarded
    CVec wide = CVec::Zero(9);  // indexed -4 ... 4
    wide(0) = 5.0;              // a_{-4}, invisible at n = 3
    wide(4) = 1.0;              // a_0
    CHECK((truncate(wide, 4, 3) - CMat::Identity(3, 3)).norm() == doctest::Approx(0.0));

    CHECK_THROWS_AS((void)truncate(only_a1, 2, 3), std::invalid_argument);
}

TEST_CASE("fourier_from_samples: discrete orthogonality") {
    CVec constant = CVec::Constant(12, Complex(2.0, -0.5));
    const CVec c0 = fourier_from_samples(constant, 3);
    for (int k = -3; k <= 3; ++k)
        CHECK(std::abs(c0(k + 3) - ((k == 0) ? Complex(2.0, -0.5) : Complex(0, 0))) <= 1e-12);

    const CVec exp_t = circle_samples(
        16, [](double t) { return std::cos(t); }, [](double t) { return std::sin(t); });
    const CVec c1 = fourier_from_samples(exp_t, 3);
    for (int k = -3; k <= 3; ++k)
        CHECK(std::abs(c1(k + 3) - ((k == 1) ? 1.0 : 0.0)) <= 1e-12);

    const CVec mix = circle_samples(
        16, [](double t) { return std::cos(2 * t) + std::cos(t); },
        [](double t) { return std::sin(2 * t) - std::sin(t); });
    const CVec c2 = fourier_from_samples(mix, 3);
    for (int k = -3; k <= 3; ++k) {
        const double expect = (k == 2 || k == -1) ? 1.0 : 0.0;
        CHECK(std::abs(c2(k + 3) - expect) <= 1e-12);
    }

    CHECK_THROWS_AS((void)fourier_from_samples(CVec::Zero(4), 2), std::invalid_argument);
}

TEST_CASE("truncate + fourier_from_samples reproduce the compression display") {
    const int n = 5;
    const CVec samples = circle_samples(
        64, [](double t) { return 2.0 * std::cos(t); }, [](double) { return 0.0; });
    const CMat compressed = truncate(fourier_from_samples(samples, n - 1), n - 1, n);
    CHECK((compressed - (tau(n, 1) + tau(n, -1))).norm() <= 1e-10);
}
