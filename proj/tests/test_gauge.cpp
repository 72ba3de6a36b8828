#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toepsys/gauge.hpp"
#include "toepsys/rng.hpp"
#include "toepsys/toeplitz.hpp"

#include <cmath>
#include <numbers>

using namespace toepsys;

TEST_CASE("u_alpha_beta: identity, the 3x3 display, parameter validation") {
    CHECK((u_alpha_beta(4, 1.0, 1.0) - CMat::Identity(4, 4)).norm() == doctest::Approx(0.0));

    const Complex a = std::polar(1.0, 0.7), b = std::polar(1.0, -1.9);
    const CMat u = u_alpha_beta(3, a, b);
    CHECK(std::abs(u(0, 0) - a) <= 1e-15);
    CHECK(std::abs(u(1, 1) - b) <= 1e-15);
    CHECK(std::abs(u(2, 2) - std::conj(a) * b * b) <= 1e-14);
    CHECK((u - CMat(u.diagonal().asDiagonal())).norm() == doctest::Approx(0.0));

    CHECK_THROWS_AS((void)u_alpha_beta(3, Complex(2.0, 0.0), 1.0), std::invalid_argument);
}

TEST_CASE("u_alpha_beta: conjugation scales the superdiagonal by conj(omega)") {
    SplitMix64 rng(19);
    const int n = 5;
    const Complex a = rng.unimodular(), b = rng.unimodular();
    const CMat u = u_alpha_beta(n, a, b);
    const CMat conj_t = u.adjoint() * tau(n, 1) * u;
    const Complex w = a * std::conj(b);
    CHECK((conj_t - schur(omega_mask(n, w), tau(n, 1))).norm() <= 1e-12);
    CHECK((conj_t - std::conj(w) * tau(n, 1)).norm() <= 1e-12);
}

TEST_CASE("v_flip: involution realizing the transpose on the system only") {
    CMat expect(2, 2);
    expect << 0, 1, 1, 0;
    CHECK((v_flip(2) - expect).norm() == doctest::Approx(0.0));

    SplitMix64 rng(29);
    for (int n = 2; n <= 6; ++n) {
        const CMat v = v_flip(n);
        CHECK((v * v - CMat::Identity(n, n)).norm() <= 1e-15);
        CHECK((v.adjoint() - v).norm() <= 1e-15);
        for (int trial = 0; trial < 50; ++trial) {
            const CMat t = detail::random_toeplitz(n, rng);
            CHECK((v.adjoint() * t * v - t.transpose()).norm() <= 1e-12);
        }
    }
    // off the system the identity fails
    const CMat m = random_cmat(3, 3, rng);
    const CMat v3 = v_flip(3);
    CHECK((v3.adjoint() * m * v3 - m.transpose()).norm() >= 1e-3);
}

TEST_CASE("is_gauge: generators pass, dense unitaries fail") {
    ToeplitzSystem sys(4);
    const Complex a(0.0, 1.0);
    const Complex b = std::polar(1.0, std::numbers::pi / 3.0);
    CHECK(is_gauge(u_alpha_beta(4, a, b), sys));
    CHECK(is_gauge(v_flip(4), sys));
    CHECK(is_gauge(CMat(v_flip(4) * u_alpha_beta(4, a, b)), sys));

    SplitMix64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        ToeplitzSystem sys3(3);
        CHECK_FALSE(is_gauge(random_unitary(3, rng), sys3));
    }
    CHECK_THROWS_AS((void)is_gauge(CMat::Identity(3, 3), sys), std::invalid_argument);
}

TEST_CASE("classify: round trips and chain validation") {
    SplitMix64 rng(47);
    const Complex a = rng.unimodular(), b = rng.unimodular();
    const GaugeElement d = classify(u_alpha_beta(5, a, b));
    CHECK(d.kind == GaugeKind::Diagonal);
    CHECK(std::abs(d.alpha - a) <= 1e-12);
    CHECK(std::abs(d.beta - b) <= 1e-12);

    const GaugeElement f = classify(v_flip(6));
    CHECK(f.kind == GaugeKind::AntiDiagonal);
    CHECK(std::abs(f.alpha - 1.0) <= 1e-12);
    CHECK(std::abs(f.beta - 1.0) <= 1e-12);

    // diag(1, i, -1) satisfies the chain with alpha = 1, beta = i
    CMat diag3 = CMat::Zero(3, 3);
    diag3(0, 0) = 1.0;
    diag3(1, 1) = Complex(0.0, 1.0);
    diag3(2, 2) = -1.0;
    const GaugeElement g = classify(diag3);
    CHECK(g.kind == GaugeKind::Diagonal);
    CHECK(std::abs(g.alpha - 1.0) <= 1e-12);
    CHECK(std::abs(g.beta - Complex(0.0, 1.0)) <= 1e-12);

    // a diagonal unitary off the chain is rejected
    CMat bad = CMat::Identity(3, 3);
    bad(2, 2) = Complex(0.0, 1.0);  // chain demands 1
    CHECK_THROWS_AS((void)classify(bad), std::invalid_argument);

    // dense unitaries are neither shape
    CHECK_THROWS_AS((void)classify(random_unitary(4, rng)), std::invalid_argument);
}

TEST_CASE("classify: materialization inverts classification on generator words") {
    SplitMix64 rng(53);
    ToeplitzSystem sys(4);
    for (int trial = 0; trial < 1000; ++trial) {
        const int len = 1 + int(rng.next() % 4);
        CMat word = CMat::Identity(4, 4);
        for (int s = 0; s < len; ++s) {
            if (rng.next() % 3 == 0)
                word = word * v_flip(4);
            else
                word = word * u_alpha_beta(4, rng.unimodular(), rng.unimodular());
        }
        REQUIRE(is_gauge(word, sys));
        const GaugeElement g = classify(word);  // must never throw here
        CHECK((materialize(g) - word).norm() <= 1e-9);
    }
}

TEST_CASE("act: unital cases, transpose element, Toeplitz guard") {
    SplitMix64 rng(59);
    const CMat t = detail::random_toeplitz(4, rng);
    CHECK((act(gauge_element(4, GaugeKind::Diagonal, 1.0, 1.0), t) - t).norm() <= 1e-12);

    const GaugeElement g = detail::random_gauge_element(4, rng);
    CHECK((act(g, tau(4, 0)) - tau(4, 0)).norm() <= 1e-12);

    CHECK((act(gauge_element(4, GaugeKind::AntiDiagonal, 1.0, 1.0), t) - t.transpose()).norm() <=
          1e-12);

    CHECK_THROWS_AS((void)act(g, random_cmat(4, 4, rng)), std::invalid_argument);
}

TEST_CASE("act: conjugation and Schur-mask paths agree") {
    SplitMix64 rng(61);
    for (int n : {2, 3, 6}) {
        for (int trial = 0; trial < 60; ++trial) {
            const GaugeElement g = detail::random_gauge_element(n, rng);
            const CMat t = detail::random_toeplitz(n, rng);
            CHECK((act(g, t) - act_schur(g, t)).norm() <= 1e-10 * (1.0 + t.norm()));
        }
    }
}

TEST_CASE("act: conjugation composes contravariantly") {
    SplitMix64 rng(67);
    const int n = 4;
    const CMat u1 = materialize(detail::random_gauge_element(n, rng));
    const CMat u2 = materialize(detail::random_gauge_element(n, rng));
    const CMat t = detail::random_toeplitz(n, rng);
    const CMat lhs = (u1 * u2).adjoint() * t * (u1 * u2);
    const CMat rhs = u2.adjoint() * (u1.adjoint() * t * u1) * u2;
    CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + t.norm()));
}

TEST_CASE("group_checks: clean reports at small and medium size") {
    for (int n : {2, 8}) {
        const GroupReport rep = group_checks(n, 100, 2024);
        REQUIRE(rep.checks.size() == 4);
        for (const auto& c : rep.checks) {
            INFO(c.name, " residual ", c.max_residual);
            CHECK(c.pass);
        }
        CHECK(rep.all_pass());
    }
    CHECK_THROWS_AS((void)group_checks(1, 10, 1), std::invalid_argument);
}

TEST_CASE("group_checks: reports are deterministic for a fixed seed") {
    const GroupReport a = group_checks(3, 50, 99);
    const GroupReport b = group_checks(3, 50, 99);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].name == b.checks[i].name);
        CHECK(a.checks[i].max_residual == b.checks[i].max_residual);
    }
}

TEST_CASE("kernel: equal phases act trivially") {
    SplitMix64 rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const Complex a = rng.unimodular();
        const CMat t = detail::random_toeplitz(5, rng);
        CHECK((act(gauge_element(5, GaugeKind::Diagonal, a, a), t) - t).norm() <=
              1e-10 * (1.0 + t.norm()));
    }
}
