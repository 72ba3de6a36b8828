// toepsys — command-line surface over the Toeplitz operator-system library.
//
// Every run prints exactly one JSON report on stdout; diagnostics go to
// stderr. Exit codes: 0 success / predicate true, 1 predicate false,
// 2 input error, 3 numerical failure.

#include "toepsys/gauge.hpp"
#include "toepsys/io.hpp"
#include "toepsys/linalg.hpp"
#include "toepsys/norms.hpp"
#include "toepsys/pert.hpp"
#include "toepsys/rng.hpp"
#include "toepsys/toeplitz.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

using namespace toepsys;
using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

void emit(const json& report) { std::cout << report.dump(2) << std::endl; }

json check_entry(const std::string& name, bool pass, double residual) {
    return json{{"name", name}, {"pass", pass}, {"residual", residual}};
}

// CLI parameters are normalized onto the circle; a deviation beyond 1e-6 is
// reported (but not fatal).
Complex normalized_phase(const std::string& text, const char* what) {
    const Complex z = parse_complex(text);
    const double m = std::abs(z);
    if (m == 0.0)
        throw std::invalid_argument(std::string(what) + ": zero modulus cannot be normalized");
    if (std::abs(m - 1.0) > 1e-6)
        std::cerr << "warning: " << what << " normalized, |z| was " << m << "\n";
    return z / m;
}

CVec column_from_matrix_file(const json& j, const char* what) {
    CMat m = matrix_from_json(j);
    if (m.cols() != 1 && m.rows() != 1)
        throw std::invalid_argument(std::string(what) + ": expected a vector-shaped MatrixFile");
    CVec v(m.size());
    Eigen::Index p = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index c = 0; c < m.cols(); ++c) v(p++) = m(i, c);
    return v;
}

PertElement element_from_flags(int n, const std::string& family_path,
                               const std::string& omega_path) {
    if (!family_path.empty()) {
        KrausFamily f = family_from_json(load_json_file(family_path));
        if (f.n != n) throw std::invalid_argument("family file n does not match --n");
        return omega_from_family(f);
    }
    CMat omega = matrix_from_json(load_json_file(omega_path));
    PertElement p = pert_from_omega(std::move(omega));
    if (p.n != n) throw std::invalid_argument("omega file size does not match --n");
    return p;
}

// --------------------------- reference example table ---------------------

struct RefCheck {
    std::string name;
    double residual;
    double tol;
};

CMat unit_matrix(int n, int i, int j) {
    CMat e = CMat::Zero(n, n);
    e(i, j) = 1.0;
    return e;
}

std::vector<RefCheck> reference_examples(const Tol& tol) {
    std::vector<RefCheck> rows;
    auto add = [&](const std::string& name, double residual, double bound) {
        rows.push_back({name, residual, bound});
    };
    SplitMix64 rng(0x5eedULL);

    // vectorization reads columns top to bottom
    {
        CMat t(3, 3);
        t << 1, 2, 3, 4, 5, 6, 7, 8, 9;
        CVec expect(9);
        expect << 1, 4, 7, 2, 5, 8, 3, 6, 9;
        add("vec_column_stacking", (vec(t) - expect).norm(), 1e-12);
    }
    // vec(A X B^T) = kron(B, A) vec(X)
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            CMat a = random_cmat(2, 2, rng), b = random_cmat(2, 2, rng),
                 x = random_cmat(2, 2, rng);
            worst = std::max(worst,
                             (vec((a * x * b.transpose()).eval()) - kron(b, a) * vec(x)).norm());
        }
        add("kron_vec_identity", worst, 1e-12);
    }
    // gamma rearranges rows into blocks
    {
        CMat t(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) t(i, j) = 4.0 * i + j + 1.0;
        CMat expect(4, 4);
        expect << 1, 2, 5, 6, 3, 4, 7, 8, 9, 10, 13, 14, 11, 12, 15, 16;
        add("gamma_row_block_display", (gamma(t) - expect).norm(), 1e-12);
        CMat r = random_cmat(9, 9, rng);
        add("gamma_involution", (gamma(gamma(r)) - r).norm(), 1e-12);
    }
    // basis elements sit on single diagonals
    add("tau_ones_on_diagonal",
        (tau(3, 1) - (unit_matrix(3, 0, 1) + unit_matrix(3, 1, 2))).norm(), 1e-15);
    // columns of delta are the vectorized basis
    {
        CMat expect(4, 3);
        expect << 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0;
        add("delta_columns_display", (delta(2) - expect).norm(), 1e-15);
        double rank_defect = 0.0;
        for (int n = 2; n <= 8; ++n) {
            const RVec sv = singular_values(delta(n));
            int rank = 0;
            for (Eigen::Index i = 0; i < sv.size(); ++i)
                if (sv(i) > 1e-9 * sv(0)) ++rank;
            rank_defect += std::abs(rank - (2 * n - 1));
        }
        add("delta_full_rank", rank_defect, 0.5);
    }
    // truncation orientation: a_1 lands below the main diagonal
    {
        const int n = 4, m_samples = 32;
        CVec samples(m_samples);
        for (int m = 0; m < m_samples; ++m) {
            const double t = 2.0 * std::numbers::pi * m / m_samples;
            samples(m) = Complex(std::cos(t), std::sin(t));
        }
        const CMat trunc = truncate(fourier_from_samples(samples, n - 1), n - 1, n);
        add("truncation_orientation", (trunc - tau(n, -1)).norm(), 1e-10);
    }
    // conjugation by the flip transposes Toeplitz matrices and only those
    {
        double worst = 0.0;
        const CMat v6 = v_flip(6);
        for (int trial = 0; trial < 50; ++trial) {
            const CMat t = detail::random_toeplitz(6, rng);
            worst = std::max(worst, (v6.adjoint() * t * v6 - t.transpose()).norm());
        }
        add("flip_transposes_toeplitz", worst, 1e-12);
        const CMat v3 = v_flip(3);
        const CMat m = random_cmat(3, 3, rng);
        const double off = (v3.adjoint() * m * v3 - m.transpose()).norm();
        add("flip_fails_off_system", std::max(0.0, 1e-3 - off), 1e-15);
    }
    // generators are gauge elements
    {
        ToeplitzSystem sys(4);
        const Complex a(0.0, 1.0);
        const Complex b = std::polar(1.0, std::numbers::pi / 3.0);
        const bool ok_u = is_gauge(u_alpha_beta(4, a, b), sys, tol);
        const bool ok_w = is_gauge(v_flip(4) * u_alpha_beta(4, a, b), sys, tol);
        add("generators_are_gauge", (ok_u && ok_w) ? 0.0 : 1.0, 0.5);
    }
    // the three action identities and the kernel phase
    {
        double worst1 = 0.0, worst2 = 0.0, worst3 = 0.0, worstk = 0.0;
        for (int n : {2, 5}) {
            for (int trial = 0; trial < 10; ++trial) {
                const Complex a = rng.unimodular(), b = rng.unimodular();
                const CMat u = u_alpha_beta(n, a, b), v = v_flip(n);
                const CMat t = detail::random_toeplitz(n, rng);
                const Complex w = a * std::conj(b);
                const CMat mask = omega_mask(n, w), maskc = omega_mask(n, std::conj(w));
                worst1 = std::max(worst1, (u.adjoint() * t * u - schur(mask, t)).norm());
                const CMat vu = v * u, uv = u * v;
                worst2 = std::max(
                    worst2, (vu.adjoint() * t * vu - schur(mask, t.transpose().eval())).norm());
                worst3 = std::max(
                    worst3, (uv.adjoint() * t * uv - schur(maskc, t.transpose().eval())).norm());
                const CMat uk = u_alpha_beta(n, a, a);
                worstk = std::max(worstk, (uk.adjoint() * t * uk - t).norm());
            }
        }
        add("diagonal_action_schur_mask", worst1, 1e-10);
        add("antidiagonal_action_schur_mask", worst2, 1e-10);
        add("reversed_product_action_mask", worst3, 1e-10);
        add("kernel_equal_phases_trivial", worstk, 1e-10);
    }
    // the two unit families both give the transpose on Toep_2
    KrausFamily f_units{2, {}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            f_units.pairs.emplace_back(unit_matrix(2, i, j), unit_matrix(2, i, j));
    const PertElement om1 = omega_from_family(f_units);
    const PertElement om2 = omega_from_family(KrausFamily{2, {{v_flip(2), v_flip(2)}}});
    {
        CMat t(2, 2);
        t << Complex(0.3, 0.1), Complex(-1.2, 0.4), Complex(0.7, -0.2), Complex(0.3, 0.1);
        add("unit_family_transpose_map", (apply_map(om1, t) - t.transpose()).norm(), 1e-12);
        add("flip_family_same_map", (apply_map(om2, t) - apply_map(om1, t)).norm(), 1e-12);
        const PertConditions c1 = check_conditions(om1, tol), c2 = check_conditions(om2, tol);
        add("unit_families_member_conditions",
            (c1.all() && c2.all()) ? 0.0 : 1.0, 0.5);
        const MapMatrixW w_map = w_from_map(om1, tol);
        const MapMatrixW w_solve = w_from_omega_solve(om1, tol);
        CMat anti = CMat::Zero(3, 3);
        anti(0, 2) = anti(1, 1) = anti(2, 0) = 1.0;
        add("map_matrix_anti_identity",
            std::max((w_map.w - anti).norm(), (w_solve.w - anti).norm()), 1e-10);
        add("w_unital_central_column",
            (w_map.w.col(1) - CVec::Unit(3, 1)).norm(), 1e-12);
    }
    // gauge pairs (u*, u) land in the positive semigroup
    {
        const CMat u = v_flip(4) * u_alpha_beta(4, Complex(0, 1), rng.unimodular());
        const PertElement p =
            omega_from_family(KrausFamily{4, {{u.adjoint(), u}}});
        add("gauge_pairs_in_pert_plus", is_pert_plus(p, tol) ? 0.0 : 1.0, 0.5);
    }
    // parametrized elements over Toep_2 are always members
    {
        bool all_member = true;
        for (double z2 : {-0.5, 0.0, 0.7})
            for (double z4 : {-0.5, 0.0, 0.7})
                all_member = all_member &&
                             is_pert(toep2_parametrized(Complex(0, 1), Complex(1, 0),
                                                        Complex(0.5, 0.5), Complex(1, 1), z2, z4),
                                     tol);
        add("toep2_members_all_parameters", all_member ? 0.0 : 1.0, 0.5);
        CMat expect(4, 4);
        expect << 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1;
        add("toep2_final_display_instance",
            (gamma(toep2_parametrized(1.0, 0.0, 0.0, 0.0, 0.0, 1.0).omega) - expect).norm(),
            1e-15);
    }
    // norm facts for the unit families
    add("haagerup_bound_unit_family", std::abs(haagerup_upper(f_units) - 2.0), 1e-12);
    add("matrix_norm_unit_family", std::abs(min_norm(om1) - 1.0), 1e-9);
    add("cb_transpose_amplified", std::abs(cb_lower(om1, 2, 10, 11) - 2.0), 1e-9);
    add("cb_flip_level_one", std::abs(cb_lower(om2, 1, 10, 11) - 1.0), 1e-9);
    {
        const CMat u = u_alpha_beta(3, rng.unimodular(), rng.unimodular());
        const PertElement p = omega_from_family(KrausFamily{3, {{u.adjoint(), u}}});
        add("cp_cb_equals_identity_image", std::abs(cb_exact_cp(p, tol) - 1.0), 1e-9);
        const MapMatrixW w = w_from_map(p, tol);
        const UcpConditionResult u_ok = ucp_condition(w, tol);
        const UcpConditionResult u_bad = ucp_condition(MapMatrixW{3, 3.0 * w.w}, tol);
        add("ucp_norm_necessary_condition", (u_ok.holds && !u_bad.holds) ? 0.0 : 1.0, 0.5);
        const KrausFamily rec = kraus_from_choi(gamma(p.omega), tol);
        add("kraus_rank_one_reconstruction",
            std::abs(static_cast<double>(rec.pairs.size()) - 1.0) +
                (omega_from_family(rec).omega - p.omega).norm(),
            1e-8);
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toeplitz operator-system toolkit: gauge group, perturbation semigroup, norms"};
    app.fallthrough();
    app.require_subcommand(1);

    Tol tol;
    std::uint64_t seed = 1;
    app.add_option("--tol-abs", tol.abs, "absolute residual tolerance")->capture_default_str();
    app.add_option("--tol-rel", tol.rel, "relative residual tolerance")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized subcommands")->capture_default_str();

    int exit_code = 0;

    // ----------------------------- toeplitz -----------------------------
    auto* toep = app.add_subcommand("toeplitz", "Toeplitz system constructions");
    toep->require_subcommand(1);
    {
        auto* basis = toep->add_subcommand("basis", "emit the basis element tau_k");
        auto n = std::make_shared<int>(2);
        auto k = std::make_shared<int>(0);
        basis->add_option("--n", *n, "system size")->required();
        basis->add_option("--k", *k, "diagonal offset")->required();
        basis->callback([&, n, k] {
            emit(json{{"command", "toeplitz basis"},
                      {"inputs", {{"n", *n}, {"k", *k}}},
                      {"results", {{"matrix", matrix_to_json(tau(*n, *k))}}},
                      {"checks", json::array()}});
        });
    }
    {
        auto* del = toep->add_subcommand("delta", "emit the matrix of vectorized basis elements");
        auto n = std::make_shared<int>(2);
        del->add_option("--n", *n, "system size")->required();
        del->callback([&, n] {
            const CMat d = delta(*n);
            emit(json{{"command", "toeplitz delta"},
                      {"inputs", {{"n", *n}}},
                      {"results",
                       {{"matrix", matrix_to_json(d)},
                        {"operator_norm", operator_norm(d)}}},
                      {"checks", json::array()}});
        });
    }
    {
        auto* tr = toep->add_subcommand("truncate", "Toeplitz compression of a circle function");
        auto n = std::make_shared<int>(2);
        auto coeffs_path = std::make_shared<std::string>();
        auto samples_path = std::make_shared<std::string>();
        auto big_k = std::make_shared<int>(-1);
        tr->add_option("--n", *n, "system size")->required();
        auto* c_opt = tr->add_option("--coeffs", *coeffs_path,
                                     "MatrixFile vector of 2K+1 Fourier coefficients");
        auto* s_opt =
            tr->add_option("--samples", *samples_path, "MatrixFile vector of equispaced samples");
        tr->add_option("--K", *big_k, "coefficient window for --samples");
        c_opt->excludes(s_opt);
        tr->callback([&, n, coeffs_path, samples_path, big_k] {
            CVec coeffs;
            int window = 0;
            if (!coeffs_path->empty()) {
                coeffs = column_from_matrix_file(load_json_file(*coeffs_path), "truncate");
                if (coeffs.size() % 2 == 0)
                    throw std::invalid_argument("truncate: coefficient vector length must be odd");
                window = static_cast<int>((coeffs.size() - 1) / 2);
            } else if (!samples_path->empty()) {
                if (*big_k < 0)
                    throw std::invalid_argument("truncate: --samples requires --K");
                const CVec samples =
                    column_from_matrix_file(load_json_file(*samples_path), "truncate");
                window = *big_k;
                coeffs = fourier_from_samples(samples, window);
            } else {
                throw std::invalid_argument("truncate: provide --coeffs or --samples");
            }
            emit(json{{"command", "toeplitz truncate"},
                      {"inputs",
                       {{"n", *n}, {"coeffs", *coeffs_path}, {"samples", *samples_path},
                        {"K", window}}},
                      {"results",
                       {{"matrix", matrix_to_json(truncate(coeffs, window, *n))},
                        {"coefficients", matrix_to_json(coeffs)}}},
                      {"checks", json::array()}});
        });
    }

    // ----------------------------- gauge --------------------------------
    auto* gauge = app.add_subcommand("gauge", "gauge group of the Toeplitz system");
    gauge->require_subcommand(1);
    {
        auto* gen = gauge->add_subcommand("generate", "materialize a gauge element");
        auto n = std::make_shared<int>(2);
        auto alpha = std::make_shared<std::string>("1,0");
        auto beta = std::make_shared<std::string>("1,0");
        auto flip = std::make_shared<bool>(false);
        gen->add_option("--n", *n, "system size")->required();
        gen->add_option("--alpha", *alpha, "unimodular parameter RE,IM")->required();
        gen->add_option("--beta", *beta, "unimodular parameter RE,IM")->required();
        gen->add_flag("--flip", *flip, "left-multiply by the anti-diagonal flip");
        gen->callback([&, n, alpha, beta, flip] {
            const Complex a = normalized_phase(*alpha, "alpha");
            const Complex b = normalized_phase(*beta, "beta");
            const GaugeElement g = gauge_element(
                *n, *flip ? GaugeKind::AntiDiagonal : GaugeKind::Diagonal, a, b);
            emit(json{{"command", "gauge generate"},
                      {"inputs",
                       {{"n", *n}, {"alpha", complex_to_json(a)}, {"beta", complex_to_json(b)},
                        {"flip", *flip}}},
                      {"results",
                       {{"matrix", matrix_to_json(materialize(g))},
                        {"kind", *flip ? "AntiDiagonal" : "Diagonal"},
                        {"omega", complex_to_json(omega_phase(g))}}},
                      {"checks", json::array()}});
        });
    }
    {
        auto* chk = gauge->add_subcommand("check", "membership test for a unitary");
        auto n = std::make_shared<int>(2);
        auto path = std::make_shared<std::string>();
        chk->add_option("--n", *n, "system size")->required();
        chk->add_option("--unitary", *path, "MatrixFile of the candidate")->required();
        chk->callback([&, n, path] {
            const CMat u = matrix_from_json(load_json_file(*path));
            ToeplitzSystem sys(*n);
            if (u.rows() != *n || u.cols() != *n)
                throw std::invalid_argument("gauge check: matrix size does not match --n");
            const GaugeResidual r = gauge_residual(u, sys);
            const bool member = is_gauge(u, sys, tol);
            json results{{"gauge", member},
                         {"unitarity_residual", r.unitarity},
                         {"membership_residual", r.membership}};
            if (member) {
                const GaugeElement g = classify(u, tol);
                results["kind"] =
                    (g.kind == GaugeKind::Diagonal) ? "Diagonal" : "AntiDiagonal";
                results["alpha"] = complex_to_json(g.alpha);
                results["beta"] = complex_to_json(g.beta);
            }
            emit(json{{"command", "gauge check"},
                      {"inputs", {{"n", *n}, {"unitary", *path}}},
                      {"results", results},
                      {"checks",
                       json::array({check_entry("unitary", r.unitarity <= threshold(tol, std::sqrt(*n)),
                                                r.unitarity),
                                    check_entry("system_invariance",
                                                r.membership <= threshold(tol, std::sqrt(*n)),
                                                r.membership)})}});
            if (!member) exit_code = 1;
        });
    }
    {
        auto* ver = gauge->add_subcommand("verify", "randomized group-structure report");
        auto n = std::make_shared<int>(2);
        auto trials = std::make_shared<int>(100);
        ver->add_option("--n", *n, "system size")->required();
        ver->add_option("--trials", *trials, "trials per check")->capture_default_str();
        ver->callback([&, n, trials] {
            const GroupReport rep = group_checks(*n, *trials, seed, tol);
            json checks = json::array();
            for (const auto& c : rep.checks)
                checks.push_back(check_entry(c.name, c.pass, c.max_residual));
            emit(json{{"command", "gauge verify"},
                      {"inputs", {{"n", *n}, {"trials", *trials}}},
                      {"results", {{"all_pass", rep.all_pass()}}},
                      {"checks", checks},
                      {"seed", rep.seed}});
            if (!rep.all_pass()) exit_code = 1;
        });
    }

    // ----------------------------- pert ---------------------------------
    auto* pert = app.add_subcommand("pert", "perturbation semigroup of the system");
    pert->require_subcommand(1);
    {
        auto* chk = pert->add_subcommand("check", "membership conditions for an element");
        auto n = std::make_shared<int>(2);
        auto family_path = std::make_shared<std::string>();
        auto omega_path = std::make_shared<std::string>();
        auto plus = std::make_shared<bool>(false);
        chk->add_option("--n", *n, "system size")->required();
        auto* f_opt = chk->add_option("--family", *family_path, "FamilyFile input");
        auto* o_opt = chk->add_option("--omega", *omega_path, "MatrixFile Kronecker matrix");
        f_opt->excludes(o_opt);
        chk->add_flag("--plus", *plus, "also require gamma(omega) PSD");
        chk->callback([&, n, family_path, omega_path, plus] {
            if (family_path->empty() && omega_path->empty())
                throw std::invalid_argument("pert check: provide --family or --omega");
            const PertElement p = element_from_flags(*n, *family_path, *omega_path);
            const PertConditions c = check_conditions(p, tol);
            json checks = json::array(
                {check_entry("unital", c.unital, c.unital_residual),
                 check_entry("invariant", c.invariant, c.invariant_residual),
                 check_entry("symmetric", c.symmetric, c.symmetric_residual)});
            bool member = c.all();
            if (*plus) {
                const bool psd = is_psd(gamma(p.omega), tol);
                double defect = 0.0;
                if (c.symmetric) {
                    const RVec vals = hermitian_eigvals(gamma(p.omega), tol);
                    defect = std::max(0.0, -vals(0));
                }
                checks.push_back(check_entry("gamma_psd", psd, defect));
                member = member && psd;
            }
            emit(json{{"command", "pert check"},
                      {"inputs",
                       {{"n", *n}, {"family", *family_path}, {"omega", *omega_path},
                        {"plus", *plus}}},
                      {"results", {{"member", member}}},
                      {"checks", checks}});
            if (!member) exit_code = 1;
        });
    }
    {
        auto* ap = pert->add_subcommand("apply", "apply the induced map to a matrix");
        auto n = std::make_shared<int>(2);
        auto family_path = std::make_shared<std::string>();
        auto input_path = std::make_shared<std::string>();
        ap->add_option("--n", *n, "system size")->required();
        ap->add_option("--family", *family_path, "FamilyFile input")->required();
        ap->add_option("--input", *input_path, "MatrixFile argument")->required();
        ap->callback([&, n, family_path, input_path] {
            const PertElement p = element_from_flags(*n, *family_path, "");
            const CMat x = matrix_from_json(load_json_file(*input_path));
            emit(json{{"command", "pert apply"},
                      {"inputs", {{"n", *n}, {"family", *family_path}, {"input", *input_path}}},
                      {"results", {{"matrix", matrix_to_json(apply_map(p, x))}}},
                      {"checks", json::array()}});
        });
    }
    {
        auto* w_cmd = pert->add_subcommand("w", "map matrix in the diagonal basis, both routes");
        auto n = std::make_shared<int>(2);
        auto family_path = std::make_shared<std::string>();
        auto omega_path = std::make_shared<std::string>();
        w_cmd->add_option("--n", *n, "system size")->required();
        auto* f_opt = w_cmd->add_option("--family", *family_path, "FamilyFile input");
        auto* o_opt = w_cmd->add_option("--omega", *omega_path, "MatrixFile Kronecker matrix");
        f_opt->excludes(o_opt);
        w_cmd->callback([&, n, family_path, omega_path] {
            if (family_path->empty() && omega_path->empty())
                throw std::invalid_argument("pert w: provide --family or --omega");
            const PertElement p = element_from_flags(*n, *family_path, *omega_path);
            const MapMatrixW w_map = w_from_map(p, tol);
            const MapMatrixW w_solve = w_from_omega_solve(p, tol);
            const double agreement = (w_map.w - w_solve.w).norm();
            const bool agree = agreement <= threshold(tol, w_map.w.norm());
            emit(json{{"command", "pert w"},
                      {"inputs", {{"n", *n}, {"family", *family_path}, {"omega", *omega_path}}},
                      {"results",
                       {{"w_map", matrix_to_json(w_map.w)},
                        {"w_solve", matrix_to_json(w_solve.w)},
                        {"agreement_residual", agreement}}},
                      {"checks", json::array({check_entry("w_dual_path_agreement", agree,
                                                          agreement)})}});
            if (!agree)
                throw std::runtime_error("pert w: the two W routes disagree beyond tolerance");
        });
    }
    {
        auto* t2 = pert->add_subcommand("toep2", "parametrized element over the 2x2 system");
        auto a = std::make_shared<std::string>("0");
        auto b = std::make_shared<std::string>("0");
        auto c = std::make_shared<std::string>("0");
        auto z1 = std::make_shared<std::string>("0");
        auto z2 = std::make_shared<double>(0.0);
        auto z4 = std::make_shared<double>(0.0);
        t2->add_option("--a", *a, "map parameter RE,IM")->required();
        t2->add_option("--b", *b, "map parameter RE,IM")->required();
        t2->add_option("--c", *c, "map parameter RE,IM")->required();
        t2->add_option("--z1", *z1, "kernel parameter RE,IM")->required();
        t2->add_option("--z2", *z2, "kernel parameter (real)")->required();
        t2->add_option("--z4", *z4, "kernel parameter (real)")->required();
        t2->callback([&, a, b, c, z1, z2, z4] {
            const PertElement p = toep2_parametrized(parse_complex(*a), parse_complex(*b),
                                                     parse_complex(*c), parse_complex(*z1),
                                                     *z2, *z4);
            const PertConditions cond = check_conditions(p, tol);
            emit(json{{"command", "pert toep2"},
                      {"inputs",
                       {{"a", *a}, {"b", *b}, {"c", *c}, {"z1", *z1}, {"z2", *z2}, {"z4", *z4}}},
                      {"results",
                       {{"omega", matrix_to_json(p.omega)},
                        {"gamma", matrix_to_json(gamma(p.omega))},
                        {"member", cond.all()},
                        {"member_plus", is_pert_plus(p, tol)}}},
                      {"checks",
                       json::array(
                           {check_entry("unital", cond.unital, cond.unital_residual),
                            check_entry("invariant", cond.invariant, cond.invariant_residual),
                            check_entry("symmetric", cond.symmetric, cond.symmetric_residual)})}});
            if (!cond.all()) exit_code = 1;
        });
    }

    // ----------------------------- norms --------------------------------
    auto* norms = app.add_subcommand("norms", "norm diagnostics");
    norms->require_subcommand(1);
    {
        auto* rep = norms->add_subcommand("report", "norm bracket and UCP condition");
        auto n = std::make_shared<int>(2);
        auto family_path = std::make_shared<std::string>();
        auto omega_path = std::make_shared<std::string>();
        auto level = std::make_shared<int>(0);
        auto trials = std::make_shared<int>(25);
        rep->add_option("--n", *n, "system size")->required();
        auto* f_opt = rep->add_option("--family", *family_path, "FamilyFile input");
        auto* o_opt = rep->add_option("--omega", *omega_path, "MatrixFile Kronecker matrix");
        f_opt->excludes(o_opt);
        rep->add_option("--level", *level, "amplification level (default n)");
        rep->add_option("--trials", *trials, "random witnesses per level")->capture_default_str();
        rep->callback([&, n, family_path, omega_path, level, trials] {
            if (family_path->empty() && omega_path->empty())
                throw std::invalid_argument("norms report: provide --family or --omega");
            const PertElement p = element_from_flags(*n, *family_path, *omega_path);
            const int lev = (*level > 0) ? *level : *n;
            const NormReport r = norm_report(p, lev, *trials, seed, tol);
            json results{{"min_norm", r.min_norm},
                         {"cb_lower", r.cb_lower},
                         {"gap_flagged", r.gap_flagged}};
            results["haagerup_upper"] =
                r.haagerup_upper ? json(*r.haagerup_upper) : json(nullptr);
            results["cb_exact"] = r.cb_exact ? json(*r.cb_exact) : json(nullptr);
            if (r.ucp) {
                results["ucp_condition"] =
                    json{{"lhs", r.ucp->lhs}, {"rhs", r.ucp->rhs}, {"holds", r.ucp->holds}};
            } else {
                results["ucp_condition"] = json(nullptr);
            }
            json checks = json::array();
            if (r.ucp)
                checks.push_back(check_entry("ucp_condition", r.ucp->holds,
                                             std::max(0.0, r.ucp->lhs - r.ucp->rhs)));
            if (r.haagerup_upper)
                checks.push_back(check_entry("haagerup_dominates_matrix_norm",
                                             *r.haagerup_upper >= r.min_norm - 1e-9,
                                             std::max(0.0, r.min_norm - *r.haagerup_upper)));
            emit(json{{"command", "norms report"},
                      {"inputs",
                       {{"n", *n}, {"family", *family_path}, {"omega", *omega_path},
                        {"level", lev}, {"trials", *trials}}},
                      {"results", results},
                      {"checks", checks},
                      {"seed", seed}});
        });
    }

    // ----------------------------- paper ---------------------------------
    auto* paper = app.add_subcommand("paper", "reference example suite");
    paper->require_subcommand(1);
    {
        auto* ex = paper->add_subcommand("examples", "run the full reference table");
        ex->callback([&] {
            const std::vector<RefCheck> rows = reference_examples(tol);
            json checks = json::array();
            bool all = true;
            for (const auto& r : rows) {
                const bool pass = r.residual <= r.tol;
                all = all && pass;
                checks.push_back(check_entry(r.name, pass, r.residual));
            }
            emit(json{{"command", "paper examples"},
                      {"inputs", json::object()},
                      {"results", {{"all_pass", all}, {"count", rows.size()}}},
                      {"checks", checks}});
            if (!all) exit_code = 1;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    }
    return exit_code;
}
