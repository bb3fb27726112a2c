#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "oplab/cli.hpp"
#include "oplab/interpolation.hpp"
#include "oplab/lemerdy.hpp"
#include "oplab/linalg.hpp"
#include "oplab/operator_core.hpp"
#include "oplab/scalar_fn.hpp"
#include "oplab/similarity.hpp"
#include "oplab/theorem_lab.hpp"

namespace oplab::cli {

namespace {

struct Check {
    const char* module;
    const char* name;
    std::function<bool()> run;
};

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }
bool near(Complex x, Complex y, double tol) { return std::abs(x - y) <= tol; }

std::vector<Check> checks() {
    std::vector<Check> c;

    // scalar_fn
    c.push_back({"scalar_fn", "blaschke_zero_of_own_factor",
                 [] { return std::abs(blaschke_factor(0.5, 0.5)) == 0.0; }});
    c.push_back({"scalar_fn", "blaschke_unimodular_on_circle", [] {
                     for (int k = 0; k < 64; ++k)
                         if (!near(std::abs(blaschke_factor(0.5, std::polar(1.0, 2 * kPi * k / 64))), 1.0, 1e-12))
                             return false;
                     return true;
                 }});
    c.push_back({"scalar_fn", "blaschke_at_origin", [] { return near(blaschke_factor(0.5, 0.0), 0.5, 1e-15); }});
    c.push_back({"scalar_fn", "pseudohyperbolic_at_origin",
                 [] { return near(pseudohyperbolic(DiskPoint(0.0), DiskPoint(0.3, 0.4)), 0.5, 1e-15); }});
    c.push_back({"scalar_fn", "pseudohyperbolic_coincidence",
                 [] { return pseudohyperbolic(DiskPoint(0.3, 0.2), DiskPoint(0.3, 0.2)) == 0.0; }});
    c.push_back({"scalar_fn", "pseudohyperbolic_hand_value",
                 [] { return near(pseudohyperbolic(DiskPoint(0.5), DiskPoint(0.75)), 0.4, 1e-15); }});
    c.push_back({"scalar_fn", "divided_difference_square", [] {
                     const auto z2 = RationalFunction::monomial(2);
                     return near(divided_difference(z2, Complex(0.2, 0.1), 0.5), Complex(0.7, 0.1), 1e-14) &&
                            near(divided_difference(z2, 0.3, 0.3), 0.6, 1e-12);
                 }});
    c.push_back({"scalar_fn", "algebra_identity_and_inverse", [] {
                     const auto f = RationalFunction::cauchy_kernel(DiskPoint(0.5));
                     const auto one = RationalFunction::constant(1.0);
                     return near(rational_algebra(f, one, RationalOp::Mul)(0.3), f(0.3), 1e-15) &&
                            rational_algebra(f, -f, RationalOp::Add).is_zero();
                 }});
    c.push_back({"scalar_fn", "h2_inner_constant", [] {
                     const auto one = RationalFunction::constant(1.0);
                     return near(h2_inner(one, one).value, 1.0, 1e-12);
                 }});
    c.push_back({"scalar_fn", "h2_inner_monomials_orthogonal", [] {
                     return near(h2_inner(RationalFunction::constant(1.0), RationalFunction::monomial(1)).value, 0.0,
                                 1e-12);
                 }});
    c.push_back({"scalar_fn", "h2_inner_cauchy_kernel", [] {
                     const auto k = RationalFunction::cauchy_kernel(DiskPoint(0.5));
                     return near(h2_inner(k, k).value, 4.0 / 3.0, 1e-10);
                 }});

    // interpolation
    c.push_back({"interpolation", "carleson_single_zero",
                 [] { return carleson_delta(std::vector<DiskPoint>{DiskPoint(0.5)}).delta == 1.0; }});
    c.push_back({"interpolation", "carleson_three_points", [] {
                     const auto r = carleson_delta(std::vector<DiskPoint>{0.5, 0.75, 0.875});
                     return near(r.delta, 0.4 * (0.125 / 0.34375), 1e-12) && r.argmin == 1;
                 }});
    c.push_back({"interpolation", "generalized_single_factor", [] {
                     const std::vector<BlaschkeProduct> f{BlaschkeProduct({DiskPoint(0.5)})};
                     return near(generalized_carleson_ratio(f, default_disk_grid(8, 32)).estimate, 1.0, 1e-12);
                 }});
    c.push_back({"interpolation", "pick_trivial", [] {
                     const auto d = make_pick_data({DiskPoint(0.0)}, {0.0});
                     return pick_feasible(d).feasible && near(d.pick(0, 0), 1.0, 0.0);
                 }});
    c.push_back({"interpolation", "constant_interpolant", [] {
                     const std::vector<DiskPoint> nodes{DiskPoint(0.0)};
                     const std::vector<Complex> targets{0.5};
                     const auto ip = np_interpolate(nodes, targets);
                     return near(ip.norm, 0.5, 1e-6) && near(ip.phi(0.7), 0.5, 1e-6) && ip.residual < 1e-8;
                 }});

    // operator_core
    c.push_back({"operator_core", "annihilation_diagonal", [] {
                     const std::vector<Complex> z{0.1, Complex(0.2, 0.3), -0.4};
                     const BlaschkeProduct b(to_disk_points(z));
                     return spectral_norm(blaschke_of_operator(b, Operator::diagonal(z)).matrix()) < 1e-10;
                 }});
    c.push_back({"operator_core", "blaschke_of_zero_operator", [] {
                     const auto m = blaschke_of_operator(BlaschkeProduct({DiskPoint(0.5)}), Operator::zero(3)).matrix();
                     return (m - 0.5 * Matrix::Identity(3, 3)).norm() < 1e-14;
                 }});
    c.push_back({"operator_core", "poly_identity_and_z", [] {
                     Matrix t(2, 2);
                     t << 0.1, 2.0, 0.0, -0.3;
                     const Operator op(t);
                     return (poly_of_operator({1.0}, op).matrix() - Matrix::Identity(2, 2)).norm() == 0.0 &&
                            (poly_of_operator({0.0, 1.0}, op).matrix() - t).norm() == 0.0;
                 }});
    c.push_back({"operator_core", "power_bound_unitary", [] {
                     const std::vector<Complex> d{std::polar(1.0, 0.3), std::polar(1.0, -1.1)};
                     return near(power_bound(Operator::diagonal(d), 50).bound, 1.0, 1e-12);
                 }});
    c.push_back({"operator_core", "power_bound_jordan", [] {
                     Matrix j = Matrix::Zero(2, 2);
                     j(0, 1) = 1.0;
                     return near(power_bound(Operator(j), 10).bound, 1.0, 1e-12);
                 }});
    c.push_back({"operator_core", "power_bound_transient", [] {
                     Matrix t(2, 2);
                     t << 0.9, 5.0, 0.0, 0.9;
                     const auto r = power_bound(Operator(t), 200);
                     return r.bound > 5.0 && r.argmax > 1;
                 }});
    c.push_back({"operator_core", "poly_bound_unitary", [] {
                     const std::vector<Complex> d{std::polar(1.0, 0.7), std::polar(1.0, 2.0), -1.0};
                     const double e = poly_bound_lower(Operator::diagonal(d), 4, 2, 7).estimate;
                     return e >= 1.0 - 1e-6 && e <= 1.0;
                 }});
    c.push_back({"operator_core", "poly_bound_zero",
                 [] { return near(poly_bound_lower(Operator::zero(2), 4, 2, 7).estimate, 1.0, 1e-12); }});
    c.push_back({"operator_core", "tadmor_ritt_zero", [] {
                     return near(tadmor_ritt(Operator::zero(1)).constant, 2.0, 1e-3);
                 }});
    c.push_back({"operator_core", "tadmor_ritt_eigenvalue_one_flagged", [] {
                     Matrix j(2, 2);
                     j << 1.0, 1.0, 0.0, 1.0;
                     const auto r = tadmor_ritt(Operator(j));
                     return r.flagged && r.constant > 1e5;
                 }});
    c.push_back({"operator_core", "dilation_of_zero", [] {
                     const auto v = assemble_blocks(schaffer_dilation_trunc(Operator::zero(1), 3)).matrix();
                     Matrix p = Matrix::Identity(4, 4);
                     for (int k = 1; k <= 3; ++k) {
                         p = p * v;
                         if (std::abs(p(0, 0)) > 1e-15) return false;
                     }
                     return v.rows() == 4;
                 }});
    c.push_back({"operator_core", "blocks_all_zero", [] {
                     BlockOperator b({1, 2}, {1, 2});
                     return assemble_blocks(b).matrix().norm() == 0.0;
                 }});
    c.push_back({"operator_core", "permute_r0_direct_sum", [] {
                     const Matrix t0 = Matrix::Constant(1, 1, 0.2), v1 = Matrix::Constant(2, 2, 0.1),
                                  t1 = Matrix::Constant(1, 1, -0.3);
                     const auto p = permute_r0(make_r0(t0, Matrix::Zero(1, 1), v1, Matrix::Zero(2, 1), t1));
                     return p.block(0, 1).norm() == 0.0 && p.block(1, 0).norm() == 0.0;
                 }});

    // similarity
    c.push_back({"similarity", "lyapunov_jordan", [] {
                     Matrix j = Matrix::Zero(2, 2);
                     j(0, 1) = 1.0;
                     const auto w = lyapunov_similarity(Operator(j));
                     return near(w.conjugated_norm, std::sqrt(0.5), 1e-12);
                 }});
    c.push_back({"similarity", "lyapunov_diagonal", [] {
                     const std::vector<Complex> d{0.3, Complex(0, -0.6)};
                     return near(lyapunov_similarity(Operator::diagonal(d)).conjugated_norm, 0.6, 1e-12);
                 }});
    c.push_back({"similarity", "eigenbasis_orthonormal", [] {
                     const std::vector<Complex> d{0.3, -0.2};
                     return near(eigenbasis_similarity(Operator::diagonal(d), Matrix::Identity(2, 2)).cond, 1.0, 1e-14);
                 }});
    c.push_back({"similarity", "sylvester_scalar", [] {
                     const auto s = sylvester_intertwiner(Operator::zero(1), Operator(Matrix::Constant(1, 1, 0.5)),
                                                          Matrix::Constant(1, 1, Complex(1.0, 2.0)));
                     return near(s.y(0, 0), Complex(-2.0, -4.0), 1e-14);
                 }});
    c.push_back({"similarity", "sylvester_homogeneous", [] {
                     return sylvester_intertwiner(Operator::zero(1), Operator(Matrix::Constant(1, 1, 0.5)),
                                                  Matrix::Zero(1, 1))
                                .y.norm() == 0.0;
                 }});
    c.push_back({"similarity", "direct_sum_orthogonal", [] {
                     const std::vector<Complex> d{std::polar(1.0, 0.4), 0.5};
                     const auto r = direct_sum_similarity(Operator::diagonal(d), Matrix::Identity(2, 1),
                                                          Matrix::Identity(2, 2).col(1));
                     return r.holds && near(r.witness.cond, 1.0, 1e-12);
                 }});
    c.push_back({"similarity", "c0_split_full_annihilation", [] {
                     const std::vector<Complex> d{0.2, -0.4};
                     const auto s = c0_split(Operator::diagonal(d), BlaschkeProduct(to_disk_points(d)));
                     return s.h0_dim == 2 && s.t1.rows() == 0;
                 }});
    c.push_back({"similarity", "c0_split_diagonal", [] {
                     const std::vector<Complex> d{0.2, -0.4};
                     const auto s = c0_split(Operator::diagonal(d), BlaschkeProduct({DiskPoint(0.2)}));
                     return s.h0_dim == 1 && s.a.norm() < 1e-12;
                 }});

    // theorem_lab
    c.push_back({"theorem_lab", "kernel_at_origin", [] {
                     const auto m = build_model_basis(BlaschkeProduct({DiskPoint(0.0)}));
                     return near(m.gram(0, 0), 1.0, 1e-12) && m.shift.norm() < 1e-12;
                 }});
    c.push_back({"theorem_lab", "kernel_unit_norm", [] {
                     const auto m = build_model_basis(BlaschkeProduct({DiskPoint(0.5)}));
                     return near(m.gram(0, 0), 1.0, 1e-10);
                 }});
    c.push_back({"theorem_lab", "a_phi_constants_and_z", [] {
                     const BlaschkeProduct b({DiskPoint(0.5), DiskPoint(-0.25), DiskPoint(0.0, 0.6)});
                     const auto inst = make_example41(b, random_coupling(3, 11));
                     return a_phi(inst, RationalFunction::constant(1.0)).norm() == 0.0 &&
                            (a_phi(inst, RationalFunction::monomial(1)) - inst.a).norm() < 1e-14 &&
                            (a_phi_oracle(inst, RationalFunction::monomial(1)) - inst.a).norm() < 1e-10;
                 }});
    c.push_back({"theorem_lab", "a_phi_oracle_pair", [] {
                     const BlaschkeProduct b(random_zeros(5, 3));
                     const auto inst = make_example41(b, random_coupling(5, 4));
                     const auto phi = RationalFunction::blaschke_factor(DiskPoint(0.3));
                     const Matrix o = a_phi_oracle(inst, phi);
                     return (a_phi(inst, phi) - o).norm() <= 1e-8 * o.norm();
                 }});
    c.push_back({"theorem_lab", "uncoupled_y", [] {
                     const BlaschkeProduct b({DiskPoint(0.5), DiskPoint(-0.25)});
                     const auto inst = make_example41(b, Matrix::Zero(2, 2));
                     const auto y0 = construct_y(inst, {0.0, 0.0});
                     const auto y1 = construct_y(inst, {Complex(1, 2), -3.0});
                     return y0.y_k.norm() == 0.0 && y0.residual == 0.0 && y1.residual < 1e-12;
                 }});
    c.push_back({"theorem_lab", "uncoupled_eigenvectors", [] {
                     const BlaschkeProduct b({DiskPoint(0.5), DiskPoint(-0.25)});
                     const auto r = eigenvector_check(make_example41(b, Matrix::Zero(2, 2)));
                     for (std::size_t n = 0; n < r.norms.size(); ++n)
                         if (r.residuals[n] > 1e-12 || !near(r.norms[n], 1.0, 1e-10)) return false;
                     return r.lower_ok && r.upper_ok;
                 }});
    c.push_back({"theorem_lab", "eigenvectors_random", [] {
                     const BlaschkeProduct b(random_zeros(6, 5));
                     const auto r = eigenvector_check(make_example41(b, random_coupling(6, 6)), 1);
                     for (double x : r.residuals)
                         if (x >= 1e-8) return false;
                     return r.lower_ok && r.upper_ok;
                 }});
    c.push_back({"theorem_lab", "theorem23_single_zero", [] {
                     const auto r = verify_theorem23(Matrix::Zero(1, 1), Matrix::Ones(1, 16),
                                                     BlaschkeProduct({DiskPoint(0.0)}), 16);
                     return r.zero_ok && r.identity_ok && r.identity_residual < 1e-9;
                 }});

    // lemerdy
    c.push_back({"lemerdy", "geometric_partial_sum",
                 [] { return make_sequence(SequenceKind::Geometric, 20).partial_sums.back() < 2.0; }});
    c.push_back({"lemerdy", "uncoupled_basis", [] {
                     const auto inst = build_instance(custom_sequence(std::vector<double>(8, 0.0)),
                                                      make_spectrum(SpectrumFamily::Dyadic, 16), 16);
                     return (inst.basis - Eigen::MatrixXd::Identity(16, 16)).norm() == 0.0 &&
                            inst.coupling.norm() == 0.0;
                 }});
    c.push_back({"lemerdy", "uncoupled_projections", [] {
                     const auto inst = build_instance(custom_sequence(std::vector<double>(8, 0.0)),
                                                      make_spectrum(SpectrumFamily::Dyadic, 16), 16);
                     for (double p : projection_norms(inst))
                         if (!near(p, 1.0, 1e-12)) return false;
                     return unconditional_constant(inst, 50, 1).value == 1.0;
                 }});
    c.push_back({"lemerdy", "small_basis_pattern", [] {
                     const auto inst = build_instance(custom_sequence({0.5, 0.25}),
                                                      make_spectrum(SpectrumFamily::Dyadic, 4), 4);
                     const auto& w = inst.basis;
                     return w(0, 1) == 0.5 && w(2, 1) == 0.25 && w(2, 3) == 0.5 && w(0, 3) == 0.0;
                 }});
    c.push_back({"lemerdy", "hankel_toeplitz_unit", [] {
                     const auto r = hankel_toeplitz_norms(custom_sequence({1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}), {4});
                     return near(r[0].hankel, 1.0, 1e-12) && near(r[0].toeplitz, 1.0, 1e-12);
                 }});
    c.push_back({"lemerdy", "geometric_projections_bounded", [] {
                     const auto inst = build_instance(make_sequence(SequenceKind::Geometric, 32),
                                                      make_spectrum(SpectrumFamily::Dyadic, 64), 64);
                     double m = 0;
                     for (double p : projection_norms(inst)) m = std::max(m, p);
                     return m < 2.0;
                 }});

    // cli
    c.push_back({"cli", "sha256_empty", [] {
                     return sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";
                 }});
    return c;
}

}  // namespace

int selftest(std::ostream& out) {
    int failed = 0;
    int total = 0;
    char line[160];
    for (const auto& ch : checks()) {
        ++total;
        bool ok = false;
        std::string why;
        try {
            ok = ch.run();
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (!ok) ++failed;
        std::snprintf(line, sizeof line, "%-14s %-38s %s", ch.module, ch.name, ok ? "PASS" : "FAIL");
        out << line;
        if (!why.empty()) out << "  " << why;
        out << '\n';
    }
    out << (total - failed) << "/" << total << " checks passed\n";
    return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace oplab::cli
