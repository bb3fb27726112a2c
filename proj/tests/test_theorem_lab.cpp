#include <gtest/gtest.h>

#include "oplab/interpolation.hpp"
#include "oplab/linalg.hpp"
#include "oplab/operator_core.hpp"
#include "oplab/similarity.hpp"
#include "oplab/theorem_lab.hpp"

using namespace oplab;

namespace {
BlaschkeProduct geometric(int n) {
    std::vector<DiskPoint> z;
    for (int k = 1; k <= n; ++k) z.emplace_back(1.0 - std::ldexp(1.0, -k));
    return BlaschkeProduct(z);
}

BlaschkeProduct dyadic_zeros(int n) {
    std::vector<DiskPoint> z;
    for (int k = 1; k <= n; ++k) z.emplace_back(std::ldexp(1.0, -k));
    return BlaschkeProduct(z);
}
}  // namespace

TEST(ModelBasis, ZeroAtOrigin) {
    const auto m = build_model_basis(BlaschkeProduct({DiskPoint(0.0)}));
    EXPECT_NEAR(std::abs(m.gram(0, 0) - 1.0), 0.0, 1e-14);
    EXPECT_LT(m.shift.norm(), 1e-14);
}

TEST(ModelBasis, SingleKernelHasUnitNorm) {
    const auto m = build_model_basis(BlaschkeProduct({DiskPoint(0.5)}));
    EXPECT_NEAR(std::abs(m.gram(0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(m.kernels[0](0.0) - std::sqrt(0.75)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m.shift(0, 0) - 0.5), 0.0, 1e-12);
}

// |G(n, m)| = (1 - rho(l_n, l_m)^2)^{1/2} tends to sech(|n - m| ln2 / 2) along
// l_n = 1 - 2^{-n}; the bi-infinite Toeplitz symbol has its minimum at pi.
double symbol_min() {
    double s = 1.0;
    for (int j = 1; j < 200; ++j) s += 2.0 * (j % 2 ? -1.0 : 1.0) / std::cosh(j * std::log(2.0) / 2);
    return s;
}

double symbol_max() {
    double s = 1.0;
    for (int j = 1; j < 200; ++j) s += 2.0 / std::cosh(j * std::log(2.0) / 2);
    return s;
}

TEST(ModelBasis, GeometricGramConditionStable) {
    const double ceiling = symbol_max() / symbol_min();
    EXPECT_NEAR(symbol_min(), 2.4e-5, 0.2e-5);
    double prev = 0.0;
    for (int n = 2; n <= 8; ++n) {
        const auto m = build_model_basis(geometric(n));
        const double c = condition_number(m.gram);
        EXPECT_TRUE(std::isfinite(c));
        EXPECT_LT(c, ceiling) << n;
        EXPECT_GT(c, prev) << n;
        EXPECT_LT(m.diag_error, 1e-10);
        EXPECT_LT(m.eigen_residual, 1e-8);
        prev = c;
    }
    const double g = std::sqrt(0.75 * 0.4375) / 0.625;
    EXPECT_NEAR(condition_number(build_model_basis(geometric(2)).gram), (1 + g) / (1 - g), 1e-9);
    EXPECT_NEAR(prev, 28992.8, 0.5);
}

TEST(ModelBasis, KernelEigenbasisConditionBounded) {
    // Eigenvectors of the compressed shift are the kernels, so cond(X)^2 = cond(G).
    for (int n : {4, 8, 12}) {
        const auto m = build_model_basis(geometric(n));
        const auto w = eigenbasis_similarity(Operator(m.shift), m.chol);
        EXPECT_NEAR(w.cond * w.cond / condition_number(m.gram), 1.0, 1e-6) << n;
        EXPECT_LT(w.cond, std::sqrt(symbol_max() / symbol_min())) << n;
        EXPECT_LT(w.residual("diagonalization"), 1e-8 * w.cond) << n;
    }
}

TEST(APhi, ConstantsAndIdentity) {
    const auto inst = make_example41(dyadic_zeros(4), random_coupling(4, 2));
    EXPECT_EQ(a_phi(inst, RationalFunction::constant(2.5)).norm(), 0.0);
    EXPECT_LT((a_phi(inst, RationalFunction::monomial(1)) - inst.a).norm(), 1e-15);
    EXPECT_LT(a_phi_oracle(inst, RationalFunction::constant(2.5)).norm(), 1e-12);
    EXPECT_LT((a_phi_oracle(inst, RationalFunction::monomial(1)) - inst.a).norm(), 1e-12 * inst.a.norm());
}

TEST(APhi, OraclePairAgreement) {
    const auto phi = RationalFunction::blaschke_factor(DiskPoint(0.3));
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto inst = make_example41(BlaschkeProduct(random_zeros(6, seed)), random_coupling(6, seed + 100));
        const Matrix o = a_phi_oracle(inst, phi);
        EXPECT_LE((a_phi(inst, phi) - o).norm(), 1e-8 * o.norm()) << seed;
    }
}

TEST(APhi, BlaschkeOfItselfVanishes) {
    const auto b = dyadic_zeros(5);
    const auto inst = make_example41(b, random_coupling(5, 9));
    EXPECT_LT(a_phi(inst, RationalFunction::blaschke(b)).norm(), 1e-12);
    EXPECT_LT(a_phi_oracle(inst, RationalFunction::blaschke(b)).norm(), 1e-9);
}

TEST(APhi, RejectsNonzeroDiagonal) {
    EXPECT_THROW(make_example41(dyadic_zeros(2), Matrix::Identity(2, 2)), Error);
}

TEST(Cofactor, UnitAtOwnNode) {
    const auto b = dyadic_zeros(4);
    const auto f = normalized_cofactor(b, 2);
    EXPECT_NEAR(std::abs(f(0.125) - 1.0), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(f(0.5)), 0.0, 1e-14);
}

TEST(Intertwiner, Uncoupled) {
    const auto inst = make_example41(dyadic_zeros(3), Matrix::Zero(3, 3));
    const auto y0 = construct_y(inst, {0.0, 0.0, 0.0});
    EXPECT_EQ(y0.y_k.norm(), 0.0);
    EXPECT_EQ(y0.residual, 0.0);
    const auto y1 = construct_y(inst, {Complex(1, -2), 0.5, -3.0});
    EXPECT_LT(y1.residual, 1e-12);
    EXPECT_NEAR(std::abs(y1.y_k(0, 0) - Complex(1, -2)), 0.0, 1e-15);
}

TEST(Intertwiner, GeometricRandomCoupling) {
    const auto inst = make_example41(geometric(8), random_coupling(8, 17));
    const auto y = construct_y(inst, std::vector<Complex>(8, 0.0));
    EXPECT_LT(y.relative_residual, 1e-8);
    EXPECT_LT(y.relative_offdiag, 1e-8);
    EXPECT_GT(y.norm_y, 0.0);
}

TEST(Eigenvectors, Uncoupled) {
    const auto r = eigenvector_check(make_example41(dyadic_zeros(3), Matrix::Zero(3, 3)));
    for (std::size_t n = 0; n < 3; ++n) {
        EXPECT_LT(r.residuals[n], 1e-14);
        EXPECT_NEAR(r.norms[n], 1.0, 1e-12);
    }
    EXPECT_TRUE(r.lower_ok);
    EXPECT_TRUE(r.upper_ok);
}

TEST(Eigenvectors, RandomInstance) {
    const auto inst = make_example41(BlaschkeProduct(random_zeros(6, 4)), random_coupling(6, 5));
    const auto r = eigenvector_check(inst, 3);
    for (double x : r.residuals) EXPECT_LT(x, 1e-8);
    for (double n : r.norms) EXPECT_GE(n, 1.0 - 1e-10);
    EXPECT_NEAR(r.delta, carleson_delta(inst.basis.b.zeros()).delta, 1e-15);
    EXPECT_TRUE(r.lower_ok);
    EXPECT_TRUE(r.upper_ok);
    EXPECT_LE(r.m_lower, r.m_upper * (1 + 1e-9));
}

TEST(Taylor, CauchyKernelAndTail) {
    const auto c = taylor_coefficients(RationalFunction::cauchy_kernel(DiskPoint(0.5)), 6);
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(std::abs(c[k] - std::pow(0.5, k)), 0.0, 1e-15);
    const BlaschkeProduct b({DiskPoint(0.5)});
    // b_{1/2} = 1/2 - (3/4) sum_{k >= 1} 2^{-(k-1)} z^k, so the tail from k is 3/2^{k}.
    const auto t = taylor_coefficients(RationalFunction::blaschke(b), 40);
    double tail = 0;
    for (int k = 10; k < 40; ++k) tail += std::abs(t[k]);
    EXPECT_NEAR(tail, 3.0 * std::ldexp(1.0, -10), 1e-11);
    EXPECT_GE(blaschke_coefficient_tail(b, 10), 3.0 * std::ldexp(1.0, -10) * (1 - 1e-12));
    EXPECT_LT(blaschke_coefficient_tail(b, 80), blaschke_coefficient_tail(b, 40));
    EXPECT_LT(blaschke_coefficient_tail(b, 120), 1e-10);
    EXPECT_EQ(blaschke_coefficient_tail(BlaschkeProduct({DiskPoint(0.0)}), 2), 0.0);
}

TEST(Theorem23, Decoupled) {
    const auto b = dyadic_zeros(3);
    const auto r = verify_theorem23(Operator::diagonal(to_complex(b.zeros())).matrix(), Matrix::Zero(3, 128), b, 128);
    EXPECT_TRUE(r.zero_ok);
    EXPECT_TRUE(r.identity_ok);
    EXPECT_TRUE(r.lower_ok);
    EXPECT_EQ(r.norm_a_theta, 0.0);
}

TEST(Theorem23, SingleZeroAtOrigin) {
    const auto r = verify_theorem23(Matrix::Zero(1, 1), Matrix::Ones(1, 32), BlaschkeProduct({DiskPoint(0.0)}), 32);
    EXPECT_TRUE(r.zero_ok);
    EXPECT_LT(r.identity_residual, 1e-9);
    EXPECT_LT(r.toeplitz_residual, 1e-14);
}

TEST(Theorem23, GeometricPipeline) {
    const auto b = dyadic_zeros(4);
    const Matrix t0 = Operator::diagonal(to_complex(b.zeros())).matrix();
    const Matrix a = random_coupling(256, 31).topRows(4);
    const auto r = verify_theorem23(t0, a, b, 256);
    EXPECT_TRUE(r.zero_ok);
    EXPECT_TRUE(r.identity_ok);
    EXPECT_TRUE(r.lower_ok);
    EXPECT_LT(r.tail_bound, 1e-6);
    EXPECT_LT(r.zero_block, 1e-9);
    EXPECT_LT(r.identity_residual, r.tail_bound + 1e-9);
    EXPECT_GE(r.sigma_min, 1.0 - r.tail_bound);
}

TEST(RandomZeros, SeparatedAndDeterministic) {
    const auto a = random_zeros(8, 42), b = random_zeros(8, 42);
    EXPECT_EQ(a, b);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) EXPECT_GE(pseudohyperbolic(a[i], a[j]), 0.2);
}
