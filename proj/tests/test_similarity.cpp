#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oplab/linalg.hpp"
#include "oplab/similarity.hpp"

using namespace oplab;

namespace {
Matrix random_matrix(int r, int c, unsigned seed) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> d;
    Matrix m(r, c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) m(i, j) = Complex(d(g), d(g));
    return m;
}

Matrix random_unitary(int n, unsigned seed) {
    Eigen::HouseholderQR<Matrix> qr(random_matrix(n, n, seed));
    return qr.householderQ() * Matrix::Identity(n, n);
}

bool has_flag(const SimilarityWitness& w, const std::string& f) {
    return std::find(w.flags.begin(), w.flags.end(), f) != w.flags.end();
}
}  // namespace

TEST(Stein, NilpotentClosedForm) {
    Matrix j = Matrix::Zero(2, 2);
    j(0, 1) = 1.0;
    const auto s = solve_stein(j);
    EXPECT_NEAR(std::abs(s.p(0, 0) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s.p(1, 1) - 2.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s.p(0, 1)), 0.0, 1e-14);
    const auto w = lyapunov_similarity(Operator(j));
    EXPECT_NEAR(std::abs(w.x(1, 1)) / std::abs(w.x(0, 0)), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(w.conjugated_norm, 1.0 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(w.cond, std::sqrt(2.0), 1e-14);
}

TEST(Stein, DiagonalAlreadyContraction) {
    const std::vector<Complex> d{0.3, Complex(0.0, -0.6), -0.1};
    const auto w = lyapunov_similarity(Operator::diagonal(d));
    EXPECT_NEAR(w.conjugated_norm, 0.6, 1e-14);
    Matrix off = w.x;
    off.diagonal().setZero();
    EXPECT_EQ(off.norm(), 0.0);
}

TEST(Stein, ScaledUnitaryIsWellConditioned) {
    const Matrix t = 0.9 * random_unitary(6, 3);
    const auto w = lyapunov_similarity(Operator(t));
    EXPECT_NEAR(w.cond, 1.0, 1e-8);
    EXPECT_LE(w.conjugated_norm, 1.0 + 1e-8);
}

TEST(Stein, RejectsSpectralRadiusOne) {
    EXPECT_THROW(solve_stein(Matrix::Identity(2, 2)), Error);
}

TEST(Stein, RandomConjugatedContraction) {
    for (unsigned seed = 1; seed <= 10; ++seed) {
        Matrix t = random_matrix(12, 12, seed);
        t *= 0.95 / spectral_radius(t);
        const auto w = lyapunov_similarity(Operator(t));
        EXPECT_LE(w.conjugated_norm, 1.0 + 1e-8) << seed;
        EXPECT_LT(w.residual("stein_residual"), 1e-10) << seed;
    }
}

TEST(Eigenbasis, OrthonormalVectors) {
    const std::vector<Complex> d{0.3, -0.2, Complex(0, 0.5)};
    const Matrix u = random_unitary(3, 8);
    const Matrix t = u * Operator::diagonal(d).matrix() * u.adjoint();
    const auto w = eigenbasis_similarity(Operator(t), u);
    EXPECT_NEAR(w.cond, 1.0, 1e-13);
    EXPECT_LT(w.residual("diagonalization"), 1e-14);
}

TEST(Eigenbasis, NearlyParallelFlagged) {
    const double a = 1e-3;
    Matrix v(2, 2);
    v << 1.0, std::cos(a), 0.0, std::sin(a);
    const std::vector<Complex> d{0.2, 0.4};
    const Matrix t = v * Operator::diagonal(d).matrix() * v.inverse();
    const auto w = eigenbasis_similarity(Operator(t), v);
    // Gram [[1, c], [c, 1]] has eigenvalues 1 +- cos(a).
    EXPECT_NEAR(w.cond, std::sqrt((1 + std::cos(a)) / (1 - std::cos(a))), 1e-6 * w.cond);
    EXPECT_NEAR(w.cond * a / 2.0, 1.0, 1e-6);
    EXPECT_TRUE(has_flag(w, "ill_conditioned"));
}

TEST(Sylvester, ScalarAndHomogeneous) {
    const Operator t0 = Operator::zero(1), v(Matrix::Constant(1, 1, 0.5));
    const auto s = sylvester_intertwiner(t0, v, Matrix::Constant(1, 1, Complex(0.7, -1.1)));
    EXPECT_NEAR(std::abs(s.y(0, 0) - Complex(-1.4, 2.2)), 0.0, 1e-15);
    EXPECT_EQ(sylvester_intertwiner(t0, v, Matrix::Zero(1, 1)).y.norm(), 0.0);
    EXPECT_THROW(sylvester_intertwiner(v, v, Matrix::Ones(1, 1)), Error);
}

TEST(Sylvester, DisjointAnnuli) {
    Matrix t = random_matrix(4, 4, 21);
    t *= 0.3 / spectral_radius(t);
    Matrix v = random_matrix(4, 4, 22);
    const Eigen::ComplexEigenSolver<Matrix> es(v);
    // Push the spectrum of V into 2 <= |z| <= 3.
    Vector ev = es.eigenvalues();
    for (auto& e : ev) e = (2.0 + std::abs(e) / (1.0 + std::abs(e))) * e / std::abs(e);
    v = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().inverse();
    const Matrix a = random_matrix(4, 4, 23);
    const auto s = sylvester_intertwiner(Operator(t), Operator(v), a);
    EXPECT_LT(s.residual, 1e-10 * std::max(1.0, s.scale));
    EXPECT_GT(s.gap, 1.0);
}

TEST(DirectSum, OrthogonalSumIsIdentity) {
    const std::vector<Complex> d{std::polar(1.0, 0.4), 0.5};
    const auto r = direct_sum_similarity(Operator::diagonal(d), Matrix::Identity(2, 1), Matrix::Identity(2, 2).col(1));
    EXPECT_TRUE(r.holds);
    EXPECT_LT((r.witness.x.adjoint() * r.witness.x - Matrix::Identity(2, 2)).norm(), 1e-15);
    EXPECT_LT(std::abs(std::abs(r.witness.x(0, 0)) - 1.0) + std::abs(r.witness.x(1, 0)), 1e-15);
    EXPECT_NEAR(r.inverse_norm, 1.0, 1e-15);
    EXPECT_LT(r.inverse_norm, r.certificate);
}

TEST(DirectSum, TwoByTwoClosedForm) {
    const Complex u = std::polar(1.0, 1.0);
    Matrix t(2, 2);
    t << u, 1.0, 0.0, 0.5;
    Vector n(2);
    n << 1.0, 0.5 - u;
    const auto r = direct_sum_similarity(Operator(t), Matrix::Identity(2, 1), n);
    const double a = 1.0 / n.norm();
    EXPECT_NEAR(r.inverse_norm, 1.0 / std::sqrt(1.0 - a), 1e-12);
    EXPECT_NEAR(r.witness.cond, std::sqrt((1.0 + a) / (1.0 - a)), 1e-12);
    EXPECT_NEAR(r.lower_constant, 1.0, 1e-12);
    EXPECT_TRUE(r.holds);
}

TEST(DirectSum, CouplingSweepStaysUnderCertificate) {
    const Complex u = std::polar(1.0, -0.6);
    double prev_cond = 0.0;
    for (double c = 0.5; c <= 10.0; c += 0.5) {
        Matrix t(2, 2);
        t << u, c, 0.0, 0.5;
        Vector n(2);
        n << c, 0.5 - u;
        const auto r = direct_sum_similarity(Operator(t), Matrix::Identity(2, 1), n);
        EXPECT_LE(r.inverse_norm, r.certificate) << c;
        EXPECT_GT(r.witness.cond, prev_cond) << c;
        prev_cond = r.witness.cond;
    }
}

TEST(DirectSum, RejectsNonInvariantSubspace) {
    Matrix t(2, 2);
    t << 1.0, 1.0, 0.0, 0.5;
    EXPECT_THROW(direct_sum_similarity(Operator(t), Matrix::Identity(2, 2).col(1), Matrix::Identity(2, 1)), Error);
}

TEST(C0Split, FullAnnihilation) {
    const std::vector<Complex> d{0.2, -0.4};
    const auto s = c0_split(Operator::diagonal(d), BlaschkeProduct(to_disk_points(d)));
    EXPECT_EQ(s.h0_dim, 2);
    EXPECT_EQ(s.t1.rows(), 0);
}

TEST(C0Split, DiagonalSplitting) {
    const std::vector<Complex> d{0.2, -0.4};
    const auto s = c0_split(Operator::diagonal(d), BlaschkeProduct({DiskPoint(0.2)}));
    EXPECT_EQ(s.h0_dim, 1);
    EXPECT_NEAR(std::abs(s.t0(0, 0) - 0.2), 0.0, 1e-14);
    EXPECT_LT(s.a.norm(), 1e-14);
    EXPECT_LT(s.roundtrip, 1e-14);
}

TEST(C0Split, JordanBlock) {
    const double l = 0.3;
    Matrix t(2, 2);
    t << l, 1.0, 0.0, l;
    const BlaschkeProduct th({DiskPoint(l)});
    const auto s = c0_split(Operator(t), th);
    EXPECT_EQ(s.h0_dim, 1);
    EXPECT_NEAR(std::abs(s.t0(0, 0) - l), 0.0, 1e-12);
    EXPECT_LT(s.lower_left, 1e-12);
    EXPECT_LT(s.theta0_t0, 1e-12);
    EXPECT_LT(blaschke_of_operator(th, Operator(s.t1)).matrix().norm(), 1e-12);
}

TEST(C0Split, EmptyKernelFlag) {
    const std::vector<Complex> d{0.2, -0.4};
    const auto s = c0_split(Operator::diagonal(d), BlaschkeProduct({DiskPoint(0.7)}));
    EXPECT_TRUE(s.empty_h0);
    EXPECT_EQ(s.h0_dim, 0);
}
