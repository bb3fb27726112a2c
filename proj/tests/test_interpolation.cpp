#include <gtest/gtest.h>

#include "oplab/interpolation.hpp"

using namespace oplab;

namespace {
std::vector<DiskPoint> geometric(int n) {
    std::vector<DiskPoint> z;
    for (int k = 1; k <= n; ++k) z.emplace_back(1.0 - std::ldexp(1.0, -k));
    return z;
}
}  // namespace

TEST(Carleson, SingleZeroIsEmptyProduct) {
    EXPECT_EQ(carleson_delta(std::vector<DiskPoint>{DiskPoint(0.5)}).delta, 1.0);
}

TEST(Carleson, ThreePoints) {
    const auto r = carleson_delta(std::vector<DiskPoint>{0.5, 0.75, 0.875});
    EXPECT_NEAR(r.delta, 0.14545454545454545, 1e-15);
    EXPECT_EQ(r.argmin, 1u);
    ASSERT_EQ(r.values.size(), 3u);
}

TEST(Carleson, GeometricFamilyStable) {
    // The products converge to prod_{j >= 1} ((2^j - 1)/(2^j + 1))^2 ~ 0.0147 from above.
    double limit = 1.0;
    for (int j = 1; j < 60; ++j) limit *= std::pow((std::ldexp(1.0, j) - 1) / (std::ldexp(1.0, j) + 1), 2);
    double prev = 1.0;
    for (int n = 2; n <= 40; ++n) {
        const double d = carleson_delta(geometric(n)).delta;
        EXPECT_LE(d, prev + 1e-15) << n;
        EXPECT_GT(d, limit * (1 - 1e-9)) << n;
        prev = d;
    }
    EXPECT_NEAR(carleson_delta(geometric(4)).delta, 0.0843215, 1e-7);
    EXPECT_NEAR(carleson_delta(geometric(40)).delta, limit, 1e-4);
}

TEST(GeneralizedCarleson, SingleFactorIsOne) {
    const std::vector<BlaschkeProduct> f{BlaschkeProduct({DiskPoint(0.3, 0.2), DiskPoint(-0.5)})};
    EXPECT_NEAR(generalized_carleson_ratio(f, default_disk_grid()).estimate, 1.0, 1e-12);
}

TEST(GeneralizedCarleson, GeometricFactorsPositive) {
    const auto z = geometric(6);
    std::vector<BlaschkeProduct> f;
    for (const auto& p : z) f.emplace_back(std::vector<DiskPoint>{p});
    const auto r = generalized_carleson_ratio(f, default_disk_grid());
    const double delta = carleson_delta(z).delta;
    EXPECT_GT(r.estimate, 0.0);
    // Near each node the ratio tends to prod_{k != n} |b_k(l_n)|, so delta caps the infimum.
    EXPECT_LE(r.estimate, delta);
    EXPECT_NEAR(r.estimate, 0.0252685042, 1e-9);
    EXPECT_EQ(r.skipped, 0u);
}

TEST(GeneralizedCarleson, DoubleZeroDegenerates) {
    const std::vector<BlaschkeProduct> f{BlaschkeProduct({DiskPoint(0.5)}), BlaschkeProduct({DiskPoint(0.5)})};
    const double coarse = generalized_carleson_ratio(f, default_disk_grid(16, 64)).estimate;
    const double fine = generalized_carleson_ratio(f, default_disk_grid(256, 1024)).estimate;
    EXPECT_LT(fine, coarse);
    EXPECT_LT(fine, 0.02);
}

TEST(Pick, OneByOne) {
    const auto d = make_pick_data({DiskPoint(0.0)}, {0.0});
    EXPECT_EQ(d.pick(0, 0), Complex(1.0));
    EXPECT_TRUE(pick_feasible(d).feasible);
    EXPECT_TRUE(pick_feasible(make_pick_data({DiskPoint(0.0)}, {Complex(0.6, 0.8)})).feasible);
    EXPECT_FALSE(pick_feasible(make_pick_data({DiskPoint(0.0)}, {1.01})).feasible);
}

TEST(Pick, TwoByTwoEigenvalue) {
    const auto d = make_pick_data({DiskPoint(0.0), DiskPoint(0.5)}, {0.0, 0.9});
    // [[1, 1], [1, (1 - 0.81) / 0.75]]: determinant 0.19/0.75 - 1 < 0.
    const double p22 = 0.19 / 0.75;
    const double lmin = 0.5 * (1 + p22) - std::sqrt(0.25 * (1 - p22) * (1 - p22) + 1.0);
    const auto f = pick_feasible(d);
    EXPECT_FALSE(f.feasible);
    EXPECT_NEAR(f.min_eigenvalue, lmin, 1e-14);
}

TEST(NevanlinnaPick, Constants) {
    const std::vector<DiskPoint> nodes{DiskPoint(0.0)};
    const std::vector<Complex> t{0.5};
    const auto ip = np_interpolate(nodes, t);
    EXPECT_NEAR(ip.norm, 0.5, 1e-6);
    EXPECT_NEAR(std::abs(ip.phi(Complex(0.4, -0.7)) - 0.5), 0.0, 1e-6);

    const std::vector<DiskPoint> n3{DiskPoint(0.1), DiskPoint(-0.4, 0.2), DiskPoint(0.0, 0.6)};
    const Complex c(0.3, -1.2);
    const std::vector<Complex> t3(3, c);
    const auto ip3 = np_interpolate(n3, t3);
    EXPECT_NEAR(ip3.norm, std::abs(c), 1e-6 * std::abs(c));
    EXPECT_LT(ip3.residual, 1e-8);
}

TEST(NevanlinnaPick, TwoNodeBisection) {
    const std::vector<DiskPoint> nodes{DiskPoint(0.0), DiskPoint(0.5)};
    const std::vector<Complex> t{0.0, 0.25};
    const auto ip = np_interpolate(nodes, t);
    // The minimal norm m solves det Pick(t/m) = 0: 1 - (1 - (0.25/m)^2)/0.75 ... closed form m = 0.5.
    EXPECT_NEAR(ip.norm, 0.5, 1e-6);
    EXPECT_LE(ip.lower, ip.norm);
    EXPECT_LT(ip.residual, 1e-8);
    double sup = 0;
    for (int k = 0; k < 4096; ++k) sup = std::max(sup, std::abs(ip.phi(std::polar(1.0, 2 * kPi * k / 4096))));
    EXPECT_LE(sup, ip.norm * (1 + 1e-6));
}
