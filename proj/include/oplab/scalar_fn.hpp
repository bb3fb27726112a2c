#pragma once

// Scalar function theory on the unit disk: Blaschke factors and products,
// the pseudohyperbolic metric, rational functions with poles off the closed
// disk, and Hardy-space inner products by boundary quadrature.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oplab/common.hpp"

namespace oplab {

/// A point of the open unit disk. Construction rejects |z| >= 1.
class DiskPoint {
public:
    explicit DiskPoint(Complex value);
    DiskPoint(double re, double im = 0.0) : DiskPoint(Complex(re, im)) {}

    Complex value() const noexcept { return value_; }
    double abs() const noexcept { return std::abs(value_); }

    friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

private:
    Complex value_;
};

std::vector<DiskPoint> to_disk_points(std::span<const Complex> values);
std::vector<Complex> to_complex(std::span<const DiskPoint> points);

/// Zeros closer to the circle than this are refused by BlaschkeProduct.
inline constexpr double kMaxZeroModulus = 1.0 - 1e-6;

enum class ZeroMode { Simple, AllowRepeated };

/// Finite Blaschke product prod_n b_{lambda_n}, with b_0(z) := z.
class BlaschkeProduct {
public:
    BlaschkeProduct() = default;
    explicit BlaschkeProduct(std::vector<DiskPoint> zeros, std::string label = {},
                             ZeroMode mode = ZeroMode::Simple);

    const std::vector<DiskPoint>& zeros() const noexcept { return zeros_; }
    const std::string& label() const noexcept { return label_; }
    std::size_t size() const noexcept { return zeros_.size(); }

    /// The product with the n-th zero removed (B_n in the model-space formulas).
    BlaschkeProduct without(std::size_t n) const;

private:
    std::vector<DiskPoint> zeros_;
    std::string label_;
};

/// b_lambda(z) = (|lambda|/lambda)(lambda - z)/(1 - conj(lambda) z).
Complex blaschke_factor(Complex lambda, Complex z);

Complex blaschke_eval(const BlaschkeProduct& b, Complex z);

/// log|B(z)| and the unimodular phase of B(z), accumulated factor by factor so
/// long products do not underflow. log_modulus is -inf at a zero of B.
struct BlaschkeLog {
    double log_modulus = 0.0;
    Complex phase{1.0, 0.0};
};
BlaschkeLog blaschke_eval_log(const BlaschkeProduct& b, Complex z);

/// |lambda - mu| / |1 - conj(mu) lambda|.
double pseudohyperbolic(DiskPoint lambda, DiskPoint mu);

// ---------------------------------------------------------------------------
// Polynomials: ascending coefficient vectors, p(z) = sum_k c[k] z^k.

using Coeffs = std::vector<Complex>;

namespace poly {
Complex eval(const Coeffs& p, Complex z);
/// Value and first derivative by a single Horner sweep.
std::pair<Complex, Complex> eval_with_derivative(const Coeffs& p, Complex z);
Coeffs add(const Coeffs& p, const Coeffs& q);
Coeffs mul(const Coeffs& p, const Coeffs& q);
Coeffs scale(const Coeffs& p, Complex c);
Coeffs from_roots(std::span<const Complex> roots, Complex leading = 1.0);
/// Roots via eigenvalues of the companion matrix.
std::vector<Complex> roots(const Coeffs& p);
/// Degree after dropping exactly-zero leading coefficients; -1 for p == 0.
int degree(const Coeffs& p);
void trim(Coeffs& p);
}  // namespace poly

// ---------------------------------------------------------------------------

/// gain * prod (z - zeros[i]) / prod (z - poles[j]).
struct RationalFactors {
    Complex gain{1.0, 0.0};
    std::vector<Complex> zeros;
    std::vector<Complex> poles;
};

/// Quotient of polynomials whose denominator has no root in the closed disk.
/// Coefficients are the primary representation; a factorization is carried
/// along whenever the function was built from known roots, and is used for
/// evaluation and for the operator functional calculus.
class RationalFunction {
public:
    /// Common roots closer than this are cancelled on normalization.
    static constexpr double kCancelTol = 1e-10;

    RationalFunction() : RationalFunction(constant(0.0)) {}
    RationalFunction(Coeffs numerator, Coeffs denominator);

    static RationalFunction constant(Complex c);
    static RationalFunction monomial(int k, Complex c = 1.0);
    static RationalFunction polynomial(Coeffs p);
    static RationalFunction from_factors(RationalFactors f);
    static RationalFunction blaschke_factor(DiskPoint lambda);
    static RationalFunction blaschke(const BlaschkeProduct& b);
    /// 1 / (1 - conj(lambda) z).
    static RationalFunction cauchy_kernel(DiskPoint lambda);

    const Coeffs& numerator() const noexcept { return num_; }
    const Coeffs& denominator() const noexcept { return den_; }
    const std::optional<RationalFactors>& known_factors() const noexcept { return factors_; }
    /// Known factorization, or one computed from the coefficients.
    RationalFactors factors() const;

    Complex operator()(Complex z) const;
    Complex derivative(Complex z) const;
    bool is_zero() const;

    RationalFunction operator+(const RationalFunction& g) const;
    RationalFunction operator-(const RationalFunction& g) const;
    RationalFunction operator*(const RationalFunction& g) const;
    RationalFunction operator-() const;
    RationalFunction scaled(Complex c) const;

private:
    RationalFunction(Coeffs numerator, Coeffs denominator, std::optional<RationalFactors> f);
    void normalize();

    Coeffs num_;
    Coeffs den_;
    std::optional<RationalFactors> factors_;
};

enum class RationalOp { Add, Mul, Scale };

/// Closure operations on rational functions. For Scale, g must be a constant.
RationalFunction rational_algebra(const RationalFunction& f, const RationalFunction& g,
                                  RationalOp op);

/// (phi(lambda) - phi(mu)) / (lambda - mu), or phi'(lambda) when the points
/// coincide to within 1e-10.
Complex divided_difference(const RationalFunction& phi, Complex lambda, Complex mu);

// ---------------------------------------------------------------------------
// H^2 inner products by the trapezoid rule on the unit circle.

inline constexpr int kDefaultQuadraturePoints = 4096;
inline constexpr int kMaxQuadraturePoints = 1 << 20;

/// 4096 unless OPLAB_QUAD_POINTS is set in the environment.
int default_quadrature_points();

struct H2InnerResult {
    Complex value;
    int points = 0;          // final rule size
    double last_change = 0;  // |S_2M - S_M| at the final doubling
    bool converged = false;  // last_change < 1e-10
};

/// (1/2pi) int f(e^{it}) conj(g(e^{it})) dt. The rule is doubled until it
/// stabilizes to 1e-10 (cap 2^20 points); a final change above 1e-8 throws
/// NonConvergence.
H2InnerResult h2_inner(const RationalFunction& f, const RationalFunction& g,
                       int quadrature_points = default_quadrature_points());

/// Gram matrix G(i, j) = <f_j, f_i> on a shared, jointly doubled rule.
struct H2GramResult {
    Matrix gram;
    int points = 0;
    double last_change = 0;
    bool converged = false;
};
H2GramResult h2_gram(std::span<const RationalFunction> fs,
                     int quadrature_points = default_quadrature_points());

}  // namespace oplab
