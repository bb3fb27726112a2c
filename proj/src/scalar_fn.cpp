#include "oplab/scalar_fn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <Eigen/Eigenvalues>

namespace oplab {

DiskPoint::DiskPoint(Complex value) : value_(value) {
    if (!(std::abs(value) < 1.0)) {
        throw Error(ErrorKind::InvariantViolation,
                    "disk point must satisfy |z| < 1, got |z| = " + std::to_string(std::abs(value)));
    }
}

std::vector<DiskPoint> to_disk_points(std::span<const Complex> values) {
    std::vector<DiskPoint> out;
    out.reserve(values.size());
    for (Complex v : values) out.emplace_back(v);
    return out;
}

std::vector<Complex> to_complex(std::span<const DiskPoint> points) {
    std::vector<Complex> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.value());
    return out;
}

BlaschkeProduct::BlaschkeProduct(std::vector<DiskPoint> zeros, std::string label, ZeroMode mode)
    : zeros_(std::move(zeros)), label_(std::move(label)) {
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
        if (zeros_[i].abs() > kMaxZeroModulus) {
            throw Error(ErrorKind::InvariantViolation,
                        "Blaschke zero too close to the unit circle (|lambda| > 1 - 1e-6)");
        }
        if (mode == ZeroMode::Simple) {
            for (std::size_t j = 0; j < i; ++j) {
                if (zeros_[i] == zeros_[j]) {
                    throw Error(ErrorKind::InvariantViolation,
                                "repeated zero in a simple-zero Blaschke product (index " +
                                    std::to_string(i) + ")");
                }
            }
        }
    }
}

BlaschkeProduct BlaschkeProduct::without(std::size_t n) const {
    BlaschkeProduct out;
    out.label_ = label_;
    out.zeros_.reserve(zeros_.size());
    for (std::size_t k = 0; k < zeros_.size(); ++k) {
        if (k != n) out.zeros_.push_back(zeros_[k]);
    }
    return out;
}

Complex blaschke_factor(Complex lambda, Complex z) {
    if (lambda == Complex(0.0)) return z;
    const Complex den = 1.0 - std::conj(lambda) * z;
    if (std::abs(den) < 1e-14) {
        throw Error(ErrorKind::DegenerateInput, "evaluation point at a Blaschke pole");
    }
    return (std::abs(lambda) / lambda) * (lambda - z) / den;
}

Complex blaschke_eval(const BlaschkeProduct& b, Complex z) {
    Complex acc(1.0, 0.0);
    for (const auto& zero : b.zeros()) acc *= blaschke_factor(zero.value(), z);
    return acc;
}

BlaschkeLog blaschke_eval_log(const BlaschkeProduct& b, Complex z) {
    BlaschkeLog out;
    for (const auto& zero : b.zeros()) {
        const Complex f = blaschke_factor(zero.value(), z);
        const double m = std::abs(f);
        if (m == 0.0) {
            out.log_modulus = -std::numeric_limits<double>::infinity();
            out.phase = 0.0;
            return out;
        }
        out.log_modulus += std::log(m);
        out.phase *= f / m;
    }
    return out;
}

double pseudohyperbolic(DiskPoint lambda, DiskPoint mu) {
    const Complex l = lambda.value();
    const Complex m = mu.value();
    return std::abs(l - m) / std::abs(1.0 - std::conj(m) * l);
}

// ---------------------------------------------------------------------------

namespace poly {

Complex eval(const Coeffs& p, Complex z) {
    Complex acc(0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::pair<Complex, Complex> eval_with_derivative(const Coeffs& p, Complex z) {
    Complex value(0.0);
    Complex deriv(0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        deriv = deriv * z + value;
        value = value * z + *it;
    }
    return {value, deriv};
}

Coeffs add(const Coeffs& p, const Coeffs& q) {
    Coeffs out(std::max(p.size(), q.size()), Complex(0.0));
    for (std::size_t i = 0; i < p.size(); ++i) out[i] += p[i];
    for (std::size_t i = 0; i < q.size(); ++i) out[i] += q[i];
    trim(out);
    return out;
}

Coeffs mul(const Coeffs& p, const Coeffs& q) {
    if (p.empty() || q.empty()) return {Complex(0.0)};
    Coeffs out(p.size() + q.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    trim(out);
    return out;
}

Coeffs scale(const Coeffs& p, Complex c) {
    Coeffs out(p);
    for (auto& x : out) x *= c;
    trim(out);
    return out;
}

Coeffs from_roots(std::span<const Complex> roots, Complex leading) {
    Coeffs out{leading};
    for (Complex r : roots) {
        Coeffs next(out.size() + 1, Complex(0.0));
        for (std::size_t i = 0; i < out.size(); ++i) {
            next[i + 1] += out[i];
            next[i] -= r * out[i];
        }
        out = std::move(next);
    }
    return out;
}

int degree(const Coeffs& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != Complex(0.0)) return i;
    return -1;
}

void trim(Coeffs& p) {
    const int d = degree(p);
    p.resize(d < 0 ? 1 : d + 1);
    if (d < 0) p[0] = 0.0;
}

std::vector<Complex> roots(const Coeffs& p) {
    const int d = degree(p);
    if (d <= 0) return {};
    if (d == 1) return {-p[0] / p[1]};
    Matrix companion = Matrix::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -p[i] / p[d];
    Eigen::ComplexEigenSolver<Matrix> solver(companion, false);
    std::vector<Complex> out(d);
    for (int i = 0; i < d; ++i) out[i] = solver.eigenvalues()(i);
    return out;
}

}  // namespace poly

// ---------------------------------------------------------------------------

namespace {

// Removes pairs zero/pole closer than tol. Returns true when anything was removed.
bool cancel_common(std::vector<Complex>& zeros, std::vector<Complex>& poles, double tol) {
    bool any = false;
    for (std::size_t i = 0; i < zeros.size();) {
        std::size_t best = poles.size();
        double best_dist = tol;
        for (std::size_t j = 0; j < poles.size(); ++j) {
            const double dist = std::abs(zeros[i] - poles[j]);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        if (best < poles.size()) {
            poles.erase(poles.begin() + static_cast<std::ptrdiff_t>(best));
            zeros.erase(zeros.begin() + static_cast<std::ptrdiff_t>(i));
            any = true;
        } else {
            ++i;
        }
    }
    return any;
}

void check_poles(std::span<const Complex> poles) {
    for (Complex p : poles) {
        if (!(std::abs(p) > 1.0)) {
            throw Error(ErrorKind::InvariantViolation,
                        "rational function has a pole in the closed unit disk (|p| = " +
                            std::to_string(std::abs(p)) + ")");
        }
    }
}

// Poles of g that are not (within tol) already poles of f, as a multiset difference.
std::vector<Complex> missing_poles(const std::vector<Complex>& have, const std::vector<Complex>& want,
                                   double tol) {
    std::vector<Complex> pool = have;
    std::vector<Complex> missing;
    for (Complex p : want) {
        auto it = std::find_if(pool.begin(), pool.end(),
                               [&](Complex q) { return std::abs(p - q) < tol; });
        if (it != pool.end()) {
            pool.erase(it);
        } else {
            missing.push_back(p);
        }
    }
    return missing;
}

}  // namespace

RationalFunction::RationalFunction(Coeffs numerator, Coeffs denominator)
    : RationalFunction(std::move(numerator), std::move(denominator), std::nullopt) {}

RationalFunction::RationalFunction(Coeffs numerator, Coeffs denominator,
                                   std::optional<RationalFactors> f)
    : num_(std::move(numerator)), den_(std::move(denominator)), factors_(std::move(f)) {
    normalize();
}

void RationalFunction::normalize() {
    if (num_.empty()) num_ = {Complex(0.0)};
    poly::trim(num_);
    poly::trim(den_);
    for (const auto& c : num_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw Error(ErrorKind::InvariantViolation, "non-finite numerator coefficient");
    if (poly::degree(den_) < 0)
        throw Error(ErrorKind::InvariantViolation, "denominator is identically zero");

    if (poly::degree(num_) < 0) {
        num_ = {Complex(0.0)};
        den_ = {Complex(1.0)};
        factors_ = RationalFactors{Complex(0.0), {}, {}};
        return;
    }

    if (factors_) {
        if (cancel_common(factors_->zeros, factors_->poles, kCancelTol)) {
            num_ = poly::from_roots(factors_->zeros, factors_->gain);
            den_ = poly::from_roots(factors_->poles, 1.0);
        }
        check_poles(factors_->poles);
    } else {
        std::vector<Complex> den_roots = poly::roots(den_);
        if (poly::degree(num_) >= 1 && !den_roots.empty()) {
            std::vector<Complex> num_roots = poly::roots(num_);
            const Complex lead_n = num_[poly::degree(num_)];
            const Complex lead_d = den_[poly::degree(den_)];
            if (cancel_common(num_roots, den_roots, kCancelTol)) {
                num_ = poly::from_roots(num_roots, lead_n);
                den_ = poly::from_roots(den_roots, lead_d);
            }
        }
        check_poles(den_roots);
    }

    // den(0) != 0 because no pole sits at the origin; fix the scaling there.
    const Complex s = den_[0];
    for (auto& c : num_) c /= s;
    for (auto& c : den_) c /= s;
}

RationalFunction RationalFunction::constant(Complex c) {
    return RationalFunction({c}, {Complex(1.0)}, RationalFactors{c, {}, {}});
}

RationalFunction RationalFunction::monomial(int k, Complex c) {
    Coeffs num(static_cast<std::size_t>(k) + 1, Complex(0.0));
    num[static_cast<std::size_t>(k)] = c;
    return RationalFunction(std::move(num), {Complex(1.0)},
                            RationalFactors{c, std::vector<Complex>(static_cast<std::size_t>(k), 0.0), {}});
}

RationalFunction RationalFunction::polynomial(Coeffs p) {
    return RationalFunction(std::move(p), {Complex(1.0)});
}

RationalFunction RationalFunction::from_factors(RationalFactors f) {
    Coeffs num = poly::from_roots(f.zeros, f.gain);
    Coeffs den = poly::from_roots(f.poles, 1.0);
    return RationalFunction(std::move(num), std::move(den), std::move(f));
}

RationalFunction RationalFunction::blaschke_factor(DiskPoint lambda) {
    const Complex l = lambda.value();
    if (l == Complex(0.0)) return monomial(1);
    const double m = std::abs(l);
    return RationalFunction({Complex(m), -m / l}, {Complex(1.0), -std::conj(l)},
                            RationalFactors{Complex(1.0 / m), {l}, {1.0 / std::conj(l)}});
}

RationalFunction RationalFunction::blaschke(const BlaschkeProduct& b) {
    RationalFactors f;
    for (const auto& z : b.zeros()) {
        const Complex l = z.value();
        f.zeros.push_back(l);
        if (l != Complex(0.0)) {
            f.gain /= std::abs(l);
            f.poles.push_back(1.0 / std::conj(l));
        }
    }
    return from_factors(std::move(f));
}

RationalFunction RationalFunction::cauchy_kernel(DiskPoint lambda) {
    const Complex l = lambda.value();
    if (l == Complex(0.0)) return constant(1.0);
    return RationalFunction({Complex(1.0)}, {Complex(1.0), -std::conj(l)},
                            RationalFactors{-1.0 / std::conj(l), {}, {1.0 / std::conj(l)}});
}

RationalFactors RationalFunction::factors() const {
    if (factors_) return *factors_;
    RationalFactors f;
    const int dn = poly::degree(num_);
    const int dd = poly::degree(den_);
    f.gain = num_[static_cast<std::size_t>(dn)] / den_[static_cast<std::size_t>(dd)];
    f.zeros = poly::roots(num_);
    f.poles = poly::roots(den_);
    return f;
}

Complex RationalFunction::operator()(Complex z) const {
    if (factors_) {
        Complex acc = factors_->gain;
        const std::size_t n = std::max(factors_->zeros.size(), factors_->poles.size());
        // Interleave zeros and poles to keep partial products O(1).
        for (std::size_t i = 0; i < n; ++i) {
            if (i < factors_->zeros.size()) acc *= (z - factors_->zeros[i]);
            if (i < factors_->poles.size()) acc /= (z - factors_->poles[i]);
        }
        return acc;
    }
    return poly::eval(num_, z) / poly::eval(den_, z);
}

Complex RationalFunction::derivative(Complex z) const {
    const auto [n, dn] = poly::eval_with_derivative(num_, z);
    const auto [d, dd] = poly::eval_with_derivative(den_, z);
    return (dn * d - n * dd) / (d * d);
}

bool RationalFunction::is_zero() const { return poly::degree(num_) < 0; }

RationalFunction RationalFunction::operator+(const RationalFunction& g) const {
    if (is_zero()) return g;
    if (g.is_zero()) return *this;
    if (factors_ && g.factors_) {
        // Common denominator over the union (as multisets) of the two pole sets.
        const auto extra_for_f = missing_poles(factors_->poles, g.factors_->poles, kCancelTol);
        const auto extra_for_g = missing_poles(g.factors_->poles, factors_->poles, kCancelTol);
        std::vector<Complex> poles = factors_->poles;
        poles.insert(poles.end(), extra_for_f.begin(), extra_for_f.end());
        // Numerators written against the monic pole polynomials.
        Coeffs nf = poly::from_roots(factors_->zeros, factors_->gain);
        Coeffs ng = poly::from_roots(g.factors_->zeros, g.factors_->gain);
        Coeffs num = poly::add(poly::mul(nf, poly::from_roots(extra_for_f, 1.0)),
                               poly::mul(ng, poly::from_roots(extra_for_g, 1.0)));
        Coeffs den = poly::from_roots(poles, 1.0);
        return RationalFunction(std::move(num), std::move(den));
    }
    if (den_ == g.den_) return RationalFunction(poly::add(num_, g.num_), den_);
    return RationalFunction(poly::add(poly::mul(num_, g.den_), poly::mul(g.num_, den_)),
                            poly::mul(den_, g.den_));
}

RationalFunction RationalFunction::operator-() const { return scaled(-1.0); }

RationalFunction RationalFunction::operator-(const RationalFunction& g) const { return *this + (-g); }

RationalFunction RationalFunction::operator*(const RationalFunction& g) const {
    std::optional<RationalFactors> f;
    if (factors_ && g.factors_) {
        f = RationalFactors{factors_->gain * g.factors_->gain, factors_->zeros, factors_->poles};
        f->zeros.insert(f->zeros.end(), g.factors_->zeros.begin(), g.factors_->zeros.end());
        f->poles.insert(f->poles.end(), g.factors_->poles.begin(), g.factors_->poles.end());
    }
    return RationalFunction(poly::mul(num_, g.num_), poly::mul(den_, g.den_), std::move(f));
}

RationalFunction RationalFunction::scaled(Complex c) const {
    std::optional<RationalFactors> f = factors_;
    if (f) {
        f->gain *= c;
        if (c == Complex(0.0)) f = std::nullopt;
    }
    return RationalFunction(poly::scale(num_, c), den_, std::move(f));
}

RationalFunction rational_algebra(const RationalFunction& f, const RationalFunction& g,
                                  RationalOp op) {
    switch (op) {
        case RationalOp::Add: return f + g;
        case RationalOp::Mul: return f * g;
        case RationalOp::Scale:
            if (poly::degree(g.numerator()) > 0 || poly::degree(g.denominator()) > 0) {
                throw Error(ErrorKind::PreconditionViolation, "scale operand must be a constant");
            }
            return f.scaled(g(0.0));
    }
    return f;
}

Complex divided_difference(const RationalFunction& phi, Complex lambda, Complex mu) {
    if (!(std::abs(lambda) < 1.0) || !(std::abs(mu) < 1.0)) {
        throw Error(ErrorKind::PreconditionViolation, "divided difference nodes must lie in the open disk");
    }
    if (std::abs(lambda - mu) > 1e-10) return (phi(lambda) - phi(mu)) / (lambda - mu);
    return phi.derivative(lambda);
}

// ---------------------------------------------------------------------------

int default_quadrature_points() {
    if (const char* env = std::getenv("OPLAB_QUAD_POINTS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0 || v > kMaxQuadraturePoints) return -1;
        return static_cast<int>(v);
    }
    return kDefaultQuadraturePoints;
}

namespace {

void check_rule_size(int points) {
    if (points < 256 || (points & (points - 1)) != 0 || points > kMaxQuadraturePoints) {
        throw Error(ErrorKind::PreconditionViolation,
                    "quadrature_points must be a power of two in [256, 2^20], got " +
                        std::to_string(points));
    }
}

Complex circle_point(long k, long m) {
    const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
    return {std::cos(t), std::sin(t)};
}

constexpr double kStableChange = 1e-10;
constexpr double kFailChange = 1e-8;

}  // namespace

H2InnerResult h2_inner(const RationalFunction& f, const RationalFunction& g, int quadrature_points) {
    check_rule_size(quadrature_points);
    long m = quadrature_points;
    Complex sum(0.0);
    for (long k = 0; k < m; ++k) {
        const Complex w = circle_point(k, m);
        sum += f(w) * std::conj(g(w));
    }
    Complex value = sum / static_cast<double>(m);
    H2InnerResult out;
    while (true) {
        const long m2 = 2 * m;
        for (long k = 0; k < m; ++k) {
            const Complex w = circle_point(2 * k + 1, m2);
            sum += f(w) * std::conj(g(w));
        }
        const Complex next = sum / static_cast<double>(m2);
        out.last_change = std::abs(next - value);
        value = next;
        m = m2;
        if (out.last_change < kStableChange || m >= kMaxQuadraturePoints) break;
    }
    out.value = value;
    out.points = static_cast<int>(m);
    out.converged = out.last_change < kStableChange;
    if (out.last_change > kFailChange) {
        throw Error(ErrorKind::NonConvergence,
                    "H2 quadrature did not stabilize (change " + std::to_string(out.last_change) +
                        " at " + std::to_string(m) + " points)");
    }
    return out;
}

H2GramResult h2_gram(std::span<const RationalFunction> fs, int quadrature_points) {
    check_rule_size(quadrature_points);
    const auto n = static_cast<Eigen::Index>(fs.size());
    Matrix sum = Matrix::Zero(n, n);
    Vector samples(n);
    auto accumulate = [&](Complex w) {
        for (Eigen::Index i = 0; i < n; ++i) samples(i) = fs[static_cast<std::size_t>(i)](w);
        sum.noalias() += samples.conjugate() * samples.transpose();
    };
    long m = quadrature_points;
    for (long k = 0; k < m; ++k) accumulate(circle_point(k, m));
    Matrix value = sum / static_cast<double>(m);
    H2GramResult out;
    while (true) {
        const long m2 = 2 * m;
        for (long k = 0; k < m; ++k) accumulate(circle_point(2 * k + 1, m2));
        Matrix next = sum / static_cast<double>(m2);
        out.last_change = (next - value).cwiseAbs().maxCoeff();
        value = std::move(next);
        m = m2;
        if (out.last_change < kStableChange || m >= kMaxQuadraturePoints) break;
    }
    out.gram = std::move(value);
    out.points = static_cast<int>(m);
    out.converged = out.last_change < kStableChange;
    if (out.last_change > kFailChange) {
        throw Error(ErrorKind::NonConvergence,
                    "H2 Gram quadrature did not stabilize (change " + std::to_string(out.last_change) + ")");
    }
    return out;
}

}  // namespace oplab
