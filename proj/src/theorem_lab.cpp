#include "oplab/theorem_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Cholesky>

#include "oplab/interpolation.hpp"
#include "oplab/linalg.hpp"
#include "oplab/operator_core.hpp"
#include "oplab/similarity.hpp"

namespace oplab {

ModelBasis build_model_basis(const BlaschkeProduct& b, int quadrature_points) {
    const std::size_t n = b.size();
    if (n == 0) throw Error(ErrorKind::PreconditionViolation, "model basis needs at least one zero");
    ModelBasis out;
    out.b = b;
    out.kernels.reserve(n);
    std::vector<RationalFunction> all;
    all.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const DiskPoint l = b.zeros()[i];
        const double c = std::sqrt(1.0 - std::norm(l.value()));
        out.kernels.push_back((RationalFunction::cauchy_kernel(l) * RationalFunction::blaschke(b.without(i))).scaled(c));
    }
    all = out.kernels;
    for (const auto& k : out.kernels) all.push_back(RationalFunction::monomial(1) * k);

    const auto gr = h2_gram(all, quadrature_points);
    out.quad_points = gr.points;
    const auto nn = static_cast<Eigen::Index>(n);
    out.gram = gr.gram.topLeftCorner(nn, nn);
    out.gram = 0.5 * (out.gram + out.gram.adjoint()).eval();
    const Matrix cross = gr.gram.topRightCorner(nn, nn);   // (m, l) = <z k_l, k_m>

    for (Eigen::Index i = 0; i < nn; ++i) out.diag_error = std::max(out.diag_error, std::abs(out.gram(i, i) - 1.0));
    if (out.diag_error > 1e-8) {
        throw Error(ErrorKind::InvariantViolation, "kernel norms deviate from 1 by " + std::to_string(out.diag_error));
    }
    Eigen::LLT<Matrix> llt(out.gram);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorKind::DegenerateInput, "Gram matrix is not positive definite: zeros too close");
    }
    out.chol = llt.matrixU();
    out.chol_inv = out.chol.triangularView<Eigen::Upper>().solve(Matrix::Identity(nn, nn));
    out.shift = out.chol_inv.adjoint() * cross * out.chol_inv;

    for (Eigen::Index i = 0; i < nn; ++i) {
        const Complex l = b.zeros()[static_cast<std::size_t>(i)].value();
        out.eigen_residual =
            std::max(out.eigen_residual, (out.shift * out.chol.col(i) - l * out.chol.col(i)).norm());
    }
    if (out.eigen_residual > 1e-7) {
        throw Error(ErrorKind::InvariantViolation,
                    "compressed shift eigenrelation fails (residual " + std::to_string(out.eigen_residual) + ")");
    }
    return out;
}

Example41Instance make_example41(const BlaschkeProduct& b, const Matrix& a, int quadrature_points) {
    const auto n = static_cast<Eigen::Index>(b.size());
    if (a.rows() != n || a.cols() != n) throw Error(ErrorKind::PreconditionViolation, "coupling must be N x N");
    for (Eigen::Index i = 0; i < n; ++i)
        if (a(i, i) != Complex(0.0)) throw Error(ErrorKind::InvariantViolation, "coupling diagonal must vanish");

    Example41Instance inst;
    inst.basis = build_model_basis(b, quadrature_points);
    inst.lambda = to_complex(b.zeros());
    inst.a = a;
    Vector l(n);
    for (Eigen::Index i = 0; i < n; ++i) l(i) = inst.lambda[static_cast<std::size_t>(i)];
    inst.t0 = l.asDiagonal();
    inst.t1 = inst.basis.chol * l.asDiagonal() * inst.basis.chol_inv;
    inst.a_q = a * inst.basis.chol_inv;
    inst.r = Matrix::Zero(2 * n, 2 * n);
    inst.r.topLeftCorner(n, n) = inst.t0;
    inst.r.topRightCorner(n, n) = inst.a_q;
    inst.r.bottomRightCorner(n, n) = inst.t1;
    inst.delta = carleson_delta(b.zeros()).delta;
    return inst;
}

std::vector<DiskPoint> random_zeros(int n, std::uint64_t seed, double radius, double min_separation) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<DiskPoint> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < n) {
        if (++attempts > 100000) throw Error(ErrorKind::DegenerateInput, "cannot place separated zeros");
        const DiskPoint p(std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng)));
        bool ok = true;
        for (const auto& q : out) ok = ok && pseudohyperbolic(p, q) >= min_separation;
        if (ok) out.push_back(p);
    }
    return out;
}

Matrix random_coupling(int n, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) a(i, j) = i == j ? Complex(0.0) : scale * Complex(g(rng), g(rng));
    return a;
}

Matrix a_phi(const Example41Instance& inst, const RationalFunction& phi) {
    const auto n = static_cast<Eigen::Index>(inst.lambda.size());
    Matrix out(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out(j, col) = divided_difference(phi, inst.lambda[static_cast<std::size_t>(col)],
                                             inst.lambda[static_cast<std::size_t>(j)]) *
                          inst.a(j, col);
        }
    }
    return out;
}

Matrix a_phi_oracle(const Example41Instance& inst, const RationalFunction& phi) {
    const auto n = static_cast<Eigen::Index>(inst.lambda.size());
    const Matrix f = rational_of_operator(phi, Operator(inst.r)).matrix();
    return f.topRightCorner(n, n) * inst.basis.chol;
}

RationalFunction normalized_cofactor(const BlaschkeProduct& b, std::size_t n) {
    const BlaschkeProduct rest = b.without(n);
    const Complex v = blaschke_eval(rest, b.zeros().at(n).value());
    return RationalFunction::blaschke(rest).scaled(1.0 / v);
}

YReport construct_y(const Example41Instance& inst, const std::vector<Complex>& alpha) {
    const auto n = static_cast<Eigen::Index>(inst.lambda.size());
    if (static_cast<Eigen::Index>(alpha.size()) != n) {
        throw Error(ErrorKind::PreconditionViolation, "alpha must have one entry per zero");
    }
    YReport rep;
    rep.y_k = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        rep.y_k.col(k) = -a_phi(inst, normalized_cofactor(inst.basis.b, uk)).col(k);
        rep.y_k(k, k) += alpha[uk];
    }
    rep.y_q = rep.y_k * inst.basis.chol_inv;
    const double a_norm = spectral_norm(inst.a_q);
    rep.residual = spectral_norm(inst.a_q - (inst.t0 * rep.y_q - rep.y_q * inst.t1));
    rep.relative_residual = a_norm > 0 ? rep.residual / a_norm : rep.residual;

    Matrix s = Matrix::Identity(2 * n, 2 * n);
    Matrix s_inv = s;
    s.topRightCorner(n, n) = rep.y_q;
    s_inv.topRightCorner(n, n) = -rep.y_q;
    const Matrix c = s * inst.r * s_inv;
    rep.offdiag = spectral_norm(c.topRightCorner(n, n));
    rep.relative_offdiag = a_norm > 0 ? rep.offdiag / a_norm : rep.offdiag;
    rep.norm_y = spectral_norm(rep.y_q);
    if (inst.delta < 1e-8) rep.warnings.push_back("carleson delta below 1e-8: Y is ill-conditioned");
    return rep;
}

EigenvectorReport eigenvector_check(const Example41Instance& inst, std::uint64_t seed) {
    const auto n = static_cast<Eigen::Index>(inst.lambda.size());
    EigenvectorReport rep;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        Vector v(2 * n);
        v.head(n) = a_phi(inst, normalized_cofactor(inst.basis.b, uk)).col(k);
        v.tail(n) = inst.basis.chol.col(k);
        const double nv = v.norm();
        rep.norms.push_back(nv);
        rep.residuals.push_back((inst.r * v - inst.lambda[uk] * v).norm() / nv);
    }
    const Operator r(inst.r);
    rep.m_upper = lyapunov_similarity(r).cond;
    rep.m_lower = poly_bound_lower(r, 4, 4, seed).estimate;
    rep.delta = inst.delta;
    rep.bound = std::sqrt(rep.m_upper * rep.m_upper / (rep.delta * rep.delta) + 1.0);
    rep.lower_ok = std::all_of(rep.norms.begin(), rep.norms.end(), [](double x) { return x >= 1.0 - 1e-10; });
    rep.upper_ok = std::all_of(rep.norms.begin(), rep.norms.end(), [&](double x) { return x <= rep.bound; });
    return rep;
}

// ---------------------------------------------------------------------------

Coeffs taylor_coefficients(const RationalFunction& f, int count) {
    const Coeffs& num = f.numerator();
    const Coeffs& den = f.denominator();
    Coeffs c(static_cast<std::size_t>(std::max(count, 0)), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        Complex acc = k < num.size() ? num[k] : Complex(0.0);
        for (std::size_t j = 1; j <= k && j < den.size(); ++j) acc -= den[j] * c[k - j];
        c[k] = acc / den[0];
    }
    return c;
}

double blaschke_coefficient_tail(const BlaschkeProduct& theta, int from) {
    double r = 0.0;
    std::size_t origin = 0;
    for (const auto& z : theta.zeros()) {
        r = std::max(r, z.abs());
        if (z.value() == Complex(0.0)) ++origin;
    }
    if (r == 0.0) return from <= static_cast<int>(origin) ? 1.0 : 0.0;
    // Cauchy estimate on |z| = rho < 1/r: |theta_k| <= max_{|z|=rho}|theta| rho^{-k}.
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 64; ++i) {
        const double rho = std::pow(r, -i / 64.0);
        double log_max = 0.0;
        for (const auto& z : theta.zeros()) {
            const double m = z.abs();
            log_max += m == 0.0 ? std::log(rho) : std::log((m + rho) / (1.0 - m * rho));
        }
        const double log_tail = log_max - from * std::log(rho) - std::log1p(-1.0 / rho);
        best = std::min(best, std::exp(log_tail));
    }
    return best;
}

Theorem23Report verify_theorem23(const Matrix& t0, const Matrix& a, const BlaschkeProduct& theta, int shift_dim) {
    if (t0.rows() != t0.cols()) throw Error(ErrorKind::PreconditionViolation, "T0 must be square");
    if (shift_dim < 2) throw Error(ErrorKind::PreconditionViolation, "shift_dim must be at least 2");
    if (a.rows() != t0.rows() || a.cols() != shift_dim) {
        throw Error(ErrorKind::PreconditionViolation, "A must be dim(T0) x shift_dim");
    }
    const Eigen::Index n0 = t0.rows();
    const Eigen::Index s = shift_dim;
    Theorem23Report rep;
    rep.shift_dim = shift_dim;
    double theta_t0 = 0.0;
    if (n0) {
        theta_t0 = spectral_norm(blaschke_of_operator(theta, Operator(t0)).matrix());
        if (theta_t0 > 1e-8) {
            throw Error(ErrorKind::PreconditionViolation, "theta(T0) = " + std::to_string(theta_t0) + " is not zero");
        }
    }

    const Coeffs c = taylor_coefficients(RationalFunction::blaschke(theta), shift_dim);
    const double remainder = blaschke_coefficient_tail(theta, shift_dim);
    std::vector<double> suffix(static_cast<std::size_t>(s) + 1, 0.0);
    for (Eigen::Index k = s; k-- > 0;) suffix[static_cast<std::size_t>(k)] = suffix[static_cast<std::size_t>(k) + 1] + std::abs(c[static_cast<std::size_t>(k)]);
    int d = shift_dim - 1;
    for (int k = 0; k < shift_dim; ++k) {
        if (suffix[static_cast<std::size_t>(k) + 1] + remainder <= 1e-10) {
            d = k;
            break;
        }
    }
    rep.reserve = d;
    rep.tail_bound = suffix[static_cast<std::size_t>(d) + 1] + remainder;
    if (rep.tail_bound > 1e-3) {
        throw Error(ErrorKind::PreconditionViolation,
                    "shift_dim too small: coefficient tail " + std::to_string(rep.tail_bound) + " exceeds 1e-3");
    }

    Matrix v = Matrix::Zero(s, s);
    for (Eigen::Index k = 0; k + 1 < s; ++k) v(k + 1, k) = 1.0;
    Matrix r = Matrix::Zero(n0 + s, n0 + s);
    r.topLeftCorner(n0, n0) = t0;
    r.topRightCorner(n0, s) = a;
    r.bottomRightCorner(s, s) = v;
    const Matrix th = blaschke_of_operator(theta, Operator(r)).matrix();
    const Matrix a_theta = th.topRightCorner(n0, s);
    const Matrix theta_v = th.bottomRightCorner(s, s);

    rep.zero_block = std::max(n0 ? spectral_norm(th.topLeftCorner(n0, n0)) : 0.0,
                              n0 ? spectral_norm(th.bottomLeftCorner(s, n0)) : 0.0);
    rep.identity_residual = n0 ? spectral_norm(t0 * a_theta + a * theta_v - a_theta * v) : 0.0;
    Matrix toeplitz = Matrix::Zero(s, s);
    for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = j; i < s; ++i) toeplitz(i, j) = c[static_cast<std::size_t>(i - j)];
    rep.toeplitz_residual = spectral_norm(theta_v - toeplitz);

    Matrix x(n0 + s, s - d);
    x.topRows(n0) = a_theta.leftCols(s - d);
    x.bottomRows(s) = theta_v.leftCols(s - d);
    rep.sigma_min = min_singular_value(x);
    rep.norm_a_theta = n0 ? spectral_norm(a_theta) : 0.0;

    rep.zero_ok = rep.zero_block < 1e-9;
    rep.identity_ok = rep.identity_residual < rep.tail_bound + 1e-9;
    rep.lower_ok = rep.sigma_min >= 1.0 - rep.tail_bound;
    return rep;
}

nlohmann::json to_json(const YReport& r) {
    return {{"residual", r.residual},         {"relative_residual", r.relative_residual},
            {"offdiag", r.offdiag},           {"relative_offdiag", r.relative_offdiag},
            {"norm_y", r.norm_y},             {"warnings", r.warnings}};
}

nlohmann::json to_json(const EigenvectorReport& r) {
    return {{"residuals", r.residuals}, {"norms", r.norms},   {"m_lower", r.m_lower},
            {"m_upper", r.m_upper},     {"delta", r.delta},   {"bound", r.bound},
            {"lower_ok", r.lower_ok},   {"upper_ok", r.upper_ok}};
}

nlohmann::json to_json(const Theorem23Report& r) {
    return {{"shift_dim", r.shift_dim},
            {"reserve", r.reserve},
            {"tail_bound", r.tail_bound},
            {"zero_block", r.zero_block},
            {"identity_residual", r.identity_residual},
            {"toeplitz_residual", r.toeplitz_residual},
            {"sigma_min", r.sigma_min},
            {"norm_a_theta", r.norm_a_theta},
            {"zero_ok", r.zero_ok},
            {"identity_ok", r.identity_ok},
            {"lower_ok", r.lower_ok}};
}

}  // namespace oplab
