#include "oplab/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "oplab/linalg.hpp"

namespace oplab {

double SimilarityWitness::residual(const std::string& name) const {
    for (const auto& [k, v] : residuals)
        if (k == name) return v;
    throw Error(ErrorKind::PreconditionViolation, "witness has no residual named " + name);
}

nlohmann::json to_json(const SimilarityWitness& w) {
    nlohmann::json j;
    j["cond"] = w.cond;
    j["conjugated_norm"] = w.conjugated_norm;
    auto res = nlohmann::json::object();
    for (const auto& [k, v] : w.residuals) res[k] = v;
    j["residuals"] = res;
    j["flags"] = w.flags;
    return j;
}

namespace {

constexpr Eigen::Index kKroneckerMaxDim = 64;
constexpr int kMaxDoublings = 64;

Matrix kronecker_stein(const Matrix& t) {
    const Eigen::Index n = t.rows();
    // vec(T^* P T) = (T^T kron T^*) vec(P), column-major vec.
    const Matrix ta = t.adjoint();
    Matrix k = Matrix::Identity(n * n, n * n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) k.block(a * n, b * n, n, n) -= t(b, a) * ta;
    Vector rhs = Vector::Zero(n * n);
    for (Eigen::Index i = 0; i < n; ++i) rhs(i * n + i) = 1.0;
    const Vector sol = k.partialPivLu().solve(rhs);
    return Eigen::Map<const Matrix>(sol.data(), n, n);
}

}  // namespace

SteinSolution solve_stein(const Matrix& t) {
    if (t.rows() != t.cols()) throw Error(ErrorKind::PreconditionViolation, "Stein equation needs a square T");
    const double rho = spectral_radius(t);
    if (!(rho < 1.0 - 1e-10)) {
        throw Error(ErrorKind::NonConvergence,
                    "Stein iteration cannot converge: spectral radius " + std::to_string(rho) + " >= 1 - 1e-10");
    }
    SteinSolution out;
    const Eigen::Index n = t.rows();
    Matrix p = Matrix::Identity(n, n);
    Matrix left = t.adjoint();
    Matrix right = t;
    bool converged = false;
    for (int k = 0; k < kMaxDoublings; ++k) {
        const Matrix inc = left * p * right;
        p += inc;
        ++out.doublings;
        if (!p.allFinite()) break;
        if (inc.norm() <= 1e-12 * p.norm()) {
            converged = true;
            break;
        }
        left = left * left;
        right = right * right;
    }
    if (!converged || !p.allFinite()) {
        if (n > kKroneckerMaxDim) {
            throw Error(ErrorKind::NonConvergence, "Stein doubling did not converge (spectral radius " +
                                                       std::to_string(rho) + ")");
        }
        p = kronecker_stein(t);
        out.kronecker = true;
    }
    out.p = 0.5 * (p + p.adjoint());
    return out;
}

SimilarityWitness lyapunov_similarity(const Operator& t) {
    const Matrix& tm = t.matrix();
    const auto stein = solve_stein(tm);
    const Eigen::Index n = tm.rows();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(stein.p);
    const Eigen::VectorXd d = eig.eigenvalues();
    if (n > 0 && !(d(0) > 0.0)) throw Error(ErrorKind::NonConvergence, "Stein solution is not positive definite");
    const Matrix& q = eig.eigenvectors();
    const Eigen::VectorXd s = d.cwiseSqrt();

    SimilarityWitness w;
    w.x = q * s.cast<Complex>().asDiagonal() * q.adjoint();
    const Matrix x_inv = q * s.cwiseInverse().cast<Complex>().asDiagonal() * q.adjoint();
    w.cond = n ? s(n - 1) / s(0) : 1.0;
    w.conjugated_norm = n ? spectral_norm(w.x * tm * x_inv) : 0.0;

    const Matrix gap = stein.p - tm.adjoint() * stein.p * tm - Matrix::Identity(n, n);
    const double pn = n ? d(n - 1) : 1.0;
    w.residuals.emplace_back("stein_residual", n ? spectral_norm(gap) / pn : 0.0);
    double margin = 0.0;
    if (n) {
        Eigen::SelfAdjointEigenSolver<Matrix> ge(0.5 * (gap + gap.adjoint()), Eigen::EigenvaluesOnly);
        margin = ge.eigenvalues()(0) / pn;
    }
    w.residuals.emplace_back("stein_margin", margin);
    w.residuals.emplace_back("doublings", stein.doublings);
    if (stein.kronecker) w.flags.push_back("kronecker_fallback");
    if (w.cond > kIllConditioned) w.flags.push_back("ill_conditioned");
    return w;
}

SimilarityWitness eigenbasis_similarity(const Operator& t, const Matrix& eigvecs) {
    const Matrix& tm = t.matrix();
    const Eigen::Index n = tm.rows();
    if (eigvecs.rows() != n || eigvecs.cols() != n) {
        throw Error(ErrorKind::NotABasis, "eigenvector matrix must be square of the operator's size");
    }
    Matrix vn = eigvecs;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double c = vn.col(j).norm();
        if (!(c > 0.0)) throw Error(ErrorKind::NotABasis, "eigenvector " + std::to_string(j) + " is zero");
        vn.col(j) /= c;
    }
    const auto sv = singular_values(vn);
    if (n && !(sv(n - 1) > 1e-12 * sv(0))) {
        throw Error(ErrorKind::NotABasis, "eigenvectors are linearly dependent (s_min " + std::to_string(sv(n - 1)) + ")");
    }
    const double scale = std::max(1.0, n ? spectral_norm(tm) : 0.0);
    Vector lambda(n);
    double eig_res = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        lambda(j) = vn.col(j).dot(tm * vn.col(j));
        eig_res = std::max(eig_res, (tm * vn.col(j) - lambda(j) * vn.col(j)).norm());
    }
    if (eig_res > 1e-8 * scale) {
        throw Error(ErrorKind::PreconditionViolation, "columns are not eigenvectors (residual " + std::to_string(eig_res) + ")");
    }

    SimilarityWitness w;
    w.x = vn.partialPivLu().inverse();
    const Matrix conj = w.x * tm * vn;
    w.cond = n ? sv(0) / sv(n - 1) : 1.0;
    w.conjugated_norm = n ? spectral_norm(conj) : 0.0;
    Matrix diag = lambda.asDiagonal();
    w.residuals.emplace_back("eigen_residual", eig_res);
    w.residuals.emplace_back("diagonalization", n ? spectral_norm(conj - diag) : 0.0);
    double gram_cond = 1.0;
    if (n) {
        Eigen::SelfAdjointEigenSolver<Matrix> ge(vn.adjoint() * vn, Eigen::EigenvaluesOnly);
        gram_cond = ge.eigenvalues()(n - 1) / ge.eigenvalues()(0);
    }
    w.residuals.emplace_back("gram_cond_sqrt", std::sqrt(gram_cond));
    w.residuals.emplace_back("cond_squared_vs_gram", std::abs(w.cond * w.cond - gram_cond) / gram_cond);
    if (w.cond > kIllConditioned) w.flags.push_back("ill_conditioned");
    return w;
}

SylvesterSolution sylvester_intertwiner(const Operator& t, const Operator& v, const Matrix& a) {
    const Matrix& tm = t.matrix();
    const Matrix& vm = v.matrix();
    if (a.rows() != tm.rows() || a.cols() != vm.rows()) {
        throw Error(ErrorKind::PreconditionViolation, "A must map the space of V into the space of T");
    }
    SylvesterSolution out;
    out.y = Matrix::Zero(a.rows(), a.cols());
    if (a.size() == 0) return out;

    Eigen::ComplexSchur<Matrix> st(tm);
    Eigen::ComplexSchur<Matrix> sv(vm);
    const Matrix& s = st.matrixT();
    const Matrix& w = sv.matrixT();
    out.gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < s.rows(); ++i)
        for (Eigen::Index j = 0; j < w.rows(); ++j) out.gap = std::min(out.gap, std::abs(s(i, i) - w(j, j)));
    if (!(out.gap > 1e-8)) {
        throw Error(ErrorKind::IllPosed, "spectra of T and V overlap (gap " + std::to_string(out.gap) + ")");
    }

    const Matrix f = st.matrixU().adjoint() * a * sv.matrixU();
    Matrix z(f.rows(), f.cols());
    for (Eigen::Index j = 0; j < f.cols(); ++j) {
        Vector rhs = f.col(j);
        for (Eigen::Index k = 0; k < j; ++k) rhs += w(k, j) * z.col(k);
        Matrix sj = s;
        sj.diagonal().array() -= w(j, j);
        z.col(j) = sj.triangularView<Eigen::Upper>().solve(rhs);
    }
    out.y = st.matrixU() * z * sv.matrixU().adjoint();
    out.residual = spectral_norm(tm * out.y - out.y * vm - a);
    out.scale = (spectral_norm(tm) + spectral_norm(vm)) * spectral_norm(out.y);
    return out;
}

namespace {

Matrix orthonormal_basis(const Matrix& b, const char* what) {
    if (b.cols() == 0) return Matrix(b.rows(), 0);
    const auto sv = singular_values(b);
    if (!(sv(sv.size() - 1) > 1e-12 * sv(0))) {
        throw Error(ErrorKind::NotABasis, std::string(what) + " basis is rank deficient");
    }
    Eigen::HouseholderQR<Matrix> qr(b);
    return qr.householderQ() * Matrix::Identity(b.rows(), b.cols());
}

}  // namespace

DirectSumReport direct_sum_similarity(const Operator& t, const Matrix& basis_m, const Matrix& basis_n, int n_max) {
    const Matrix& tm = t.matrix();
    const Eigen::Index dim = tm.rows();
    if (basis_m.rows() != dim || basis_n.rows() != dim || basis_m.cols() + basis_n.cols() != dim) {
        throw Error(ErrorKind::PreconditionViolation, "dim M + dim N must equal dim H");
    }
    if (basis_m.cols() == 0) throw Error(ErrorKind::PreconditionViolation, "M must be nontrivial");
    const Matrix qm = orthonormal_basis(basis_m, "M");
    const Matrix qn = orthonormal_basis(basis_n, "N");
    const double scale = std::max(1.0, spectral_norm(tm));

    const Matrix tmm = qm.adjoint() * tm * qm;
    const double inv_m = spectral_norm(tm * qm - qm * tmm);
    if (inv_m > 1e-8 * scale) {
        throw Error(ErrorKind::PreconditionViolation, "M is not invariant (residual " + std::to_string(inv_m) + ")");
    }
    double inv_n = 0.0;
    Matrix tnn(0, 0);
    if (qn.cols()) {
        tnn = qn.adjoint() * tm * qn;
        inv_n = spectral_norm(tm * qn - qn * tnn);
        if (inv_n > 1e-8 * scale) {
            throw Error(ErrorKind::PreconditionViolation, "N is not invariant (residual " + std::to_string(inv_n) + ")");
        }
    }

    Eigen::ComplexEigenSolver<Matrix> es(tmm);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (std::abs(std::abs(es.eigenvalues()(i)) - 1.0) > 1e-8) {
            throw Error(ErrorKind::PreconditionViolation, "T|M has an eigenvalue off the unit circle");
        }
    }
    if (condition_number(es.eigenvectors()) > 1e8) {
        throw Error(ErrorKind::PreconditionViolation, "T|M is not diagonalizable");
    }
    if (qn.cols()) {
        Matrix p = Matrix::Identity(qn.cols(), qn.cols());
        for (int k = 0; k < n_max; ++k) p = tnn * p;
        const double tail = spectral_norm(p);
        if (!(tail < 0.1)) {
            throw Error(ErrorKind::PreconditionViolation,
                        "T|N is not stable: ||(T|N)^n_max|| = " + std::to_string(tail));
        }
    }

    DirectSumReport out;
    Matrix x(dim, dim);
    x << qm, qn;
    const auto sx = singular_values(x);
    if (!(sx(dim - 1) > 1e-12)) throw Error(ErrorKind::NotABasis, "M and N are not complementary");
    out.power_constant = power_bound(t, n_max).bound;
    double c = std::numeric_limits<double>::infinity();
    Matrix tk = qm;
    for (int k = 0; k <= n_max; ++k) {
        c = std::min(c, min_singular_value(tk));
        tk = tm * tk;
    }
    out.lower_constant = c;
    const double ratio = out.power_constant / c;
    out.certificate = std::sqrt(1.0 + 2.0 * ratio + 2.0 * ratio * ratio);
    out.inverse_norm = 1.0 / sx(dim - 1);
    out.holds = out.inverse_norm <= out.certificate;

    auto& w = out.witness;
    w.x = x;
    w.cond = sx(0) / sx(dim - 1);
    const Matrix conj = x.partialPivLu().solve(tm * x);
    w.conjugated_norm = spectral_norm(conj);
    const Eigen::Index m = qm.cols();
    const double off = spectral_norm(conj.topRightCorner(m, dim - m)) + spectral_norm(conj.bottomLeftCorner(dim - m, m));
    w.residuals.emplace_back("invariance_m", inv_m);
    w.residuals.emplace_back("invariance_n", inv_n);
    w.residuals.emplace_back("block_offdiag", off);
    w.residuals.emplace_back("inverse_norm", out.inverse_norm);
    w.residuals.emplace_back("certificate", out.certificate);
    if (!out.holds) w.flags.push_back("certificate_violated");
    if (w.cond > kIllConditioned) w.flags.push_back("ill_conditioned");
    return out;
}

SplitResult c0_split(const Operator& t, const BlaschkeProduct& theta0) {
    const Matrix& tm = t.matrix();
    const Eigen::Index n = tm.rows();
    const Matrix th = blaschke_of_operator(theta0, t).matrix();
    Eigen::JacobiSVD<Matrix> svd(th, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double tol = kNullspaceTol * std::max(1.0, n ? s(0) : 0.0);
    Eigen::Index k = 0;
    while (k < n && s(n - 1 - k) <= tol) ++k;

    SplitResult out;
    out.h0_dim = k;
    out.empty_h0 = k == 0;
    out.basis.resize(n, n);
    out.basis << svd.matrixV().rightCols(k), svd.matrixV().leftCols(n - k);
    const Matrix tc = out.basis.adjoint() * tm * out.basis;
    out.t0 = tc.topLeftCorner(k, k);
    out.a = tc.topRightCorner(k, n - k);
    out.t1 = tc.bottomRightCorner(n - k, n - k);
    const double scale = std::max(1.0, n ? spectral_norm(tm) : 0.0);
    out.lower_left = (k && k < n) ? spectral_norm(tc.bottomLeftCorner(n - k, k)) : 0.0;
    if (out.lower_left > kNullspaceTol * scale) {
        throw Error(ErrorKind::InvariantViolation,
                    "ker theta0(T) is not invariant (lower-left " + std::to_string(out.lower_left) + ")");
    }
    if (k) {
        out.theta0_t0 = spectral_norm(blaschke_of_operator(theta0, Operator(out.t0)).matrix());
        if (out.theta0_t0 > kNullspaceTol) {
            throw Error(ErrorKind::InvariantViolation,
                        "theta0(T0) = " + std::to_string(out.theta0_t0) + " is not zero");
        }
    }
    Matrix block = Matrix::Zero(n, n);
    block.topLeftCorner(k, k) = out.t0;
    block.topRightCorner(k, n - k) = out.a;
    block.bottomRightCorner(n - k, n - k) = out.t1;
    out.roundtrip = n ? spectral_norm(out.basis * block * out.basis.adjoint() - tm) : 0.0;
    return out;
}

}  // namespace oplab
