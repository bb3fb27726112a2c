#include "oplab/linalg.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace oplab {

LinearMap as_map(const Matrix& m) {
    return LinearMap{m.rows(), m.cols(), [&m](const Vector& x) -> Vector { return m * x; },
                     [&m](const Vector& x) -> Vector { return m.adjoint() * x; }};
}

namespace {

Vector deterministic_start(Eigen::Index n) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(u(rng), u(rng));
    return v.normalized();
}

// Two passes of classical Gram-Schmidt against the stored columns.
void reorthogonalize(Vector& x, const std::vector<Vector>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) x -= b * b.dot(x);
}

}  // namespace

NormEstimate lanczos_norm(const LinearMap& a, const Vector* warm_start, double rel_tol, int max_steps,
                          int max_restarts) {
    NormEstimate out;
    if (a.rows == 0 || a.cols == 0) {
        out.converged = true;
        out.right = Vector::Zero(a.cols);
        return out;
    }
    Vector v = (warm_start && warm_start->size() == a.cols && warm_start->norm() > 0)
                   ? Vector(warm_start->normalized())
                   : deterministic_start(a.cols);
    const int steps_cap = static_cast<int>(std::min<Eigen::Index>(max_steps, std::min(a.rows, a.cols)));

    for (int restart = 0; restart <= max_restarts; ++restart) {
        std::vector<Vector> vs{v};
        std::vector<Vector> us;
        std::vector<double> alpha;
        std::vector<double> beta;
        double sigma = 0.0;
        Eigen::VectorXd right_ritz;
        bool done = false;
        for (int k = 0; k < steps_cap; ++k) {
            Vector u = a.apply(vs.back());
            if (!us.empty()) u -= beta.back() * us.back();
            reorthogonalize(u, us);
            const double al = u.norm();
            alpha.push_back(al);
            if (al > 0) u /= al;
            us.push_back(u);

            Vector w = a.apply_adjoint(u) - al * vs.back();
            reorthogonalize(w, vs);
            const double be = w.norm();

            const int m = static_cast<int>(alpha.size());
            Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                b(i, i) = alpha[static_cast<std::size_t>(i)];
                if (i + 1 < m) b(i, i + 1) = beta[static_cast<std::size_t>(i)];
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
            sigma = svd.singularValues()(0);
            right_ritz = svd.matrixV().col(0);
            const double resid = be * std::abs(svd.matrixU()(m - 1, 0));
            ++out.steps;
            if (sigma == 0.0 && be == 0.0) {
                done = true;
                break;
            }
            if (resid <= rel_tol * sigma || be <= 1e-14 * std::max(sigma, 1e-300)) {
                done = true;
                break;
            }
            beta.push_back(be);
            vs.push_back(w / be);
            if (static_cast<int>(vs.size()) > steps_cap) break;
        }
        Vector ritz = Vector::Zero(a.cols);
        for (Eigen::Index i = 0; i < right_ritz.size(); ++i) ritz += vs[static_cast<std::size_t>(i)] * right_ritz(i);
        if (ritz.norm() > 0) ritz.normalize();
        out.value = std::max(out.value, sigma);
        out.right = ritz;
        if (done) {
            out.converged = true;
            return out;
        }
        v = ritz.norm() > 0 ? ritz : deterministic_start(a.cols);
    }
    return out;
}

Eigen::VectorXd singular_values(const Matrix& m) {
    if (m.size() == 0) return Eigen::VectorXd();
    if (std::max(m.rows(), m.cols()) <= 32) {
        Eigen::JacobiSVD<Matrix> svd(m);
        return svd.singularValues();
    }
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues();
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (std::max(m.rows(), m.cols()) <= kSvdNormMaxDim) return singular_values(m)(0);
    return lanczos_norm(as_map(m)).value;
}

double min_singular_value(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    const auto s = singular_values(m);
    return s(s.size() - 1);
}

Vector eigenvalues(const Matrix& m) {
    if (m.rows() == 0) return Vector();
    Eigen::ComplexEigenSolver<Matrix> solver(m, false);
    return solver.eigenvalues();
}

double spectral_radius(const Matrix& m) {
    if (m.rows() == 0) return 0.0;
    return eigenvalues(m).cwiseAbs().maxCoeff();
}

Matrix hermitian_sqrt(const Matrix& h, double clamp) {
    const Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    Eigen::VectorXd d = solver.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d(i) < -clamp) {
            throw Error(ErrorKind::InvariantViolation,
                        "matrix is not positive semidefinite (eigenvalue " + std::to_string(d(i)) + ")");
        }
        d(i) = std::sqrt(std::max(d(i), 0.0));
    }
    return solver.eigenvectors() * d.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

double condition_number(const Matrix& a) {
    const auto s = singular_values(a);
    if (s.size() == 0) return 1.0;
    const double lo = s(s.size() - 1);
    return lo > 0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

}  // namespace oplab
