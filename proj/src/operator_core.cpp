#include "oplab/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace oplab {

namespace {

// Repeated norms on explicit matrices: exact SVD while cheap, warm-started
// Lanczos beyond.
constexpr Eigen::Index kGridSvdMaxDim = 64;

double repeated_norm(const Matrix& m, Vector& warm) {
    if (m.rows() <= kGridSvdMaxDim) return singular_values(m)(0);
    const auto est = lanczos_norm(as_map(m), warm.size() ? &warm : nullptr);
    warm = est.right;
    return est.value;
}

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::PreconditionViolation, std::string(what) + " must be square");
}

void check_spectrum_inside(const Matrix& t) {
    const double rho = spectral_radius(t);
    if (!(rho < 1.0 - 1e-10)) {
        throw Error(ErrorKind::PreconditionViolation,
                    "spectral radius " + std::to_string(rho) + " is not below 1 - 1e-10");
    }
}

Eigen::PartialPivLU<Matrix> checked_lu(const Matrix& m, const char* what) {
    Eigen::PartialPivLU<Matrix> lu(m);
    if (!(lu.rcond() >= 1e-14)) {
        throw Error(ErrorKind::PreconditionViolation,
                    std::string(what) + " is numerically singular (rcond " + std::to_string(lu.rcond()) + ")");
    }
    return lu;
}

}  // namespace

Operator::Operator(Matrix entries) : m_(std::move(entries)) {
    require_square(m_, "operator");
    if (!m_.allFinite()) throw Error(ErrorKind::PreconditionViolation, "operator has non-finite entries");
}

Operator Operator::identity(Eigen::Index n) { return Operator(Matrix::Identity(n, n)); }
Operator Operator::zero(Eigen::Index n) { return Operator(Matrix::Zero(n, n)); }

Operator Operator::diagonal(std::span<const Complex> d) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    return Operator(std::move(m));
}

// ---------------------------------------------------------------------------

BlockOperator::BlockOperator(std::vector<Eigen::Index> row_dims, std::vector<Eigen::Index> col_dims)
    : row_dims_(std::move(row_dims)), col_dims_(std::move(col_dims)) {
    for (auto d : row_dims_)
        if (d < 0) throw Error(ErrorKind::PreconditionViolation, "negative block dimension");
    for (auto d : col_dims_)
        if (d < 0) throw Error(ErrorKind::PreconditionViolation, "negative block dimension");
    blocks_.reserve(row_dims_.size() * col_dims_.size());
    for (auto r : row_dims_)
        for (auto c : col_dims_) blocks_.push_back(Matrix::Zero(r, c));
    zero_.assign(blocks_.size(), false);
}

void BlockOperator::set(std::size_t i, std::size_t j, Matrix block) {
    if (i >= row_dims_.size() || j >= col_dims_.size()) {
        throw Error(ErrorKind::PreconditionViolation, "block index out of range");
    }
    if (block.rows() != row_dims_[i] || block.cols() != col_dims_[j]) {
        throw Error(ErrorKind::PreconditionViolation,
                    "block (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                        std::to_string(block.rows()) + "x" + std::to_string(block.cols()) + ", expected " +
                        std::to_string(row_dims_[i]) + "x" + std::to_string(col_dims_[j]));
    }
    blocks_[i * col_dims_.size() + j] = std::move(block);
}

void BlockOperator::declare_zero(std::size_t i, std::size_t j) {
    if (i >= row_dims_.size() || j >= col_dims_.size()) {
        throw Error(ErrorKind::PreconditionViolation, "block index out of range");
    }
    zero_[i * col_dims_.size() + j] = true;
}

const Matrix& BlockOperator::block(std::size_t i, std::size_t j) const {
    if (i >= row_dims_.size() || j >= col_dims_.size()) {
        throw Error(ErrorKind::PreconditionViolation, "block index out of range");
    }
    return blocks_[i * col_dims_.size() + j];
}

bool BlockOperator::declared_zero(std::size_t i, std::size_t j) const { return zero_.at(i * col_dims_.size() + j); }

bool BlockOperator::zero_pattern_holds() const {
    for (std::size_t k = 0; k < blocks_.size(); ++k)
        if (zero_[k] && (blocks_[k].array() != Complex(0.0)).any()) return false;
    return true;
}

Matrix BlockOperator::assemble() const {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    for (auto r : row_dims_) rows += r;
    for (auto c : col_dims_) cols += c;
    Matrix out = Matrix::Zero(rows, cols);
    Eigen::Index r0 = 0;
    for (std::size_t i = 0; i < row_dims_.size(); ++i) {
        Eigen::Index c0 = 0;
        for (std::size_t j = 0; j < col_dims_.size(); ++j) {
            out.block(r0, c0, row_dims_[i], col_dims_[j]) = block(i, j);
            c0 += col_dims_[j];
        }
        r0 += row_dims_[i];
    }
    return out;
}

Operator assemble_blocks(const BlockOperator& spec) {
    if (!spec.zero_pattern_holds()) throw Error(ErrorKind::InvariantViolation, "declared zero block is nonzero");
    return Operator(spec.assemble());
}

BlockOperator make_r0(const Matrix& t0, const Matrix& a, const Matrix& v1, const Matrix& k, const Matrix& t1) {
    require_square(t0, "T0");
    require_square(v1, "V1");
    require_square(t1, "T1");
    BlockOperator r0({t0.rows(), v1.rows(), t1.rows()}, {t0.rows(), v1.rows(), t1.rows()});
    r0.set(0, 0, t0);
    r0.set(0, 2, a);
    r0.set(1, 1, v1);
    r0.set(1, 2, k);
    r0.set(2, 2, t1);
    r0.declare_zero(0, 1);
    r0.declare_zero(1, 0);
    r0.declare_zero(2, 0);
    r0.declare_zero(2, 1);
    return r0;
}

BlockOperator permute_r0(const BlockOperator& r0) {
    if (r0.block_rows() != 3 || r0.block_cols() != 3) {
        throw Error(ErrorKind::PreconditionViolation, "permute_r0 expects a 3x3 block operator");
    }
    if (r0.row_dims() != r0.col_dims()) throw Error(ErrorKind::PreconditionViolation, "R0 blocks are not square");
    const Eigen::Index h0 = r0.row_dims()[0];
    const Eigen::Index k1 = r0.row_dims()[1];
    const Eigen::Index h1 = r0.row_dims()[2];
    const Matrix m = assemble_blocks(r0).matrix();

    // New coordinate i reads old coordinate perm[i].
    std::vector<Eigen::Index> perm;
    perm.reserve(static_cast<std::size_t>(h0 + k1 + h1));
    for (Eigen::Index i = 0; i < k1; ++i) perm.push_back(h0 + i);
    for (Eigen::Index i = 0; i < h0; ++i) perm.push_back(i);
    for (Eigen::Index i = 0; i < h1; ++i) perm.push_back(h0 + k1 + i);
    const auto n = static_cast<Eigen::Index>(perm.size());
    Matrix p(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) p(i, j) = m(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);

    BlockOperator out({k1, h0 + h1}, {k1, h0 + h1});
    out.set(0, 0, p.topLeftCorner(k1, k1));
    out.set(0, 1, p.topRightCorner(k1, h0 + h1));
    out.set(1, 0, p.bottomLeftCorner(h0 + h1, k1));
    out.set(1, 1, p.bottomRightCorner(h0 + h1, h0 + h1));
    out.declare_zero(1, 0);
    if (!out.zero_pattern_holds()) {
        throw Error(ErrorKind::InvariantViolation, "permuted R0 has a nonzero lower-left block");
    }
    return out;
}

// ---------------------------------------------------------------------------

Operator blaschke_of_operator(const BlaschkeProduct& b, const Operator& t) {
    const Matrix& tm = t.matrix();
    check_spectrum_inside(tm);
    const Eigen::Index n = tm.rows();
    const Matrix id = Matrix::Identity(n, n);
    Matrix acc = id;
    for (const auto& zero : b.zeros()) {
        const Complex l = zero.value();
        if (l == Complex(0.0)) {
            acc = tm * acc;
            continue;
        }
        const auto lu = checked_lu(id - std::conj(l) * tm, "I - conj(lambda) T");
        acc = (std::abs(l) / l) * lu.solve((l * id - tm) * acc);
    }
    return Operator(std::move(acc));
}

Operator rational_of_operator(const RationalFunction& phi, const Operator& t) {
    const Matrix& tm = t.matrix();
    check_spectrum_inside(tm);
    const RationalFactors f = phi.factors();
    const Eigen::Index n = tm.rows();
    const Matrix id = Matrix::Identity(n, n);
    Matrix acc = id;
    const std::size_t steps = std::max(f.zeros.size(), f.poles.size());
    for (std::size_t i = 0; i < steps; ++i) {
        if (i < f.zeros.size()) acc = (tm - f.zeros[i] * id) * acc;
        if (i < f.poles.size()) acc = checked_lu(tm - f.poles[i] * id, "T - pole").solve(acc);
    }
    return Operator(f.gain * acc);
}

Operator poly_of_operator(const Coeffs& p, const Operator& t) {
    const Matrix& tm = t.matrix();
    const Eigen::Index n = tm.rows();
    if (p.empty()) return Operator::zero(n);
    Matrix acc = p.back() * Matrix::Identity(n, n);
    for (std::size_t k = p.size() - 1; k-- > 0;) {
        acc = tm * acc;
        acc.diagonal().array() += p[k];
    }
    return Operator(std::move(acc));
}

// ---------------------------------------------------------------------------

LinearMap DiagonalizedOperator::spectral_map(const Vector& f) const {
    if (f.size() != dim) throw Error(ErrorKind::PreconditionViolation, "spectral map size mismatch");
    auto fd = std::make_shared<const Vector>(f);
    auto fc = std::make_shared<const Vector>(f.conjugate());
    auto w = basis;
    auto wa = basis_adjoint;
    auto wi = inverse;
    auto wia = inverse_adjoint;
    return LinearMap{dim, dim,
                     [w, wi, fd](const Vector& x) -> Vector { return w(fd->cwiseProduct(wi(x))); },
                     [wa, wia, fc](const Vector& x) -> Vector { return wia(fc->cwiseProduct(wa(x))); }};
}

Vector DiagonalizedOperator::power_diagonal(int n) const {
    Vector out(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto u = static_cast<std::size_t>(i);
        if (!one_minus.empty()) out(i) = std::exp(n * std::log1p(-one_minus[u]));
        else out(i) = std::pow(eigenvalues[u], n);
    }
    return out;
}

Vector DiagonalizedOperator::resolvent_diagonal(Complex z) const {
    Vector out(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out(i) = one_minus.empty() ? 1.0 / (eigenvalues[u] - z) : 1.0 / ((1.0 - z) - one_minus[u]);
    }
    return out;
}

DiagonalizedOperator DiagonalizedOperator::from_dense(const Matrix& w, std::vector<Complex> lambda) {
    require_square(w, "eigenvector matrix");
    if (static_cast<Eigen::Index>(lambda.size()) != w.rows()) {
        throw Error(ErrorKind::PreconditionViolation, "eigenvalue count does not match the basis");
    }
    Eigen::PartialPivLU<Matrix> lu(w);
    if (!(lu.rcond() >= 1e-14)) throw Error(ErrorKind::NotABasis, "eigenvector matrix is numerically singular");
    auto wm = std::make_shared<const Matrix>(w);
    auto wim = std::make_shared<const Matrix>(lu.inverse());
    DiagonalizedOperator out;
    out.dim = w.rows();
    out.basis = [wm](const Vector& x) -> Vector { return *wm * x; };
    out.basis_adjoint = [wm](const Vector& x) -> Vector { return wm->adjoint() * x; };
    out.inverse = [wim](const Vector& x) -> Vector { return *wim * x; };
    out.inverse_adjoint = [wim](const Vector& x) -> Vector { return wim->adjoint() * x; };
    out.eigenvalues = std::move(lambda);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Shared bookkeeping for the two power_bound paths. Returns false to stop.
bool record_power(PowerBoundReport& r, int n, double nrm, bool exact_norm) {
    r.evaluated = n;
    if (!std::isfinite(nrm) || nrm > kDivergenceNorm) {
        r.diverged = true;
        r.divergence_n = n;
        return false;
    }
    if (nrm > r.bound) {
        r.bound = nrm;
        r.argmax = n;
    }
    // Once ||T^n|| <= 1, ||T^{n+j}|| <= ||T^j||: nothing beyond n exceeds the running max.
    if (n >= 1 && (exact_norm ? nrm <= 1.0 : nrm * (1.0 + 1e-6) <= 1.0)) {
        r.exact_sup = true;
        return false;
    }
    return true;
}

}  // namespace

PowerBoundReport power_bound(const Operator& t, int n_max) {
    if (n_max < 1) throw Error(ErrorKind::PreconditionViolation, "n_max must be at least 1");
    PowerBoundReport r;
    r.horizon = n_max;
    if (t.dim() == 0) return r;
    const Matrix& tm = t.matrix();
    Matrix p = Matrix::Identity(t.dim(), t.dim());
    Vector warm;
    for (int n = 1; n <= n_max; ++n) {
        p = tm * p;
        if (!record_power(r, n, repeated_norm(p, warm), t.dim() <= kGridSvdMaxDim)) break;
    }
    if (r.diverged) {
        throw Error(ErrorKind::Divergence, "||T^n|| exceeded 1e12 at n = " + std::to_string(r.divergence_n));
    }
    return r;
}

PowerBoundReport power_bound(const DiagonalizedOperator& t, int n_max) {
    if (n_max < 1) throw Error(ErrorKind::PreconditionViolation, "n_max must be at least 1");
    PowerBoundReport r;
    r.horizon = n_max;
    if (t.dim == 0) return r;
    Vector warm;
    for (int n = 1; n <= n_max; ++n) {
        const auto est = lanczos_norm(t.spectral_map(t.power_diagonal(n)), warm.size() ? &warm : nullptr);
        warm = est.right;
        if (!record_power(r, n, est.value, false)) break;
    }
    if (r.diverged) {
        throw Error(ErrorKind::Divergence, "||T^n|| exceeded 1e12 at n = " + std::to_string(r.divergence_n));
    }
    return r;
}

double boundary_sup(const Coeffs& p) {
    const int d = poly::degree(p);
    if (d < 0) return 0.0;
    if (d == 0) return std::abs(p[0]);
    const int g = std::max(256, 1024 * (d + 1));
    double grid_max = 0.0;
    for (int k = 0; k < g; ++k) grid_max = std::max(grid_max, std::abs(poly::eval(p, std::polar(1.0, 2.0 * kPi * k / g))));
    // Bernstein: |p'| <= d sup|p| on the circle, and every point is within pi/g of the grid.
    return grid_max / (1.0 - kPi * d / g);
}

namespace {

PolyBoundReport poly_bound_search(const std::function<double(const Coeffs&)>& norm_of, int degree, int trials,
                                  std::uint64_t seed) {
    if (degree < 1) throw Error(ErrorKind::PreconditionViolation, "degree must be at least 1");
    if (trials < 1) throw Error(ErrorKind::PreconditionViolation, "trials must be at least 1");
    const auto len = static_cast<std::size_t>(degree + 1);

    std::vector<Coeffs> starts;
    starts.push_back(Coeffs{Complex(1.0)});
    {
        Coeffs mono(len, 0.0);
        mono.back() = 1.0;
        starts.push_back(mono);
    }
    {
        const int m = degree / 2;
        Coeffs fejer(len, 0.0);
        for (int k = 0; k <= 2 * m; ++k) fejer[static_cast<std::size_t>(k)] = 1.0 - std::abs(k - m) / (m + 1.0);
        starts.push_back(fejer);
    }
    {
        Coeffs lac(len, 0.0);
        for (int j = 1; j <= degree; j *= 2) lac[static_cast<std::size_t>(j)] = 1.0;
        starts.push_back(lac);
    }
    {
        Coeffs ones(len, 1.0);
        starts.push_back(ones);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Coeffs c(len);
        for (auto& x : c) x = Complex(gauss(rng), gauss(rng));
        starts.push_back(c);
    }

    PolyBoundReport out;
    auto ratio = [&](const Coeffs& p) {
        ++out.evaluations;
        const double s = boundary_sup(p);
        return s > 0.0 ? norm_of(p) / s : 0.0;
    };
    const Complex dirs[] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    for (auto p : starts) {
        double best = ratio(p);
        p.resize(len, 0.0);
        double scale = 0.0;
        for (const auto& c : p) scale = std::max(scale, std::abs(c));
        double step = 0.5 * scale;
        for (int round = 0; round < 6 && step > 1e-3 * scale; ++round) {
            bool improved = false;
            for (std::size_t i = 0; i < len; ++i) {
                for (Complex d : dirs) {
                    Coeffs q = p;
                    q[i] += step * d;
                    const double r = ratio(q);
                    if (r > best) {
                        best = r;
                        p = std::move(q);
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        if (best > out.estimate) {
            out.estimate = best;
            out.best = p;
        }
    }
    return out;
}

}  // namespace

PolyBoundReport poly_bound_lower(const Operator& t, int degree, int trials, std::uint64_t seed) {
    Vector warm;
    return poly_bound_search(
        [&](const Coeffs& p) { return repeated_norm(poly_of_operator(p, t).matrix(), warm); }, degree, trials, seed);
}

PolyBoundReport poly_bound_lower(const DiagonalizedOperator& t, int degree, int trials, std::uint64_t seed) {
    Vector warm;
    return poly_bound_search(
        [&](const Coeffs& p) {
            Vector f(t.dim);
            for (Eigen::Index i = 0; i < t.dim; ++i) {
                const auto u = static_cast<std::size_t>(i);
                // Expand around 1 when 1 - lambda is known exactly.
                f(i) = t.one_minus.empty() ? poly::eval(p, t.eigenvalues[u]) : poly::eval(p, 1.0 - t.one_minus[u]);
            }
            const auto est = lanczos_norm(t.spectral_map(f), warm.size() ? &warm : nullptr);
            warm = est.right;
            return est.value;
        },
        degree, trials, seed);
}

// ---------------------------------------------------------------------------

std::vector<double> default_tadmor_radii() {
    std::vector<double> r;
    for (int k = 1; k <= 6; ++k) r.push_back(1.0 + std::pow(10.0, -k));
    return r;
}

namespace {

void check_radii(const std::vector<double>& radii, int angles) {
    if (radii.empty()) throw Error(ErrorKind::PreconditionViolation, "no radii given");
    for (double r : radii)
        if (!(r > 1.0)) throw Error(ErrorKind::PreconditionViolation, "Tadmor-Ritt radii must exceed 1");
    if (angles < 1) throw Error(ErrorKind::PreconditionViolation, "angles must be positive");
}

// Flags growth toward the circle: the value at the radius closest to 1 more
// than doubles the value at the next closest.
void finish_tadmor(TadmorRittReport& r, const std::vector<double>& radii) {
    if (r.skipped > 0) r.flagged = true;
    if (radii.size() >= 2) {
        std::vector<std::size_t> order(radii.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return radii[a] < radii[b]; });
        if (r.per_radius[order[0]] > 2.0 * r.per_radius[order[1]]) r.flagged = true;
    }
}

template <typename NormAt>
TadmorRittReport tadmor_scan(const std::vector<double>& radii, int angles, NormAt&& norm_at) {
    TadmorRittReport r;
    r.per_radius.assign(radii.size(), 0.0);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        for (int j = 0; j < angles; ++j) {
            const Complex z = std::polar(radii[i], 2.0 * kPi * j / angles);
            const double nrm = norm_at(z);
            if (!(nrm >= 0.0)) {
                ++r.skipped;
                continue;
            }
            const double v = std::abs(z - 1.0) * nrm;
            r.per_radius[i] = std::max(r.per_radius[i], v);
            if (v > r.constant) {
                r.constant = v;
                r.argmax = z;
            }
        }
    }
    finish_tadmor(r, radii);
    return r;
}

}  // namespace

TadmorRittReport tadmor_ritt(const Operator& t, const std::vector<double>& radii, int angles) {
    check_radii(radii, angles);
    const Eigen::Index n = t.dim();
    Eigen::ComplexSchur<Matrix> schur(t.matrix());
    const Matrix s = schur.matrixT();
    const double scale = std::max(1.0, t.matrix().cwiseAbs().maxCoeff());
    Vector warm;
    // Unitary similarity leaves resolvent norms unchanged, so work with the triangular factor.
    return tadmor_scan(radii, angles, [&](Complex z) -> double {
        Matrix sz = s;
        sz.diagonal().array() -= z;
        if (sz.diagonal().cwiseAbs().minCoeff() < 1e-12 * scale) return -1.0;
        const auto tri = sz.triangularView<Eigen::Upper>();
        if (n <= kGridSvdMaxDim) return singular_values(tri.solve(Matrix::Identity(n, n)))(0);
        LinearMap inv{n, n, [&](const Vector& x) -> Vector { return tri.solve(x); },
                      [&](const Vector& x) -> Vector { return tri.adjoint().solve(x); }};
        const auto est = lanczos_norm(inv, warm.size() ? &warm : nullptr);
        warm = est.right;
        return est.value;
    });
}

TadmorRittReport tadmor_ritt(const DiagonalizedOperator& t, const std::vector<double>& radii, int angles) {
    check_radii(radii, angles);
    Vector warm;
    return tadmor_scan(radii, angles, [&](Complex z) -> double {
        const Vector d = t.resolvent_diagonal(z);
        if (!d.allFinite() || d.cwiseAbs().maxCoeff() > 1e14) return -1.0;
        const auto est = lanczos_norm(t.spectral_map(d), warm.size() ? &warm : nullptr);
        warm = est.right;
        return est.value;
    });
}

// ---------------------------------------------------------------------------

BlockOperator schaffer_dilation_trunc(const Operator& t1, int copies) {
    if (copies < 1) throw Error(ErrorKind::PreconditionViolation, "need at least one defect copy");
    const Matrix& t = t1.matrix();
    const Eigen::Index n = t.rows();
    const double nrm = n ? spectral_norm(t) : 0.0;
    if (nrm > 1.0 + 1e-10) {
        throw Error(ErrorKind::NotAContraction, "||T1|| = " + std::to_string(nrm) + " exceeds 1 + 1e-10");
    }
    const Matrix defect = hermitian_sqrt(Matrix::Identity(n, n) - t.adjoint() * t);
    const Eigen::Index m = n * copies;
    BlockOperator v({n, m}, {n, m});
    v.set(0, 0, t);
    Matrix col = Matrix::Zero(m, n);
    col.topRows(n) = defect;
    v.set(1, 0, col);
    Matrix shift = Matrix::Zero(m, m);
    for (int k = 0; k + 1 < copies; ++k) shift.block((k + 1) * n, k * n, n, n).setIdentity();
    v.set(1, 1, shift);
    v.declare_zero(0, 1);
    return v;
}

std::pair<Matrix, Matrix> dilation_upper_form(const BlockOperator& dilation) {
    if (dilation.block_rows() != 2 || dilation.block_cols() != 2) {
        throw Error(ErrorKind::PreconditionViolation, "expected a 2x2 dilation");
    }
    if ((dilation.block(0, 1).array() != Complex(0.0)).any()) {
        throw Error(ErrorKind::InvariantViolation, "dilation maps the defect part into H");
    }
    return {dilation.block(1, 1), dilation.block(1, 0)};
}

}  // namespace oplab
