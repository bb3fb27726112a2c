#pragma once

// Dense finite-dimensional operators: rational functional calculus,
// block assembly, boundedness constants (power, polynomial, Tadmor-Ritt)
// and the truncated Schaffer isometric dilation.

#include <cstdint>
#include <functional>
#include <vector>

#include "oplab/common.hpp"
#include "oplab/linalg.hpp"
#include "oplab/scalar_fn.hpp"

namespace oplab {

/// Square matrix with finite entries.
class Operator {
public:
    Operator() = default;
    explicit Operator(Matrix entries);

    static Operator identity(Eigen::Index n);
    static Operator zero(Eigen::Index n);
    static Operator diagonal(std::span<const Complex> d);

    const Matrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    Matrix m_;
};

/// A grid of conforming blocks with a declared zero pattern.
class BlockOperator {
public:
    BlockOperator(std::vector<Eigen::Index> row_dims, std::vector<Eigen::Index> col_dims);

    /// Sets block (i, j); its shape must match the declared dimensions.
    void set(std::size_t i, std::size_t j, Matrix block);
    void declare_zero(std::size_t i, std::size_t j);
    const Matrix& block(std::size_t i, std::size_t j) const;
    bool declared_zero(std::size_t i, std::size_t j) const;

    std::size_t block_rows() const noexcept { return row_dims_.size(); }
    std::size_t block_cols() const noexcept { return col_dims_.size(); }
    const std::vector<Eigen::Index>& row_dims() const noexcept { return row_dims_; }
    const std::vector<Eigen::Index>& col_dims() const noexcept { return col_dims_; }

    /// True when every declared-zero block is exactly zero.
    bool zero_pattern_holds() const;

    Matrix assemble() const;

private:
    std::vector<Eigen::Index> row_dims_;
    std::vector<Eigen::Index> col_dims_;
    std::vector<Matrix> blocks_;
    std::vector<bool> zero_;
};

Operator assemble_blocks(const BlockOperator& spec);

/// R0 of the 3x3 form on H0 (+) K1 (+) H1:
///   [ T0  0   A ]
///   [ 0   V1  K ]
///   [ 0   0   T1]
BlockOperator make_r0(const Matrix& t0, const Matrix& a, const Matrix& v1, const Matrix& k,
                      const Matrix& t1);

/// Conjugates R0 by the coordinate permutation H0 (+) K1 (+) H1 -> K1 (+) (H0 (+) H1),
/// returning the 2x2 form [[V1, *], [0, R]] with R = [[T0, A], [0, T1]]. Throws
/// InvariantViolation unless the lower-left block comes out exactly zero.
BlockOperator permute_r0(const BlockOperator& r0);

// ---------------------------------------------------------------------------
// Functional calculus.

/// prod_n (|l_n|/l_n)(l_n I - T)(I - conj(l_n) T)^{-1}, one linear solve per factor.
Operator blaschke_of_operator(const BlaschkeProduct& b, const Operator& t);

/// phi(T) for a rational phi, applied factor by factor (zeros paired with poles).
Operator rational_of_operator(const RationalFunction& phi, const Operator& t);

/// Horner evaluation of sum_k p[k] T^k.
Operator poly_of_operator(const Coeffs& p, const Operator& t);

// ---------------------------------------------------------------------------
// Operators presented through an eigen-decomposition T = W diag(lambda) W^{-1}.
// The scans on large structured instances only need W and W^{-1} as maps.

struct DiagonalizedOperator {
    Eigen::Index dim = 0;
    std::function<Vector(const Vector&)> basis;              // W
    std::function<Vector(const Vector&)> basis_adjoint;      // W^*
    std::function<Vector(const Vector&)> inverse;            // W^{-1}
    std::function<Vector(const Vector&)> inverse_adjoint;    // W^{-*}
    std::vector<Complex> eigenvalues;
    /// Optional exact values of 1 - lambda_n for real spectra crowding at 1.
    std::vector<double> one_minus;

    /// The map W diag(f) W^{-1}.
    LinearMap spectral_map(const Vector& f) const;
    /// lambda_n^n, computed from one_minus when present.
    Vector power_diagonal(int n) const;
    /// 1/(lambda_n - z), computed from one_minus when present.
    Vector resolvent_diagonal(Complex z) const;

    static DiagonalizedOperator from_dense(const Matrix& w, std::vector<Complex> lambda);
};

// ---------------------------------------------------------------------------
// Boundedness constants.

struct PowerBoundReport {
    double bound = 1.0;        // max_{0 <= n <= horizon} ||T^n||
    int argmax = 0;
    int horizon = 0;           // n_max requested
    int evaluated = 0;         // last n whose norm was computed
    bool exact_sup = false;    // some ||T^n|| <= 1 with n >= 1: bound is sup over all n
    bool diverged = false;     // a norm exceeded 1e12
    int divergence_n = -1;
};

inline constexpr double kDivergenceNorm = 1e12;

PowerBoundReport power_bound(const Operator& t, int n_max);
PowerBoundReport power_bound(const DiagonalizedOperator& t, int n_max);

struct PolyBoundReport {
    double estimate = 0.0;
    Coeffs best;               // coefficients attaining the estimate
    int evaluations = 0;
};

/// Lower estimate of the polynomial bound: max of ||p(T)|| / sup_{|z|=1} |p|
/// over random, Fejer and lacunary polynomials, each refined by coordinate ascent.
/// The boundary sup is taken on a fine grid and inflated by the Bernstein
/// bound, so every ratio is a valid lower bound. Deterministic given seed.
PolyBoundReport poly_bound_lower(const Operator& t, int degree, int trials, std::uint64_t seed);
PolyBoundReport poly_bound_lower(const DiagonalizedOperator& t, int degree, int trials, std::uint64_t seed);

/// Upper bound on sup_{|z|=1}|p(z)| from a grid of max(256, 1024 (deg+1)) points.
double boundary_sup(const Coeffs& p);

struct TadmorRittReport {
    double constant = 0.0;     // max over the grid of |z - 1| ||(T - z)^{-1}||
    Complex argmax{0.0, 0.0};
    std::vector<double> per_radius;   // max over angles, one entry per radius
    int skipped = 0;           // grid points at an eigenvalue
    bool flagged = false;      // skipped points, or growth toward the circle
};

std::vector<double> default_tadmor_radii();
inline constexpr int kDefaultTadmorAngles = 1024;

TadmorRittReport tadmor_ritt(const Operator& t, const std::vector<double>& radii = default_tadmor_radii(),
                             int angles = kDefaultTadmorAngles);
TadmorRittReport tadmor_ritt(const DiagonalizedOperator& t,
                             const std::vector<double>& radii = default_tadmor_radii(),
                             int angles = kDefaultTadmorAngles);

// ---------------------------------------------------------------------------

/// Truncated Schaffer dilation of a contraction T1 on H (+) D^m, D = C^dim(H):
/// block (0,0) = T1, block (1,0) = D_{T1} = (I - T1^* T1)^{1/2}, identity
/// blocks on the defect subdiagonal. P_H V^k |_H = T1^k for all k, and V is
/// isometric except on the last defect copy.
BlockOperator schaffer_dilation_trunc(const Operator& t1, int copies);

/// Reorders a dilation from H (+) D^m into the upper-triangular form
/// [[V1, K], [0, T1]] on D^m (+) H, returning {V1, K}.
std::pair<Matrix, Matrix> dilation_upper_form(const BlockOperator& dilation);

}  // namespace oplab
