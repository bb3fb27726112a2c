#pragma once

// Dense linear-algebra helpers shared by the operator modules: spectral norms
// (exact SVD for small matrices, Golub-Kahan-Lanczos for matrix-free maps),
// eigenvalue-based spectral radius, Hermitian square roots.

#include <functional>
#include <optional>

#include "oplab/common.hpp"

namespace oplab {

/// Crossover for exact SVD norms versus Lanczos on explicit matrices.
inline constexpr Eigen::Index kSvdNormMaxDim = 512;

/// A linear map given by its action and the action of its adjoint.
struct LinearMap {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::function<Vector(const Vector&)> apply;
    std::function<Vector(const Vector&)> apply_adjoint;
};

LinearMap as_map(const Matrix& m);

struct NormEstimate {
    double value = 0.0;
    Vector right;   // approximate top right singular vector, usable as a warm start
    int steps = 0;
    bool converged = false;
};

/// Largest singular value by Golub-Kahan-Lanczos bidiagonalization with full
/// reorthogonalization and restarts. Converged means the Ritz residual fell
/// below rel_tol times the estimate.
NormEstimate lanczos_norm(const LinearMap& a, const Vector* warm_start = nullptr,
                          double rel_tol = 1e-8, int max_steps = 80, int max_restarts = 12);

/// Spectral norm: SVD up to kSvdNormMaxDim, Lanczos above.
double spectral_norm(const Matrix& m);

double min_singular_value(const Matrix& m);
Eigen::VectorXd singular_values(const Matrix& m);

Vector eigenvalues(const Matrix& m);
double spectral_radius(const Matrix& m);

/// Principal square root of a Hermitian positive semidefinite matrix.
/// Eigenvalues in [-1e-12, 0) are clamped to zero; anything more negative throws.
Matrix hermitian_sqrt(const Matrix& h, double clamp = 1e-12);

/// ||a|| ||a^{-1}|| from singular values.
double condition_number(const Matrix& a);

}  // namespace oplab
