#pragma once

// Carleson-condition diagnostics and finite Nevanlinna-Pick interpolation.

#include <span>
#include <vector>

#include "oplab/common.hpp"
#include "oplab/scalar_fn.hpp"

namespace oplab {

/// delta = min_n prod_{k != n} rho(lambda_k, lambda_n).
struct CarlesonReport {
    double delta = 1.0;
    std::size_t argmin = 0;
    std::vector<double> values;
};

CarlesonReport carleson_delta(std::span<const DiskPoint> zeros);

struct DiskGrid {
    std::vector<Complex> points;
};

/// Tensor grid of 64 Chebyshev-Lobatto radii in [0, 1 - 1e-4] times 256 angles.
DiskGrid default_disk_grid(int radii = 64, int angles = 256, double max_radius = 1.0 - 1e-4);

struct GeneralizedCarlesonEstimate {
    double estimate = 0.0;       // min over evaluated points of |theta| / min_n |theta_n|
    std::size_t evaluated = 0;
    std::size_t skipped = 0;     // points where min_n |theta_n| < 1e-14
};

/// Grid estimate of the generalized Carleson constant of the factorization
/// theta = prod factors[n]. A grid minimum is an upper estimate of the true
/// infimum over the disk, never a certificate.
GeneralizedCarlesonEstimate generalized_carleson_ratio(std::span<const BlaschkeProduct> factors,
                                                       const DiskGrid& grid);

/// P(i, j) = (1 - mu_i conj(mu_j)) / (1 - lambda_i conj(lambda_j)).
struct PickData {
    std::vector<DiskPoint> nodes;
    std::vector<Complex> targets;
    Matrix pick;
};

PickData make_pick_data(std::vector<DiskPoint> nodes, std::vector<Complex> targets);

inline constexpr double kPickPsdTolerance = 1e-10;

struct PickFeasibility {
    bool feasible = false;
    double min_eigenvalue = 0.0;
};

PickFeasibility pick_feasible(const PickData& data);

struct Interpolant {
    RationalFunction phi;
    double norm = 0.0;       // minimal interpolation norm found by bisection (upper end)
    double lower = 0.0;      // lower end of the final bisection bracket
    double residual = 0.0;   // max_n |phi(lambda_n) - mu_n|
};

inline constexpr double kBisectionTolerance = 1e-6;

/// Minimal-norm bounded interpolant with phi(lambda_n) = mu_n, built by the
/// Schur-Nevanlinna recursion at the smallest feasible scale.
Interpolant np_interpolate(std::span<const DiskPoint> nodes, std::span<const Complex> targets);

}  // namespace oplab
