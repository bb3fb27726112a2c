#pragma once

// Model-space pipelines: the kernels k_n of K_B, the coupled operator
// R = [[T0, A], [0, T1]], the corner maps A_phi = P_{H0} phi(R)|_{H1}, the
// intertwiner Y, and the witness X = theta(R)|_K for a truncated shift.
//
// Coordinates: H0 uses the standard basis e_n. H1 = K_B uses the orthonormal
// q-basis from the Gram Cholesky factor G = R_c^* R_c, [q] = [k] R_c^{-1}; a
// vector sum_n c_n k_n has q-coordinates R_c c. "k-coordinates" of a map out
// of H1 are its columns on k_n.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "oplab/common.hpp"
#include "oplab/scalar_fn.hpp"

namespace oplab {

struct ModelBasis {
    BlaschkeProduct b;
    std::vector<RationalFunction> kernels;
    Matrix gram;            // G(i, j) = <k_j, k_i>
    Matrix chol;            // upper R_c, G = R_c^* R_c
    Matrix chol_inv;
    Matrix shift;           // compression of multiplication by z, q-coordinates
    double diag_error = 0;  // max |G(n, n) - 1|
    double eigen_residual = 0;
    int quad_points = 0;
};

ModelBasis build_model_basis(const BlaschkeProduct& b, int quadrature_points = default_quadrature_points());

struct Example41Instance {
    ModelBasis basis;
    std::vector<Complex> lambda;
    Matrix a;        // a(j, n) = (A k_n, e_j), zero diagonal
    Matrix t0;       // diag(lambda)
    Matrix t1;       // R_c diag(lambda) R_c^{-1}
    Matrix a_q;      // A in q-coordinates, a R_c^{-1}
    Matrix r;        // [[T0, A_q], [0, T1]]
    double delta = 1.0;
};

Example41Instance make_example41(const BlaschkeProduct& b, const Matrix& a,
                                 int quadrature_points = default_quadrature_points());

/// Zeros drawn uniformly from |z| <= radius with pairwise pseudohyperbolic
/// distance at least min_separation.
std::vector<DiskPoint> random_zeros(int n, std::uint64_t seed, double radius = 0.7, double min_separation = 0.2);
/// Complex Gaussian coupling with zero diagonal.
Matrix random_coupling(int n, std::uint64_t seed, double scale = 1.0);

/// A_phi in k-coordinates: entry (j, n) = dd(phi, lambda_n, lambda_j) a(j, n).
Matrix a_phi(const Example41Instance& inst, const RationalFunction& phi);
/// Top-right block of phi(R), converted to k-coordinates.
Matrix a_phi_oracle(const Example41Instance& inst, const RationalFunction& phi);

/// B_n / B_n(lambda_n).
RationalFunction normalized_cofactor(const BlaschkeProduct& b, std::size_t n);

struct YReport {
    Matrix y_k;                // k-coordinates
    Matrix y_q;                // q-coordinates
    double residual = 0;       // ||A - (T0 Y - Y T1)||
    double relative_residual = 0;
    double offdiag = 0;        // top-right block of S R S^{-1}, S = [[I, Y], [0, I]]
    double relative_offdiag = 0;
    double norm_y = 0;
    std::vector<std::string> warnings;
};

YReport construct_y(const Example41Instance& inst, const std::vector<Complex>& alpha);

struct EigenvectorReport {
    std::vector<double> residuals;   // ||R v_n - lambda_n v_n|| / ||v_n||
    std::vector<double> norms;       // ||v_n||
    double m_lower = 0;              // poly_bound_lower of R
    double m_upper = 0;              // cond of the Lyapunov witness of R
    double delta = 0;
    double bound = 0;                // (m_upper^2 / delta^2 + 1)^{1/2}
    bool lower_ok = false;
    bool upper_ok = false;
};

EigenvectorReport eigenvector_check(const Example41Instance& inst, std::uint64_t seed = 1);

struct Theorem23Report {
    int shift_dim = 0;
    int reserve = 0;                 // d
    double tail_bound = 0;
    double zero_block = 0;           // max of ||theta(T0)||, ||lower-left of theta(R)||
    double identity_residual = 0;    // ||T0 A_theta + A theta(V) - A_theta V||
    double toeplitz_residual = 0;    // ||theta(V) - Toeplitz(theta_k)||
    double sigma_min = 0;            // s_min of theta(R)|_K on the retained coordinates
    double norm_a_theta = 0;
    bool zero_ok = false;
    bool identity_ok = false;
    bool lower_ok = false;
};

/// Taylor coefficients theta_0 .. theta_{count-1}.
Coeffs taylor_coefficients(const RationalFunction& f, int count);

/// Rigorous bound on sum_{k >= from} |theta_k| for a Blaschke product.
double blaschke_coefficient_tail(const BlaschkeProduct& theta, int from);

Theorem23Report verify_theorem23(const Matrix& t0, const Matrix& a, const BlaschkeProduct& theta, int shift_dim);

nlohmann::json to_json(const YReport& r);
nlohmann::json to_json(const EigenvectorReport& r);
nlohmann::json to_json(const Theorem23Report& r);

}  // namespace oplab
