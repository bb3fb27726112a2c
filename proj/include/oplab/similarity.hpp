#pragma once

// Similarity witnesses: Stein/Lyapunov conjugation to a contraction,
// eigenbasis diagonalization, Sylvester intertwiners, the direct-sum map of
// an isometric part and a stable part, and the splitting along ker theta0(T).

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "oplab/common.hpp"
#include "oplab/operator_core.hpp"
#include "oplab/scalar_fn.hpp"

namespace oplab {

struct SimilarityWitness {
    Matrix x;
    double cond = 1.0;               // ||X|| ||X^{-1}||
    double conjugated_norm = 0.0;    // ||X T X^{-1}||
    std::vector<std::pair<std::string, double>> residuals;
    std::vector<std::string> flags;

    double residual(const std::string& name) const;
};

nlohmann::json to_json(const SimilarityWitness& w);

/// Solution of P - T^* P T = I by Smith doubling of the Neumann series;
/// dense Kronecker solve as fallback when dim <= 64.
struct SteinSolution {
    Matrix p;
    int doublings = 0;
    bool kronecker = false;
};
SteinSolution solve_stein(const Matrix& t);

/// X = P^{1/2} with P the Stein solution, so that ||X T X^{-1}|| <= 1.
SimilarityWitness lyapunov_similarity(const Operator& t);

/// X = inverse of the column-normalized eigenvector matrix.
SimilarityWitness eigenbasis_similarity(const Operator& t, const Matrix& eigvecs);

inline constexpr double kIllConditioned = 1e3;

struct SylvesterSolution {
    Matrix y;
    double gap = 0.0;            // min |s - v| over the two spectra
    double residual = 0.0;       // ||T Y - Y V - A||
    double scale = 0.0;          // (||T|| + ||V||) ||Y||
};

/// Y with A = T Y - Y V (Bartels-Stewart on complex Schur forms).
SylvesterSolution sylvester_intertwiner(const Operator& t, const Operator& v, const Matrix& a);

struct DirectSumReport {
    SimilarityWitness witness;   // X = [Q_M Q_N], orthonormalized bases side by side
    double power_constant = 0.0; // C = max_{n <= n_max} ||T^n||
    double lower_constant = 0.0; // c = min_{n <= n_max} s_min(T^n |_M)
    double certificate = 0.0;    // (1 + 2C/c + 2(C/c)^2)^{1/2}
    double inverse_norm = 0.0;   // ||X^{-1}||
    bool holds = false;
};

inline constexpr int kDefaultStabilityHorizon = 200;

DirectSumReport direct_sum_similarity(const Operator& t, const Matrix& basis_m, const Matrix& basis_n,
                                      int n_max = kDefaultStabilityHorizon);

/// Block data of T in H0 (+) H1, H0 = ker theta0(T), H1 its orthogonal complement.
struct SplitResult {
    Matrix t0;
    Matrix a;
    Matrix t1;
    Matrix basis;                 // unitary U = [Q0 Q1]
    Eigen::Index h0_dim = 0;
    bool empty_h0 = false;
    double lower_left = 0.0;      // ||P_{H1} T |_{H0}||
    double theta0_t0 = 0.0;       // ||theta0(T0)||
    double roundtrip = 0.0;       // ||U [[T0 A][0 T1]] U^* - T||
};

inline constexpr double kNullspaceTol = 1e-8;

SplitResult c0_split(const Operator& t, const BlaschkeProduct& theta0);

}  // namespace oplab
