#pragma once

// A power-bounded operator that is not polynomially bounded, at finite size.
//
// Basis: x_{2n} = e_{2n}, x_{2n+1} = e_{2n+1} + sum_{k >= n} a_{k-n} e_{2k}.
// With W = [x_0 ... x_{N-1}] = I + E, E^2 = 0, so W^{-1} = I - E, and
// T = W diag(lambda) W^{-1} has entries T(2k, 2n+1) = a_{k-n} (lambda_{2n+1} - lambda_{2k})
// off the diagonal. Spectra crowding at 1 are carried as exact values of 1 - lambda.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "oplab/common.hpp"
#include "oplab/operator_core.hpp"

namespace oplab {

struct Convolver;

enum class SequenceKind { LogHarmonic, Geometric, Custom };

const char* to_string(SequenceKind kind);
SequenceKind parse_sequence_kind(const std::string& s);

struct CoeffSequence {
    SequenceKind kind = SequenceKind::Custom;
    std::vector<double> a;
    std::vector<double> partial_sums;          // sum_{k <= n} a_k
    std::vector<double> weighted_square_sums;  // sum_{k <= n} k a_k^2
};

/// log_harmonic: a_n = 1/((n+2) ln(n+2)); geometric: a_n = 2^{-n}.
CoeffSequence make_sequence(SequenceKind kind, int n);
CoeffSequence custom_sequence(std::vector<double> a);

enum class SpectrumFamily { Dyadic, NonCarleson };

const char* to_string(SpectrumFamily family);
SpectrumFamily parse_spectrum_family(const std::string& s);

struct Spectrum {
    std::vector<double> one_minus;   // 1 - lambda_n, exact
    std::vector<double> lambda;
};

/// Dyadic: 1 - lambda_n = 2^{-(n+1)}; NonCarleson: 1 - lambda_n = 1/(n+2)^2.
Spectrum make_spectrum(SpectrumFamily family, int n);
Spectrum custom_spectrum(std::vector<double> one_minus);

struct LeMerdyInstance {
    int n = 0;
    std::vector<double> a;           // a_0 .. a_{N/2-1}
    Spectrum spectrum;
    Eigen::MatrixXd basis;           // W
    Eigen::MatrixXd t;               // T in the standard basis
    Eigen::MatrixXd d0;              // even-even block (diagonal)
    Eigen::MatrixXd d1;              // odd-odd block (diagonal)
    Eigen::MatrixXd coupling;        // even rows, odd columns
    double eigen_residual = 0;       // max_n ||T x_n - lambda_n x_n||
    double basis_cond = 1;
    std::shared_ptr<const Convolver> conv;

    /// y(2k) = sum_{n <= k} a_{k-n} x(2n+1).
    Vector apply_e(const Vector& x) const;
    Vector apply_e_adjoint(const Vector& x) const;
    DiagonalizedOperator diagonalized() const;
};

LeMerdyInstance build_instance(const CoeffSequence& a, const Spectrum& spectrum, int n);

/// ||P_n|| for n = 0 .. N-1, P_n x_k = x_k (k <= n), 0 otherwise.
std::vector<double> projection_norms(const LeMerdyInstance& inst);

struct UnconditionalReport {
    double value = 1.0;
    std::vector<int> pattern;        // the best sign pattern found
    int evaluations = 0;
};

inline constexpr int kDefaultSignSamples = 2000;

/// Lower bound on sup_eps ||W D_eps W^{-1}|| from the all-plus and parity
/// patterns, seeded random patterns, and single-flip ascent from the parity
/// pattern. Adding samples never lowers the result.
UnconditionalReport unconditional_constant(const LeMerdyInstance& inst, int samples = kDefaultSignSamples,
                                           std::uint64_t seed = 1);

struct HankelToeplitzRow {
    int size = 0;
    double hankel = 0;               // ||(a_{j+k})||
    double toeplitz = 0;             // ||(a_{j-k})_{j >= k}||
};

std::vector<HankelToeplitzRow> hankel_toeplitz_norms(const CoeffSequence& a, const std::vector<int>& sizes);

struct ScanOptions {
    int power_factor = 4;            // horizon = power_factor * N
    std::vector<double> radii = default_tadmor_radii();
    int angles = kDefaultTadmorAngles;
    int poly_degree = 8;
    int poly_trials = 4;
    int sign_samples = kDefaultSignSamples;
    std::uint64_t seed = 1;
    int parallel = 1;
};

struct ScanRow {
    int n = 0;
    double power_bound = 0;
    double tadmor_ritt = 0;
    double poly_lower = 0;
    double uncond_lower = 0;
    double lyap_cond = 0;            // NaN when the Stein solve is not possible
    double projection_sup = 0;
    double basis_cond = 0;
    bool power_exact = false;
    bool tadmor_flagged = false;
    std::string lyap_error;
};

struct ScanReport {
    SequenceKind kind = SequenceKind::LogHarmonic;
    SpectrumFamily family = SpectrumFamily::Dyadic;
    std::vector<ScanRow> rows;
};

ScanRow scan_row(const CoeffSequence& a, const Spectrum& spectrum, int n, const ScanOptions& opt);
ScanReport counterexample_scan(const std::vector<int>& sizes, SequenceKind kind, SpectrumFamily family,
                               const ScanOptions& opt = {});

/// CSV with columns N, power_bound, tadmor_ritt, poly_lower, uncond_lower, lyap_cond.
std::string to_csv(const ScanReport& r);
nlohmann::json to_json(const ScanReport& r);

/// True when the column strictly increases down the rows.
bool strictly_increasing(const std::vector<double>& v);
/// max/min of a positive column; infinity if any entry is not finite.
double spread(const std::vector<double>& v);

}  // namespace oplab
