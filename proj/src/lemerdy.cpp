#include "oplab/lemerdy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <thread>

#include <unsupported/Eigen/FFT>

#include "oplab/linalg.hpp"
#include "oplab/similarity.hpp"

namespace oplab {

const char* to_string(SequenceKind kind) {
    switch (kind) {
        case SequenceKind::LogHarmonic: return "log_harmonic";
        case SequenceKind::Geometric: return "geometric";
        case SequenceKind::Custom: return "custom";
    }
    return "?";
}

SequenceKind parse_sequence_kind(const std::string& s) {
    if (s == "log_harmonic") return SequenceKind::LogHarmonic;
    if (s == "geometric") return SequenceKind::Geometric;
    if (s == "custom") return SequenceKind::Custom;
    throw Error(ErrorKind::InputError, "unknown sequence kind '" + s + "'");
}

const char* to_string(SpectrumFamily family) {
    switch (family) {
        case SpectrumFamily::Dyadic: return "dyadic";
        case SpectrumFamily::NonCarleson: return "non_carleson";
    }
    return "?";
}

SpectrumFamily parse_spectrum_family(const std::string& s) {
    if (s == "dyadic") return SpectrumFamily::Dyadic;
    if (s == "non_carleson") return SpectrumFamily::NonCarleson;
    throw Error(ErrorKind::InputError, "unknown spectrum family '" + s + "'");
}

namespace {

void fill_sums(CoeffSequence& s) {
    s.partial_sums.resize(s.a.size());
    s.weighted_square_sums.resize(s.a.size());
    double p = 0.0;
    double w = 0.0;
    for (std::size_t k = 0; k < s.a.size(); ++k) {
        p += s.a[k];
        w += static_cast<double>(k) * s.a[k] * s.a[k];
        s.partial_sums[k] = p;
        s.weighted_square_sums[k] = w;
    }
}

}  // namespace

CoeffSequence make_sequence(SequenceKind kind, int n) {
    if (n < 2) throw Error(ErrorKind::PreconditionViolation, "sequence length must be at least 2");
    CoeffSequence s;
    s.kind = kind;
    s.a.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        switch (kind) {
            case SequenceKind::LogHarmonic: s.a[static_cast<std::size_t>(k)] = 1.0 / ((k + 2) * std::log(k + 2.0)); break;
            case SequenceKind::Geometric: s.a[static_cast<std::size_t>(k)] = std::ldexp(1.0, -k); break;
            case SequenceKind::Custom:
                throw Error(ErrorKind::PreconditionViolation, "custom sequences need explicit coefficients");
        }
    }
    fill_sums(s);
    return s;
}

CoeffSequence custom_sequence(std::vector<double> a) {
    for (double x : a)
        if (!std::isfinite(x)) throw Error(ErrorKind::PreconditionViolation, "coefficients must be finite");
    CoeffSequence s;
    s.kind = SequenceKind::Custom;
    s.a = std::move(a);
    fill_sums(s);
    return s;
}

Spectrum custom_spectrum(std::vector<double> one_minus) {
    for (std::size_t i = 0; i < one_minus.size(); ++i) {
        if (!(one_minus[i] > 0.0 && one_minus[i] < 1.0)) {
            throw Error(ErrorKind::PreconditionViolation, "eigenvalues must lie in (0, 1)");
        }
        if (i && !(one_minus[i] < one_minus[i - 1])) {
            throw Error(ErrorKind::PreconditionViolation, "eigenvalues must be strictly increasing");
        }
    }
    Spectrum s;
    s.one_minus = std::move(one_minus);
    s.lambda.reserve(s.one_minus.size());
    for (double e : s.one_minus) s.lambda.push_back(1.0 - e);
    return s;
}

Spectrum make_spectrum(SpectrumFamily family, int n) {
    if (n < 1) throw Error(ErrorKind::PreconditionViolation, "spectrum length must be positive");
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        e[static_cast<std::size_t>(k)] = family == SpectrumFamily::Dyadic ? std::ldexp(1.0, -(k + 1))
                                                                          : 1.0 / ((k + 2.0) * (k + 2.0));
    }
    return custom_spectrum(std::move(e));
}

// ---------------------------------------------------------------------------

// E acts as a causal convolution of the odd coordinates with a, landing in
// the even coordinates; the adjoint is the matching correlation. Both run
// through one FFT of length >= 2M.
struct Convolver {
    int n = 0;
    int m = 0;
    int len = 0;
    std::vector<Complex> spectrum;   // FFT of the zero-padded coefficients

    Convolver(const std::vector<double>& a, int dim) : n(dim), m(dim / 2) {
        len = 1;
        while (len < 2 * m) len *= 2;
        std::vector<Complex> pad(static_cast<std::size_t>(len), 0.0);
        for (int k = 0; k < m; ++k) pad[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)];
        fft().fwd(spectrum, pad);
    }

    static Eigen::FFT<double>& fft() {
        thread_local Eigen::FFT<double> f;
        return f;
    }

    Vector apply(const Vector& x, bool adjoint) const {
        std::vector<Complex> in(static_cast<std::size_t>(len), 0.0);
        for (int k = 0; k < m; ++k) in[static_cast<std::size_t>(k)] = x(adjoint ? 2 * k : 2 * k + 1);
        std::vector<Complex> f;
        fft().fwd(f, in);
        for (int i = 0; i < len; ++i) {
            const auto u = static_cast<std::size_t>(i);
            f[u] *= adjoint ? std::conj(spectrum[u]) : spectrum[u];
        }
        std::vector<Complex> out;
        fft().inv(out, f);
        Vector y = Vector::Zero(n);
        for (int k = 0; k < m; ++k) y(adjoint ? 2 * k + 1 : 2 * k) = out[static_cast<std::size_t>(k)];
        return y;
    }
};

namespace {

bool all_zero(const std::vector<double>& a) {
    return std::all_of(a.begin(), a.end(), [](double x) { return x == 0.0; });
}

}  // namespace

Vector LeMerdyInstance::apply_e(const Vector& x) const { return conv->apply(x, false); }
Vector LeMerdyInstance::apply_e_adjoint(const Vector& x) const { return conv->apply(x, true); }

DiagonalizedOperator LeMerdyInstance::diagonalized() const {
    auto c = conv;
    DiagonalizedOperator d;
    d.dim = n;
    d.basis = [c](const Vector& x) -> Vector { return x + c->apply(x, false); };
    d.inverse = [c](const Vector& x) -> Vector { return x - c->apply(x, false); };
    d.basis_adjoint = [c](const Vector& x) -> Vector { return x + c->apply(x, true); };
    d.inverse_adjoint = [c](const Vector& x) -> Vector { return x - c->apply(x, true); };
    d.eigenvalues.assign(spectrum.lambda.begin(), spectrum.lambda.end());
    d.one_minus = spectrum.one_minus;
    return d;
}

LeMerdyInstance build_instance(const CoeffSequence& seq, const Spectrum& spectrum, int n) {
    if (n < 2 || n % 2) throw Error(ErrorKind::PreconditionViolation, "N must be even and at least 2");
    if (static_cast<int>(spectrum.one_minus.size()) != n) {
        throw Error(ErrorKind::PreconditionViolation, "spectrum length must equal N");
    }
    const int m = n / 2;
    if (static_cast<int>(seq.a.size()) < m) throw Error(ErrorKind::PreconditionViolation, "need N/2 coefficients");
    custom_spectrum(spectrum.one_minus);

    LeMerdyInstance inst;
    inst.n = n;
    inst.a.assign(seq.a.begin(), seq.a.begin() + m);
    inst.conv = std::make_shared<const Convolver>(inst.a, n);
    inst.spectrum = spectrum;
    const auto& eps = spectrum.one_minus;
    inst.basis = Eigen::MatrixXd::Identity(n, n);
    inst.t = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) inst.t(i, i) = spectrum.lambda[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
        for (int k = j; k < m; ++k) {
            const double c = inst.a[static_cast<std::size_t>(k - j)];
            inst.basis(2 * k, 2 * j + 1) = c;
            inst.t(2 * k, 2 * j + 1) = c * (eps[static_cast<std::size_t>(2 * k)] - eps[static_cast<std::size_t>(2 * j + 1)]);
        }
    }
    inst.d0 = Eigen::MatrixXd::Zero(m, m);
    inst.d1 = Eigen::MatrixXd::Zero(m, m);
    inst.coupling = Eigen::MatrixXd::Zero(m, m);
    bool pattern = true;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            inst.d0(i, j) = inst.t(2 * i, 2 * j);
            inst.d1(i, j) = inst.t(2 * i + 1, 2 * j + 1);
            inst.coupling(i, j) = inst.t(2 * i, 2 * j + 1);
            pattern = pattern && inst.t(2 * i + 1, 2 * j) == 0.0;
            if (i != j) pattern = pattern && inst.d0(i, j) == 0.0 && inst.d1(i, j) == 0.0;
        }
    }
    if (!pattern) throw Error(ErrorKind::InvariantViolation, "block zero pattern does not hold");

    Eigen::VectorXd lam(n);
    for (int i = 0; i < n; ++i) lam(i) = spectrum.lambda[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd res = inst.t * inst.basis - inst.basis * lam.asDiagonal();
    inst.eigen_residual = res.colwise().norm().maxCoeff();
    if (inst.eigen_residual > 1e-9) {
        throw Error(ErrorKind::InvariantViolation,
                    "eigenvector residual " + std::to_string(inst.eigen_residual) + " exceeds 1e-9");
    }
    const Matrix w = inst.basis.cast<Complex>();
    Matrix w_inv = 2.0 * Matrix::Identity(n, n) - w;
    inst.basis_cond = spectral_norm(w) * spectral_norm(w_inv);
    if (!(inst.basis_cond < 1e12)) {
        throw Error(ErrorKind::NotABasis, "basis condition " + std::to_string(inst.basis_cond) + " exceeds 1e12");
    }
    return inst;
}

std::vector<double> projection_norms(const LeMerdyInstance& inst) {
    const int n = inst.n;
    std::vector<double> out(static_cast<std::size_t>(n), 1.0);
    if (all_zero(inst.a)) return out;
    Vector warm;
    for (int cut = 0; cut < n; ++cut) {
        LinearMap p{n, n,
                    [&](const Vector& x) -> Vector {
                        Vector v = x - inst.apply_e(x);
                        v.tail(n - cut - 1).setZero();
                        return v + inst.apply_e(v);
                    },
                    [&](const Vector& x) -> Vector {
                        Vector v = x + inst.apply_e_adjoint(x);
                        v.tail(n - cut - 1).setZero();
                        return v - inst.apply_e_adjoint(v);
                    }};
        const auto est = lanczos_norm(p, warm.size() ? &warm : nullptr);
        warm = est.right;
        out[static_cast<std::size_t>(cut)] = est.value;
    }
    return out;
}

UnconditionalReport unconditional_constant(const LeMerdyInstance& inst, int samples, std::uint64_t seed) {
    if (samples < 1) throw Error(ErrorKind::PreconditionViolation, "samples must be at least 1");
    const int n = inst.n;
    UnconditionalReport rep;
    rep.pattern.assign(static_cast<std::size_t>(n), 1);
    if (all_zero(inst.a)) return rep;

    // Ritz values never exceed the norm, so loose screening keeps every value a lower bound.
    double tol = 1e-4;
    int restarts = 3;
    Vector warm;
    auto eval = [&](const std::vector<int>& s) {
        ++rep.evaluations;
        Vector d(n);
        for (int i = 0; i < n; ++i) d(i) = static_cast<double>(s[static_cast<std::size_t>(i)]);
        LinearMap m{n, n,
                    [&](const Vector& x) -> Vector {
                        const Vector v = d.cwiseProduct(x - inst.apply_e(x));
                        return v + inst.apply_e(v);
                    },
                    [&](const Vector& x) -> Vector {
                        const Vector v = d.cwiseProduct(x + inst.apply_e_adjoint(x));
                        return v - inst.apply_e_adjoint(v);
                    }};
        const auto est = lanczos_norm(m, warm.size() ? &warm : nullptr, tol, 80, restarts);
        warm = est.right;
        return est.value;
    };
    auto consider = [&](const std::vector<int>& s, double v) {
        if (v > rep.value) {
            rep.value = v;
            rep.pattern = s;
        }
    };

    std::vector<int> parity(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parity[static_cast<std::size_t>(i)] = i % 2 ? -1 : 1;
    const double parity_value = eval(parity);
    consider(parity, parity_value);

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<int> s(static_cast<std::size_t>(n));
    for (int t = 0; t < samples; ++t) {
        for (auto& x : s) x = coin(rng) ? 1 : -1;
        consider(s, eval(s));
    }

    std::vector<int> cur = parity;
    double cur_value = parity_value;
    for (int sweep = 0; sweep < 2; ++sweep) {
        bool improved = false;
        for (int i = 0; i < n; ++i) {
            cur[static_cast<std::size_t>(i)] *= -1;
            const double v = eval(cur);
            if (v > cur_value * (1.0 + 1e-12)) {
                cur_value = v;
                improved = true;
            } else {
                cur[static_cast<std::size_t>(i)] *= -1;
            }
        }
        if (!improved) break;
    }
    consider(cur, cur_value);

    tol = 1e-8;
    restarts = 12;
    const std::vector<int> best = rep.pattern;
    consider(best, eval(best));
    return rep;
}

std::vector<HankelToeplitzRow> hankel_toeplitz_norms(const CoeffSequence& seq, const std::vector<int>& sizes) {
    std::vector<HankelToeplitzRow> out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const int m = sizes[i];
        if (m < 1) throw Error(ErrorKind::PreconditionViolation, "sizes must be positive");
        if (i && m <= sizes[i - 1]) throw Error(ErrorKind::PreconditionViolation, "sizes must be ascending");
        if (static_cast<int>(seq.a.size()) < 2 * m - 1) {
            throw Error(ErrorKind::PreconditionViolation, "size " + std::to_string(m) + " needs 2m-1 coefficients");
        }
        Matrix h(m, m);
        Matrix t = Matrix::Zero(m, m);
        for (int k = 0; k < m; ++k) {
            for (int j = 0; j < m; ++j) {
                h(j, k) = seq.a[static_cast<std::size_t>(j + k)];
                if (j >= k) t(j, k) = seq.a[static_cast<std::size_t>(j - k)];
            }
        }
        out.push_back({m, spectral_norm(h), spectral_norm(t)});
    }
    return out;
}

// ---------------------------------------------------------------------------

ScanRow scan_row(const CoeffSequence& a, const Spectrum& spectrum, int n, const ScanOptions& opt) {
    const auto inst = build_instance(a, spectrum, n);
    const auto d = inst.diagonalized();
    ScanRow row;
    row.n = n;
    row.basis_cond = inst.basis_cond;
    const auto pb = power_bound(d, opt.power_factor * n);
    row.power_bound = pb.bound;
    row.power_exact = pb.exact_sup;
    const auto tr = tadmor_ritt(d, opt.radii, opt.angles);
    row.tadmor_ritt = tr.constant;
    row.tadmor_flagged = tr.flagged;
    row.poly_lower = poly_bound_lower(d, opt.poly_degree, opt.poly_trials, opt.seed).estimate;
    row.uncond_lower = unconditional_constant(inst, opt.sign_samples, opt.seed).value;
    const auto proj = projection_norms(inst);
    row.projection_sup = *std::max_element(proj.begin(), proj.end());

    // Same precondition as the Stein solver, read off the exact spectrum.
    const double gap = *std::min_element(spectrum.one_minus.begin(), spectrum.one_minus.end());
    if (!(gap > 1e-10)) {
        row.lyap_cond = std::numeric_limits<double>::quiet_NaN();
        std::ostringstream msg;
        msg.precision(3);
        msg << "spectral radius 1 - " << gap << " is not below 1 - 1e-10";
        row.lyap_error = msg.str();
    } else {
        try {
            row.lyap_cond = lyapunov_similarity(Operator(inst.t.cast<Complex>())).cond;
        } catch (const Error& e) {
            row.lyap_cond = std::numeric_limits<double>::quiet_NaN();
            row.lyap_error = e.what();
        }
    }
    return row;
}

ScanReport counterexample_scan(const std::vector<int>& sizes, SequenceKind kind, SpectrumFamily family,
                               const ScanOptions& opt) {
    if (sizes.empty()) throw Error(ErrorKind::PreconditionViolation, "no sizes given");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 2 || sizes[i] % 2) throw Error(ErrorKind::PreconditionViolation, "sizes must be even");
        if (i && sizes[i] <= sizes[i - 1]) throw Error(ErrorKind::PreconditionViolation, "sizes must be ascending");
    }
    const auto seq = make_sequence(kind, std::max(2, sizes.back()));
    ScanReport rep;
    rep.kind = kind;
    rep.family = family;
    rep.rows.resize(sizes.size());
    std::vector<std::exception_ptr> errors(sizes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < sizes.size(); i = next++) {
            try {
                rep.rows[i] = scan_row(seq, make_spectrum(family, sizes[i]), sizes[i], opt);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int workers = std::clamp(opt.parallel, 1, static_cast<int>(sizes.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rep;
}

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string to_csv(const ScanReport& r) {
    std::string out = "N,power_bound,tadmor_ritt,poly_lower,uncond_lower,lyap_cond\n";
    for (const auto& row : r.rows) {
        out += std::to_string(row.n) + "," + fmt17(row.power_bound) + "," + fmt17(row.tadmor_ritt) + "," +
               fmt17(row.poly_lower) + "," + fmt17(row.uncond_lower) + "," + fmt17(row.lyap_cond) + "\n";
    }
    return out;
}

nlohmann::json to_json(const ScanReport& r) {
    nlohmann::json j;
    j["kind"] = to_string(r.kind);
    j["family"] = to_string(r.family);
    auto rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"N", row.n},
                        {"power_bound", row.power_bound},
                        {"power_exact", row.power_exact},
                        {"tadmor_ritt", row.tadmor_ritt},
                        {"tadmor_flagged", row.tadmor_flagged},
                        {"poly_lower", row.poly_lower},
                        {"uncond_lower", row.uncond_lower},
                        {"lyap_cond", row.lyap_cond},
                        {"lyap_error", row.lyap_error},
                        {"projection_sup", row.projection_sup},
                        {"basis_cond", row.basis_cond}});
    }
    j["rows"] = rows;
    return j;
}

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

double spread(const std::vector<double>& v) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double x : v) {
        if (!std::isfinite(x) || x <= 0.0) return std::numeric_limits<double>::infinity();
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return v.empty() ? 1.0 : hi / lo;
}

}  // namespace oplab
