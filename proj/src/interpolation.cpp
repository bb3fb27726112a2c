#include "oplab/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace oplab {

CarlesonReport carleson_delta(std::span<const DiskPoint> zeros) {
    if (zeros.empty()) throw Error(ErrorKind::PreconditionViolation, "carleson_delta needs at least one zero");
    CarlesonReport report;
    report.values.resize(zeros.size());
    for (std::size_t n = 0; n < zeros.size(); ++n) {
        double log_prod = 0.0;
        for (std::size_t k = 0; k < zeros.size(); ++k) {
            if (k == n) continue;
            const double rho = pseudohyperbolic(zeros[k], zeros[n]);
            if (rho == 0.0) {
                throw Error(ErrorKind::InvariantViolation,
                            "duplicate zeros at indices " + std::to_string(std::min(k, n)) + " and " +
                                std::to_string(std::max(k, n)));
            }
            log_prod += std::log(rho);
        }
        report.values[n] = std::exp(log_prod);
    }
    const auto it = std::min_element(report.values.begin(), report.values.end());
    report.delta = *it;
    report.argmin = static_cast<std::size_t>(it - report.values.begin());
    return report;
}

DiskGrid default_disk_grid(int radii, int angles, double max_radius) {
    DiskGrid grid;
    grid.points.reserve(static_cast<std::size_t>(radii) * static_cast<std::size_t>(angles));
    for (int i = 0; i < radii; ++i) {
        const double r = radii == 1 ? max_radius
                                    : 0.5 * max_radius * (1.0 - std::cos(kPi * i / (radii - 1)));
        for (int j = 0; j < angles; ++j) grid.points.push_back(std::polar(r, 2.0 * kPi * j / angles));
    }
    return grid;
}

GeneralizedCarlesonEstimate generalized_carleson_ratio(std::span<const BlaschkeProduct> factors,
                                                       const DiskGrid& grid) {
    if (factors.empty()) throw Error(ErrorKind::PreconditionViolation, "no factors given");
    if (grid.points.empty()) throw Error(ErrorKind::PreconditionViolation, "empty grid");
    GeneralizedCarlesonEstimate out;
    out.estimate = std::numeric_limits<double>::infinity();
    for (Complex z : grid.points) {
        if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::PreconditionViolation, "grid point outside the open disk");
        double log_theta = 0.0;
        double min_factor = std::numeric_limits<double>::infinity();
        for (const auto& f : factors) {
            const double m = std::abs(blaschke_eval(f, z));
            min_factor = std::min(min_factor, m);
            log_theta += m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity();
        }
        if (min_factor < 1e-14) {
            ++out.skipped;
            continue;
        }
        ++out.evaluated;
        out.estimate = std::min(out.estimate, std::exp(log_theta - std::log(min_factor)));
    }
    if (out.evaluated == 0) {
        throw Error(ErrorKind::DegenerateInput, "every grid point sits on a factor zero");
    }
    return out;
}

PickData make_pick_data(std::vector<DiskPoint> nodes, std::vector<Complex> targets) {
    if (nodes.size() != targets.size()) {
        throw Error(ErrorKind::PreconditionViolation, "nodes and targets differ in length");
    }
    PickData data{std::move(nodes), std::move(targets), Matrix()};
    const auto n = static_cast<Eigen::Index>(data.nodes.size());
    data.pick.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            data.pick(i, j) = (1.0 - data.targets[ui] * std::conj(data.targets[uj])) /
                              (1.0 - data.nodes[ui].value() * std::conj(data.nodes[uj].value()));
        }
    }
    return data;
}

PickFeasibility pick_feasible(const PickData& data) {
    if (data.pick.rows() == 0) return {true, 0.0};
    Eigen::SelfAdjointEigenSolver<Matrix> solver(data.pick, Eigen::EigenvaluesOnly);
    const double lo = solver.eigenvalues()(0);
    return {lo >= -kPickPsdTolerance, lo};
}

namespace {

bool feasible_at(std::span<const DiskPoint> nodes, std::span<const Complex> targets, double t) {
    std::vector<Complex> scaled(targets.begin(), targets.end());
    for (auto& w : scaled) w /= t;
    return pick_feasible(make_pick_data({nodes.begin(), nodes.end()}, std::move(scaled))).feasible;
}

// Schur-Nevanlinna recursion for values w (|w| < 1 after scaling). Returns
// (numerator, denominator) of a rational f with f(z_k) = w_k and |f| <= 1.
std::pair<Coeffs, Coeffs> schur_nevanlinna(std::vector<Complex> z, std::vector<Complex> w) {
    const std::size_t n = z.size();
    std::vector<Complex> params(n);
    for (std::size_t k = 0; k < n; ++k) {
        params[k] = w[k];
        if (std::abs(w[k]) >= 1.0) {
            throw Error(ErrorKind::Infeasible, "Schur parameter reached the unit circle at step " +
                                                   std::to_string(k));
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            const Complex num = (w[j] - w[k]) / (1.0 - std::conj(w[k]) * w[j]);
            const Complex den = (z[j] - z[k]) / (1.0 - std::conj(z[k]) * z[j]);
            w[j] = num / den;
        }
    }
    Coeffs p{params[n - 1]};
    Coeffs q{Complex(1.0)};
    for (std::size_t kk = n - 1; kk-- > 0;) {
        const Coeffs beta{-z[kk], Complex(1.0)};
        const Coeffs gamma{Complex(1.0), -std::conj(z[kk])};
        const Coeffs gq = poly::mul(gamma, q);
        const Coeffs bp = poly::mul(beta, p);
        Coeffs np = poly::add(poly::scale(gq, params[kk]), bp);
        Coeffs nq = poly::add(gq, poly::scale(bp, std::conj(params[kk])));
        p = std::move(np);
        q = std::move(nq);
    }
    return {p, q};
}

}  // namespace

Interpolant np_interpolate(std::span<const DiskPoint> nodes, std::span<const Complex> targets) {
    if (nodes.size() != targets.size() || nodes.empty()) {
        throw Error(ErrorKind::PreconditionViolation, "need matching, nonempty nodes and targets");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (nodes[i] == nodes[j]) throw Error(ErrorKind::PreconditionViolation, "interpolation nodes must be distinct");

    double floor_norm = 0.0;
    for (Complex t : targets) floor_norm = std::max(floor_norm, std::abs(t));

    Interpolant out;
    if (floor_norm == 0.0) {
        out.phi = RationalFunction::constant(0.0);
        return out;
    }

    double lo = floor_norm;
    double hi = floor_norm;
    if (!feasible_at(nodes, targets, floor_norm)) {
        hi = 2.0 * floor_norm;
        while (!feasible_at(nodes, targets, hi)) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e6) throw Error(ErrorKind::Infeasible, "no feasible interpolation scale below 1e6");
        }
        // Bracket an order tighter than the advertised 1e-6, absolute and relative.
        while (hi - lo > 0.1 * kBisectionTolerance * std::min(1.0, hi)) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (feasible_at(nodes, targets, mid) ? hi : lo) = mid;
        }
    }
    out.norm = hi;
    out.lower = lo;

    const double build_scale = hi * (1.0 + 2e-7);
    std::vector<Complex> z(nodes.size());
    std::vector<Complex> w(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        z[i] = nodes[i].value();
        w[i] = targets[i] / build_scale;
    }
    auto [p, q] = schur_nevanlinna(std::move(z), std::move(w));
    out.phi = RationalFunction(poly::scale(p, build_scale), q);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        out.residual = std::max(out.residual, std::abs(out.phi(nodes[i].value()) - targets[i]));
    return out;
}

}  // namespace oplab
