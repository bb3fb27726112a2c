// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: acceptance <path-to-oplab> <scenario-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oplab/interpolation.hpp"
#include "oplab/lemerdy.hpp"
#include "oplab/linalg.hpp"
#include "oplab/operator_core.hpp"
#include "oplab/similarity.hpp"
#include "oplab/theorem_lab.hpp"

using namespace oplab;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char b[64];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

Matrix gaussian(Eigen::Index r, Eigen::Index c, std::mt19937_64& g) {
    std::normal_distribution<double> d;
    Matrix m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
        for (Eigen::Index i = 0; i < r; ++i) m(i, j) = Complex(d(g), d(g));
    return m;
}

// ---------------------------------------------------------------------------

Outcome annihilation() {
    const auto t0 = Clock::now();
    std::mt19937_64 g(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int count = 0;
    for (int n = 1; n <= 16; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<Complex> z;
            while (static_cast<int>(z.size()) < n) {
                const Complex c = std::polar(0.95 * std::sqrt(u(g)), 2 * kPi * u(g));
                bool sep = true;
                for (auto w : z) sep = sep && std::abs(w - c) > 1e-3;
                if (sep) z.push_back(c);
            }
            const Matrix w = gaussian(n, n, g) + 2.0 * std::sqrt(n) * Matrix::Identity(n, n);
            const Matrix t = w * Operator::diagonal(z).matrix() * w.inverse();
            const double r = spectral_norm(blaschke_of_operator(BlaschkeProduct(to_disk_points(z)), Operator(t)).matrix()) /
                             spectral_norm(t);
            worst = std::max(worst, r);
            ++count;
        }
    }
    const double secs = seconds_since(t0);
    return {worst < 1e-9 && secs < 1.0,
            std::to_string(count) + " instances, max ||theta(T)||/||T|| = " + fmt("%.3g", worst) + ", " +
                fmt("%.2f", secs) + " s"};
}

struct Ex41Set {
    std::vector<Example41Instance> inst;
    std::vector<RationalFunction> phi;
};

const Ex41Set& example41_set() {
    static const Ex41Set set = [] {
        Ex41Set s;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const int n = 2 + static_cast<int>(seed % 7);
            const BlaschkeProduct b(random_zeros(n, seed));
            s.inst.push_back(make_example41(b, random_coupling(n, seed + 1000)));
            const auto pz = random_zeros(2, seed + 2000, 0.9, 0.05);
            s.phi.push_back(RationalFunction::blaschke(BlaschkeProduct(pz)));
        }
        return s;
    }();
    return set;
}

Outcome oracle_pair() {
    const auto t0 = Clock::now();
    const auto& s = example41_set();
    double worst = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < s.inst.size(); ++i) {
        const auto& inst = s.inst[i];
        const Matrix o = a_phi_oracle(inst, s.phi[i]);
        const Matrix d = a_phi(inst, s.phi[i]);
        worst = std::max(worst, (d - o).norm() / std::max(o.norm(), 1e-300));
        diag = std::max({diag, inst.a.diagonal().cwiseAbs().maxCoeff(), d.diagonal().cwiseAbs().maxCoeff()});
    }
    const double secs = seconds_since(t0);
    return {worst < 1e-8 && diag == 0.0 && secs < 30.0,
            "50 instances, max relative gap " + fmt("%.3g", worst) + ", max |diagonal| " + fmt("%.3g", diag) + ", " +
                fmt("%.2f", secs) + " s (plus instance setup)"};
}

Outcome intertwiner() {
    const auto& s = example41_set();
    double res = 0.0, off = 0.0;
    for (const auto& inst : s.inst) {
        const auto y = construct_y(inst, std::vector<Complex>(inst.lambda.size(), 0.0));
        res = std::max(res, y.relative_residual);
        off = std::max(off, y.relative_offdiag);
    }
    return {res < 1e-8 && off < 1e-8,
            "max relative residual " + fmt("%.3g", res) + ", max off-diagonal " + fmt("%.3g", off)};
}

Outcome eigenvectors() {
    const auto& s = example41_set();
    double res = 0.0, low = 1e300;
    int upper_fail = 0;
    for (std::size_t i = 0; i < s.inst.size(); ++i) {
        const auto r = eigenvector_check(s.inst[i], i + 1);
        for (double x : r.residuals) res = std::max(res, x);
        for (double n : r.norms) low = std::min(low, n);
        double top = 0.0;
        for (double n : r.norms) top = std::max(top, n);
        const double bound = std::sqrt(r.m_upper * r.m_upper / (r.delta * r.delta) + 1.0);
        const double delta = carleson_delta(s.inst[i].basis.b.zeros()).delta;
        if (!(top <= bound) || r.delta != delta || !r.upper_ok) ++upper_fail;
    }
    return {res < 1e-8 && low >= 1.0 - 1e-10 && upper_fail == 0,
            "max residual " + fmt("%.3g", res) + ", min ||v_n|| " + fmt("%.15g", low) + ", upper-bound failures " +
                std::to_string(upper_fail)};
}

Outcome theorem23() {
    double zero = 0.0, excess = -1e300, sig = -1e300, tail = 0.0;
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
        std::vector<DiskPoint> z;
        for (int k = 1; k <= n; ++k) z.emplace_back(std::ldexp(1.0, -k));
        const BlaschkeProduct theta(z);
        const Matrix t0 = Operator::diagonal(to_complex(z)).matrix();
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            std::mt19937_64 g(seed * 31 + n);
            const Matrix a = gaussian(n, 256, g);
            const auto r = verify_theorem23(t0, a, theta, 256);
            zero = std::max(zero, r.zero_block);
            excess = std::max(excess, r.identity_residual - (r.tail_bound + 1e-9));
            sig = std::max(sig, (1.0 - r.tail_bound) - r.sigma_min);
            tail = std::max(tail, r.tail_bound);
            ok = ok && r.zero_block < 1e-9 && r.identity_residual < r.tail_bound + 1e-9 &&
                 r.sigma_min >= 1.0 - r.tail_bound && r.tail_bound < 1e-6;
        }
    }
    return {ok, "12 instances, max zero block " + fmt("%.3g", zero) + ", max tail " + fmt("%.3g", tail) +
                    ", identity margin " + fmt("%.3g", -excess) + ", sigma margin " + fmt("%.3g", -sig)};
}

Outcome lemma11() {
    std::mt19937_64 g(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int passed = 0, skipped = 0, violations = 0;
    double worst = 0.0;
    while (passed < 100) {
        const int dim = 2 + static_cast<int>(u(g) * 7);
        const int m = 1 + static_cast<int>(u(g) * (dim - 1));
        const Matrix basis = gaussian(dim, dim, g);
        Matrix core = Matrix::Zero(dim, dim);
        for (int i = 0; i < m; ++i) core(i, i) = std::polar(1.0, 2 * kPi * u(g));
        Matrix s = gaussian(dim - m, dim - m, g);
        s *= (0.2 + 0.6 * u(g)) / spectral_radius(s);
        core.bottomRightCorner(dim - m, dim - m) = s;
        const Matrix t = basis * core * basis.inverse();
        try {
            const auto r = direct_sum_similarity(Operator(t), basis.leftCols(m), basis.rightCols(dim - m));
            ++passed;
            if (!(r.inverse_norm <= r.certificate)) ++violations;
            worst = std::max(worst, r.inverse_norm / r.certificate);
        } catch (const Error&) {
            ++skipped;
        }
    }
    return {violations == 0, "100 instances (" + std::to_string(skipped) + " failed preconditions), violations " +
                                 std::to_string(violations) + ", max ||X^-1||/certificate " + fmt("%.4f", worst)};
}

Outcome stein() {
    std::mt19937_64 g(707);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int count = 0;
    for (int n : {1, 2, 3, 5, 8, 13, 21, 34, 55, 64}) {
        for (int rep = 0; rep < 4; ++rep) {
            Matrix t = gaussian(n, n, g);
            if (rep % 2) t = t.triangularView<Eigen::Upper>();
            t *= (0.3 + 0.65 * u(g)) / std::max(spectral_radius(t), 1e-12);
            const auto w = lyapunov_similarity(Operator(t));
            worst = std::max(worst, w.conjugated_norm);
            ++count;
        }
    }
    return {worst <= 1.0 + 1e-8, std::to_string(count) + " instances, max ||XTX^-1|| = " + fmt("%.15g", worst)};
}

// Smallest norm m with Pick((w/m)) PSD for two nodes: det = 0 is quadratic in x = 1/m^2.
double two_node_minimal_norm(Complex l1, Complex l2, Complex w1, Complex w2) {
    const double a = std::norm(w1), b = std::norm(w2);
    const Complex c = w1 * std::conj(w2);
    const double k = std::norm(1.0 - l1 * std::conj(l2)) / ((1 - std::norm(l1)) * (1 - std::norm(l2)));
    const double qa = (k - 1) * a * b, qb = -(k * (a + b) - 2 * c.real()), qc = k - 1;
    double x;
    if (qa == 0.0) {
        x = -qc / qb;
    } else {
        const double disc = std::sqrt(std::max(0.0, qb * qb - 4 * qa * qc));
        const double r1 = (-qb - disc) / (2 * qa), r2 = (-qb + disc) / (2 * qa);
        x = std::min(r1 > 0 ? r1 : 1e300, r2 > 0 ? r2 : 1e300);
    }
    return std::max({std::sqrt(a), std::sqrt(b), 1.0 / std::sqrt(x)});
}

Outcome nevanlinna_pick() {
    std::mt19937_64 g(808);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double res = 0.0, sup_excess = 0.0, boundary = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 2 + rep % 4;
        std::vector<DiskPoint> nodes;
        std::vector<Complex> targets;
        while (static_cast<int>(nodes.size()) < n) {
            const DiskPoint p(std::polar(0.9 * std::sqrt(u(g)), 2 * kPi * u(g)));
            bool sep = true;
            for (const auto& q : nodes) sep = sep && pseudohyperbolic(p, q) > 0.1;
            if (!sep) continue;
            nodes.push_back(p);
            targets.push_back(std::polar(2.0 * u(g), 2 * kPi * u(g)));
        }
        const auto ip = np_interpolate(nodes, targets);
        res = std::max(res, ip.residual);
        double sup = 0.0;
        for (int k = 0; k < 4096; ++k) sup = std::max(sup, std::abs(ip.phi(std::polar(1.0, 2 * kPi * k / 4096))));
        sup_excess = std::max(sup_excess, sup / ip.norm - 1.0);
        if (n == 2) {
            const double m = two_node_minimal_norm(nodes[0].value(), nodes[1].value(), targets[0], targets[1]);
            boundary = std::max(boundary, std::abs(ip.norm - m));
        }
    }
    return {res < 1e-8 && sup_excess <= 1e-6 && boundary <= 1e-6,
            "40 instances, max residual " + fmt("%.3g", res) + ", max sup/norm - 1 " + fmt("%.3g", sup_excess) +
                ", 2-node boundary error " + fmt("%.3g", boundary)};
}

Outcome le_merdy() {
    const auto t0 = Clock::now();
    const std::vector<int> sizes{64, 256, 1024};
    const auto lh = counterexample_scan(sizes, SequenceKind::LogHarmonic, SpectrumFamily::Dyadic);
    const auto ge = counterexample_scan(sizes, SequenceKind::Geometric, SpectrumFamily::Dyadic);
    const double secs = seconds_since(t0);

    auto col = [](const ScanReport& r, double ScanRow::*f) {
        std::vector<double> v;
        for (const auto& row : r.rows) v.push_back(row.*f);
        return v;
    };
    std::vector<std::string> failed;
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) failed.push_back(what);
    };
    need(spread(col(lh, &ScanRow::projection_sup)) < 1.5, "projection plateau");
    need(spread(col(lh, &ScanRow::tadmor_ritt)) < 2.0, "Tadmor-Ritt plateau");
    need(strictly_increasing(col(lh, &ScanRow::uncond_lower)), "unconditional constant increasing");
    need(strictly_increasing(col(lh, &ScanRow::lyap_cond)), "Lyapunov cond increasing");
    for (auto f : {&ScanRow::power_bound, &ScanRow::tadmor_ritt, &ScanRow::poly_lower, &ScanRow::uncond_lower,
                   &ScanRow::lyap_cond, &ScanRow::projection_sup}) {
        if (!(spread(col(ge, f)) < 1.2)) {
            failed.push_back("control column plateau");
            break;
        }
    }
    need(secs < 600.0, "runtime");

    std::string d;
    for (const auto* r : {&lh, &ge}) {
        d += std::string(to_string(r->kind)) + ":";
        for (const auto& row : r->rows) {
            d += " N=" + std::to_string(row.n) + "[uncond " + fmt("%.4g", row.uncond_lower) + ", proj " +
                 fmt("%.4g", row.projection_sup) + ", TR " + fmt("%.4g", row.tadmor_ritt) + ", lyap " +
                 fmt("%.4g", row.lyap_cond) + "]";
        }
        d += "; ";
    }
    if (!lh.rows.empty() && !lh.rows.back().lyap_error.empty()) d += "lyap: " + lh.rows.back().lyap_error + "; ";
    d += fmt("%.0f s", secs);
    if (!failed.empty()) {
        d += "; failed:";
        for (const auto& f : failed) d += " [" + f + "]";
    }
    return {failed.empty(), d};
}

Outcome hankel_toeplitz() {
    const std::vector<int> sizes{64, 256, 1024};
    const auto lh = hankel_toeplitz_norms(make_sequence(SequenceKind::LogHarmonic, 2048), sizes);
    const auto ge = hankel_toeplitz_norms(make_sequence(SequenceKind::Geometric, 2048), sizes);
    std::vector<double> h, t;
    for (const auto& r : lh) {
        h.push_back(r.hankel);
        t.push_back(r.toeplitz);
    }
    const double hs = spread(h);
    const double gerr = std::abs(ge.back().toeplitz - 2.0) / 2.0;
    return {hs < 1.25 && strictly_increasing(t) && gerr < 0.01,
            "Hankel spread " + fmt("%.4f", hs) + ", Toeplitz " + fmt("%.4f", t[0]) + " < " + fmt("%.4f", t[1]) +
                " < " + fmt("%.4f", t[2]) + ", geometric Toeplitz " + fmt("%.6f", ge.back().toeplitz)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

Outcome determinism(const std::string& tool, const std::string& scenario_dir) {
    if (tool.empty() || scenario_dir.empty()) return {false, "usage: acceptance <oplab> <scenario-dir>"};
    const fs::path work = fs::temp_directory_path() / "oplab_acceptance_determinism";
    fs::remove_all(work);
    fs::create_directories(work);
    std::vector<std::string> diffs;
    int compared = 0;
    int nonzero = 0;

    for (int i : {1, 2}) {
        const auto out = work / ("selftest" + std::to_string(i) + ".txt");
        if (std::system((quote(tool) + " selftest > " + quote(out.string()) + " 2>&1").c_str()) != 0) ++nonzero;
    }
    ++compared;
    if (slurp(work / "selftest1.txt") != slurp(work / "selftest2.txt")) diffs.push_back("selftest");

    std::vector<fs::path> scenarios;
    for (const auto& e : fs::directory_iterator(scenario_dir))
        if (e.path().extension() == ".json") scenarios.push_back(e.path());
    std::sort(scenarios.begin(), scenarios.end());
    for (const auto& sc : scenarios) {
        const std::string name = sc.stem().string();
        for (int i : {1, 2}) {
            const auto out = work / (name + "_" + std::to_string(i));
            const auto cmd = quote(tool) + " run " + quote(sc.string()) + " --out " + quote(out.string()) + " > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) ++nonzero;
        }
        std::vector<std::string> files;
        for (const auto& e : fs::directory_iterator(work / (name + "_1"))) files.push_back(e.path().filename().string());
        if (files.empty()) diffs.push_back(name + " (no output)");
        for (const auto& f : files) {
            ++compared;
            if (slurp(work / (name + "_1") / f) != slurp(work / (name + "_2") / f)) diffs.push_back(name + "/" + f);
        }
    }
    std::string d = std::to_string(scenarios.size()) + " scenarios + selftest, " + std::to_string(compared) +
                    " files compared, " + std::to_string(nonzero) + " nonzero exits";
    for (const auto& x : diffs) d += "; differs: " + x;
    return {diffs.empty(), d};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string tool = argc > 1 ? argv[1] : "";
    const std::string scenarios = argc > 2 ? argv[2] : "";
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"annihilation identity", annihilation},
        {"oracle-pair equivalence", oracle_pair},
        {"intertwiner certificate", intertwiner},
        {"eigenvector identity", eigenvectors},
        {"truncated-shift witness", theorem23},
        {"direct-sum inverse bound", lemma11},
        {"Stein/Lyapunov witness", stein},
        {"Nevanlinna-Pick", nevanlinna_pick},
        {"Le Merdy divergence signature", le_merdy},
        {"Hankel/Toeplitz dichotomy", hankel_toeplitz},
        {"determinism", [&] { return determinism(tool, scenarios); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("criterion %2zu  %-30s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
