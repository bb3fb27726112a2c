#include "oplab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "oplab/interpolation.hpp"
#include "oplab/lemerdy.hpp"
#include "oplab/linalg.hpp"
#include "oplab/matrix_io.hpp"
#include "oplab/operator_core.hpp"
#include "oplab/scalar_fn.hpp"
#include "oplab/similarity.hpp"
#include "oplab/theorem_lab.hpp"

namespace oplab::cli {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::InputError, "SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

namespace {

Error input_error(const std::string& path, const std::string& what) {
    return Error(ErrorKind::InputError, path + ": " + what);
}

// Strict view of one params object: unknown keys are rejected up front and
// every accessor reports the full field path on a type mismatch.
class Params {
public:
    Params(const json& j, std::string path, std::set<std::string> allowed) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw input_error(path_, "expected an object");
        for (const auto& [k, v] : j_.items()) {
            if (!allowed.count(k)) throw input_error(path_ + "." + k, "unknown field");
        }
    }

    bool has(const std::string& k) const { return j_.contains(k); }
    std::string at(const std::string& k) const { return path_ + "." + k; }

    const json& required(const std::string& k) const {
        if (!has(k)) throw input_error(at(k), "required field missing");
        return j_.at(k);
    }

    double number(const std::string& k, std::optional<double> def = std::nullopt) const {
        if (!has(k)) {
            if (def) return *def;
            throw input_error(at(k), "required field missing");
        }
        const auto& v = j_.at(k);
        if (!v.is_number()) throw input_error(at(k), "expected a number");
        return v.get<double>();
    }

    long long integer(const std::string& k, std::optional<long long> def = std::nullopt) const {
        if (!has(k)) {
            if (def) return *def;
            throw input_error(at(k), "required field missing");
        }
        const auto& v = j_.at(k);
        if (!v.is_number_integer()) throw input_error(at(k), "expected an integer");
        return v.get<long long>();
    }

    std::uint64_t seed(const std::string& k) const {
        const long long s = integer(k);
        if (s < 0) throw input_error(at(k), "seed must be nonnegative");
        return static_cast<std::uint64_t>(s);
    }

    std::string string(const std::string& k, std::optional<std::string> def = std::nullopt) const {
        if (!has(k)) {
            if (def) return *def;
            throw input_error(at(k), "required field missing");
        }
        const auto& v = j_.at(k);
        if (!v.is_string()) throw input_error(at(k), "expected a string");
        return v.get<std::string>();
    }

private:
    const json& j_;
    std::string path_;
};

Complex parse_complex(const json& v, const std::string& path) {
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw input_error(path, "expected a number or [re, im]");
}

std::vector<Complex> parse_complex_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw input_error(path, "expected an array");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_complex(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<DiskPoint> parse_disk_points(const json& v, const std::string& path) {
    const auto c = parse_complex_list(v, path);
    std::vector<DiskPoint> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!(std::abs(c[i]) < 1.0)) throw input_error(path + "[" + std::to_string(i) + "]", "point outside the open disk");
        out.emplace_back(c[i]);
    }
    return out;
}

std::vector<int> parse_int_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw input_error(path, "expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer()) throw input_error(path + "[" + std::to_string(i) + "]", "expected an integer");
        out.push_back(v[i].get<int>());
    }
    return out;
}

std::vector<double> parse_real_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw input_error(path, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw input_error(path + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

Matrix parse_matrix(const json& v, const std::string& path) {
    try {
        return matrix_from_json(v);
    } catch (const Error& e) {
        throw input_error(path, e.what());
    }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json coeffs_json(const Coeffs& c) {
    auto a = json::array();
    for (auto z : c) a.push_back(complex_json(z));
    return a;
}

// ---------------------------------------------------------------------------

struct Outcome {
    json report;
    std::vector<std::pair<std::string, bool>> certificates;
    std::vector<std::string> operations;
    std::optional<std::uint64_t> seed;
    json tolerances = json::object();
    std::map<std::string, std::string> text_files;
    std::map<std::string, Matrix> matrices;

    void certify(const std::string& name, bool ok) { certificates.emplace_back(name, ok); }
};

Outcome run_carleson(const json& pj) {
    const Params p(pj, "params", {"zeros", "grid_radii", "grid_angles"});
    const auto zeros = parse_disk_points(p.required("zeros"), p.at("zeros"));
    Outcome o;
    const auto rep = carleson_delta(zeros);
    o.report["delta"] = rep.delta;
    o.report["argmin"] = rep.argmin;
    o.report["values"] = rep.values;
    std::vector<BlaschkeProduct> factors;
    for (const auto& z : zeros) factors.emplace_back(std::vector<DiskPoint>{z});
    const auto grid = default_disk_grid(static_cast<int>(p.integer("grid_radii", 64)),
                                        static_cast<int>(p.integer("grid_angles", 256)));
    const auto gen = generalized_carleson_ratio(factors, grid);
    o.report["generalized"] = {{"estimate", gen.estimate}, {"evaluated", gen.evaluated}, {"skipped", gen.skipped}};
    o.operations = {"interpolation.carleson_delta", "interpolation.generalized_carleson_ratio"};
    o.certify("delta_in_unit_interval", rep.delta >= 0.0 && rep.delta <= 1.0);
    return o;
}

Outcome run_interpolate(const json& pj) {
    const Params p(pj, "params", {"nodes", "targets"});
    const auto nodes = parse_disk_points(p.required("nodes"), p.at("nodes"));
    const auto targets = parse_complex_list(p.required("targets"), p.at("targets"));
    if (nodes.size() != targets.size()) throw input_error(p.at("targets"), "length differs from nodes");
    Outcome o;
    const auto ip = np_interpolate(nodes, targets);
    double sup = 0.0;
    for (int k = 0; k < 4096; ++k) sup = std::max(sup, std::abs(ip.phi(std::polar(1.0, 2.0 * kPi * k / 4096))));
    std::vector<Complex> scaled = targets;
    for (auto& t : scaled) t /= ip.norm > 0 ? ip.norm : 1.0;
    const auto pick = pick_feasible(make_pick_data(nodes, scaled));
    o.report = {{"norm", ip.norm},
                {"lower", ip.lower},
                {"residual", ip.residual},
                {"boundary_sup", sup},
                {"pick_min_eigenvalue", pick.min_eigenvalue},
                {"numerator", coeffs_json(ip.phi.numerator())},
                {"denominator", coeffs_json(ip.phi.denominator())}};
    o.operations = {"interpolation.np_interpolate", "interpolation.pick_feasible"};
    o.tolerances = {{"residual", 1e-8}, {"norm_slack", 1e-6}, {"psd", kPickPsdTolerance}};
    o.certify("residual_below_1e-8", ip.residual < 1e-8);
    o.certify("boundary_sup_within_norm", sup <= ip.norm * (1.0 + 1e-6) || ip.norm == 0.0);
    return o;
}

Outcome run_similarity(const json& pj) {
    const Params p(pj, "params", {"method", "T", "V", "A", "eigvecs", "basis_m", "basis_n", "n_max", "theta0"});
    const std::string method = p.string("method");
    const Operator t(parse_matrix(p.required("T"), p.at("T")));
    Outcome o;
    const double scale = std::max(1.0, t.dim() ? spectral_norm(t.matrix()) : 0.0);
    auto witness = [&](const SimilarityWitness& w) {
        o.report["witness"] = to_json(w);
        o.matrices["X.bin"] = w.x;
    };
    if (method == "lyapunov") {
        const auto w = lyapunov_similarity(t);
        witness(w);
        o.operations = {"similarity.lyapunov_similarity"};
        o.tolerances = {{"conjugated_norm", 1e-8}, {"stein_margin", 1e-10}};
        o.certify("conjugated_norm_at_most_1", w.conjugated_norm <= 1.0 + 1e-8);
        o.certify("stein_margin", w.residual("stein_margin") >= -1e-10);
    } else if (method == "eigenbasis") {
        const auto w = eigenbasis_similarity(t, parse_matrix(p.required("eigvecs"), p.at("eigvecs")));
        witness(w);
        o.operations = {"similarity.eigenbasis_similarity"};
        o.tolerances = {{"diagonalization", 1e-8}};
        o.certify("diagonalization", w.residual("diagonalization") < 1e-8 * scale);
    } else if (method == "sylvester") {
        const Operator v(parse_matrix(p.required("V"), p.at("V")));
        const auto s = sylvester_intertwiner(t, v, parse_matrix(p.required("A"), p.at("A")));
        o.report["sylvester"] = {{"gap", s.gap}, {"residual", s.residual}, {"scale", s.scale}};
        o.matrices["Y.bin"] = s.y;
        o.operations = {"similarity.sylvester_intertwiner"};
        o.tolerances = {{"residual", 1e-9}};
        o.certify("sylvester_residual", s.residual <= 1e-9 * s.scale);
    } else if (method == "direct_sum") {
        const auto n_max = static_cast<int>(p.integer("n_max", kDefaultStabilityHorizon));
        const auto r = direct_sum_similarity(t, parse_matrix(p.required("basis_m"), p.at("basis_m")),
                                             parse_matrix(p.required("basis_n"), p.at("basis_n")), n_max);
        witness(r.witness);
        o.report["power_constant"] = r.power_constant;
        o.report["lower_constant"] = r.lower_constant;
        o.report["certificate"] = r.certificate;
        o.report["inverse_norm"] = r.inverse_norm;
        o.operations = {"similarity.direct_sum_similarity", "operator_core.power_bound"};
        o.tolerances = {{"invariance", 1e-8}, {"stability", 0.1}};
        o.certify("inverse_norm_within_certificate", r.holds);
    } else if (method == "c0_split") {
        const BlaschkeProduct th(parse_disk_points(p.required("theta0"), p.at("theta0")));
        const auto s = c0_split(t, th);
        o.report["split"] = {{"h0_dim", s.h0_dim},         {"empty_h0", s.empty_h0},
                             {"lower_left", s.lower_left}, {"theta0_t0", s.theta0_t0},
                             {"roundtrip", s.roundtrip},   {"T0", matrix_to_json(s.t0)},
                             {"A", matrix_to_json(s.a)},   {"T1", matrix_to_json(s.t1)}};
        o.operations = {"similarity.c0_split", "operator_core.blaschke_of_operator"};
        o.tolerances = {{"nullspace", kNullspaceTol}, {"roundtrip", 1e-12}};
        o.certify("roundtrip", s.roundtrip < 1e-12 * scale);
    } else {
        throw input_error(p.at("method"), "expected lyapunov, eigenbasis, sylvester, direct_sum or c0_split");
    }
    return o;
}

// "zero", a matrix, or {"seed": s, "scale": x} (random, zero diagonal).
Matrix parse_coupling(const Params& p, int n, std::optional<std::uint64_t>& seed) {
    const auto& v = p.required("coupling");
    if (v.is_string()) {
        if (v.get<std::string>() != "zero") throw input_error(p.at("coupling"), "expected \"zero\", a matrix or {seed}");
        return Matrix::Zero(n, n);
    }
    if (v.is_object()) {
        const Params c(v, p.at("coupling"), {"seed", "scale"});
        seed = c.seed("seed");
        return random_coupling(n, *seed, c.number("scale", 1.0));
    }
    return parse_matrix(v, p.at("coupling"));
}

Outcome run_example41(const json& pj) {
    const Params p(pj, "params", {"zeros", "coupling", "alpha", "phi_zeros", "quadrature_points"});
    const BlaschkeProduct b(parse_disk_points(p.required("zeros"), p.at("zeros")));
    const auto n = static_cast<int>(b.size());
    Outcome o;
    const Matrix a = parse_coupling(p, n, o.seed);
    std::vector<Complex> alpha(static_cast<std::size_t>(n), 0.0);
    if (p.has("alpha")) {
        alpha = parse_complex_list(p.required("alpha"), p.at("alpha"));
        if (static_cast<int>(alpha.size()) != n) throw input_error(p.at("alpha"), "needs one entry per zero");
    }
    const int quad = static_cast<int>(p.integer("quadrature_points", default_quadrature_points()));
    const auto inst = make_example41(b, a, quad);

    const RationalFunction phi = p.has("phi_zeros")
                                     ? RationalFunction::blaschke(BlaschkeProduct(parse_disk_points(p.required("phi_zeros"), p.at("phi_zeros"))))
                                     : RationalFunction::blaschke_factor(DiskPoint(0.3));
    const Matrix d1 = a_phi(inst, phi);
    const Matrix d2 = a_phi_oracle(inst, phi);
    const double a_scale = std::max(d2.norm(), a.norm());
    const double pair_diff = (d1 - d2).norm();
    const double ab = a_phi_oracle(inst, RationalFunction::blaschke(b)).norm();
    const Matrix az = a_phi_oracle(inst, RationalFunction::monomial(1));
    const double az_diff = (az - a).norm();

    const auto y = construct_y(inst, alpha);
    const auto ev = eigenvector_check(inst, o.seed.value_or(1));
    double ev_max = 0.0;
    for (double r : ev.residuals) ev_max = std::max(ev_max, r);

    o.report = {{"delta", inst.delta},
                {"gram_cond", condition_number(inst.basis.gram)},
                {"kernel_norm_error", inst.basis.diag_error},
                {"shift_eigen_residual", inst.basis.eigen_residual},
                {"quadrature_points", inst.basis.quad_points},
                {"a_phi_pair_difference", pair_diff},
                {"a_identity_difference", az_diff},
                {"a_blaschke_norm", ab},
                {"y", to_json(y)},
                {"eigenvectors", to_json(ev)}};
    o.matrices["Y.bin"] = y.y_q;
    o.operations = {"theorem_lab.build_model_basis", "theorem_lab.a_phi",        "theorem_lab.a_phi_oracle",
                    "theorem_lab.construct_Y",       "theorem_lab.eigenvector_check", "similarity.lyapunov_similarity",
                    "operator_core.poly_bound_lower", "interpolation.carleson_delta"};
    o.tolerances = {{"a_phi_pair", 1e-8}, {"intertwiner", 1e-8}, {"eigen_residual", 1e-8}, {"a_blaschke", 1e-9}};
    o.certify("a_phi_pair", pair_diff <= 1e-8 * a_scale);
    o.certify("a_identity", az_diff <= 1e-8 * std::max(1.0, a.norm()));
    o.certify("a_blaschke_vanishes", ab <= 1e-9 * std::max(1.0, a.norm()));
    o.certify("intertwiner_residual", y.relative_residual < 1e-8);
    o.certify("block_conjugation", y.relative_offdiag < 1e-8);
    o.certify("eigen_residuals", ev_max < 1e-8);
    o.certify("norm_lower_bound", ev.lower_ok);
    o.certify("norm_upper_bound", ev.upper_ok);
    return o;
}

Outcome run_theorem23(const json& pj) {
    const Params p(pj, "params", {"zeros", "T0", "A", "shift_dim"});
    const auto zeros = parse_disk_points(p.required("zeros"), p.at("zeros"));
    const BlaschkeProduct theta(zeros, {}, ZeroMode::AllowRepeated);
    const auto s = static_cast<int>(p.integer("shift_dim"));
    if (s < 2) throw input_error(p.at("shift_dim"), "must be at least 2");
    Matrix t0;
    if (p.has("T0")) {
        t0 = parse_matrix(p.required("T0"), p.at("T0"));
    } else {
        const auto c = to_complex(zeros);
        t0 = Operator::diagonal(c).matrix();
    }
    Outcome o;
    Matrix a;
    const auto& av = p.required("A");
    if (av.is_object()) {
        const Params c(av, p.at("A"), {"seed", "scale"});
        o.seed = c.seed("seed");
        a = c.number("scale", 1.0) * random_coupling(static_cast<int>(std::max(t0.rows(), Eigen::Index(s))), *o.seed)
                                         .topLeftCorner(t0.rows(), s);
    } else {
        a = parse_matrix(av, p.at("A"));
    }
    const auto r = verify_theorem23(t0, a, theta, s);
    o.report = to_json(r);
    o.operations = {"theorem_lab.verify_theorem23", "operator_core.blaschke_of_operator"};
    o.tolerances = {{"zero_block", 1e-9}, {"identity", 1e-9}, {"tail_target", 1e-10}};
    o.certify("zero_blocks", r.zero_ok);
    o.certify("commutation_identity", r.identity_ok);
    o.certify("lower_bound", r.lower_ok);
    return o;
}

Outcome run_lemerdy_scan(const json& pj, const RunOptions& ro) {
    const Params p(pj, "params", {"sizes", "kind", "family", "seed", "samples", "poly_degree", "poly_trials",
                                  "power_factor", "angles", "radii"});
    const auto sizes = parse_int_list(p.required("sizes"), p.at("sizes"));
    if (sizes.empty()) throw input_error(p.at("sizes"), "must not be empty");
    const auto kind = parse_sequence_kind(p.string("kind"));
    if (kind == SequenceKind::Custom) throw input_error(p.at("kind"), "scans use log_harmonic or geometric");
    const auto family = parse_spectrum_family(p.string("family", "dyadic"));
    ScanOptions opt;
    Outcome o;
    o.seed = p.seed("seed");
    opt.seed = *o.seed;
    opt.sign_samples = static_cast<int>(p.integer("samples", kDefaultSignSamples));
    opt.poly_degree = static_cast<int>(p.integer("poly_degree", opt.poly_degree));
    opt.poly_trials = static_cast<int>(p.integer("poly_trials", opt.poly_trials));
    opt.power_factor = static_cast<int>(p.integer("power_factor", opt.power_factor));
    opt.angles = static_cast<int>(p.integer("angles", opt.angles));
    if (p.has("radii")) opt.radii = parse_real_list(p.required("radii"), p.at("radii"));
    opt.parallel = ro.parallel;

    const auto rep = counterexample_scan(sizes, kind, family, opt);
    o.report = to_json(rep);
    auto column = [&](auto get) {
        std::vector<double> v;
        for (const auto& r : rep.rows) v.push_back(get(r));
        return json{{"strictly_increasing", strictly_increasing(v)}, {"spread", spread(v)}};
    };
    o.report["columns"] = {{"power_bound", column([](const ScanRow& r) { return r.power_bound; })},
                           {"tadmor_ritt", column([](const ScanRow& r) { return r.tadmor_ritt; })},
                           {"poly_lower", column([](const ScanRow& r) { return r.poly_lower; })},
                           {"uncond_lower", column([](const ScanRow& r) { return r.uncond_lower; })},
                           {"lyap_cond", column([](const ScanRow& r) { return r.lyap_cond; })},
                           {"projection_sup", column([](const ScanRow& r) { return r.projection_sup; })}};
    const auto ht = hankel_toeplitz_norms(make_sequence(kind, 2 * sizes.back()), sizes);
    auto hj = json::array();
    for (const auto& r : ht) hj.push_back({{"size", r.size}, {"hankel", r.hankel}, {"toeplitz", r.toeplitz}});
    o.report["hankel_toeplitz"] = hj;
    o.text_files["scan.csv"] = to_csv(rep);
    o.operations = {"lemerdy.make_sequence",        "lemerdy.build_instance",        "lemerdy.counterexample_scan",
                    "lemerdy.projection_norms",     "lemerdy.unconditional_constant", "lemerdy.hankel_toeplitz_norms",
                    "operator_core.power_bound",    "operator_core.tadmor_ritt",      "operator_core.poly_bound_lower",
                    "similarity.lyapunov_similarity"};
    o.tolerances = {{"eigen_residual", 1e-9}, {"lanczos_rel", 1e-8}};
    return o;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InputError, "cannot write " + path.string());
    out << content;
}

}  // namespace

RunResult run_scenario_text(const std::string& raw, const RunOptions& opt) {
    RunResult res;
    json scenario;
    try {
        scenario = json::parse(raw);
    } catch (const json::exception& e) {
        res.exit_code = kExitInput;
        res.message = std::string("scenario is not valid JSON: ") + e.what();
        return res;
    }

    std::string command;
    Outcome o;
    try {
        if (!scenario.is_object()) throw input_error("$", "expected an object");
        for (const auto& [k, v] : scenario.items())
            if (k != "command" && k != "params") throw input_error(k, "unknown field");
        if (!scenario.contains("command") || !scenario["command"].is_string()) {
            throw input_error("command", "required string field missing");
        }
        command = scenario["command"].get<std::string>();
        const json params = scenario.value("params", json::object());
        if (command == "carleson") o = run_carleson(params);
        else if (command == "interpolate") o = run_interpolate(params);
        else if (command == "similarity") o = run_similarity(params);
        else if (command == "example41") o = run_example41(params);
        else if (command == "theorem23") o = run_theorem23(params);
        else if (command == "lemerdy-scan") o = run_lemerdy_scan(params, opt);
        else throw input_error("command", "unknown command '" + command + "'");
    } catch (const Error& e) {
        res.exit_code = e.kind() == ErrorKind::InputError ? kExitInput : kExitFailure;
        res.message = e.what();
        return res;
    } catch (const json::exception& e) {
        res.exit_code = kExitInput;
        res.message = e.what();
        return res;
    }

    namespace fs = std::filesystem;
    const fs::path dir(opt.out_dir);
    try {
        fs::create_directories(dir);
        const std::string report_name = command + ".json";
        write_file(dir / report_name, o.report.dump(2) + "\n");
        res.outputs.push_back(report_name);
        for (const auto& [name, text] : o.text_files) {
            write_file(dir / name, text);
            res.outputs.push_back(name);
        }
        for (const auto& [name, m] : o.matrices) {
            save_matrix_binary((dir / name).string(), m);
            res.outputs.push_back(name);
        }
        std::sort(res.outputs.begin(), res.outputs.end());

        json certs = json::object();
        for (const auto& [name, ok] : o.certificates) {
            certs[name] = ok;
            if (!ok) res.failed.push_back(name);
        }
        res.exit_code = res.failed.empty() ? kExitOk : kExitFailure;
        if (!res.failed.empty()) res.message = "certificate failed: " + res.failed.front();

        json manifest = {{"tool", "oplab"},
                         {"version", kVersion},
                         {"command", command},
                         {"input_sha256", sha256_hex(raw)},
                         {"seed", o.seed ? json(*o.seed) : json(nullptr)},
                         {"tolerances", o.tolerances},
                         {"quadrature_points_default", default_quadrature_points()},
                         {"operations", o.operations},
                         {"certificates", certs},
                         {"outputs", res.outputs},
                         {"exit_code", res.exit_code}};
        write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    } catch (const std::exception& e) {
        res.exit_code = kExitInput;
        res.message = e.what();
    }
    return res;
}

RunResult run_scenario_file(const std::string& path, const RunOptions& opt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        RunResult r;
        r.exit_code = kExitInput;
        r.message = "cannot open scenario " + path;
        return r;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_scenario_text(ss.str(), opt);
}

}  // namespace oplab::cli
