#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oplab/cli.hpp"

namespace {

int report(const oplab::cli::RunResult& r, const std::string& out_dir) {
    if (r.exit_code == oplab::cli::kExitOk) {
        std::cout << "ok: " << r.outputs.size() << " files written to " << out_dir << "\n";
    } else {
        std::cerr << "oplab: " << r.message << "\n";
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operator similarity and boundedness laboratory"};
    app.set_version_flag("--version", oplab::cli::kVersion);
    app.require_subcommand(1);

    oplab::cli::RunOptions opt;

    auto* run = app.add_subcommand("run", "Execute a scenario file");
    std::string scenario;
    run->add_option("scenario", scenario, "Scenario JSON")->required();
    run->add_option("--out", opt.out_dir, "Output directory");
    run->add_option("--parallel", opt.parallel, "Workers for scan rows")->check(CLI::PositiveNumber);

    app.add_subcommand("selftest", "Run the built-in checks");

    auto* carleson = app.add_subcommand("carleson", "Carleson constant of a zero set");
    std::vector<std::string> zeros;
    carleson->add_option("--zeros", zeros, "Zeros as re or re,im")->required();
    carleson->add_option("--out", opt.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : oplab::cli::kExitInput;
    }

    if (run->parsed()) return report(oplab::cli::run_scenario_file(scenario, opt), opt.out_dir);

    if (carleson->parsed()) {
        nlohmann::json z = nlohmann::json::array();
        for (const auto& s : zeros) {
            try {
                const auto comma = s.find(',');
                std::size_t used = 0;
                if (comma == std::string::npos) {
                    z.push_back(std::stod(s, &used));
                    if (used != s.size()) throw std::invalid_argument(s);
                } else {
                    const std::string re = s.substr(0, comma), im = s.substr(comma + 1);
                    std::size_t u2 = 0;
                    const double a = std::stod(re, &used), b = std::stod(im, &u2);
                    if (used != re.size() || u2 != im.size()) throw std::invalid_argument(s);
                    z.push_back({a, b});
                }
            } catch (const std::exception&) {
                std::cerr << "oplab: --zeros: cannot parse '" << s << "'\n";
                return oplab::cli::kExitInput;
            }
        }
        const nlohmann::json sc = {{"command", "carleson"}, {"params", {{"zeros", z}}}};
        const auto r = oplab::cli::run_scenario_text(sc.dump(), opt);
        if (r.exit_code == oplab::cli::kExitOk) {
            std::ifstream in(opt.out_dir + "/carleson.json");
            const auto j = nlohmann::json::parse(in);
            std::cout << "delta = " << j["delta"].dump() << " at index " << j["argmin"].dump() << "\n";
        }
        return report(r, opt.out_dir);
    }

    return oplab::cli::selftest(std::cout);
}
