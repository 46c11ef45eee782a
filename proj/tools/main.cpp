// heralded: parameter scans and invariant checks for heralded noiseless
// amplification / attenuation.
//
//   heralded scan --config configs/gain_vs_nu.json [--set nu=0.5 ...] [--output f.csv]
//   heralded verify monotonicity [--seed 7] [--samples 1000]
//
// Exit codes: 0 ok, 1 invariant failure, 2 bad input or unphysical regime.

#include "heralded/cli/scan.hpp"
#include "heralded/cli/verify.hpp"
#include "heralded/error.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kInvariantFailure = 1;
constexpr int kBadInput = 2;

int run_scan_command(const std::string& config_path, const std::vector<std::string>& overrides, const std::string& output) {
    nlohmann::json j;
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot read config '" << config_path << "'\n";
        return kBadInput;
    }
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
        return kBadInput;
    }
    auto config = heralded::cli::ScanConfig::from_json(j);
    for (const auto& o : overrides) heralded::cli::apply_override(config, o);
    if (!output.empty()) config.output = output;
    config.validate();
    heralded::cli::run_scan(config, std::cout);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heralded noiseless amplification and attenuation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string output;
    auto* scan = app.add_subcommand("scan", "Run a parameter scan and write CSV");
    scan->add_option("-c,--config", config_path, "JSON scan description")->required();
    scan->add_option("-s,--set", overrides, "Override key=value (repeatable)");
    scan->add_option("-o,--output", output, "CSV output path (default: config output or stdout)");

    std::string suite;
    std::uint64_t seed = 20131;
    std::size_t samples = 1000;
    auto* verify = app.add_subcommand("verify", "Run an invariant suite and print a JSON report");
    verify->add_option("suite", suite, "monotonicity | gaussian-bounds | oracle-equivalence | representation-triangle")
        ->required();
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--samples", samples, "Number of random samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*scan) return run_scan_command(config_path, overrides, output);
        const auto report = heralded::cli::run_verify(suite, seed, samples);
        std::cout << report.to_json().dump(2) << "\n";
        return report.passed ? kOk : kInvariantFailure;
    } catch (const heralded::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
}
