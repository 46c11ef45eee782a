#pragma once

// Declarative parameter scans over the example families, emitted as CSV.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace heralded::cli {

enum class Scenario { Psi1, Psi2, Mixture, Spacs, Gaussian, Experiment };

Scenario parse_scenario(std::string_view name);
std::string_view scenario_name(Scenario s);
// Parameter names accepted by a scenario, with their defaults.
const std::map<std::string, double>& scenario_defaults(Scenario s);
std::size_t default_cutoff(Scenario s);

struct Sweep {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 1;  // 1 = single point at `from`

    double value(std::size_t i) const;
};

using ParamMap = std::map<std::string, double>;

struct ScanConfig {
    Scenario scenario = Scenario::Experiment;
    Sweep sweep;
    ParamMap fixed;               // overrides of scenario defaults
    std::vector<ParamMap> series; // each entry is a curve; empty = one curve
    std::size_t cutoff = 0;       // 0 = scenario default
    std::string output;           // empty = stdout
    unsigned threads = 0;

    // Throws Error(InvalidArgument) on unknown scenarios/params or empty ranges.
    static ScanConfig from_json(const nlohmann::json& j);
    void validate() const;
    std::size_t effective_cutoff() const { return cutoff ? cutoff : default_cutoff(scenario); }
};

// Applies "key=value" overrides: sweep.param/from/to/steps, cutoff, output,
// threads, scenario, or any scenario parameter (goes to `fixed`).
void apply_override(ScanConfig& config, std::string_view assignment);

struct ScanRow {
    std::string series;
    double sweep_value = 0.0;
    std::complex<double> input_amplitude;
    std::complex<double> output_amplitude;
    std::complex<double> gain;      // NaN when the input amplitude is exactly zero
    double herald_weight = 0.0;     // from the Fock simulation
    double oracle_residual = 0.0;   // |closed form - Fock simulation| of the output amplitude
    bool near_zero_input = false;
};

// Computes every row; rows come back in sweep order within series order.
std::vector<ScanRow> compute_scan(const ScanConfig& config);

void write_scan_csv(const ScanConfig& config, const std::vector<ScanRow>& rows, std::ostream& out);

// compute + write to config.output (or `fallback` when output is empty).
void run_scan(const ScanConfig& config, std::ostream& fallback);

}  // namespace heralded::cli
