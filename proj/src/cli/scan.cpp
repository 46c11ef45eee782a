#include "heralded/cli/scan.hpp"

#include "heralded/error.hpp"
#include "heralded/experiment.hpp"
#include "heralded/fock.hpp"
#include "heralded/gaussian.hpp"
#include "heralded/nongaussian.hpp"
#include "heralded/parallel.hpp"
#include "heralded/tolerances.hpp"
#include "heralded/version.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>

namespace heralded::cli {

namespace {

using cplx = std::complex<double>;

struct Evaluation {
    cplx input;
    cplx output;
    cplx oracle_output;
    double weight;
};

// Filter oracle shared by the single-mode families.
Evaluation filter_oracle(const fock::FockDensityMatrix& rho, double gain, cplx input, cplx output) {
    const auto out = fock::apply_filter(rho, gain);
    return {input, output, fock::mean_field(out.state), out.weight};
}

Evaluation evaluate(Scenario s, const ParamMap& v, std::size_t cutoff) {
    using namespace nongaussian;
    switch (s) {
    case Scenario::Psi1: {
        const Psi1Params p{v.at("c1")};
        return filter_oracle(build_psi1(p, cutoff).density(), v.at("g"), amplitude_psi1(p),
                             filtered_amplitude_psi1(p, v.at("g")));
    }
    case Scenario::Psi2: {
        const double c0 = v.at("c0");
        const double c2 = v.at("c2");
        const double c1sq = 1.0 - c0 * c0 - c2 * c2;
        if (c1sq < -tol::kNorm) throw Error(ErrorKind::InvalidArgument, "c0^2 + c2^2 exceeds 1");
        const Psi2Params p{c0, std::sqrt(std::max(0.0, c1sq)), c2};
        return filter_oracle(build_psi2(p, cutoff).density(), v.at("g"), amplitude_psi2(p),
                             filtered_amplitude_psi2(p, v.at("g")));
    }
    case Scenario::Mixture: {
        const MixtureParams p{{v.at("alpha_re"), v.at("alpha_im")}, {v.at("beta_re"), v.at("beta_im")}, v.at("p")};
        return filter_oracle(build_mixture(p, cutoff), v.at("g"), amplitude_mixture(p),
                             filtered_amplitude_mixture(p, v.at("g")));
    }
    case Scenario::Spacs: {
        const SpacsParams p{v.at("alpha"), v.at("delta")};
        const double nu = v.at("nu");
        const double out = spacs_attenuated_amplitude(p, nu);
        return filter_oracle(build_spacs(p, cutoff).density(), nu, spacs_amplitude(p), out);
    }
    case Scenario::Gaussian: {
        const auto state = gaussian::GaussianState::from_variances(v.at("vx"), v.at("vp"), v.at("theta"),
                                                                   {v.at("alpha_re"), v.at("alpha_im")});
        const auto out = gaussian::transform_gaussian(state, v.at("g"));
        return filter_oracle(gaussian::to_fock(state, cutoff), v.at("g"), state.mean_field(), out.mean_field());
    }
    case Scenario::Experiment: {
        experiment::SetupParams p;
        p.alpha = v.at("alpha");
        p.delta = v.at("delta");
        p.nu = v.at("nu");
        p.eta = v.at("eta");
        p.p = v.at("p");
        p.cutoff = cutoff;
        const auto sim = experiment::simulate_setup(p);
        return {experiment::input_amplitude(p), experiment::amplitude_eta_p(p), fock::mean_field(sim.state), sim.weight};
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unhandled scenario");
}

std::string series_label(const ParamMap& entry) {
    std::string out;
    char buf[64];
    for (const auto& [k, v] : entry) {
        if (!out.empty()) out += ';';
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out += k + "=" + buf;
    }
    return out.empty() ? "-" : out;
}

std::string params_line(const ParamMap& m) {
    std::string out;
    char buf[64];
    for (const auto& [k, v] : m) {
        if (!out.empty()) out += ' ';
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out += k + "=" + buf;
    }
    return out;
}

}  // namespace

std::vector<ScanRow> compute_scan(const ScanConfig& config) {
    config.validate();
    const std::vector<ParamMap> series = config.series.empty() ? std::vector<ParamMap>{ParamMap{}} : config.series;
    const std::size_t steps = config.sweep.steps;
    const std::size_t cutoff = config.effective_cutoff();
    std::vector<ScanRow> rows(series.size() * steps);

    parallel_for(rows.size(), [&](std::size_t idx) {
        const ParamMap& entry = series[idx / steps];
        ParamMap values = scenario_defaults(config.scenario);
        for (const auto& [k, v] : config.fixed) values[k] = v;
        for (const auto& [k, v] : entry) values[k] = v;
        const double x = config.sweep.value(idx % steps);
        values[config.sweep.param] = x;

        const Evaluation e = evaluate(config.scenario, values, cutoff);
        ScanRow& row = rows[idx];
        row.series = series_label(entry);
        row.sweep_value = x;
        row.input_amplitude = e.input;
        row.output_amplitude = e.output;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.gain = std::abs(e.input) == 0.0 ? cplx(nan, nan) : e.output / e.input;
        row.herald_weight = e.weight;
        row.oracle_residual = std::abs(e.output - e.oracle_output);
        row.near_zero_input = std::abs(e.input) < tol::kNearZeroInput;
    }, config.threads);
    return rows;
}

void write_scan_csv(const ScanConfig& config, const std::vector<ScanRow>& rows, std::ostream& out) {
    char buf[512];
    ParamMap fixed = scenario_defaults(config.scenario);
    for (const auto& [k, v] : config.fixed) fixed[k] = v;
    fixed.erase(config.sweep.param);

    out << "# heralded " << kVersion << "\n";
    out << "# scenario=" << scenario_name(config.scenario) << "\n";
    std::snprintf(buf, sizeof buf, "# sweep param=%s from=%.12g to=%.12g steps=%zu\n", config.sweep.param.c_str(),
                  config.sweep.from, config.sweep.to, config.sweep.steps);
    out << buf;
    out << "# fixed " << params_line(fixed) << "\n";
    out << "# series";
    if (config.series.empty()) out << " -";
    for (const auto& s : config.series) out << " [" << series_label(s) << "]";
    out << "\n";
    out << "# cutoff=" << config.effective_cutoff() << "\n";
    std::snprintf(buf, sizeof buf,
                  "# tolerances norm=%.3g psd=%.3g deriv=%.3g tail=%.3g phys=%.3g near_zero_input=%.3g\n", tol::kNorm,
                  tol::kPsd, tol::kDeriv, tol::kTail, tol::kPhys, tol::kNearZeroInput);
    out << buf;
    out << "# seed=none\n";
    out << "series,sweep_param,sweep_value,input_re,input_im,output_re,output_im,gain_re,gain_im,herald_weight,"
           "oracle_residual,near_zero_input\n";
    auto z = [](double x) { return x == 0.0 ? 0.0 : x; };  // no "-0" in the output
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%s,%.11e,%.11e,%.11e,%.11e,%.11e,%.11e,%.11e,%.11e,%.11e,%d\n",
                      r.series.c_str(), config.sweep.param.c_str(), z(r.sweep_value), z(r.input_amplitude.real()),
                      z(r.input_amplitude.imag()), z(r.output_amplitude.real()), z(r.output_amplitude.imag()),
                      z(r.gain.real()), z(r.gain.imag()), r.herald_weight, r.oracle_residual, r.near_zero_input ? 1 : 0);
        out << buf;
    }
}

void run_scan(const ScanConfig& config, std::ostream& fallback) {
    const auto rows = compute_scan(config);
    if (config.output.empty()) {
        write_scan_csv(config, rows, fallback);
        return;
    }
    std::ofstream file(config.output, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidArgument, "cannot open output file '" + config.output + "'");
    write_scan_csv(config, rows, file);
}

}  // namespace heralded::cli
