#include "heralded/cli/scan.hpp"

#include "heralded/error.hpp"
#include "heralded/tolerances.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace heralded::cli {

namespace {

const std::map<std::string, double> kPsi1{{"c1", 0.7071067811865476}, {"g", 2.0}};
const std::map<std::string, double> kPsi2{{"c0", 0.6}, {"c2", 0.5291502622129181}, {"g", 0.7}};
const std::map<std::string, double> kMixture{{"alpha_re", 1.0}, {"alpha_im", 0.0}, {"beta_re", -0.9},
                                             {"beta_im", 0.0},  {"p", 1.0 / 3.0},  {"g", 2.0}};
const std::map<std::string, double> kSpacs{{"alpha", 0.25}, {"delta", -0.55}, {"nu", 0.7}};
const std::map<std::string, double> kGaussian{{"vx", 0.5}, {"vp", 0.5}, {"theta", 0.0},
                                              {"alpha_re", 0.4}, {"alpha_im", 0.0}, {"g", 2.0}};
const std::map<std::string, double> kExperiment{{"alpha", 0.25}, {"delta", -0.55}, {"nu", 0.7071067811865476},
                                                {"eta", 1.0},    {"p", 1.0}};

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }

double parse_number(std::string_view text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) bad("not a number: '" + std::string(text) + "'");
    return v;
}

ParamMap parse_params(const nlohmann::json& j, const char* where) {
    if (!j.is_object()) bad(std::string(where) + " must be an object of numbers");
    ParamMap out;
    for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) bad(std::string(where) + "." + k + " must be a number");
        out[k] = v.get<double>();
    }
    return out;
}

}  // namespace

Scenario parse_scenario(std::string_view name) {
    if (name == "psi1") return Scenario::Psi1;
    if (name == "psi2") return Scenario::Psi2;
    if (name == "mixture") return Scenario::Mixture;
    if (name == "spacs") return Scenario::Spacs;
    if (name == "gaussian") return Scenario::Gaussian;
    if (name == "experiment") return Scenario::Experiment;
    bad("unknown scenario '" + std::string(name) + "'");
}

std::string_view scenario_name(Scenario s) {
    switch (s) {
    case Scenario::Psi1: return "psi1";
    case Scenario::Psi2: return "psi2";
    case Scenario::Mixture: return "mixture";
    case Scenario::Spacs: return "spacs";
    case Scenario::Gaussian: return "gaussian";
    case Scenario::Experiment: return "experiment";
    }
    return "?";
}

const std::map<std::string, double>& scenario_defaults(Scenario s) {
    switch (s) {
    case Scenario::Psi1: return kPsi1;
    case Scenario::Psi2: return kPsi2;
    case Scenario::Mixture: return kMixture;
    case Scenario::Spacs: return kSpacs;
    case Scenario::Gaussian: return kGaussian;
    case Scenario::Experiment: return kExperiment;
    }
    return kExperiment;
}

std::size_t default_cutoff(Scenario s) {
    switch (s) {
    case Scenario::Experiment: return tol::kDefaultModeCutoff;
    case Scenario::Gaussian: return 40;
    default: return tol::kDefaultCutoff;
    }
}

double Sweep::value(std::size_t i) const {
    if (steps <= 1) return from;
    return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

ScanConfig ScanConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) bad("config must be a JSON object");
    static const std::map<std::string, int> known{{"scenario", 0}, {"sweep", 0}, {"fixed", 0}, {"series", 0},
                                                  {"cutoff", 0},   {"output", 0}, {"threads", 0}};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) bad("unknown config key '" + k + "'");
    ScanConfig c;
    if (!j.contains("scenario") || !j["scenario"].is_string()) bad("config needs a string 'scenario'");
    c.scenario = parse_scenario(j["scenario"].get<std::string>());
    if (!j.contains("sweep") || !j["sweep"].is_object()) bad("config needs a 'sweep' object");
    const auto& s = j["sweep"];
    if (!s.contains("param") || !s["param"].is_string()) bad("sweep.param must be a string");
    c.sweep.param = s["param"].get<std::string>();
    if (!s.contains("from") || !s["from"].is_number()) bad("sweep.from must be a number");
    c.sweep.from = s["from"].get<double>();
    c.sweep.to = s.value("to", c.sweep.from);
    if (s.contains("steps")) {
        if (!s["steps"].is_number_integer() || s["steps"].get<long long>() < 1) bad("sweep.steps must be a positive integer");
        c.sweep.steps = s["steps"].get<std::size_t>();
    }
    if (j.contains("fixed")) c.fixed = parse_params(j["fixed"], "fixed");
    if (j.contains("series")) {
        if (!j["series"].is_array()) bad("series must be an array of parameter objects");
        for (const auto& e : j["series"]) c.series.push_back(parse_params(e, "series[]"));
    }
    if (j.contains("cutoff")) {
        if (!j["cutoff"].is_number_integer() || j["cutoff"].get<long long>() < 2) bad("cutoff must be an integer >= 2");
        c.cutoff = j["cutoff"].get<std::size_t>();
    }
    if (j.contains("output")) c.output = j["output"].get<std::string>();
    if (j.contains("threads")) c.threads = j["threads"].get<unsigned>();
    c.validate();
    return c;
}

void ScanConfig::validate() const {
    const auto& defaults = scenario_defaults(scenario);
    const std::string name(scenario_name(scenario));
    if (!defaults.count(sweep.param)) bad("sweep parameter '" + sweep.param + "' does not belong to scenario " + name);
    if (sweep.steps < 1) bad("sweep needs at least one step");
    if (!std::isfinite(sweep.from) || !std::isfinite(sweep.to)) bad("sweep range must be finite");
    if (sweep.steps > 1 && sweep.from == sweep.to) bad("sweep range is empty");
    for (const auto& [k, v] : fixed) {
        if (!defaults.count(k)) bad("parameter '" + k + "' does not belong to scenario " + name);
        if (!std::isfinite(v)) bad("parameter '" + k + "' is not finite");
    }
    for (const auto& entry : series) {
        for (const auto& [k, v] : entry) {
            if (!defaults.count(k)) bad("series parameter '" + k + "' does not belong to scenario " + name);
            if (k == sweep.param) bad("series may not set the swept parameter");
            if (!std::isfinite(v)) bad("series parameter '" + k + "' is not finite");
        }
    }
    if (cutoff != 0 && cutoff < 2) bad("cutoff must be >= 2");
}

void apply_override(ScanConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) bad("override must look like key=value: '" + std::string(assignment) + "'");
    const std::string key(assignment.substr(0, eq));
    const std::string_view value = assignment.substr(eq + 1);
    if (key == "scenario") {
        config.scenario = parse_scenario(value);
    } else if (key == "output") {
        config.output = std::string(value);
    } else if (key == "sweep.param") {
        config.sweep.param = std::string(value);
    } else if (key == "sweep.from") {
        config.sweep.from = parse_number(value);
    } else if (key == "sweep.to") {
        config.sweep.to = parse_number(value);
    } else if (key == "sweep.steps" || key == "cutoff" || key == "threads") {
        const double v = parse_number(value);
        if (v < 0 || v != std::floor(v)) bad(key + " must be a non-negative integer");
        if (key == "sweep.steps") config.sweep.steps = static_cast<std::size_t>(v);
        else if (key == "cutoff") config.cutoff = static_cast<std::size_t>(v);
        else config.threads = static_cast<unsigned>(v);
    } else {
        config.fixed[key] = parse_number(value);
    }
}

}  // namespace heralded::cli
