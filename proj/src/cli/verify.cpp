#include "heralded/cli/verify.hpp"

#include "heralded/error.hpp"
#include "heralded/experiment.hpp"
#include "heralded/fock.hpp"
#include "heralded/gaussian.hpp"
#include "heralded/nongaussian.hpp"
#include "heralded/phase_space.hpp"
#include "heralded/random_states.hpp"
#include "heralded/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace heralded::cli {

namespace {

using cplx = std::complex<double>;
using random_states::Rng;

// Tolerances of the individual suites.
constexpr double kOracleTol = 1e-8;
constexpr double kTriangleTol = 1e-4;
constexpr double kIdentityTol = 1e-9;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

void record(VerifyReport& r, bool ok) {
    ++r.checks;
    if (!ok) ++r.violations;
}

}  // namespace

nlohmann::json VerifyReport::to_json() const {
    return {{"suite", suite},   {"passed", passed},         {"seed", seed},     {"samples", samples},
            {"checks", checks}, {"violations", violations}, {"worst", worst},   {"threshold", threshold},
            {"details", details}};
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"monotonicity", "gaussian-bounds", "oracle-equivalence",
                                                "representation-triangle"};
    return names;
}

VerifyReport verify_monotonicity(std::uint64_t seed, std::size_t samples) {
    VerifyReport r{.suite = "monotonicity", .seed = seed, .samples = samples, .threshold = -tol::kDeriv};
    Rng rng(seed);
    constexpr std::size_t kCutoff = 25;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t errors = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        // Populations decay fast enough that g up to 1.8 stays inside the cutoff.
        const auto rho = random_states::random_density(rng, kCutoff, uniform(rng, 0.05, 0.33));
        for (int k = 0; k <= 15; ++k) {
            const double g = 0.3 + 0.1 * k;
            try {
                const double d = fock::mean_photon_derivative(rho, g);
                worst = std::min(worst, d);
                record(r, d >= -tol::kDeriv);
            } catch (const Error&) {
                ++errors;
                record(r, false);
            }
        }
    }
    r.worst = worst;
    r.details = {{"cutoff", kCutoff}, {"gain_grid", "0.3:0.1:1.8"}, {"errors", errors}};
    r.passed = r.violations == 0;
    return r;
}

VerifyReport verify_gaussian_bounds(std::uint64_t seed, std::size_t samples) {
    VerifyReport r{.suite = "gaussian-bounds", .seed = seed, .samples = samples, .threshold = 0.0};
    Rng rng(seed);
    double min_margin = std::numeric_limits<double>::infinity();
    double worst_identity = 0.0;
    std::size_t bound_violations = 0, law_violations = 0, route_violations = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const auto state = random_states::random_gaussian(rng, 1.0, 1.0, 1.5);
        const auto v = gaussian::principal_variances(state);

        // Largest g that keeps the amplified state physical.
        double g_max = 3.0;
        if (v.vp > 0.5) g_max = std::min(g_max, std::sqrt((2.0 * v.vp + 1.0) / (2.0 * v.vp - 1.0)));
        const double g_amp = uniform(rng, 1.0 + 1e-3, 1.0 + (g_max - 1.0) * 0.999);
        const double g_att = uniform(rng, 0.05, 0.95);

        for (double g : {g_amp, g_att}) {
            const double bound = g > 1.0 ? (1.0 + g * g) / (2.0 * g) : 2.0 * g / (1.0 + g * g);
            for (double var : {v.vx, v.vp}) {
                const double geff = gaussian::effective_gain(var, g);
                const double margin = g > 1.0 ? geff - bound : bound - geff;
                min_margin = std::min(min_margin, margin);
                const bool ok_bound = margin > 0.0;
                if (!ok_bound) ++bound_violations;
                record(r, ok_bound);

                // (G - g) / G = (g^2 - 1)(V - 1/2)
                const double lhs = (geff - g) / geff;
                const double rhs = (g * g - 1.0) * (var - 0.5);
                const double err = std::abs(lhs - rhs);
                worst_identity = std::max(worst_identity, err);
                const bool ok_law = err <= kIdentityTol * (1.0 + std::abs(rhs));
                if (!ok_law) ++law_violations;
                record(r, ok_law);
            }
            // Eigen-rotation route against the literal matrix formulas.
            const auto a = gaussian::transform_gaussian(state, g);
            const auto b = gaussian::transform_gaussian_direct(state, g);
            const double scale = 1.0 + a.covariance().cwiseAbs().maxCoeff() + a.displacement().cwiseAbs().maxCoeff();
            const double err = std::max((a.covariance() - b.covariance()).cwiseAbs().maxCoeff(),
                                        (a.displacement() - b.displacement()).cwiseAbs().maxCoeff()) / scale;
            worst_identity = std::max(worst_identity, err);
            const bool ok_route = err <= kIdentityTol;
            if (!ok_route) ++route_violations;
            record(r, ok_route);
        }
    }
    r.worst = min_margin;
    r.details = {{"bound_violations", bound_violations},
                 {"sublinearity_law_violations", law_violations},
                 {"route_mismatches", route_violations},
                 {"worst_identity_residual", worst_identity}};
    r.passed = r.violations == 0;
    return r;
}

VerifyReport verify_oracle_equivalence(std::uint64_t seed, std::size_t samples) {
    VerifyReport r{.suite = "oracle-equivalence", .seed = seed, .samples = samples, .threshold = kOracleTol};
    double worst_setup = 0.0;
    for (double alpha : {0.0, 0.25, 0.5})
        for (int k = 0; k <= 8; ++k)
            for (double nu : {0.3, 0.5, 0.7, 0.9})
                for (double eta : {0.0, 0.25, 0.5, 1.0})
                    for (double p : {0.0, 0.5, 0.75, 1.0}) {
                        experiment::SetupParams s{alpha, -1.0 + 0.25 * k, nu, eta, p, 20};
                        const double res = std::abs(fock::mean_field(experiment::simulate_setup(s).state) -
                                                    cplx(experiment::amplitude_eta_p(s)));
                        worst_setup = std::max(worst_setup, res);
                        record(r, res <= kOracleTol);
                    }

    // Randomized closed-form families against the filter.
    Rng rng(seed);
    constexpr std::size_t kCutoff = 30;
    double worst_family = 0.0;
    auto check = [&](cplx closed, cplx oracle) {
        const double res = std::abs(closed - oracle);
        worst_family = std::max(worst_family, res);
        record(r, res <= kOracleTol);
    };
    for (std::size_t i = 0; i < samples; ++i) {
        using namespace nongaussian;
        const double g = uniform(rng, 0.3, 2.5);
        switch (i % 4) {
        case 0: {
            const Psi1Params p{uniform(rng, 0.0, 1.0)};
            const auto out = fock::apply_filter(build_psi1(p, kCutoff).density(), g);
            check(filtered_amplitude_psi1(p, g), fock::mean_field(out.state));
            break;
        }
        case 1: {
            Eigen::Vector3d c(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
            c.normalize();
            const Psi2Params p{c[0], c[1], c[2]};
            const auto out = fock::apply_filter(build_psi2(p, kCutoff).density(), g);
            check(filtered_amplitude_psi2(p, g), fock::mean_field(out.state));
            break;
        }
        case 2: {
            // Keep g|alpha| within what the cutoff represents faithfully.
            const double amax = std::min(1.5, 2.2 / std::max(g, 1.0));
            const MixtureParams p{std::polar(uniform(rng, 0, amax), uniform(rng, 0, 6.283185307179586)),
                                  std::polar(uniform(rng, 0, amax), uniform(rng, 0, 6.283185307179586)),
                                  uniform(rng, 0, 1)};
            const auto out = fock::apply_filter(build_mixture(p, kCutoff), g);
            check(filtered_amplitude_mixture(p, g), fock::mean_field(out.state));
            break;
        }
        default: {
            const SpacsParams p{uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)};
            const double nu = uniform(rng, 0.3, 1.0);
            const auto out = fock::apply_filter(build_spacs(p, kCutoff).density(), nu);
            check(spacs_attenuated_amplitude(p, nu), fock::mean_field(out.state));
            break;
        }
        }
    }
    r.worst = std::max(worst_setup, worst_family);
    r.details = {{"setup_corner_points", 3 * 9 * 4 * 4 * 4},
                 {"setup_worst_residual", worst_setup},
                 {"family_worst_residual", worst_family}};
    r.passed = r.violations == 0;
    return r;
}

VerifyReport verify_representation_triangle(std::uint64_t seed, std::size_t samples) {
    VerifyReport r{.suite = "representation-triangle", .seed = seed, .samples = samples, .threshold = kTriangleTol};
    struct Member {
        std::string name;
        fock::FockDensityMatrix rho;
        std::optional<gaussian::GaussianState> gauss;
    };
    const auto squeezed = gaussian::GaussianState::squeezed(0.3, 0.4);
    std::vector<Member> corpus;
    corpus.push_back({"coherent", fock::coherent(0.5, 30).density(), gaussian::GaussianState::coherent(0.5)});
    corpus.push_back({"squeezed", gaussian::to_fock(squeezed, 40), squeezed});
    corpus.push_back({"spacs", nongaussian::build_spacs({0.25, -0.55}, 30).density(), std::nullopt});

    // Fine enough that bilinear resampling error stays well below the tolerance.
    const phase_space::GridSpec grid{-8.0, 8.0, 1601};
    const phase_space::GridSpec fit_grid{-8.0, 8.0, 3201};
    double worst_q = 0.0, worst_mean = 0.0, worst_fit = 0.0;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& m : corpus) {
        const auto q_in = phase_space::q_from_density(m.rho, grid);
        for (double g : {0.5, 0.8, 1.0, 1.25}) {
            const auto filtered = fock::apply_filter(m.rho, g).state;
            const cplx mf_fock = fock::mean_field(filtered);
            const auto q_fock = phase_space::q_from_density(filtered, grid);
            const auto q_tr = phase_space::transform_q(q_in, g);
            const cplx mf_q = phase_space::mean_field(q_tr);
            const double dq = phase_space::max_abs_difference(q_fock, q_tr);
            const double dm = std::abs(mf_fock - mf_q);
            worst_q = std::max(worst_q, dq);
            worst_mean = std::max(worst_mean, dm);
            record(r, dq <= kTriangleTol);
            record(r, dm <= kTriangleTol);
            nlohmann::json row{{"state", m.name}, {"g", g}, {"q_max_diff", dq}, {"mean_field_fock_vs_q", dm}};
            if (m.gauss) {
                const auto out = gaussian::transform_gaussian(*m.gauss, g);
                const double dg = std::abs(mf_fock - out.mean_field());
                // Moments are more sensitive to interpolation than pointwise values;
                // fit on a closed-form Gaussian grid with half the spacing.
                const auto fit = phase_space::fit_gaussian(phase_space::transform_q(phase_space::q_gaussian(*m.gauss, fit_grid), g));
                const double df = std::max((fit.gamma - out.covariance()).cwiseAbs().maxCoeff(),
                                           (fit.d - out.displacement()).cwiseAbs().maxCoeff());
                worst_mean = std::max(worst_mean, dg);
                worst_fit = std::max(worst_fit, df);
                record(r, dg <= kTriangleTol);
                record(r, df <= kTriangleTol);
                row["mean_field_fock_vs_gaussian"] = dg;
                row["q_fit_vs_gaussian"] = df;
            }
            rows.push_back(row);
        }
    }
    r.worst = std::max({worst_q, worst_mean, worst_fit});
    r.details = {{"worst_q_pointwise", worst_q},
                 {"worst_mean_field", worst_mean},
                 {"worst_gaussian_fit", worst_fit},
                 {"cases", rows}};
    r.passed = r.violations == 0;
    return r;
}

VerifyReport run_verify(std::string_view suite, std::uint64_t seed, std::size_t samples) {
    if (suite == "monotonicity") return verify_monotonicity(seed, samples);
    if (suite == "gaussian-bounds") return verify_gaussian_bounds(seed, samples);
    if (suite == "oracle-equivalence") return verify_oracle_equivalence(seed, samples);
    if (suite == "representation-triangle") return verify_representation_triangle(seed, samples);
    throw Error(ErrorKind::InvalidArgument, "unknown verify suite '" + std::string(suite) + "'");
}

}  // namespace heralded::cli
